#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "effix/errors.hpp"
#include "effix/profile.hpp"
#include "effix/random.hpp"

namespace effix {

namespace detail {

inline std::vector<std::size_t> axis_positions(const PreferenceProfile& profile, const std::vector<OutcomeIndex>& axis) {
    std::vector<std::size_t> pos(profile.num_outcomes(), SIZE_MAX);
    if (axis.size() != profile.num_outcomes()) throw InputError("axis is not a permutation of the outcomes");
    for (std::size_t k = 0; k < axis.size(); ++k) {
        if (axis[k] >= pos.size() || pos[axis[k]] != SIZE_MAX) throw InputError("axis is not a permutation of the outcomes");
        pos[axis[k]] = k;
    }
    return pos;
}

}  // namespace detail

/// Every agent has a unique top outcome x* and strictly loses utility with each step
/// away from x* along the axis, on both sides.
inline bool is_single_peaked(const PreferenceProfile& profile, const std::vector<OutcomeIndex>& axis) {
    const auto pos = detail::axis_positions(profile, axis);
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        const auto& top = profile.agents()[i].order.classes.front();
        if (top.size() != 1) {
            if (profile.num_outcomes() > 1) return false;
            continue;
        }
        const std::size_t peak = pos[top.front()];
        for (std::size_t k = peak; k > 0; --k) {
            if (profile.rank(i, axis[k - 1]) <= profile.rank(i, axis[k])) return false;
        }
        for (std::size_t k = peak; k + 1 < axis.size(); ++k) {
            if (profile.rank(i, axis[k + 1]) <= profile.rank(i, axis[k])) return false;
        }
    }
    return true;
}

inline bool is_single_peaked(const PreferenceProfile& profile, const std::vector<std::string>& axis) {
    std::vector<OutcomeIndex> idx;
    for (const auto& label : axis) idx.push_back(profile.outcome_index(label));
    return is_single_peaked(profile, idx);
}

/// Random strict single-peaked profile over `axis` (outcome list = axis order). Each agent
/// draws a peak, then repeatedly extends its ranking with the nearest unranked outcome
/// on a randomly chosen side.
inline PreferenceProfile generate_single_peaked(const std::vector<std::string>& axis, std::size_t n_agents,
                                                std::uint64_t seed) {
    if (axis.empty()) throw InputError("axis must be non-empty");
    if (n_agents == 0) throw InputError("need at least one agent");
    Rng rng(seed);
    const std::size_t m = axis.size();
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> rankings;
    for (std::size_t a = 0; a < n_agents; ++a) {
        const std::size_t peak = rng.below(m);
        std::vector<std::vector<std::string>> ranking{{axis[peak]}};
        std::size_t left = peak, right = peak + 1;
        while (left > 0 || right < m) {
            const bool go_left = left > 0 && (right == m || rng.coin());
            if (go_left) {
                ranking.push_back({axis[--left]});
            } else {
                ranking.push_back({axis[right++]});
            }
        }
        rankings.emplace_back(std::to_string(a + 1), std::move(ranking));
    }
    return PreferenceProfile::from_rankings(axis, rankings);
}

}  // namespace effix
