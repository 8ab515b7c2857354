#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "effix/errors.hpp"
#include "effix/lottery.hpp"
#include "effix/profile.hpp"
#include "effix/random.hpp"

namespace effix {

/// True iff y weakly beats x for every agent and strictly for some.
inline bool pareto_dominates(const PreferenceProfile& profile, OutcomeIndex y, OutcomeIndex x) {
    bool strict = false;
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        const auto ry = profile.rank(i, y);
        const auto rx = profile.rank(i, x);
        if (ry > rx) return false;
        if (ry < rx) strict = true;
    }
    return strict;
}

/// Pareto-optimal outcomes in outcome-list order. O(|X|^2 |N|).
inline std::vector<OutcomeIndex> pareto_set(const PreferenceProfile& profile) {
    std::vector<OutcomeIndex> out;
    for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
        bool dominated = false;
        for (OutcomeIndex y = 0; y < profile.num_outcomes() && !dominated; ++y) {
            dominated = y != x && pareto_dominates(profile, y, x);
        }
        if (!dominated) out.push_back(x);
    }
    return out;
}

/// A permutation of the profile's agents.
class DictatorOrder {
public:
    DictatorOrder(const PreferenceProfile& profile, std::vector<AgentIndex> sequence) : sequence_(std::move(sequence)) {
        std::vector<bool> seen(profile.num_agents(), false);
        if (sequence_.size() != profile.num_agents()) throw InputError("dictator order is not a permutation of the agents");
        for (AgentIndex a : sequence_) {
            if (a >= seen.size() || seen[a]) throw InputError("dictator order is not a permutation of the agents");
            seen[a] = true;
        }
    }

    static DictatorOrder from_ids(const PreferenceProfile& profile, const std::vector<std::string>& ids) {
        std::vector<AgentIndex> seq;
        for (const auto& id : ids) seq.push_back(profile.agent_index(id));
        return DictatorOrder(profile, std::move(seq));
    }

    const std::vector<AgentIndex>& sequence() const { return sequence_; }

private:
    std::vector<AgentIndex> sequence_;
};

namespace detail {

inline std::vector<OutcomeIndex> serial_dictatorship(const PreferenceProfile& profile,
                                                     const std::vector<AgentIndex>& order) {
    std::vector<OutcomeIndex> candidates(profile.num_outcomes());
    std::iota(candidates.begin(), candidates.end(), OutcomeIndex{0});
    for (AgentIndex a : order) {
        if (candidates.size() == 1) break;
        std::size_t best = SIZE_MAX;
        for (OutcomeIndex x : candidates) best = std::min(best, profile.rank(a, x));
        std::erase_if(candidates, [&](OutcomeIndex x) { return profile.rank(a, x) != best; });
    }
    return candidates;
}

}  // namespace detail

/// Maximal outcomes of the lexicographic order induced by `order`, ascending.
inline std::vector<OutcomeIndex> serial_dictatorship(const PreferenceProfile& profile, const DictatorOrder& order) {
    return detail::serial_dictatorship(profile, order.sequence());
}

struct RsdExact {
    std::size_t factorial_cap = 8;
};
struct RsdSampled {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Random Serial Dictatorship. Exact mode averages Uniform(SD(sigma)) over all n!
/// orders; sampled mode returns empirical frequencies over `trials` seeded draws.
inline Lottery rsd(const PreferenceProfile& profile, const RsdExact& mode = {}) {
    const std::size_t n = profile.num_agents();
    if (n > mode.factorial_cap) {
        throw CapExceeded("exact RSD over " + std::to_string(n) + " agents exceeds the factorial cap of " +
                          std::to_string(mode.factorial_cap));
    }
    std::vector<AgentIndex> order(n);
    std::iota(order.begin(), order.end(), AgentIndex{0});
    std::map<std::vector<OutcomeIndex>, std::uint64_t> tally;
    std::uint64_t total = 0;
    do {
        ++tally[detail::serial_dictatorship(profile, order)];
        ++total;
    } while (std::next_permutation(order.begin(), order.end()));

    std::vector<Rational> w(profile.num_outcomes());
    for (const auto& [set, count] : tally) {
        Rational share(Integer(static_cast<unsigned long>(count)),
                       Integer(static_cast<unsigned long>(total)) * static_cast<unsigned long>(set.size()));
        share.canonicalize();
        for (OutcomeIndex x : set) w[x] += share;
    }
    return Lottery(std::move(w));
}

inline Lottery rsd(const PreferenceProfile& profile, const RsdSampled& mode) {
    if (mode.trials == 0) throw InputError("sampled RSD needs at least one trial");
    Rng rng(mode.seed);
    std::vector<AgentIndex> order(profile.num_agents());
    std::map<std::vector<OutcomeIndex>, std::uint64_t> tally;
    for (std::uint64_t t = 0; t < mode.trials; ++t) {
        std::iota(order.begin(), order.end(), AgentIndex{0});
        rng.shuffle(order);
        ++tally[detail::serial_dictatorship(profile, order)];
    }
    std::vector<Rational> w(profile.num_outcomes());
    for (const auto& [set, count] : tally) {
        Rational share(Integer(static_cast<unsigned long>(count)),
                       Integer(static_cast<unsigned long>(mode.trials)) * static_cast<unsigned long>(set.size()));
        share.canonicalize();
        for (OutcomeIndex x : set) w[x] += share;
    }
    return Lottery(std::move(w));
}

/// support(lottery) is contained in the Pareto set.
inline bool rsd_is_ex_post_efficient(const PreferenceProfile& profile, const Lottery& lottery) {
    if (lottery.size() != profile.num_outcomes()) throw InputError("lottery and profile outcome sets differ");
    const auto pareto = pareto_set(profile);
    const auto support = lottery.support();
    return std::includes(pareto.begin(), pareto.end(), support.begin(), support.end());
}

}  // namespace effix
