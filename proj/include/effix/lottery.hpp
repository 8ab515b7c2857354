#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "effix/errors.hpp"
#include "effix/profile.hpp"
#include "effix/rational.hpp"

namespace effix {

/// Exact probability vector over a profile's outcomes (indexed like `outcomes()`).
class Lottery {
public:
    explicit Lottery(std::vector<Rational> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw InputError("lottery over an empty outcome set");
        Rational total = 0;
        for (const Rational& w : weights_) {
            if (sgn(w) < 0) throw InputError("negative lottery weight " + to_string(w));
            total += w;
        }
        if (total != 1) throw InputError("lottery weights sum to " + to_string(total) + ", not 1");
    }

    static Lottery point_mass(std::size_t num_outcomes, OutcomeIndex x) {
        std::vector<Rational> w(num_outcomes);
        w.at(x) = 1;
        return Lottery(std::move(w));
    }

    static Lottery uniform(std::size_t num_outcomes, std::span<const OutcomeIndex> support) {
        if (support.empty()) throw InputError("uniform lottery over an empty set");
        std::vector<Rational> w(num_outcomes);
        const Rational share(1, static_cast<unsigned long>(support.size()));
        for (OutcomeIndex x : support) {
            if (w.at(x) != 0) throw InputError("duplicate outcome in uniform support");
            w[x] = share;
        }
        return Lottery(std::move(w));
    }

    std::size_t size() const { return weights_.size(); }
    const Rational& operator[](OutcomeIndex x) const { return weights_[x]; }
    const std::vector<Rational>& weights() const { return weights_; }

    /// Outcomes with positive weight, ascending.
    std::vector<OutcomeIndex> support() const {
        std::vector<OutcomeIndex> s;
        for (OutcomeIndex x = 0; x < weights_.size(); ++x) {
            if (sgn(weights_[x]) > 0) s.push_back(x);
        }
        return s;
    }

    bool operator==(const Lottery&) const = default;

private:
    std::vector<Rational> weights_;
};

/// One rational utility per (agent, outcome).
class UtilityProfile {
public:
    UtilityProfile(std::size_t num_agents, std::size_t num_outcomes)
        : num_outcomes_(num_outcomes), values_(num_agents * num_outcomes) {}

    std::size_t num_agents() const { return num_outcomes_ == 0 ? 0 : values_.size() / num_outcomes_; }
    std::size_t num_outcomes() const { return num_outcomes_; }

    Rational& at(AgentIndex i, OutcomeIndex x) { return values_[i * num_outcomes_ + x]; }
    const Rational& at(AgentIndex i, OutcomeIndex x) const { return values_[i * num_outcomes_ + x]; }

    Rational welfare(OutcomeIndex x) const {
        Rational w = 0;
        for (AgentIndex i = 0; i < num_agents(); ++i) w += at(i, x);
        return w;
    }

private:
    std::size_t num_outcomes_;
    std::vector<Rational> values_;
};

/// u_i(x) >= u_i(y) iff x is weakly preferred to y, checked over every agent and pair.
inline bool is_utilitarian_representation(const PreferenceProfile& profile, const UtilityProfile& u) {
    if (u.num_agents() != profile.num_agents() || u.num_outcomes() != profile.num_outcomes()) return false;
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
            for (OutcomeIndex y = 0; y < profile.num_outcomes(); ++y) {
                const bool weak = profile.rank(i, x) <= profile.rank(i, y);
                if ((u.at(i, x) >= u.at(i, y)) != weak) return false;
            }
        }
    }
    return true;
}

}  // namespace effix
