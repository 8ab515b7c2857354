#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "effix/efficiency.hpp"
#include "effix/errors.hpp"
#include "effix/lottery.hpp"
#include "effix/profile.hpp"
#include "effix/random.hpp"

namespace effix {

/// Lotteries whose weights are multiples of 1/d for some d <= max_denominator.
struct GridSpec {
    std::size_t max_denominator = 1;
    std::size_t num_outcomes = 1;
};

/// Lazy, duplicate-free stream over a grid. For each d in 1..max_denominator the
/// compositions of d into |X| parts are walked in reverse lexicographic order; a
/// composition is emitted only if gcd(parts, d) = 1, since otherwise it already appeared
/// at a smaller d.
class GridStream {
public:
    explicit GridStream(GridSpec spec) : spec_(spec) {
        if (spec_.max_denominator == 0) throw InputError("max_denominator must be positive");
        if (spec_.num_outcomes == 0) throw InputError("grid over an empty outcome set");
        start(1);
    }

    std::optional<Lottery> next() {
        while (d_ <= spec_.max_denominator) {
            if (!pending_) {
                if (!advance()) {
                    start(d_ + 1);
                    continue;
                }
            }
            pending_ = false;
            std::size_t g = d_;
            for (std::size_t v : parts_) g = std::gcd(g, v);
            if (g != 1) continue;
            std::vector<Rational> w(parts_.size());
            for (std::size_t x = 0; x < parts_.size(); ++x) {
                if (parts_[x] != 0) {
                    w[x] = Rational(static_cast<unsigned long>(parts_[x]), static_cast<unsigned long>(d_));
                    w[x].canonicalize();
                }
            }
            return Lottery(std::move(w));
        }
        return std::nullopt;
    }

private:
    void start(std::size_t d) {
        d_ = d;
        parts_.assign(spec_.num_outcomes, 0);
        parts_[0] = d;
        pending_ = true;
    }

    bool advance() {
        const std::size_t m = parts_.size();
        const std::size_t tail = parts_[m - 1];
        parts_[m - 1] = 0;
        std::size_t j = m - 1;
        while (j > 0 && parts_[j - 1] == 0) --j;
        if (j == 0) return false;
        --parts_[j - 1];
        parts_[j] = tail + 1;
        return true;
    }

    GridSpec spec_;
    std::size_t d_ = 1;
    std::vector<std::size_t> parts_;
    bool pending_ = false;
};

inline std::vector<Lottery> grid_lotteries(const GridSpec& spec) {
    std::vector<Lottery> out;
    GridStream stream(spec);
    while (auto l = stream.next()) out.push_back(std::move(*l));
    return out;
}

/// False iff some grid lottery strictly SD-dominates p. Only inefficiency is certain.
inline bool oracle_is_efficient(const PreferenceProfile& profile, const Lottery& p, const GridSpec& spec) {
    GridStream stream(spec);
    while (auto q = stream.next()) {
        if (sd_compare(profile, *q, p).relation == Dominance::strictly_dominates) return false;
    }
    return true;
}

/// Same test against a pre-materialized grid.
inline bool oracle_is_efficient(const PreferenceProfile& profile, const Lottery& p, const std::vector<Lottery>& grid) {
    return std::none_of(grid.begin(), grid.end(), [&](const Lottery& q) {
        return sd_compare(profile, q, p).relation == Dominance::strictly_dominates;
    });
}

// ---------------------------------------------------------------------------
// Profile enumeration

enum class ProfileKind { strict, dichotomous, weak };

inline constexpr std::uint64_t enumeration_cap = 10'000'000;

/// All weak orders (ordered set partitions) of m outcomes, deterministic order. A weak
/// order is stored as its class-index vector.
inline std::vector<std::vector<std::size_t>> all_weak_orders(std::size_t m) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> f(m, 0);
    for (;;) {
        const std::size_t k = m == 0 ? 0 : *std::max_element(f.begin(), f.end()) + 1;
        std::vector<bool> hit(k, false);
        for (std::size_t v : f) hit[v] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) out.push_back(f);
        std::size_t j = 0;
        while (j < m && f[j] == m - 1) f[j++] = 0;
        if (j == m) break;
        ++f[j];
    }
    return out;
}

inline std::vector<std::string> default_outcome_labels(std::size_t m) {
    std::vector<std::string> out;
    for (std::size_t x = 0; x < m; ++x) out.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + x)) : "o" + std::to_string(x + 1));
    return out;
}

/// Exhaustive, lazy enumeration of profiles over a fixed outcome list with agents
/// "1".."n". Strict: (m!)^n profiles; dichotomous: 2^(nm) raw approval matrices;
/// weak: F(m)^n profiles with F the ordered Bell numbers.
class ProfileEnumerator {
public:
    ProfileEnumerator(std::size_t n_agents, std::vector<std::string> outcomes, ProfileKind kind)
        : n_(n_agents), outcomes_(std::move(outcomes)), kind_(kind) {
        if (n_ == 0 || outcomes_.empty()) throw InputError("enumeration needs at least one agent and one outcome");
        const std::size_t m = outcomes_.size();
        if (m > 12) throw CapExceeded("enumeration over more than 12 outcomes");
        std::uint64_t per_agent = 0;
        switch (kind_) {
            case ProfileKind::strict: {
                std::vector<std::size_t> perm(m);
                std::iota(perm.begin(), perm.end(), std::size_t{0});
                if (m > 10) throw CapExceeded("strict enumeration over more than 10 outcomes");
                do {
                    orders_.push_back(perm);
                } while (std::next_permutation(perm.begin(), perm.end()));
                per_agent = orders_.size();
                break;
            }
            case ProfileKind::dichotomous:
                if (m > 24) throw CapExceeded("dichotomous enumeration over more than 24 outcomes");
                per_agent = std::uint64_t{1} << m;
                break;
            case ProfileKind::weak:
                if (m > 6) throw CapExceeded("weak enumeration over more than 6 outcomes");
                orders_ = all_weak_orders(m);
                per_agent = orders_.size();
                break;
        }
        total_ = 1;
        for (std::size_t i = 0; i < n_; ++i) {
            if (total_ > enumeration_cap / per_agent) {
                throw CapExceeded("profile enumeration exceeds the cap of " + std::to_string(enumeration_cap));
            }
            total_ *= per_agent;
        }
        per_agent_ = per_agent;
        digits_.assign(n_, 0);
    }

    std::uint64_t size() const { return total_; }

    std::optional<PreferenceProfile> next() {
        if (done_) return std::nullopt;
        PreferenceProfile p = build();
        std::size_t j = 0;
        while (j < n_ && digits_[j] + 1 == per_agent_) digits_[j++] = 0;
        if (j == n_) {
            done_ = true;
        } else {
            ++digits_[j];
        }
        return p;
    }

private:
    PreferenceProfile build() const {
        const std::size_t m = outcomes_.size();
        std::vector<Agent> agents;
        for (std::size_t i = 0; i < n_; ++i) {
            Agent a{std::to_string(i + 1), {}};
            const std::uint64_t d = digits_[n_ - 1 - i];  // first agent varies slowest
            switch (kind_) {
                case ProfileKind::strict:
                    for (std::size_t x : orders_[d]) a.order.classes.push_back({x});
                    break;
                case ProfileKind::dichotomous: {
                    std::vector<OutcomeIndex> top, rest;
                    for (std::size_t x = 0; x < m; ++x) ((d >> (m - 1 - x)) & 1 ? top : rest).push_back(x);
                    if (!top.empty()) a.order.classes.push_back(std::move(top));
                    if (!rest.empty()) a.order.classes.push_back(std::move(rest));
                    break;
                }
                case ProfileKind::weak: {
                    const auto& f = orders_[d];
                    const std::size_t k = *std::max_element(f.begin(), f.end()) + 1;
                    a.order.classes.assign(k, {});
                    for (std::size_t x = 0; x < m; ++x) a.order.classes[f[x]].push_back(x);
                    break;
                }
            }
            agents.push_back(std::move(a));
        }
        return PreferenceProfile(outcomes_, std::move(agents));
    }

    std::size_t n_;
    std::vector<std::string> outcomes_;
    ProfileKind kind_;
    std::vector<std::vector<std::size_t>> orders_;
    std::uint64_t per_agent_ = 1;
    std::uint64_t total_ = 1;
    std::vector<std::uint64_t> digits_;
    bool done_ = false;
};

/// Antichains of the subset lattice of {1..n}, each as a list of agent bitmasks in
/// ascending order, restricted to at most `max_size` members. The empty antichain is
/// skipped.
inline std::vector<std::vector<std::uint32_t>> antichains(std::size_t n, std::size_t max_size) {
    if (n == 0 || n > 5) throw CapExceeded("antichain enumeration supports 1..5 agents");
    const std::uint32_t universe = std::uint32_t{1} << n;
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> current;
    auto comparable = [](std::uint32_t a, std::uint32_t b) { return (a & b) == a || (a & b) == b; };
    auto extend = [&](auto&& self, std::uint32_t from) -> void {
        if (!current.empty()) out.push_back(current);
        if (current.size() == max_size) return;
        for (std::uint32_t s = from; s < universe; ++s) {
            if (std::any_of(current.begin(), current.end(), [&](std::uint32_t t) { return comparable(s, t); })) continue;
            current.push_back(s);
            self(self, s + 1);
            current.pop_back();
        }
    };
    extend(extend, 0);
    return out;
}

/// Dichotomous profile whose outcomes are the given agent subsets (bit i = agent i+1 approves).
inline PreferenceProfile profile_from_columns(std::size_t n, const std::vector<std::uint32_t>& columns) {
    std::vector<std::string> outcomes = default_outcome_labels(columns.size());
    std::vector<std::pair<std::string, std::vector<std::string>>> approvals;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> approved;
        for (std::size_t x = 0; x < columns.size(); ++x) {
            if ((columns[x] >> i) & 1U) approved.push_back(outcomes[x]);
        }
        approvals.emplace_back(std::to_string(i + 1), std::move(approved));
    }
    return PreferenceProfile::from_approvals(std::move(outcomes), approvals);
}

// ---------------------------------------------------------------------------
// Random profiles

inline PreferenceProfile random_strict_profile(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<Agent> agents;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<OutcomeIndex> perm(m);
        std::iota(perm.begin(), perm.end(), OutcomeIndex{0});
        rng.shuffle(perm);
        Agent a{std::to_string(i + 1), {}};
        for (OutcomeIndex x : perm) a.order.classes.push_back({x});
        agents.push_back(std::move(a));
    }
    return PreferenceProfile(default_outcome_labels(m), std::move(agents));
}

/// Each agent approves each outcome independently with probability 1/2.
inline PreferenceProfile random_dichotomous_profile(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<Agent> agents;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<OutcomeIndex> top, rest;
        for (OutcomeIndex x = 0; x < m; ++x) (rng.coin() ? top : rest).push_back(x);
        Agent a{std::to_string(i + 1), {}};
        if (!top.empty()) a.order.classes.push_back(std::move(top));
        if (!rest.empty()) a.order.classes.push_back(std::move(rest));
        agents.push_back(std::move(a));
    }
    return PreferenceProfile(default_outcome_labels(m), std::move(agents));
}

/// Random class index per outcome, then empty classes compressed away.
inline PreferenceProfile random_weak_profile(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<Agent> agents;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<OutcomeIndex>> classes(m);
        for (OutcomeIndex x = 0; x < m; ++x) classes[rng.below(m)].push_back(x);
        std::erase_if(classes, [](const auto& c) { return c.empty(); });
        agents.push_back(Agent{std::to_string(i + 1), WeakOrder{std::move(classes)}});
    }
    return PreferenceProfile(default_outcome_labels(m), std::move(agents));
}

}  // namespace effix
