#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "effix/errors.hpp"
#include "effix/lottery.hpp"
#include "effix/lp.hpp"
#include "effix/pareto.hpp"
#include "effix/profile.hpp"
#include "effix/rational.hpp"

namespace effix {

// ---------------------------------------------------------------------------
// Stochastic dominance

enum class Dominance { strictly_dominates, weakly_dominates_equal, incomparable };

inline const char* to_string(Dominance d) {
    switch (d) {
        case Dominance::strictly_dominates:
            return "strictly_dominates";
        case Dominance::weakly_dominates_equal:
            return "weakly_dominates_equal";
        case Dominance::incomparable:
            return "incomparable";
    }
    return "?";
}

struct AgentOutcome {
    AgentIndex agent = 0;
    OutcomeIndex outcome = 0;

    bool operator==(const AgentOutcome&) const = default;
};

/// How p compares to q. `strict_witness` is the first (agent, outcome), in agent then
/// outcome-list order, whose strict-upper-contour mass is larger under p.
struct DominanceVerdict {
    Dominance relation = Dominance::incomparable;
    std::optional<AgentOutcome> strict_witness;
};

namespace detail {

inline void check_lotteries(const PreferenceProfile& profile, const Lottery& p, const Lottery& q) {
    if (p.size() != profile.num_outcomes() || q.size() != profile.num_outcomes()) {
        throw InputError("lottery and profile outcome sets differ");
    }
}

}  // namespace detail

/// Compares sum_{y >_i x} p_y with the same sum for q over every agent i and outcome x.
/// An outcome in class k has the union of classes 0..k-1 as strict upper contour, so
/// one running sum per class boundary covers every outcome.
inline DominanceVerdict sd_compare(const PreferenceProfile& profile, const Lottery& p, const Lottery& q) {
    detail::check_lotteries(profile, p, q);
    bool any_less = false;
    std::optional<AgentOutcome> witness;
    Rational sp, sq;
    for (AgentIndex i = 0; i < profile.num_agents() && !any_less; ++i) {
        const auto& classes = profile.agents()[i].order.classes;
        sp = 0;
        sq = 0;
        OutcomeIndex first_strict = profile.num_outcomes();
        for (std::size_t k = 0; k < classes.size(); ++k) {
            if (k > 0) {
                const int c = cmp(sp, sq);
                if (c < 0) {
                    any_less = true;
                    break;
                }
                if (c > 0) first_strict = std::min(first_strict, classes[k].front());
            }
            for (OutcomeIndex x : classes[k]) {
                sp += p[x];
                sq += q[x];
            }
        }
        if (!witness && first_strict < profile.num_outcomes()) witness = AgentOutcome{i, first_strict};
    }
    if (any_less) return {Dominance::incomparable, std::nullopt};
    if (witness) return {Dominance::strictly_dominates, witness};
    return {Dominance::weakly_dominates_equal, std::nullopt};
}

/// Same relation computed from weak upper contours {y : y >=_i x}; kept as an
/// independent route for cross-checking `sd_compare`.
inline Dominance sd_compare_weak_contours(const PreferenceProfile& profile, const Lottery& p, const Lottery& q) {
    detail::check_lotteries(profile, p, q);
    bool strict = false;
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
            Rational sp = 0, sq = 0;
            for (OutcomeIndex y = 0; y < profile.num_outcomes(); ++y) {
                if (profile.rank(i, y) <= profile.rank(i, x)) {
                    sp += p[y];
                    sq += q[y];
                }
            }
            if (sp < sq) return Dominance::incomparable;
            if (sp > sq) strict = true;
        }
    }
    return strict ? Dominance::strictly_dominates : Dominance::weakly_dominates_equal;
}

// ---------------------------------------------------------------------------
// Certificates

/// Utilities under which the lottery's support maximizes welfare.
struct EfficientCertificate {
    UtilityProfile utilities;
};

/// An improving direction and the lottery it produces. `alpha` is integral, indexed by
/// profile outcome, and zero outside the Pareto set except in the non-Pareto shortcut,
/// where it moves mass from a dominated outcome to a Pareto-optimal dominator.
struct DominatedCertificate {
    std::vector<Integer> alpha;
    Lottery dominating;
    std::optional<AgentOutcome> strict_row;
};

class EfficiencyCertificate {
public:
    explicit EfficiencyCertificate(EfficientCertificate c) : value_(std::move(c)) {}
    explicit EfficiencyCertificate(DominatedCertificate c) : value_(std::move(c)) {}

    bool efficient() const { return std::holds_alternative<EfficientCertificate>(value_); }
    const UtilityProfile& utilities() const { return std::get<EfficientCertificate>(value_).utilities; }
    const DominatedCertificate& dominated() const { return std::get<DominatedCertificate>(value_); }

private:
    std::variant<EfficientCertificate, DominatedCertificate> value_;
};

/// The utilitarian system was infeasible: the lottery is not ex-ante efficient.
class NotEfficientError : public std::runtime_error {
public:
    NotEfficientError(LinearSystem system, FarkasCertificate certificate)
        : std::runtime_error("lottery is not ex-ante efficient: utilitarian system is infeasible"),
          system_(std::move(system)),
          certificate_(std::move(certificate)) {}

    const LinearSystem& system() const { return system_; }
    const FarkasCertificate& certificate() const { return certificate_; }

private:
    LinearSystem system_;
    FarkasCertificate certificate_;
};

/// Utility variables are laid out agent-major: u_i(x) is column i * |X| + x.
///
/// Rows: u_i(x) - u_i(y) >= 1 between consecutive classes of each agent (representatives),
/// u_i(x) - u_i(y) = 0 inside a class, welfare = 0 on the support, -welfare >= 0 elsewhere.
/// The consecutive-class rows imply the full pairwise family by transitivity.
inline LinearSystem utilitarian_system(const PreferenceProfile& profile, std::span<const OutcomeIndex> support) {
    const std::size_t n = profile.num_agents();
    const std::size_t m = profile.num_outcomes();
    LinearSystem system(n * m);
    for (AgentIndex i = 0; i < n; ++i) {
        const auto& classes = profile.agents()[i].order.classes;
        for (std::size_t k = 0; k < classes.size(); ++k) {
            const OutcomeIndex rep = classes[k].front();
            for (std::size_t t = 1; t < classes[k].size(); ++t) {
                RationalVector row(n * m);
                row[i * m + classes[k][t]] = 1;
                row[i * m + rep] = -1;
                system.add_eq(std::move(row), 0);
            }
            if (k + 1 < classes.size()) {
                RationalVector row(n * m);
                row[i * m + rep] = 1;
                row[i * m + classes[k + 1].front()] = -1;
                system.add_geq(std::move(row), 1);
            }
        }
    }
    std::vector<bool> in_support(m, false);
    for (OutcomeIndex x : support) in_support.at(x) = true;
    for (OutcomeIndex x = 0; x < m; ++x) {
        RationalVector row(n * m);
        for (AgentIndex i = 0; i < n; ++i) row[i * m + x] = in_support[x] ? 1 : -1;
        if (in_support[x]) {
            system.add_eq(std::move(row), 0);
        } else {
            system.add_geq(std::move(row), 0);
        }
    }
    return system;
}

/// Utilities representing every agent's preference such that every outcome in supp(p)
/// has welfare 0 and all others welfare <= 0. Throws NotEfficientError, carrying the
/// Farkas certificate, when no such utilities exist.
inline UtilityProfile utilitarian_certificate(const PreferenceProfile& profile, const Lottery& p) {
    if (p.size() != profile.num_outcomes()) throw InputError("lottery and profile outcome sets differ");
    const auto support = p.support();
    LinearSystem system = utilitarian_system(profile, support);
    FeasibilityResult result = solve_feasibility(system);
    if (!result.feasible()) throw NotEfficientError(std::move(system), result.farkas());
    UtilityProfile u(profile.num_agents(), profile.num_outcomes());
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
            u.at(i, x) = result.solution()[i * profile.num_outcomes() + x];
        }
    }
    return u;
}

/// The non-trivial-alpha system over the Pareto set: one row per (agent, Pareto outcome x)
/// holding the indicator of {y in X* : y >_i x}, with variables indexed by position in X*.
struct ContourSystem {
    std::vector<OutcomeIndex> pareto;
    RationalMatrix rows;
    std::vector<AgentOutcome> row_labels;
};

inline ContourSystem contour_system(const PreferenceProfile& profile, std::vector<OutcomeIndex> pareto) {
    ContourSystem sys{std::move(pareto), {}, {}};
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        for (OutcomeIndex x : sys.pareto) {
            RationalVector row(sys.pareto.size());
            for (std::size_t j = 0; j < sys.pareto.size(); ++j) {
                if (profile.prefers(i, sys.pareto[j], x)) row[j] = 1;
            }
            sys.rows.push_back(std::move(row));
            sys.row_labels.push_back({i, x});
        }
    }
    return sys;
}

/// q = p + eps * alpha with the largest eps keeping q nonnegative.
inline Lottery shift_lottery(const Lottery& p, std::span<const Integer> alpha) {
    std::optional<Rational> eps;
    for (OutcomeIndex x = 0; x < alpha.size(); ++x) {
        if (sgn(alpha[x]) >= 0) continue;
        Rational bound = p[x] / Rational(Integer(-alpha[x]));
        if (!eps || bound < *eps) eps = std::move(bound);
    }
    if (!eps || sgn(*eps) <= 0) throw std::logic_error("shift_lottery: direction leaves the simplex immediately");
    std::vector<Rational> w = p.weights();
    for (OutcomeIndex x = 0; x < alpha.size(); ++x) {
        if (sgn(alpha[x]) != 0) w[x] += *eps * Rational(alpha[x]);
    }
    return Lottery(std::move(w));
}

namespace detail {

inline std::vector<OutcomeIndex> normalize_support(const PreferenceProfile& profile, std::span<const OutcomeIndex> s) {
    if (s.empty()) throw InputError("support must be non-empty");
    std::vector<OutcomeIndex> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw InputError("duplicate outcome in support");
    if (out.back() >= profile.num_outcomes()) throw InputError("support names an unknown outcome");
    return out;
}

// First Pareto-optimal outcome (list order) that Pareto-dominates x.
inline OutcomeIndex pareto_dominator(const PreferenceProfile& profile, const std::vector<OutcomeIndex>& pareto,
                                     OutcomeIndex x) {
    for (OutcomeIndex y : pareto) {
        if (pareto_dominates(profile, y, x)) return y;
    }
    throw std::logic_error("pareto_dominator: dominated outcome without a Pareto-optimal dominator");
}

struct SupportDecision {
    bool efficient = false;
    std::vector<Integer> alpha;  // over profile outcomes
    std::optional<AgentOutcome> strict_row;
};

inline SupportDecision decide_support(const PreferenceProfile& profile, const std::vector<OutcomeIndex>& support,
                                      const std::vector<OutcomeIndex>& pareto) {
    SupportDecision d;
    for (OutcomeIndex x : support) {
        if (!std::binary_search(pareto.begin(), pareto.end(), x)) {
            d.alpha.assign(profile.num_outcomes(), 0);
            d.alpha[x] = -1;
            d.alpha[pareto_dominator(profile, pareto, x)] = 1;
            return d;
        }
    }
    ContourSystem sys = contour_system(profile, pareto);
    std::vector<std::size_t> free_vars, nonneg_vars;
    for (std::size_t j = 0; j < pareto.size(); ++j) {
        (std::binary_search(support.begin(), support.end(), pareto[j]) ? free_vars : nonneg_vars).push_back(j);
    }
    auto found = nontrivial_homogeneous(sys.rows, free_vars, nonneg_vars, true);
    if (!found) {
        d.efficient = true;
        return d;
    }
    // Restate as A x <= 0 for integralization: negated contour rows, both signs of the
    // zero-sum row, and -x_j <= 0 on the nonnegative block. Contour rows keep their order.
    const std::size_t k = pareto.size();
    RationalMatrix a;
    for (const auto& row : sys.rows) {
        RationalVector neg(k);
        for (std::size_t j = 0; j < k; ++j) neg[j] = -row[j];
        a.push_back(std::move(neg));
    }
    a.emplace_back(k, Rational(1));
    a.emplace_back(k, Rational(-1));
    for (std::size_t j : nonneg_vars) {
        RationalVector e(k);
        e[j] = -1;
        a.push_back(std::move(e));
    }
    IntegralWitness w = integralize(a, found->alpha);
    d.alpha.assign(profile.num_outcomes(), 0);
    for (std::size_t j = 0; j < k; ++j) d.alpha[pareto[j]] = w.x[j];
    d.strict_row = sys.row_labels[found->strict_row];
    return d;
}

}  // namespace detail

/// Decides whether S supports an ex-ante efficient lottery; certificates are built
/// around Uniform(S).
inline EfficiencyCertificate support_efficient(const PreferenceProfile& profile, std::span<const OutcomeIndex> s) {
    const auto support = detail::normalize_support(profile, s);
    const Lottery p = Lottery::uniform(profile.num_outcomes(), support);
    auto d = detail::decide_support(profile, support, pareto_set(profile));
    if (d.efficient) return EfficiencyCertificate(EfficientCertificate{utilitarian_certificate(profile, p)});
    Lottery q = shift_lottery(p, d.alpha);
    return EfficiencyCertificate(DominatedCertificate{std::move(d.alpha), std::move(q), d.strict_row});
}

/// Ex-ante efficiency of p. The decision depends only on supp(p); a dominating lottery
/// is rebuilt around p itself.
inline EfficiencyCertificate is_ex_ante_efficient(const PreferenceProfile& profile, const Lottery& p) {
    if (p.size() != profile.num_outcomes()) throw InputError("lottery and profile outcome sets differ");
    const auto support = p.support();
    auto d = detail::decide_support(profile, support, pareto_set(profile));
    if (d.efficient) return EfficiencyCertificate(EfficientCertificate{utilitarian_certificate(profile, p)});
    Lottery q = shift_lottery(p, d.alpha);
    return EfficiencyCertificate(DominatedCertificate{std::move(d.alpha), std::move(q), d.strict_row});
}

/// Substitution check of either certificate kind against p.
inline bool verify_certificate(const PreferenceProfile& profile, const Lottery& p, const EfficiencyCertificate& cert) {
    if (cert.efficient()) {
        const UtilityProfile& u = cert.utilities();
        if (!is_utilitarian_representation(profile, u)) return false;
        std::optional<Rational> best;
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
            Rational w = u.welfare(x);
            if (!best || w > *best) best = std::move(w);
        }
        for (OutcomeIndex x : p.support()) {
            if (u.welfare(x) != *best) return false;
        }
        return true;
    }
    return sd_compare(profile, cert.dominated().dominating, p).relation == Dominance::strictly_dominates;
}

// ---------------------------------------------------------------------------
// Witness sequences

/// Equal-length outcome multisets with disjoint supports; each entry is (outcome, count).
struct WitnessSequences {
    std::vector<std::pair<OutcomeIndex, Integer>> a_seq;
    std::vector<std::pair<OutcomeIndex, Integer>> b_seq;
    Integer length;
};

/// Per-outcome repetition cap: ceil(exp(|X*|/2 * ln |X*|)).
inline Integer repetition_bound(std::size_t pareto_size) { return hadamard_bound(1, pareto_size, pareto_size); }

/// Counts |{k : a_k >_i x}| - |{k : b_k >_i x}| straight from the sequences and checks
/// the pair is a valid witness over the Pareto set.
inline bool witness_sequences_valid(const PreferenceProfile& profile, const WitnessSequences& w) {
    const auto pareto = pareto_set(profile);
    Integer la = 0, lb = 0;
    std::vector<bool> used(profile.num_outcomes(), false);
    for (const auto* seq : {&w.a_seq, &w.b_seq}) {
        for (const auto& [x, count] : *seq) {
            if (x >= profile.num_outcomes() || used[x] || count <= 0) return false;
            if (!std::binary_search(pareto.begin(), pareto.end(), x)) return false;
            if (count > repetition_bound(pareto.size())) return false;
            used[x] = true;
        }
    }
    for (const auto& e : w.a_seq) la += e.second;
    for (const auto& e : w.b_seq) lb += e.second;
    if (la != lb || la != w.length || la == 0) return false;
    bool strict = false;
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        for (OutcomeIndex x : pareto) {
            Integer above_a = 0, above_b = 0;
            for (const auto& [y, c] : w.a_seq) {
                if (profile.prefers(i, y, x)) above_a += c;
            }
            for (const auto& [y, c] : w.b_seq) {
                if (profile.prefers(i, y, x)) above_b += c;
            }
            if (above_a < above_b) return false;
            if (above_a > above_b) strict = true;
        }
    }
    return strict;
}

/// Splits an integral improving direction into its positive part (a-sequence) and
/// negative part (b-sequence). `alpha` is indexed by profile outcome and must vanish
/// off the Pareto set.
inline WitnessSequences witness_sequences(const PreferenceProfile& profile, std::span<const Integer> alpha) {
    if (alpha.size() != profile.num_outcomes()) throw InputError("alpha length differs from the outcome count");
    if (std::all_of(alpha.begin(), alpha.end(), [](const Integer& v) { return sgn(v) == 0; })) {
        throw InputError("alpha is trivial");
    }
    WitnessSequences w;
    Integer total = 0;
    for (OutcomeIndex x = 0; x < alpha.size(); ++x) {
        total += alpha[x];
        if (sgn(alpha[x]) > 0) {
            w.a_seq.emplace_back(x, alpha[x]);
            w.length += alpha[x];
        } else if (sgn(alpha[x]) < 0) {
            w.b_seq.emplace_back(x, Integer(-alpha[x]));
        }
    }
    if (total != 0) throw InputError("alpha does not sum to zero");
    if (!witness_sequences_valid(profile, w)) {
        throw InputError("alpha does not solve the contour system with a strict row within the repetition bound");
    }
    return w;
}

inline WitnessSequences witness_sequences(const PreferenceProfile& profile, std::span<const Rational> alpha) {
    std::vector<Integer> z;
    for (const Rational& v : alpha) {
        if (!is_integral(v)) throw InputError("alpha is not integral");
        z.push_back(v.get_num());
    }
    return witness_sequences(profile, std::span<const Integer>(z));
}

// ---------------------------------------------------------------------------
// Equivalent outcomes

struct DedupResult {
    PreferenceProfile reduced;
    std::vector<OutcomeIndex> to_reduced;                  // original index -> reduced index
    std::vector<std::pair<std::string, std::string>> merge;  // original label -> reduced label
};

/// Merges outcomes that sit in the same class for every agent; the first outcome of
/// each group (list order) names the merged outcome.
inline DedupResult dedup_equivalent_outcomes(const PreferenceProfile& profile) {
    const std::size_t m = profile.num_outcomes();
    std::map<std::vector<std::size_t>, OutcomeIndex> seen;
    std::vector<OutcomeIndex> to_reduced(m);
    std::vector<OutcomeIndex> reps;
    for (OutcomeIndex x = 0; x < m; ++x) {
        std::vector<std::size_t> key(profile.num_agents());
        for (AgentIndex i = 0; i < profile.num_agents(); ++i) key[i] = profile.rank(i, x);
        auto [it, inserted] = seen.emplace(std::move(key), reps.size());
        if (inserted) reps.push_back(x);
        to_reduced[x] = it->second;
    }
    std::vector<std::string> labels;
    for (OutcomeIndex r : reps) labels.push_back(profile.outcomes()[r]);
    std::vector<Agent> agents;
    for (const Agent& a : profile.agents()) {
        Agent reduced{a.id, {}};
        for (const auto& cls : a.order.classes) {
            std::vector<OutcomeIndex> members;
            for (OutcomeIndex x : cls) {
                if (reps[to_reduced[x]] == x) members.push_back(to_reduced[x]);
            }
            reduced.order.classes.push_back(std::move(members));
        }
        agents.push_back(std::move(reduced));
    }
    std::vector<std::pair<std::string, std::string>> merge;
    for (OutcomeIndex x = 0; x < m; ++x) merge.emplace_back(profile.outcomes()[x], labels[to_reduced[x]]);
    return {PreferenceProfile(std::move(labels), std::move(agents)), std::move(to_reduced), std::move(merge)};
}

// ---------------------------------------------------------------------------
// Profile-level decision

/// Whether ex-ante and ex-post efficiency coincide. When they do, `utilities` has
/// constant welfare on the Pareto set; otherwise `dominated` holds an integral alpha and
/// a lottery strictly dominating Uniform(X*), and `witness` the sequence pair.
struct EquivalenceDecision {
    bool coincide = false;
    std::vector<OutcomeIndex> pareto;
    std::optional<UtilityProfile> utilities;
    std::optional<DominatedCertificate> dominated;
    std::optional<WitnessSequences> witness;
};

inline EquivalenceDecision equivalence(const PreferenceProfile& profile) {
    EquivalenceDecision out;
    out.pareto = pareto_set(profile);
    DedupResult dedup = dedup_equivalent_outcomes(profile);
    const PreferenceProfile& reduced = dedup.reduced;
    const auto reduced_pareto = pareto_set(reduced);
    auto d = detail::decide_support(reduced, reduced_pareto, reduced_pareto);

    if (d.efficient) {
        const UtilityProfile ur =
            utilitarian_certificate(reduced, Lottery::uniform(reduced.num_outcomes(), reduced_pareto));
        UtilityProfile u(profile.num_agents(), profile.num_outcomes());
        for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
            for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) u.at(i, x) = ur.at(i, dedup.to_reduced[x]);
        }
        out.coincide = true;
        out.utilities = std::move(u);
        return out;
    }

    std::vector<Integer> alpha(profile.num_outcomes(), 0);
    std::vector<bool> placed(reduced.num_outcomes(), false);
    for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) {
        const OutcomeIndex r = dedup.to_reduced[x];
        if (!placed[r]) {
            alpha[x] = d.alpha[r];
            placed[r] = true;
        }
    }
    const Lottery uniform = Lottery::uniform(profile.num_outcomes(), out.pareto);
    Lottery q = shift_lottery(uniform, alpha);
    std::optional<AgentOutcome> row;
    if (d.strict_row) {
        row = AgentOutcome{d.strict_row->agent, profile.outcome_index(reduced.outcomes()[d.strict_row->outcome])};
    }
    out.witness = witness_sequences(profile, std::span<const Integer>(alpha));
    out.dominated = DominatedCertificate{std::move(alpha), std::move(q), row};
    return out;
}

}  // namespace effix
