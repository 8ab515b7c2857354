#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "effix/lp.hpp"
#include "effix/profile.hpp"
#include "effix/rational.hpp"

namespace effix {

/// 0/1 acceptability matrix, agent-major: matrix[i][x] = 1 iff agent i approves x.
/// An agent with a single class approves everything.
struct DichotomousView {
    std::vector<std::vector<int>> matrix;

    std::size_t num_agents() const { return matrix.size(); }
    std::size_t num_outcomes() const { return matrix.empty() ? 0 : matrix.front().size(); }

    /// Column x as the vector in {0,1}^N.
    std::vector<int> column(OutcomeIndex x) const {
        std::vector<int> c(num_agents());
        for (std::size_t i = 0; i < num_agents(); ++i) c[i] = matrix[i][x];
        return c;
    }

    /// Outcomes whose column is not strictly contained in another column, in outcome order.
    std::vector<OutcomeIndex> pareto_columns() const {
        std::vector<OutcomeIndex> out;
        for (OutcomeIndex x = 0; x < num_outcomes(); ++x) {
            bool dominated = false;
            for (OutcomeIndex y = 0; y < num_outcomes() && !dominated; ++y) {
                bool geq = true, strict = false;
                for (std::size_t i = 0; i < num_agents() && geq; ++i) {
                    geq = matrix[i][y] >= matrix[i][x];
                    strict = strict || matrix[i][y] > matrix[i][x];
                }
                dominated = geq && strict;
            }
            if (!dominated) out.push_back(x);
        }
        return out;
    }
};

inline std::optional<DichotomousView> as_dichotomous(const PreferenceProfile& profile) {
    if (!profile.is_dichotomous()) return std::nullopt;
    DichotomousView v;
    for (AgentIndex i = 0; i < profile.num_agents(); ++i) {
        std::vector<int> row(profile.num_outcomes());
        for (OutcomeIndex x = 0; x < profile.num_outcomes(); ++x) row[x] = profile.rank(i, x) == 0 ? 1 : 0;
        v.matrix.push_back(std::move(row));
    }
    return v;
}

/// Positive agent weights under which every Pareto-optimal column has the same weighted
/// approval count.
struct LambdaCertificate {
    std::vector<Rational> lambda;
    Rational constant;
};

/// Solves lambda_i >= 1 for all i and x . lambda - c = 0 for every Pareto-optimal x.
inline std::optional<LambdaCertificate> dichotomous_lambda(const DichotomousView& view) {
    const std::size_t n = view.num_agents();
    LinearSystem system(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector e(n + 1);
        e[i] = 1;
        system.add_geq(std::move(e), 1);
    }
    for (OutcomeIndex x : view.pareto_columns()) {
        RationalVector row(n + 1);
        for (std::size_t i = 0; i < n; ++i) row[i] = view.matrix[i][x];
        row[n] = -1;
        system.add_eq(std::move(row), 0);
    }
    FeasibilityResult result = solve_feasibility(system);
    if (!result.feasible()) return std::nullopt;
    const auto& s = result.solution();
    return LambdaCertificate{RationalVector(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n)), s[n]};
}

inline bool lambda_certifies(const DichotomousView& view, const LambdaCertificate& cert) {
    if (cert.lambda.size() != view.num_agents()) return false;
    for (const Rational& l : cert.lambda) {
        if (sgn(l) <= 0) return false;
    }
    for (OutcomeIndex x : view.pareto_columns()) {
        Rational s = 0;
        for (std::size_t i = 0; i < view.num_agents(); ++i) {
            if (view.matrix[i][x] != 0) s += cert.lambda[i];
        }
        if (s != cert.constant) return false;
    }
    return true;
}

/// C(n, floor(n/2)): the largest antichain in the subsets of n agents.
inline Integer sperner_bound(std::size_t n) {
    if (n == 0) throw InputError("sperner_bound needs at least one agent");
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n, n / 2);
    return c;
}

/// Repetition bound for dichotomous witness sequences over n agents:
/// ceil(exp(C/2 * ln C)) with C = sperner_bound(n).
inline Integer dichotomous_sequence_bound(std::size_t n) {
    const Integer c = sperner_bound(n);
    return hadamard_bound(1, c.get_ui(), c.get_ui());
}

}  // namespace effix
