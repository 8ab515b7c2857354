#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "effix/detail/simplex.hpp"
#include "effix/errors.hpp"
#include "effix/rational.hpp"

namespace effix {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (sgn(a[j]) != 0 && sgn(b[j]) != 0) s += a[j] * b[j];
    }
    return s;
}

/// { ineq_rows * x >= ineq_rhs, eq_rows * x = eq_rhs } over free x in Q^num_vars.
struct LinearSystem {
    std::size_t num_vars = 0;
    RationalMatrix ineq_rows;
    RationalVector ineq_rhs;
    RationalMatrix eq_rows;
    RationalVector eq_rhs;

    explicit LinearSystem(std::size_t vars) : num_vars(vars) {}

    void add_geq(RationalVector row, Rational rhs) {
        check(row);
        ineq_rows.push_back(std::move(row));
        ineq_rhs.push_back(std::move(rhs));
    }
    void add_eq(RationalVector row, Rational rhs) {
        check(row);
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(std::move(rhs));
    }

    bool satisfied_by(std::span<const Rational> x) const {
        if (x.size() != num_vars) return false;
        for (std::size_t r = 0; r < ineq_rows.size(); ++r) {
            if (dot(ineq_rows[r], x) < ineq_rhs[r]) return false;
        }
        for (std::size_t r = 0; r < eq_rows.size(); ++r) {
            if (dot(eq_rows[r], x) != eq_rhs[r]) return false;
        }
        return true;
    }

private:
    void check(const RationalVector& row) const {
        if (row.size() != num_vars) {
            throw InputError("dimension mismatch: row of length " + std::to_string(row.size()) + " in a system over " +
                             std::to_string(num_vars) + " variables");
        }
    }
};

/// Multipliers proving infeasibility: lambda_ge >= 0, lambda_ge^T A + lambda_eq^T C = 0,
/// lambda_ge . b + lambda_eq . d > 0.
struct FarkasCertificate {
    RationalVector ineq_multipliers;
    RationalVector eq_multipliers;
};

inline bool certifies_infeasibility(const LinearSystem& system, const FarkasCertificate& cert) {
    if (cert.ineq_multipliers.size() != system.ineq_rows.size() || cert.eq_multipliers.size() != system.eq_rows.size()) {
        return false;
    }
    RationalVector combo(system.num_vars);
    Rational rhs = 0;
    auto accumulate = [&](const RationalMatrix& rows, const RationalVector& b, const RationalVector& lambda) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (sgn(lambda[r]) == 0) continue;
            for (std::size_t j = 0; j < system.num_vars; ++j) {
                if (sgn(rows[r][j]) != 0) combo[j] += lambda[r] * rows[r][j];
            }
            rhs += lambda[r] * b[r];
        }
    };
    for (const Rational& l : cert.ineq_multipliers) {
        if (sgn(l) < 0) return false;
    }
    accumulate(system.ineq_rows, system.ineq_rhs, cert.ineq_multipliers);
    accumulate(system.eq_rows, system.eq_rhs, cert.eq_multipliers);
    return std::all_of(combo.begin(), combo.end(), [](const Rational& v) { return sgn(v) == 0; }) && sgn(rhs) > 0;
}

/// Exactly one of: a solution, or a Farkas certificate.
class FeasibilityResult {
public:
    explicit FeasibilityResult(RationalVector solution) : value_(std::move(solution)) {}
    explicit FeasibilityResult(FarkasCertificate cert) : value_(std::move(cert)) {}

    bool feasible() const { return std::holds_alternative<RationalVector>(value_); }
    const RationalVector& solution() const { return std::get<RationalVector>(value_); }
    const FarkasCertificate& farkas() const { return std::get<FarkasCertificate>(value_); }

private:
    std::variant<RationalVector, FarkasCertificate> value_;
};

namespace detail {

// Positive factor turning (row, rhs) into a primitive integral row.
inline Rational content_scale(const RationalVector& row, const Rational& rhs) {
    Integer l = rhs.get_den();
    for (const Rational& v : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    Integer g = 0;
    auto fold = [&](const Rational& v) {
        if (sgn(v) == 0) return;
        Integer z = v.get_num() * (l / v.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    };
    for (const Rational& v : row) fold(v);
    fold(rhs);
    if (g == 0) return 1;
    Rational scale(l, g);
    scale.canonicalize();
    return scale;
}

}  // namespace detail

/// Decides feasibility exactly. Free variables are split as x = x+ - x-, each
/// inequality gets a surplus column, and the phase-one duals of the resulting
/// standard form give the Farkas multipliers when no solution exists. Both
/// outcomes are re-checked by substitution before returning.
inline FeasibilityResult solve_feasibility(const LinearSystem& system) {
    const std::size_t m = system.num_vars;
    const std::size_t n_ineq = system.ineq_rows.size();
    const std::size_t n_eq = system.eq_rows.size();
    const std::size_t cols = 2 * m + n_ineq;
    if (system.ineq_rhs.size() != n_ineq || system.eq_rhs.size() != n_eq) throw InputError("dimension mismatch");

    RationalMatrix rows;
    RationalVector rhs;
    RationalVector scales;
    rows.reserve(n_ineq + n_eq);
    auto emit = [&](const RationalVector& row, const Rational& b, std::ptrdiff_t surplus) {
        if (row.size() != m) throw InputError("dimension mismatch");
        const Rational k = detail::content_scale(row, b);
        RationalVector out(cols);
        for (std::size_t j = 0; j < m; ++j) {
            if (sgn(row[j]) == 0) continue;
            out[j] = k * row[j];
            out[m + j] = -out[j];
        }
        if (surplus >= 0) out[2 * m + static_cast<std::size_t>(surplus)] = -1;
        rows.push_back(std::move(out));
        rhs.push_back(k * b);
        scales.push_back(k);
    };
    for (std::size_t r = 0; r < n_ineq; ++r) emit(system.ineq_rows[r], system.ineq_rhs[r], static_cast<std::ptrdiff_t>(r));
    for (std::size_t r = 0; r < n_eq; ++r) emit(system.eq_rows[r], system.eq_rhs[r], -1);

    detail::Simplex simplex(rows, rhs, cols);
    if (simplex.phase_one()) {
        const RationalVector z = simplex.solution();
        RationalVector x(m);
        for (std::size_t j = 0; j < m; ++j) x[j] = z[j] - z[m + j];
        if (!system.satisfied_by(x)) throw std::logic_error("solve_feasibility: solution failed substitution check");
        return FeasibilityResult(std::move(x));
    }
    const RationalVector& y = simplex.phase_one_duals();
    FarkasCertificate cert;
    for (std::size_t r = 0; r < n_ineq; ++r) cert.ineq_multipliers.push_back(y[r] * scales[r]);
    for (std::size_t r = 0; r < n_eq; ++r) cert.eq_multipliers.push_back(y[n_ineq + r] * scales[n_ineq + r]);
    if (!certifies_infeasibility(system, cert)) {
        throw std::logic_error("solve_feasibility: Farkas certificate failed substitution check");
    }
    return FeasibilityResult(std::move(cert));
}

struct HomogeneousSolution {
    RationalVector alpha;
    std::size_t strict_row = 0;
};

/// Looks for alpha with rows * alpha >= 0 componentwise, at least one row strictly
/// positive, alpha_j >= 0 on `nonneg_vars`, and sum(alpha) = 0 when `zero_sum`.
///
/// Homogeneity lets strictness of row r be normalized to row_r * alpha >= 1, so the
/// search is one feasibility problem per row, in row order; the first feasible row
/// wins. Zero rows and repeats of an already-refuted row are skipped.
inline std::optional<HomogeneousSolution> nontrivial_homogeneous(const RationalMatrix& rows,
                                                                 std::span<const std::size_t> free_vars,
                                                                 std::span<const std::size_t> nonneg_vars,
                                                                 bool zero_sum) {
    const std::size_t m = free_vars.size() + nonneg_vars.size();
    std::vector<int> role(m, 0);
    for (std::size_t j : free_vars) {
        if (j >= m || role[j] != 0) throw InputError("free and nonnegative variable sets must partition the variables");
        role[j] = 1;
    }
    for (std::size_t j : nonneg_vars) {
        if (j >= m || role[j] != 0) throw InputError("free and nonnegative variable sets must partition the variables");
        role[j] = 2;
    }
    for (const auto& row : rows) {
        if (row.size() != m) throw InputError("dimension mismatch in homogeneous system");
    }

    LinearSystem base(m);
    for (const auto& row : rows) base.add_geq(row, 0);
    for (std::size_t j : nonneg_vars) {
        RationalVector e(m);
        e[j] = 1;
        base.add_geq(std::move(e), 0);
    }
    if (zero_sum) base.add_eq(RationalVector(m, Rational(1)), 0);

    std::vector<std::size_t> refuted;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (std::all_of(row.begin(), row.end(), [](const Rational& v) { return sgn(v) == 0; })) continue;
        if (std::any_of(refuted.begin(), refuted.end(), [&](std::size_t q) { return rows[q] == row; })) continue;
        LinearSystem system = base;
        system.ineq_rhs[r] = 1;
        FeasibilityResult result = solve_feasibility(system);
        if (result.feasible()) return HomogeneousSolution{result.solution(), r};
        refuted.push_back(r);
    }
    return std::nullopt;
}

/// ceil((sqrt(k) * max_abs_coeff)^k) with k = min(rows, cols): the Hadamard bound on
/// any k-by-k minor of a matrix with entries bounded by max_abs_coeff.
inline Integer hadamard_bound(const Integer& max_abs_coeff, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw InputError("hadamard_bound needs positive dimensions");
    const unsigned long k = static_cast<unsigned long>(std::min(rows, cols));
    Integer ck;
    mpz_pow_ui(ck.get_mpz_t(), max_abs_coeff.get_mpz_t(), k);
    Integer kpow;
    if (k % 2 == 0) {
        mpz_ui_pow_ui(kpow.get_mpz_t(), k, k / 2);
        return kpow * ck;
    }
    mpz_ui_pow_ui(kpow.get_mpz_t(), k, (k - 1) / 2);
    const Integer base = kpow * ck;
    const Integer radicand = base * base * k;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
    if (root * root < radicand) root += 1;
    return root;
}

/// Integral nontrivial solution of A x <= 0.
struct IntegralWitness {
    std::vector<Integer> x;
    std::size_t strict_row = 0;  // first strict row of the input alpha; strict for x too
    Integer scale;               // max |x_j|
};

enum class IntegralizeRoute {
    automatic,  // primitive multiple of alpha if it meets the bound, else the vertex route
    vertex,     // always re-solve at a vertex of the box-constrained polytope
};

namespace detail {

inline Integer max_abs_entry(const RationalMatrix& a) {
    Integer best = 0;
    for (const auto& row : a) {
        for (const Rational& v : row) {
            if (!is_integral(v)) throw InputError("integralize needs an integral coefficient matrix");
            Integer z = abs(v.get_num());
            if (z > best) best = z;
        }
    }
    return best;
}

inline RationalVector as_rational(const std::vector<Integer>& x) {
    RationalVector out;
    out.reserve(x.size());
    for (const Integer& z : x) out.emplace_back(z);
    return out;
}

}  // namespace detail

/// Turns a rational nontrivial solution of A x <= 0 into an integral one whose entries
/// obey the Hadamard bound. The vertex route adds -1 <= x_j <= 1, moves to a vertex
/// minimizing the strict row, and scales by the lcm of the vertex denominators; by
/// Cramer's rule that lcm divides the determinant of the active square submatrix.
inline IntegralWitness integralize(const RationalMatrix& a, std::span<const Rational> alpha,
                                   IntegralizeRoute route = IntegralizeRoute::automatic) {
    const std::size_t m = alpha.size();
    if (m == 0 || a.empty()) throw InputError("integralize needs a non-empty system");
    for (const auto& row : a) {
        if (row.size() != m) throw InputError("dimension mismatch in integralize");
    }
    const Integer max_coeff = detail::max_abs_entry(a);
    std::size_t strict = a.size();
    for (std::size_t r = 0; r < a.size(); ++r) {
        const Rational v = dot(a[r], alpha);
        if (sgn(v) > 0) throw InputError("alpha violates row " + std::to_string(r) + " of A x <= 0");
        if (sgn(v) < 0 && strict == a.size()) strict = r;
    }
    if (strict == a.size()) throw InputError("alpha is not a nontrivial solution: no row is strict");
    const Integer bound = hadamard_bound(max_coeff, a.size(), m);

    auto finish = [&](std::vector<Integer> x) {
        IntegralWitness w{std::move(x), strict, 0};
        for (const Integer& z : w.x) {
            if (abs(z) > w.scale) w.scale = abs(z);
        }
        const RationalVector xr = detail::as_rational(w.x);
        for (std::size_t r = 0; r < a.size(); ++r) {
            const int s = sgn(dot(a[r], xr));
            if (s > 0 || (r == strict && s == 0)) throw std::logic_error("integralize: witness failed substitution");
        }
        if (w.scale > bound) throw std::logic_error("integralize: witness exceeds the Hadamard bound");
        return w;
    };

    if (route == IntegralizeRoute::automatic) {
        std::vector<Integer> c = primitive_integral(alpha);
        Integer top = 0;
        for (const Integer& z : c) {
            if (abs(z) > top) top = abs(z);
        }
        if (top <= bound) return finish(std::move(c));
    }

    // Shift y = x + 1 so the box becomes 0 <= y <= 2 and every column is nonnegative.
    // Columns: y (m), slack per row of A (n), slack per box row (m).
    const std::size_t n = a.size();
    const std::size_t cols = 2 * m + n;
    RationalMatrix rows;
    RationalVector rhs;
    for (std::size_t r = 0; r < n; ++r) {
        RationalVector row(cols);
        Rational b = 0;
        for (std::size_t j = 0; j < m; ++j) {
            row[j] = a[r][j];
            b += a[r][j];
        }
        row[m + r] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    }
    for (std::size_t j = 0; j < m; ++j) {
        RationalVector row(cols);
        row[j] = 1;
        row[m + n + j] = 1;
        rows.push_back(std::move(row));
        rhs.emplace_back(2);
    }
    detail::Simplex simplex(rows, rhs, cols);
    if (!simplex.phase_one()) throw std::logic_error("integralize: box polytope unexpectedly empty");
    RationalVector cost(cols);
    for (std::size_t j = 0; j < m; ++j) cost[j] = a[strict][j];
    simplex.minimize(cost);
    const RationalVector y = simplex.solution();
    RationalVector z(m);
    for (std::size_t j = 0; j < m; ++j) z[j] = y[j] - 1;
    const Integer l = lcm_of_denominators(z);
    std::vector<Integer> x;
    for (const Rational& v : z) x.push_back(v.get_num() * (l / v.get_den()));
    return finish(std::move(x));
}

}  // namespace effix
