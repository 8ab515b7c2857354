#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "effix/rational.hpp"

namespace effix::detail {

// Dense exact tableau simplex for { M z = h, z >= 0 } with Bland's rule.
//
// Phase one adds one artificial column per row (the initial basis). The artificial
// columns stay in the tableau so that phase-one duals can be read off their reduced
// costs. After a feasible phase one, basic artificials are pivoted out or their rows
// dropped, and phase two may minimize any linear cost over the structural columns.
class Simplex {
public:
    Simplex(const std::vector<std::vector<Rational>>& rows, const std::vector<Rational>& rhs, std::size_t num_cols)
        : num_rows_(rows.size()), num_cols_(num_cols), sign_(rows.size(), 1) {
        width_ = num_cols_ + num_rows_ + 1;
        tableau_.assign(num_rows_, std::vector<Rational>(width_));
        basis_.resize(num_rows_);
        active_.assign(num_rows_, true);
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (rows[r].size() != num_cols_) throw std::invalid_argument("simplex: ragged constraint matrix");
            if (sgn(rhs[r]) < 0) sign_[r] = -1;
            for (std::size_t j = 0; j < num_cols_; ++j) {
                if (sgn(rows[r][j]) != 0) tableau_[r][j] = sign_[r] < 0 ? Rational(-rows[r][j]) : rows[r][j];
            }
            tableau_[r][num_cols_ + r] = 1;
            tableau_[r][width_ - 1] = sign_[r] < 0 ? Rational(-rhs[r]) : rhs[r];
            basis_[r] = num_cols_ + r;
        }
    }

    /// Minimizes the sum of artificials. Returns true iff the system is feasible.
    bool phase_one() {
        std::vector<Rational> cost(width_ - 1);
        for (std::size_t r = 0; r < num_rows_; ++r) cost[num_cols_ + r] = 1;
        reset_objective(cost);
        run(width_ - 1);
        feasible_ = sgn(objective_value_) == 0;
        phase_one_duals_ = duals();
        if (feasible_) drive_out_artificials();
        return feasible_;
    }

    /// Multipliers y (one per input row, in the unflipped orientation) for the
    /// phase-one dual; when phase one is infeasible, y^T M <= 0 on every structural
    /// column and y^T h > 0.
    const std::vector<Rational>& phase_one_duals() const { return phase_one_duals_; }

    /// Phase two over structural columns. Requires a feasible phase one.
    void minimize(const std::vector<Rational>& structural_cost) {
        if (!feasible_) throw std::logic_error("simplex: minimize before a feasible phase one");
        std::vector<Rational> cost(width_ - 1);
        for (std::size_t j = 0; j < num_cols_; ++j) cost[j] = structural_cost.at(j);
        reset_objective(cost);
        run(num_cols_);
    }

    std::vector<Rational> solution() const {
        std::vector<Rational> z(num_cols_);
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (active_[r] && basis_[r] < num_cols_) z[basis_[r]] = tableau_[r][width_ - 1];
        }
        return z;
    }

private:
    void reset_objective(const std::vector<Rational>& cost) {
        cost_ = cost;
        reduced_ = cost;
        objective_value_ = 0;
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (!active_[r]) continue;
            const Rational& cb = cost_[basis_[r]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j + 1 < width_; ++j) {
                if (sgn(tableau_[r][j]) != 0) reduced_[j] -= cb * tableau_[r][j];
            }
            objective_value_ += cb * tableau_[r][width_ - 1];
        }
    }

    // Bland's rule: lowest-index improving column, lowest-index basic variable on ratio ties.
    void run(std::size_t enterable_cols) {
        for (;;) {
            std::size_t enter = enterable_cols;
            for (std::size_t j = 0; j < enterable_cols; ++j) {
                if (sgn(reduced_[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == enterable_cols) return;
            std::size_t leave = num_rows_;
            Rational best_ratio;
            for (std::size_t r = 0; r < num_rows_; ++r) {
                if (!active_[r] || sgn(tableau_[r][enter]) <= 0) continue;
                Rational ratio = tableau_[r][width_ - 1] / tableau_[r][enter];
                if (leave == num_rows_ || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
                    leave = r;
                    best_ratio = std::move(ratio);
                }
            }
            if (leave == num_rows_) throw std::logic_error("simplex: unbounded objective");
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        std::vector<Rational>& prow = tableau_[row];
        const Rational inv = 1 / prow[col];
        for (Rational& v : prow) {
            if (sgn(v) != 0) v *= inv;
        }
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < width_; ++j) {
            if (sgn(prow[j]) != 0) nz.push_back(j);
        }
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (r == row || !active_[r]) continue;
            if (sgn(tableau_[r][col]) == 0) continue;
            const Rational f = tableau_[r][col];
            for (std::size_t j : nz) tableau_[r][j] -= f * prow[j];
        }
        if (sgn(reduced_[col]) != 0) {
            const Rational f = reduced_[col];
            for (std::size_t j : nz) {
                if (j + 1 < width_) reduced_[j] -= f * prow[j];
            }
            objective_value_ += f * prow[width_ - 1];
        }
        basis_[row] = col;
    }

    std::vector<Rational> duals() const {
        std::vector<Rational> y(num_rows_);
        for (std::size_t r = 0; r < num_rows_; ++r) {
            // reduced cost of artificial r is 1 - y_r in the flipped orientation
            Rational yr = 1 - reduced_[num_cols_ + r];
            y[r] = sign_[r] < 0 ? Rational(-yr) : yr;
        }
        return y;
    }

    void drive_out_artificials() {
        for (std::size_t r = 0; r < num_rows_; ++r) {
            if (!active_[r] || basis_[r] < num_cols_) continue;
            std::size_t col = num_cols_;
            for (std::size_t j = 0; j < num_cols_; ++j) {
                if (sgn(tableau_[r][j]) != 0) {
                    col = j;
                    break;
                }
            }
            if (col == num_cols_) {
                active_[r] = false;  // redundant row
            } else {
                pivot(r, col);
            }
        }
    }

    std::size_t num_rows_;
    std::size_t num_cols_;
    std::size_t width_ = 0;
    std::vector<int> sign_;
    std::vector<std::vector<Rational>> tableau_;
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
    std::vector<Rational> cost_;
    std::vector<Rational> reduced_;
    Rational objective_value_;
    bool feasible_ = false;
    std::vector<Rational> phase_one_duals_;
};

}  // namespace effix::detail
