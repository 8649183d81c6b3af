#include "qarc/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace qarc {

namespace {

constexpr double kPivotTol = 1e-11;

enum class VarState : unsigned char { basic, at_lower, at_upper };

// Dense two-phase tableau.  Columns 0..n-1 are structural, n..n+m-1 are the
// phase-1 artificials.  The rhs column stores the current values of the
// basic variables directly (not B^{-1}b), which keeps the bookkeeping for
// nonbasic-at-upper variables in one place.
class Tableau {
public:
    Tableau(const LpProblem& p, const LpOptions& opts)
        : m_(p.rows), n_(p.cols), width_(p.cols + p.rows), opts_(opts),
          t_(p.rows * (p.cols + p.rows), 0.0), rhs_(p.rows, 0.0), d_(p.cols + p.rows, 0.0),
          upper_(p.cols + p.rows, LpProblem::kInf), state_(p.cols + p.rows, VarState::at_lower),
          basis_(p.rows, 0), row_sign_(p.rows, 1.0) {
        if (!p.upper.empty())
            for (std::size_t j = 0; j < n_; ++j) upper_[j] = p.upper[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const double s = p.b[i] < 0.0 ? -1.0 : 1.0;
            row_sign_[i] = s;
            for (std::size_t j = 0; j < n_; ++j) row(i)[j] = s * p.at(i, j);
            row(i)[n_ + i] = 1.0;
            rhs_[i] = s * p.b[i];
            basis_[i] = n_ + i;
            state_[n_ + i] = VarState::basic;
        }
    }

    LpSolution run(const LpProblem& p) {
        LpSolution sol;

        // Phase 1: minimize the sum of artificials.
        double obj = 0.0;
        for (std::size_t i = 0; i < m_; ++i) obj += rhs_[i];
        for (std::size_t j = 0; j < width_; ++j) {
            if (j >= n_) { d_[j] = 0.0; continue; }
            double s = 0.0;
            for (std::size_t i = 0; i < m_; ++i) s += row(i)[j];
            d_[j] = -s;
        }
        const PhaseResult ph1 = iterate(obj, /*allow_artificials=*/true, sol.iterations);
        if (ph1 == PhaseResult::iteration_limit) { sol.status = LpStatus::iteration_limit; return sol; }
        if (ph1 == PhaseResult::unbounded)
            throw std::runtime_error("solve_lp: phase 1 reported an unbounded direction (numerical breakdown)");
        if (obj > opts_.feas_tol) { sol.status = LpStatus::infeasible; return sol; }
        drive_out_artificials(sol.iterations);

        // Phase 2: minimize c over the feasible region found above.
        for (std::size_t j = 0; j < width_; ++j) d_[j] = j < n_ ? p.c[j] : 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t bj = basis_[i];
            const double cb = bj < n_ ? p.c[bj] : 0.0;
            if (cb == 0.0) continue;
            const double* ri = row(i);
            for (std::size_t j = 0; j < width_; ++j) d_[j] -= cb * ri[j];
        }
        double obj2 = 0.0;  // tracked but recomputed from x at the end
        const PhaseResult ph2 = iterate(obj2, /*allow_artificials=*/false, sol.iterations);
        if (ph2 == PhaseResult::iteration_limit) { sol.status = LpStatus::iteration_limit; return sol; }
        if (ph2 == PhaseResult::unbounded) { sol.status = LpStatus::unbounded; return sol; }

        sol.status = LpStatus::optimal;
        sol.x.assign(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j)
            if (state_[j] == VarState::at_upper) sol.x[j] = upper_[j];
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) sol.x[basis_[i]] = rhs_[i];
        sol.objective = 0.0;
        for (std::size_t j = 0; j < n_; ++j) sol.objective += p.c[j] * sol.x[j];
        // Multipliers from the artificial reduced costs: d[art_i] = -y_i in
        // the sign-flipped system, so y_i = -row_sign_i * d[art_i].
        sol.y.assign(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) sol.y[i] = -row_sign_[i] * d_[n_ + i];
        return sol;
    }

private:
    enum class PhaseResult { optimal, unbounded, iteration_limit };

    double* row(std::size_t i) { return t_.data() + i * width_; }
    const double* row(std::size_t i) const { return t_.data() + i * width_; }

    PhaseResult iterate(double& obj, bool allow_artificials, long& iterations) {
        const std::size_t limit = allow_artificials ? width_ : n_;
        for (;;) {
            if (iterations >= opts_.max_iterations) return PhaseResult::iteration_limit;

            // Bland entering rule: smallest eligible index.
            std::size_t enter = width_;
            double dir = 0.0;
            for (std::size_t j = 0; j < limit; ++j) {
                if (state_[j] == VarState::at_lower && d_[j] < -opts_.opt_tol) { enter = j; dir = 1.0; break; }
                if (state_[j] == VarState::at_upper && d_[j] > opts_.opt_tol) { enter = j; dir = -1.0; break; }
            }
            if (enter == width_) return PhaseResult::optimal;

            // Ratio test: basic variables move as x_B(t) = rhs - dir*t*col.
            // First find the tightest displacement, then apply Bland's rule
            // (smallest basic index) among the rows that achieve it.
            const auto row_limit = [&](std::size_t i, bool& at_upper) -> double {
                const double step = dir * row(i)[enter];
                if (step > kPivotTol) {  // basic value decreasing toward 0
                    at_upper = false;
                    const double t = rhs_[i] / step;
                    return t < 0.0 ? 0.0 : t;
                }
                if (step < -kPivotTol) {  // basic value increasing toward its upper bound
                    const double ub = upper_[basis_[i]];
                    if (ub == LpProblem::kInf) return LpProblem::kInf;
                    at_upper = true;
                    const double t = (ub - rhs_[i]) / (-step);
                    return t < 0.0 ? 0.0 : t;
                }
                return LpProblem::kInf;
            };
            double t_best = upper_[enter];  // bound-flip distance (may be +inf)
            for (std::size_t i = 0; i < m_; ++i) {
                bool dummy = false;
                const double t = row_limit(i, dummy);
                if (t < t_best) t_best = t;
            }
            if (t_best == LpProblem::kInf) return PhaseResult::unbounded;
            std::size_t leave_row = m_;  // m_ means bound flip
            std::size_t leave_index = width_;
            bool leave_at_upper = false;
            if (t_best < upper_[enter]) {
                for (std::size_t i = 0; i < m_; ++i) {
                    bool at_upper = false;
                    const double t = row_limit(i, at_upper);
                    if (t <= t_best + 1e-15 && basis_[i] < leave_index) {
                        leave_row = i;
                        leave_index = basis_[i];
                        leave_at_upper = at_upper;
                    }
                }
            }

            ++iterations;
            obj += d_[enter] * dir * t_best;
            if (leave_row == m_) {
                // Bound flip: the entering variable crosses to its other bound.
                for (std::size_t i = 0; i < m_; ++i) rhs_[i] -= dir * t_best * row(i)[enter];
                state_[enter] = state_[enter] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
                continue;
            }
            pivot(leave_row, enter, dir, t_best, leave_at_upper);
        }
    }

    void pivot(std::size_t r, std::size_t enter, double dir, double t, bool leave_at_upper) {
        // Update the basic values first (rhs is maintained as plain values).
        const double enter_value =
            (state_[enter] == VarState::at_upper ? upper_[enter] : 0.0) + dir * t;
        for (std::size_t i = 0; i < m_; ++i)
            if (i != r) rhs_[i] -= dir * t * row(i)[enter];
        rhs_[r] = enter_value;

        const std::size_t leaving = basis_[r];
        state_[leaving] = leave_at_upper ? VarState::at_upper : VarState::at_lower;
        state_[enter] = VarState::basic;
        basis_[r] = enter;

        // Row reduction.
        double* pr = row(r);
        const double inv = 1.0 / pr[enter];
        for (std::size_t j = 0; j < width_; ++j) pr[j] *= inv;
        pr[enter] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* ri = row(i);
            const double f = ri[enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) ri[j] -= f * pr[j];
            ri[enter] = 0.0;
        }
        const double fd = d_[enter];
        if (fd != 0.0) {
            for (std::size_t j = 0; j < width_; ++j) d_[j] -= fd * pr[j];
            d_[enter] = 0.0;
        }
    }

    // After phase 1, swap any artificial still basic (at level zero) for a
    // structural column; rows with no structural entry are redundant and
    // keep their zero artificial.
    void drive_out_artificials(long& iterations) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            const double* ri = row(i);
            std::size_t enter = width_;
            for (std::size_t j = 0; j < n_; ++j)
                if (state_[j] != VarState::basic && std::abs(ri[j]) > kPivotTol) { enter = j; break; }
            if (enter == width_) continue;
            ++iterations;
            const double dir = state_[enter] == VarState::at_upper ? -1.0 : 1.0;
            pivot(i, enter, dir, 0.0, false);
        }
    }

    std::size_t m_, n_, width_;
    LpOptions opts_;
    std::vector<double> t_;
    std::vector<double> rhs_;
    std::vector<double> d_;
    std::vector<double> upper_;
    std::vector<VarState> state_;
    std::vector<std::size_t> basis_;
    std::vector<double> row_sign_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p, const LpOptions& opts) {
    if (p.a.size() != p.rows * p.cols || p.b.size() != p.rows || p.c.size() != p.cols)
        throw std::invalid_argument("solve_lp: inconsistent problem dimensions");
    if (!p.upper.empty() && p.upper.size() != p.cols)
        throw std::invalid_argument("solve_lp: upper bound vector has wrong length");
    if (p.rows == 0 || p.cols == 0) {
        LpSolution sol;
        sol.status = LpStatus::optimal;
        sol.x.assign(p.cols, 0.0);
        sol.y.assign(p.rows, 0.0);
        return sol;
    }
    Tableau tab(p, opts);
    return tab.run(p);
}

}  // namespace qarc
