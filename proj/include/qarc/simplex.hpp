#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace qarc {

/// Linear program in computational standard form:
///
///     minimize    c . x
///     subject to  A x = b,   0 <= x_j <= upper_j
///
/// where upper_j may be +infinity.  Row-major dense storage; instances here
/// stay small (hundreds of rows, tens of thousands of columns).
struct LpProblem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;      // rows x cols, row-major
    std::vector<double> b;      // rows
    std::vector<double> c;      // cols
    std::vector<double> upper;  // cols; empty means all +infinity

    double& at(std::size_t r, std::size_t j) { return a[r * cols + j]; }
    double at(std::size_t r, std::size_t j) const { return a[r * cols + j]; }

    static constexpr double kInf = std::numeric_limits<double>::infinity();
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    double objective = 0.0;
    std::vector<double> x;  // cols
    std::vector<double> y;  // rows: dual multipliers of the equality constraints
    long iterations = 0;    // total pivots over both phases
};

struct LpOptions {
    double feas_tol = 1e-9;
    double opt_tol = 1e-8;
    long max_iterations = 200000;
};

/// Two-phase bounded-variable primal simplex on a dense tableau with
/// deterministic Bland pivoting (smallest eligible index enters, smallest
/// basic index among the tightest blockers leaves), which excludes cycling.
LpSolution solve_lp(const LpProblem& p, const LpOptions& opts = {});

}  // namespace qarc
