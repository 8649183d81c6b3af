#pragma once

#include <complex>

namespace qarc {

using Complex = std::complex<double>;

/// Deformation parameter q in (0, 1].  q = 1 is the classical (undeformed)
/// case; construction rejects anything outside the half-open interval.
class QDeformation {
public:
    // Below this distance from 1 the ratio form of the q-integer loses all
    // precision and the geometric-sum form is used instead.
    static constexpr double kSumBranchThreshold = 1e-6;

    explicit QDeformation(double q);

    double value() const noexcept { return q_; }
    bool is_one() const noexcept { return q_ == 1.0; }
    bool near_one() const noexcept { return 1.0 - q_ < kSumBranchThreshold; }

private:
    double q_;
};

/// q-integer [n]_q = (q^n - q^{-n}) / (q - q^{-1}), with [n]_1 = n.
/// Antisymmetric in n by construction.  Throws std::overflow_error when
/// q^{-(|n|-1)} leaves the double range; the message names n and q.
double q_integer(int n, QDeformation q);

namespace detail {
// Both evaluation branches, exposed so tests can compare them at the
// branch boundary.  The sum form is sign(n) * sum_{k=0}^{|n|-1} q^{|n|-1-2k};
// the ratio form rewrites the defining quotient as
// q^{-(|n|-1)} * (1 - q^{2|n|}) / (1 - q^2) and evaluates it through
// expm1/log to avoid cancellation near q = 1.
double q_integer_sum(int n, double q);
double q_integer_ratio(int n, double q);
}  // namespace detail

/// Symbol of the q-derivative: delta_q(j,k) = i [j-k]_q.
Complex delta_q(int j, int k, QDeformation q);

/// Symbol of the q-integral: psi_q(j,k) = -i / [j-k]_q off the diagonal,
/// 0 on it.  Satisfies 1 - psi_q(j,k) delta_q(j,k) = kronecker(j,k).
Complex psi_q(int j, int k, QDeformation q);

/// Triangular Fejer window: (M+1-|j-k|)/(M+1) for |j-k| <= M, else 0.
double gamma_M(int j, int k, int M);

/// eps_M = sqrt(2) * (M/(M+1)^2 + sum_{k>M} 1/k^2)^{1/2}, the constant
/// controlling the Fejer approximation error against the seminorm.
/// The zeta tail is bracketed by an explicit partial sum plus integral
/// remainder bounds, so `value` (computed from tail_hi) is a certified
/// upper bound for the true eps_M up to floating-point rounding.
struct ApproxConstant {
    int M = 0;
    double value = 0.0;
    double tail_lo = 0.0;
    double tail_hi = 0.0;
};

ApproxConstant epsilon_M(int M);

}  // namespace qarc
