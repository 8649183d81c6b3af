#include "qarc/qcalc.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qarc {

namespace {

constexpr double kLogDblMax = 709.782712893384;  // log(DBL_MAX)

[[noreturn]] void throw_overflow(int n, double q) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "q_integer overflow: q^{-(|n|-1)} out of double range for n=%d, q=%.17g",
                  n, q);
    throw std::overflow_error(msg);
}

}  // namespace

QDeformation::QDeformation(double q) : q_(q) {
    if (!(q > 0.0) || q > 1.0 || !std::isfinite(q))
        throw std::invalid_argument("QDeformation: q must lie in (0, 1]");
}

namespace detail {

double q_integer_sum(int n, double q) {
    if (n == 0) return 0.0;
    const int a = n < 0 ? -n : n;
    double s = 0.0;
    for (int k = 0; k < a; ++k)
        s += std::pow(q, static_cast<double>(a - 1 - 2 * k));
    return n < 0 ? -s : s;
}

double q_integer_ratio(int n, double q) {
    if (n == 0) return 0.0;
    const int a = n < 0 ? -n : n;
    const double lnq = std::log(q);
    if (static_cast<double>(a - 1) * (-lnq) > kLogDblMax) throw_overflow(n, q);
    const double lead = std::exp(static_cast<double>(a - 1) * (-lnq));  // q^{-(a-1)}
    const double num = -std::expm1(2.0 * a * lnq);                      // 1 - q^{2a}
    const double den = -std::expm1(2.0 * lnq);                          // 1 - q^2
    const double v = lead * (num / den);
    if (!std::isfinite(v)) throw_overflow(n, q);
    return n < 0 ? -v : v;
}

}  // namespace detail

double q_integer(int n, QDeformation q) {
    if (q.is_one()) return static_cast<double>(n);
    if (q.near_one()) return detail::q_integer_sum(n, q.value());
    return detail::q_integer_ratio(n, q.value());
}

Complex delta_q(int j, int k, QDeformation q) {
    return Complex(0.0, q_integer(j - k, q));
}

Complex psi_q(int j, int k, QDeformation q) {
    if (j == k) return Complex(0.0, 0.0);
    return Complex(0.0, -1.0 / q_integer(j - k, q));
}

double gamma_M(int j, int k, int M) {
    if (M < 0) throw std::invalid_argument("gamma_M: M must be non-negative");
    const long long d = std::llabs(static_cast<long long>(j) - static_cast<long long>(k));
    if (d > M) return 0.0;
    return static_cast<double>(M + 1 - d) / static_cast<double>(M + 1);
}

namespace {

// Partial sums of the zeta(2) tail: kTail[m] = sum_{k=m+1}^{K} 1/k^2,
// accumulated backwards so the small terms are added first.
constexpr int kTailTerms = 1'000'000;

const std::vector<double>& zeta2_tail_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kTailTerms + 1);
        t[kTailTerms] = 0.0;
        for (int k = kTailTerms; k >= 1; --k) {
            const double kd = static_cast<double>(k);
            t[k - 1] = t[k] + 1.0 / (kd * kd);
        }
        return t;
    }();
    return table;
}

}  // namespace

ApproxConstant epsilon_M(int M) {
    if (M < 0) throw std::invalid_argument("epsilon_M: M must be non-negative");
    ApproxConstant c;
    c.M = M;
    if (M < kTailTerms) {
        // Explicit partial sum to k = 10^6, integral bounds for the rest:
        // 1/(K+1) <= sum_{k>K} 1/k^2 <= 1/K.
        const double partial = zeta2_tail_table()[M];
        c.tail_lo = partial + 1.0 / (kTailTerms + 1.0);
        c.tail_hi = partial + 1.0 / kTailTerms;
    } else {
        c.tail_lo = 1.0 / (M + 1.0);
        c.tail_hi = 1.0 / static_cast<double>(M);
    }
    const double md = static_cast<double>(M);
    const double inner = md / ((md + 1.0) * (md + 1.0)) + c.tail_hi;
    c.value = std::sqrt(2.0) * std::sqrt(inner);
    return c;
}

}  // namespace qarc
