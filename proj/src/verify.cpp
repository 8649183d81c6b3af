#include "qarc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

#include "qarc/fft.hpp"
#include "qarc/laurent.hpp"
#include "qarc/parallel.hpp"
#include "qarc/qcalc.hpp"
#include "qarc/qms.hpp"
#include "qarc/random.hpp"
#include "qarc/schur.hpp"

namespace qarc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPiOverSqrt3 = kPi / 1.7320508075688772;

struct Check {
    bool ok = true;
    long count = 0;
    std::string detail;

    void tally() { ++count; }

    template <typename... Args>
    void require(bool cond, const char* fmt, Args... args) {
        ++count;
        if (cond || !ok) return;
        if (!cond) {
            char buf[256];
            std::snprintf(buf, sizeof(buf), fmt, args...);
            ok = false;
            detail = buf;
        }
    }

    std::string summary() const {
        if (!ok) return detail;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%ld checks", count);
        return buf;
    }
};

double rel_gap(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

LaurentPoly random_poly(Rng& rng, int band, double density = 0.75) {
    std::map<int, Complex> m;
    for (int n = -band; n <= band; ++n) {
        const double gate = rng.uniform();
        const Complex c = rng.complex_gaussian();
        if (gate < density) m[n] = c;
    }
    if (m.empty()) m[0] = Complex(1.0, 0.0);
    return LaurentPoly(std::move(m));
}

double coeff_scale(const LaurentPoly& f) {
    double s = 0.0;
    for (const auto& [n, c] : f.coeffs()) s = std::max(s, std::abs(c));
    return s;
}

// Coefficientwise comparison with the tolerance measured against the
// largest coefficient in sight, so cancellations from large terms are
// judged at the scale they were produced at.
bool coeffs_close(const LaurentPoly& f, const LaurentPoly& g, double rtol, double* worst = nullptr) {
    const double scale = std::max({coeff_scale(f), coeff_scale(g), 1e-300});
    double w = 0.0;
    const auto visit = [&](int n) {
        const double d = std::abs(f.coeff(n) - g.coeff(n));
        w = std::max(w, d / scale);
    };
    for (const auto& [n, c] : f.coeffs()) visit(n);
    for (const auto& [n, c] : g.coeffs()) visit(n);
    if (worst) *worst = w;
    return w <= rtol;
}

std::vector<double> q_grid_wide() { return {0.2, 0.5, 0.9, 1.0 - 1e-7, 1.0}; }

// ---------------------------------------------------------------- qcalc --

void prop_qint_antisymmetry(Check& c, VerifyLevel) {
    for (const double qv : {0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999999, 1.0}) {
        const QDeformation q(qv);
        for (int n = -500; n <= 500; ++n)
            c.require(q_integer(-n, q) == -q_integer(n, q), "antisymmetry broken at n=%d q=%g", n, qv);
    }
    // small q needs a smaller frequency range before q^{-(n-1)} overflows
    for (const double qv : {0.05, 0.1, 0.2}) {
        const QDeformation q(qv);
        for (int n = -200; n <= 200; ++n)
            c.require(q_integer(-n, q) == -q_integer(n, q), "antisymmetry broken at n=%d q=%g", n, qv);
    }
}

void prop_symbol_hermitian(Check& c, VerifyLevel) {
    for (const double qv : {0.3, 0.7, 0.99, 1.0}) {
        const QDeformation q(qv);
        for (int j = -25; j <= 25; ++j)
            for (int k = -25; k <= 25; ++k) {
                c.require(std::conj(delta_q(k, j, q)) == delta_q(j, k, q),
                          "delta symbol not hermitian at (%d,%d) q=%g", j, k, qv);
                c.require(std::conj(psi_q(k, j, q)) == psi_q(j, k, q),
                          "psi symbol not hermitian at (%d,%d) q=%g", j, k, qv);
            }
    }
}

void prop_qint_dominates(Check& c, VerifyLevel) {
    for (const double qv : {0.3, 0.5, 0.7, 0.9, 0.99, 0.999999, 1.0}) {
        const QDeformation q(qv);
        for (int n = -300; n <= 300; ++n)
            c.require(std::abs(q_integer(n, q)) >= static_cast<double>(std::abs(n)),
                      "|[n]_q| < |n| at n=%d q=%g", n, qv);
    }
}

void prop_qint_branch_continuity(Check& c, VerifyLevel) {
    const double qb = 1.0 - 1e-6;  // ratio branch; the sum branch opens just above
    for (int n = 1; n <= 200; ++n) {
        const double r = detail::q_integer_ratio(n, qb);
        const double s = detail::q_integer_sum(n, qb);
        c.require(rel_gap(r, s) <= 1e-12, "branch forms disagree: n=%d gap=%.3g", n, rel_gap(r, s));
    }
    // continuity across the threshold itself
    const QDeformation lo(1.0 - 1e-6 - 1e-12), hi(1.0 - 1e-6 + 1e-12);
    for (int n = 1; n <= 200; ++n)
        c.require(rel_gap(q_integer(n, lo), q_integer(n, hi)) <= 1e-9,
                  "q_integer jumps across the branch threshold at n=%d", n);
}

void prop_q_pascal(Check& c, VerifyLevel) {
    for (const double qv : {0.3, 0.7, 0.9, 0.99, 1.0}) {
        const QDeformation q(qv);
        for (int n = -50; n <= 50; n += 2)
            for (int m = -50; m <= 50; ++m) {
                const double lhs = q_integer(n + m, q);
                const double rhs = std::pow(qv, n) * q_integer(m, q) +
                                   q_integer(n, q) * std::pow(qv, -m);
                c.require(rel_gap(lhs, rhs) <= 1e-12, "q-Pascal identity fails at n=%d m=%d q=%g", n, m, qv);
            }
    }
}

void prop_epsilon_constant(Check& c, VerifyLevel level) {
    const ApproxConstant e0 = epsilon_M(0);
    c.require(rel_gap(e0.value, kPiOverSqrt3) <= 1e-12, "eps_0 != pi/sqrt(3): %.15g", e0.value);
    const ApproxConstant e256 = epsilon_M(256);
    c.require(e256.value >= 0.1240 && e256.value <= 0.1255, "eps_256 = %.6g outside [0.1240, 0.1255]",
              e256.value);
    const int top = level == VerifyLevel::full ? 10000 : 2000;
    double prev = e0.value;
    for (int m = 1; m <= top; ++m) {
        const ApproxConstant e = epsilon_M(m);
        c.require(e.tail_lo <= e.tail_hi, "tail bracket inverted at M=%d", m);
        c.require(e.value < prev, "eps_M not strictly decreasing at M=%d", m);
        prev = e.value;
    }
}

// --------------------------------------------------------------- laurent --

void prop_twisted_leibniz(Check& c, VerifyLevel level) {
    Rng rng(101);
    const int pairs = level == VerifyLevel::full ? 100 : 25;
    for (const double qv : {0.3, 0.7, 0.99, 1.0}) {
        const QDeformation q(qv);
        for (int i = 0; i < pairs; ++i) {
            const LaurentPoly f = random_poly(rng, rng.uniform_int(0, 20));
            const LaurentPoly g = random_poly(rng, rng.uniform_int(0, 20));
            const LaurentPoly lhs = d_q(f * g, q);
            const LaurentPoly rhs = sigma(f, q, 1) * d_q(g, q) + d_q(f, q) * sigma(g, q, -1);
            double worst = 0.0;
            c.require(coeffs_close(lhs, rhs, 1e-12, &worst),
                      "twisted Leibniz fails: q=%g pair=%d gap=%.3g", qv, i, worst);
        }
    }
}

void prop_star_derivative(Check& c, VerifyLevel) {
    Rng rng(102);
    for (const double qv : q_grid_wide()) {
        const QDeformation q(qv);
        for (int i = 0; i < 40; ++i) {
            const LaurentPoly f = random_poly(rng, 24);
            double worst = 0.0;
            c.require(coeffs_close(d_q(f.adjoint(), q), d_q(f, q).adjoint(), 1e-15, &worst),
                      "d_q does not commute with the involution: q=%g gap=%.3g", qv, worst);
        }
    }
}

void prop_sigma_modular(Check& c, VerifyLevel) {
    Rng rng(103);
    for (const double qv : {0.3, 0.7, 0.99, 1.0}) {
        const QDeformation q(qv);
        for (int n = -20; n <= 20; ++n) {
            const LaurentPoly zn = LaurentPoly::monomial(n);
            double worst = 0.0;
            c.require(coeffs_close(sigma(zn, q), zn * std::pow(qv, n), 1e-14, &worst),
                      "sigma(z^n) != q^n z^n at n=%d q=%g", n, qv);
        }
        for (int i = 0; i < 40; ++i) {
            const LaurentPoly f = random_poly(rng, 20);
            double worst = 0.0;
            c.require(coeffs_close(sigma(f.adjoint(), q, 1), sigma(f, q, -1).adjoint(), 1e-13, &worst),
                      "sigma(f*) != sigma^{-1}(f)*: q=%g gap=%.3g", qv, worst);
        }
    }
}

void prop_fundamental_theorem(Check& c, VerifyLevel level) {
    Rng rng(104);
    const int polys = level == VerifyLevel::full ? 120 : 40;
    for (const double qv : q_grid_wide()) {
        const QDeformation q(qv);
        for (int i = 0; i < polys; ++i) {
            const LaurentPoly f = random_poly(rng, rng.uniform_int(0, 32));
            const LaurentPoly unit_h = LaurentPoly::constant(f.haar());
            double w1 = 0.0, w2 = 0.0;
            c.require(coeffs_close(f - q_integral(d_q(f, q), q), unit_h, 1e-12, &w1),
                      "f - int d f != h(f)1: q=%g gap=%.3g", qv, w1);
            c.require(coeffs_close(f - d_q(q_integral(f, q), q), unit_h, 1e-12, &w2),
                      "f - d int f != h(f)1: q=%g gap=%.3g", qv, w2);
        }
    }
}

void prop_poincare_function(Check& c, VerifyLevel level) {
    Rng rng(105);
    const int polys = level == VerifyLevel::full ? 80 : 25;
    for (const double qv : {0.3, 0.7, 1.0}) {
        const QDeformation q(qv);
        for (int i = 0; i < polys; ++i) {
            const LaurentPoly f = random_poly(rng, rng.uniform_int(1, 32));
            const LaurentPoly centered = f - LaurentPoly::constant(f.haar());
            const double lhs = sup_norm(centered).grid_max;
            const double rhs = sup_norm(d_q(f, q)).corrected_upper;
            c.require(lhs <= kPiOverSqrt3 * rhs * (1.0 + 1e-12),
                      "Poincare estimate fails: q=%g lhs=%.6g bound=%.6g", qv, lhs, kPiOverSqrt3 * rhs);
        }
    }
}

void prop_fejer_function(Check& c, VerifyLevel level) {
    Rng rng(106);
    const int polys = level == VerifyLevel::full ? 60 : 20;
    for (const int m : {1, 4, 16, 64}) {
        for (int i = 0; i < polys; ++i) {
            const LaurentPoly f = random_poly(rng, rng.uniform_int(0, 64));
            c.require(sup_norm(fejer(f, m)).grid_max <= sup_norm(f).corrected_upper * (1.0 + 1e-12),
                      "Fejer compression expands the sup norm at M=%d", m);
        }
    }
}

void prop_fejer_approximation(Check& c, VerifyLevel level) {
    Rng rng(107);
    const int polys = level == VerifyLevel::full ? 50 : 15;
    for (const int m : {1, 4, 16, 64}) {
        const double eps = epsilon_M(m).value;
        for (const double qv : {0.3, 0.7, 0.99, 1.0}) {
            const QDeformation q(qv);
            for (int i = 0; i < polys; ++i) {
                const LaurentPoly f = random_poly(rng, rng.uniform_int(0, 64));
                const double lhs = sup_norm(f - fejer(f, m)).grid_max;
                const double rhs = eps * sup_norm(d_q(f, q)).corrected_upper;
                c.require(lhs <= rhs * (1.0 + 1e-12) + 1e-15,
                          "Fejer approximation bound fails: M=%d q=%g lhs=%.6g rhs=%.6g", m, qv, lhs, rhs);
            }
        }
    }
}

void prop_fourier_bound(Check& c, VerifyLevel) {
    Rng rng(108);
    for (int i = 0; i < 60; ++i) {
        const LaurentPoly f = random_poly(rng, rng.uniform_int(0, 48));
        const double bound = sup_norm(f).corrected_upper;
        for (const auto& [n, alpha] : f.coeffs())
            c.require(std::abs(alpha) <= bound * (1.0 + 1e-12),
                      "|alpha_%d| = %.6g exceeds the certified sup bound %.6g", n, std::abs(alpha), bound);
    }
}

void prop_supnorm_oracle(Check& c, VerifyLevel level) {
    const int polys = level == VerifyLevel::full ? 1000 : 150;
    constexpr std::size_t kFine = 1u << 19;  // 128x the default 4096-point grid
    std::vector<std::string> failures(static_cast<std::size_t>(polys));
    parallel_for(static_cast<std::size_t>(polys), [&](std::size_t i) {
        Rng rng(0x5f3759df + i);
        const LaurentPoly f = random_poly(rng, 1 + static_cast<int>(i % 64));
        const SupNormCert cert = sup_norm(f);
        double fine = 0.0;
        for (const Complex& v : detail::grid_values_fft(f, kFine)) fine = std::max(fine, std::abs(v));
        if (fine > cert.corrected_upper * (1.0 + 1e-9) || fine < cert.grid_max * (1.0 - 1e-9)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "fine-grid max %.12g escapes the bracket [%.12g, %.12g] (band %d)", fine,
                          cert.grid_max, cert.corrected_upper, f.band());
            failures[i] = buf;
        }
    });
    for (const std::string& f : failures) {
        c.tally();
        if (!f.empty() && c.ok) {
            c.ok = false;
            c.detail = f;
        }
    }
}

// ----------------------------------------------------------------- schur --

std::vector<Ensemble> all_ensembles() { return {Ensemble::gaussian, Ensemble::sparse, Ensemble::rank_one}; }

void prop_schur_psi_contraction(Check& c, VerifyLevel level) {
    const std::vector<int> windows = level == VerifyLevel::full ? std::vector<int>{4, 16, 64}
                                                                : std::vector<int>{4, 16};
    const std::vector<double> qs = level == VerifyLevel::full ? std::vector<double>{0.2, 0.5, 0.9, 1.0}
                                                              : std::vector<double>{0.5, 1.0};
    const int per_ensemble = level == VerifyLevel::full ? 200 : 30;

    struct Case { int w; std::uint64_t seed; Ensemble ens; };
    std::vector<Case> cases;
    for (const Ensemble ens : all_ensembles())
        for (int i = 0; i < per_ensemble; ++i)
            cases.push_back({windows[static_cast<std::size_t>(i) % windows.size()],
                             static_cast<std::uint64_t>(i) + 7000, ens});

    std::vector<std::string> failures(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        const auto [w, seed, ens] = cases[i];
        const BandedOperator t = random_operator(w, seed, ens);
        const double nt = op_norm(t);
        for (const double qv : qs) {
            const QDeformation q(qv);
            const double napplied = op_norm(schur_apply(
                [&](int j, int k) { return psi_q(j, k, q); }, t));
            if (napplied > kPiOverSqrt3 * nt * (1.0 + 1e-9)) {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "q-integral contraction fails: W=%d q=%g ||psi T||=%.9g vs bound %.9g", w,
                              qv, napplied, kPiOverSqrt3 * nt);
                failures[i] = buf;
                return;
            }
        }
    });
    for (const std::string& f : failures) {
        c.tally();
        if (!f.empty() && c.ok) { c.ok = false; c.detail = f; }
    }
}

void prop_schur_fejer_contraction(Check& c, VerifyLevel level) {
    const int per_ensemble = level == VerifyLevel::full ? 60 : 15;
    std::vector<std::pair<Ensemble, std::uint64_t>> cases;
    for (const Ensemble ens : all_ensembles())
        for (int i = 0; i < per_ensemble; ++i) cases.emplace_back(ens, static_cast<std::uint64_t>(i) + 400);
    std::vector<std::string> failures(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        const auto [ens, seed] = cases[i];
        const int w = i % 2 == 0 ? 16 : 32;
        const BandedOperator t = random_operator(w, seed, ens);
        const double nt = op_norm(t);
        for (const int m : {0, 1, 4, 16}) {
            const double nm = op_norm(schur_apply(
                [&](int j, int k) { return Complex(gamma_M(j, k, m), 0.0); }, t));
            if (nm > nt * (1.0 + 1e-9)) {
                char buf[128];
                std::snprintf(buf, sizeof(buf), "Fejer multiplier expands: W=%d M=%d %.9g > %.9g", w, m,
                              nm, nt);
                failures[i] = buf;
                return;
            }
        }
    });
    for (const std::string& f : failures) {
        c.tally();
        if (!f.empty() && c.ok) { c.ok = false; c.detail = f; }
    }
}

void prop_schur_fundamental(Check& c, VerifyLevel level) {
    Rng rng(300);
    const int reps = level == VerifyLevel::full ? 30 : 10;
    for (const double qv : q_grid_wide()) {
        const QDeformation q(qv);
        const SchurSymbol delta = [&](int j, int k) { return delta_q(j, k, q); };
        const SchurSymbol psi = [&](int j, int k) { return psi_q(j, k, q); };
        for (int i = 0; i < reps; ++i) {
            const int w = std::vector<int>{4, 16, 64}[static_cast<std::size_t>(i) % 3];
            const Ensemble ens = all_ensembles()[static_cast<std::size_t>(i) % 3];
            const BandedOperator t = random_operator(w, static_cast<std::uint64_t>(i) + 31, ens);
            const BandedOperator lhs1 = t - schur_apply(psi, schur_apply(delta, t));
            const BandedOperator e = conditional_expectation(t);
            const BandedOperator lhs2 = t - schur_apply(delta, schur_apply(psi, t));
            const double scale = std::max(t.max_abs_entry(), 1e-300);
            c.require((lhs1 - e).max_abs_entry() <= 1e-12 * scale,
                      "T - int d T != E(T): W=%d q=%g gap=%.3g", w, qv, (lhs1 - e).max_abs_entry() / scale);
            c.require((lhs2 - e).max_abs_entry() <= 1e-12 * scale,
                      "S - d int S != E(S): W=%d q=%g gap=%.3g", w, qv, (lhs2 - e).max_abs_entry() / scale);
        }
    }
}

void prop_schur_poincare(Check& c, VerifyLevel level) {
    const int reps = level == VerifyLevel::full ? 40 : 12;
    std::vector<std::pair<Ensemble, int>> cases;
    for (const Ensemble ens : all_ensembles())
        for (int i = 0; i < reps; ++i) cases.emplace_back(ens, i);
    std::vector<std::string> failures(cases.size());
    parallel_for(cases.size(), [&](std::size_t idx) {
        const auto [ens, i] = cases[idx];
        const int w = std::vector<int>{4, 16, 32}[static_cast<std::size_t>(i) % 3];
        const double qv = std::vector<double>{0.5, 0.9, 1.0}[static_cast<std::size_t>(i) % 3];
        const QDeformation q(qv);
        const BandedOperator t = random_operator(w, static_cast<std::uint64_t>(i) + 900, ens);
        const double lhs = op_norm(t - conditional_expectation(t));
        const double rhs = op_norm(schur_apply([&](int j, int k) { return delta_q(j, k, q); }, t));
        if (lhs > kPiOverSqrt3 * rhs * (1.0 + 1e-9)) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "operator Poincare fails: W=%d q=%g ||T-E T||=%.9g bound=%.9g",
                          w, qv, lhs, kPiOverSqrt3 * rhs);
            failures[idx] = buf;
        }
    });
    for (const std::string& f : failures) {
        c.tally();
        if (!f.empty() && c.ok) { c.ok = false; c.detail = f; }
    }
}

void prop_schur_star_equivariance(Check& c, VerifyLevel) {
    for (const double qv : {0.3, 0.8, 1.0}) {
        const QDeformation q(qv);
        const SchurSymbol delta = [&](int j, int k) { return delta_q(j, k, q); };
        for (int i = 0; i < 20; ++i) {
            const BandedOperator t =
                random_operator(12, static_cast<std::uint64_t>(i) + 50, all_ensembles()[static_cast<std::size_t>(i) % 3]);
            const BandedOperator lhs = schur_apply(delta, t.adjoint());
            const BandedOperator rhs = schur_apply(delta, t).adjoint();
            const double scale = std::max(lhs.max_abs_entry(), 1e-300);
            c.require((lhs - rhs).max_abs_entry() <= 1e-13 * scale,
                      "star equivariance fails at q=%g rep=%d", qv, i);
        }
    }
}

void prop_schur_bimodularity(Check& c, VerifyLevel) {
    Rng rng(777);
    for (int i = 0; i < 25; ++i) {
        const int w = 10;
        const QDeformation q(0.7);
        const BandedOperator t = random_operator(w, static_cast<std::uint64_t>(i), Ensemble::gaussian);
        std::vector<Complex> d1(static_cast<std::size_t>(t.dim())), d2(static_cast<std::size_t>(t.dim()));
        for (Complex& v : d1) v = rng.complex_gaussian();
        for (Complex& v : d2) v = rng.complex_gaussian();
        const auto diag = [&](const std::vector<Complex>& d, int j) {
            return d[static_cast<std::size_t>(j + w)];
        };
        BandedOperator sandwiched(w);
        for (int j = -w; j <= w; ++j)
            for (int k = -w; k <= w; ++k) sandwiched.at(j, k) = diag(d1, j) * t.at(j, k) * diag(d2, k);
        const SchurSymbol delta = [&](int j, int k) { return delta_q(j, k, q); };
        const BandedOperator lhs = schur_apply(delta, sandwiched);
        BandedOperator rhs(w);
        const BandedOperator mt = schur_apply(delta, t);
        for (int j = -w; j <= w; ++j)
            for (int k = -w; k <= w; ++k) rhs.at(j, k) = diag(d1, j) * mt.at(j, k) * diag(d2, k);
        const double scale = std::max(lhs.max_abs_entry(), 1e-300);
        c.require((lhs - rhs).max_abs_entry() <= 1e-13 * scale, "bimodularity fails at rep=%d", i);
    }
}

void prop_schur_epsilon_bound(Check& c, VerifyLevel level) {
    Rng rng(888);
    const int reps = level == VerifyLevel::full ? 25 : 8;
    for (const int m : {1, 4, 16}) {
        const double eps = epsilon_M(m).value;
        for (const double qv : {0.3, 0.7, 1.0}) {
            const QDeformation q(qv);
            const SchurSymbol delta = [&](int j, int k) { return delta_q(j, k, q); };
            const SchurSymbol gamma = [&](int j, int k) { return Complex(gamma_M(j, k, m), 0.0); };
            for (int i = 0; i < reps; ++i) {
                // alternate between Toeplitz compressions of polynomials,
                // where both sides stay moderate, and generic random T
                const int w = i % 2 == 0 ? 16 : 32;
                BandedOperator t = i % 2 == 0
                                       ? BandedOperator::from_laurent(random_poly(rng, 24), w)
                                       : random_operator(w, static_cast<std::uint64_t>(i) + 60,
                                                         all_ensembles()[static_cast<std::size_t>(i) % 3]);
                const double lhs = op_norm(t - schur_apply(gamma, t));
                const double rhs = eps * op_norm(schur_apply(delta, t));
                c.require(lhs <= rhs * (1.0 + 1e-9),
                          "operator Fejer bound fails: M=%d q=%g W=%d lhs=%.9g rhs=%.9g", m, qv, w, lhs,
                          rhs);
            }
        }
    }
}

// ------------------------------------------------------------------- qms --

std::vector<double> equispaced_angles(int count) {
    std::vector<double> a(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) a[static_cast<std::size_t>(i)] = 2.0 * kPi * i / count;
    return a;
}

void prop_mk_symmetry_triangle(Check& c, VerifyLevel level) {
    const int m = 16;
    const QDeformation q(0.7);
    const int nang = level == VerifyLevel::full ? 8 : 5;
    const std::vector<double> angles = equispaced_angles(nang);
    const int grid = 1024;
    const double sec = 1.0 / std::cos(kPi * m / grid);

    std::vector<std::vector<double>> upper(angles.size(), std::vector<double>(angles.size(), 0.0));
    struct Pair { std::size_t i, j; };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < angles.size(); ++i)
        for (std::size_t j = 0; j < angles.size(); ++j)
            if (i != j) pairs.push_back({i, j});
    std::vector<double> values(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        const MKProblem p{{m, q}, EvalState(angles[pairs[k].i]), EvalState(angles[pairs[k].j]), grid};
        values[k] = mk_distance(p).upper;
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) upper[pairs[k].i][pairs[k].j] = values[k];

    for (std::size_t i = 0; i < angles.size(); ++i) {
        const MKProblem diag{{m, q}, EvalState(angles[i]), EvalState(angles[i]), grid};
        c.require(mk_distance(diag).lp_value == 0.0, "MK distance nonzero on the diagonal at angle %zu", i);
        for (std::size_t j = 0; j < angles.size(); ++j) {
            if (i == j) continue;
            c.require(std::abs(upper[i][j] - upper[j][i]) <= 1e-8,
                      "MK symmetry fails: |%.12g - %.12g| at pair (%zu,%zu)", upper[i][j], upper[j][i], i, j);
            for (std::size_t l = 0; l < angles.size(); ++l) {
                if (l == i || l == j) continue;
                c.require(upper[i][j] <= sec * (upper[i][l] + upper[l][j]) + 1e-8,
                          "MK triangle fails at (%zu,%zu,%zu)", i, l, j);
            }
        }
    }
}

void prop_mk_rotation(Check& c, VerifyLevel) {
    const int m = 8;
    const int grid = 1024;
    const QDeformation q(0.6);
    const double base = mk_distance({{m, q}, EvalState(0.4), EvalState(2.0), grid}).upper;
    // shifting both angles by a grid multiple maps the constraint set to itself
    for (const int steps : {1, 17, 400}) {
        const double delta = 2.0 * kPi * steps / grid;
        const double shifted =
            mk_distance({{m, q}, EvalState(0.4 + delta), EvalState(2.0 + delta), grid}).upper;
        c.require(std::abs(shifted - base) <= 1e-8, "grid-aligned rotation moved the distance by %.3g",
                  std::abs(shifted - base));
    }
    // a generic rotation may land between grid points; only bracket slack remains
    const double sec = 1.0 / std::cos(kPi * m / grid);
    const double generic = mk_distance({{m, q}, EvalState(0.4 + 0.1234), EvalState(2.0 + 0.1234), grid}).upper;
    c.require(std::abs(generic - base) <= (sec - 1.0) * std::max(generic, base) + 1e-8,
              "rotation invariance beyond bracket slack: %.3g", std::abs(generic - base));
}

void prop_mk_band_monotone(Check& c, VerifyLevel) {
    const int grid = 1024;
    for (const double qv : {0.7, 1.0}) {
        const QDeformation q(qv);
        for (const auto& [ta, tb] : std::vector<std::pair<double, double>>{{0.0, kPi}, {0.0, kPi / 2}, {0.3, 2.0}}) {
            double prev = -1.0;
            for (const int m : {2, 4, 8, 16}) {
                const double v = mk_distance({{m, q}, EvalState(ta), EvalState(tb), grid}).lp_value;
                c.require(v >= prev - 1e-7, "lp_value decreased in M: q=%g M=%d %.12g < %.12g", qv, m, v, prev);
                prev = v;
            }
        }
    }
}

void prop_mk_zero_distance(Check& c, VerifyLevel) {
    for (const double qv : {0.5, 1.0}) {
        const QDeformation q(qv);
        for (const int m : {1, 4}) {
            for (const double gap : {0.1, 0.5, 2.0}) {
                const MKResult r = mk_distance({{m, q}, EvalState(1.0), EvalState(1.0 + gap), 0});
                c.require(r.lower >= 1e-6, "states %.1f apart look at distance %.3g (M=%d q=%g)", gap,
                          r.lower, m, qv);
            }
            const MKResult same = mk_distance({{m, q}, EvalState(2.5), EvalState(2.5), 0});
            c.require(same.lp_value == 0.0, "diagonal distance not exactly zero (M=%d q=%g)", m, qv);
        }
    }
}

void prop_mk_witness_feasible(Check& c, VerifyLevel) {
    for (const double qv : {0.7, 1.0}) {
        const QDeformation q(qv);
        for (const int m : {4, 16}) {
            const int grid = default_mk_grid(m);
            const MKProblem p{{m, q}, EvalState(0.3), EvalState(2.4), grid};
            const MKResult r = mk_distance(p);
            // objective reproduced by the witness
            const double obj = (r.optimizer.eval(p.state_a.theta()) - r.optimizer.eval(p.state_b.theta())).real();
            c.require(std::abs(obj - r.lp_value) <= 1e-7 * std::max(1.0, r.lp_value),
                      "witness objective %.12g != lp value %.12g", obj, r.lp_value);
            // witness is self-adjoint
            double worst = 0.0;
            c.require(coeffs_close(r.optimizer, r.optimizer.adjoint(), 1e-12, &worst),
                      "witness is not self-adjoint (gap %.3g)", worst);
            // feasibility on the sampling grid certifies the rescaled seminorm
            const LaurentPoly g = d_q(r.optimizer, q);
            double gmax = 0.0;
            for (int k = 0; k < grid; ++k) gmax = std::max(gmax, std::abs(g.eval(2.0 * kPi * k / grid)));
            c.require(gmax <= 1.0 + 1e-9, "witness violates the grid constraints: %.12g", gmax);
        }
    }
}

void prop_diameter_bound(Check& c, VerifyLevel level) {
    const std::vector<int> bands = level == VerifyLevel::full ? std::vector<int>{4, 16, 64}
                                                              : std::vector<int>{4, 16};
    const std::vector<double> angles = equispaced_angles(level == VerifyLevel::full ? 8 : 5);
    for (const double qv : {0.5, 1.0}) {
        for (const int m : bands) {
            try {
                const double worst = diameter_scan({m, QDeformation(qv)}, angles);
                c.require(worst <= 2.0 * kPiOverSqrt3 + 1e-6, "diameter %.9g exceeds 2 pi/sqrt3", worst);
            } catch (const std::exception& e) {
                c.require(false, "diameter scan failed: %s", e.what());
            }
        }
    }
}

void prop_leibniz_divergence(Check& c, VerifyLevel level) {
    for (const double qv : {0.3, 0.5, 0.8}) {
        const QDeformation q(qv);
        for (int n = 20; n <= 60; ++n) {
            const double r = leibniz_ratio(n, q);
            c.require(std::abs(r * 2.0 * std::pow(qv, n) - 1.0) <= 0.01,
                      "ratio asymptote fails: q=%g n=%d", qv, n);
            c.require(rel_gap(r * 2.0 * q_integer(n, q), q_integer(2 * n, q)) <= 1e-15,
                      "defining identity fails: q=%g n=%d", qv, n);
        }
    }
    const QDeformation one(1.0);
    const long top = level == VerifyLevel::full ? 1000000 : 10000;
    for (long n = 1; n <= top; ++n) {
        if (leibniz_ratio(static_cast<int>(n), one) != 1.0) {
            c.require(false, "ratio at q=1 differs from 1 at n=%ld", n);
            break;
        }
        c.tally();
    }
}

void prop_q1_arclength(Check& c, VerifyLevel level) {
    const QDeformation one(1.0);
    const std::vector<int> bands = level == VerifyLevel::full ? std::vector<int>{16, 64, 256}
                                                              : std::vector<int>{16, 64};
    const int grid = level == VerifyLevel::full ? 10240 : 2560;
    for (const double dth : {kPi / 4, kPi / 2, kPi}) {
        double prev = -1.0;
        for (const int m : bands) {
            const double v = mk_distance({{m, one}, EvalState(0.0), EvalState(dth), grid}).lp_value;
            const double tol = 2.0 * epsilon_M(m).value + 0.01;
            c.require(std::abs(v - dth) <= tol, "arc length not recovered: M=%d dth=%.4f lp=%.6f tol=%.4f",
                      m, dth, v, tol);
            c.require(v >= prev - 1e-7, "lp value not monotone in M at dth=%.4f", dth);
            prev = v;
        }
    }
}

void prop_gh_validity(Check& c, VerifyLevel) {
    for (const double qv : {0.5, 0.9, 0.99, 1.0}) {
        for (const double q0v : {0.5, 0.9, 1.0}) {
            for (const int m : {0, 1, 2, 8, 32}) {
                const GHBoundReport rep = gh_band_bound(m, QDeformation(qv), QDeformation(q0v));
                c.require(rep.chi_lower <= rep.chi_upper, "chi bracket inverted: M=%d", m);
                c.require((rep.band_bound == 0.0) == (rep.chi_upper == 0.0),
                          "band bound / chi zero sets differ at M=%d q=%g q0=%g", m, qv, q0v);
                c.require(rep.band_bound >= 0.0, "negative band bound");
                c.require(rel_gap(rep.total_upper, 2.0 * rep.eps_M + rep.band_bound) <= 1e-15,
                          "total bound is not the stated composition");
                if (qv == q0v)
                    c.require(rep.chi_upper == 0.0 && rep.band_bound == 0.0,
                              "chi(q0) != 0 at M=%d q=%g", m, qv);
            }
        }
    }
}

void prop_continuity_scan(Check& c, VerifyLevel level) {
    const QDeformation one(1.0);
    std::vector<int> bands;
    if (level == VerifyLevel::full) {
        for (int m = 1; m <= 64; ++m) bands.push_back(m);
    } else {
        bands = {1, 2, 4, 8, 16, 32, 64};
    }
    const std::vector<double> qs = {0.9, 0.99, 0.999};
    const ContinuityScan scan = continuity_scan(one, qs, bands);
    // per fixed M the bound improves as q approaches q0 (strictly for M >= 2;
    // M = 1 is flat because [1]_q = 1 for every q)
    const std::size_t nm = bands.size();
    for (std::size_t bi = 0; bi < nm; ++bi) {
        for (std::size_t qi = 0; qi + 1 < qs.size(); ++qi) {
            const double far = scan.rows[qi * nm + bi].total_upper;
            const double near = scan.rows[(qi + 1) * nm + bi].total_upper;
            if (bands[bi] == 1)
                c.require(near <= far + 1e-15, "M=1 row should be flat");
            else
                c.require(near < far, "bound not improving toward q0 at M=%d (%.9g !< %.9g)", bands[bi],
                          near, far);
        }
    }
    // at q = q0 the scan collapses to the Fejer floor
    const ContinuityScan at_q0 = continuity_scan(one, {1.0}, bands);
    double floor = std::numeric_limits<double>::infinity();
    for (const int m : bands) floor = std::min(floor, 2.0 * epsilon_M(m).value);
    c.require(rel_gap(at_q0.best[0].second, floor) <= 1e-15,
              "scan at q=q0 should equal the Fejer floor %.12g, got %.12g", floor, at_q0.best[0].second);
}

struct Property {
    const char* name;
    std::function<void(Check&, VerifyLevel)> fn;
};

const std::vector<Property>& property_table() {
    static const std::vector<Property> table = {
        {"qcalc/antisymmetry", prop_qint_antisymmetry},
        {"qcalc/symbol-hermitian", prop_symbol_hermitian},
        {"qcalc/qint-dominates-n", prop_qint_dominates},
        {"qcalc/branch-continuity", prop_qint_branch_continuity},
        {"qcalc/q-pascal", prop_q_pascal},
        {"qcalc/epsilon-constant", prop_epsilon_constant},
        {"laurent/twisted-leibniz", prop_twisted_leibniz},
        {"laurent/star-derivative", prop_star_derivative},
        {"laurent/sigma-modular", prop_sigma_modular},
        {"laurent/fundamental-theorem", prop_fundamental_theorem},
        {"laurent/poincare", prop_poincare_function},
        {"laurent/fejer-contraction", prop_fejer_function},
        {"laurent/fejer-approximation", prop_fejer_approximation},
        {"laurent/fourier-bound", prop_fourier_bound},
        {"laurent/supnorm-oracle", prop_supnorm_oracle},
        {"schur/psi-contraction", prop_schur_psi_contraction},
        {"schur/fejer-contraction", prop_schur_fejer_contraction},
        {"schur/fundamental-identities", prop_schur_fundamental},
        {"schur/poincare-quotient", prop_schur_poincare},
        {"schur/star-equivariance", prop_schur_star_equivariance},
        {"schur/bimodularity", prop_schur_bimodularity},
        {"schur/epsilon-approximation", prop_schur_epsilon_bound},
        {"qms/mk-symmetry-triangle", prop_mk_symmetry_triangle},
        {"qms/mk-rotation", prop_mk_rotation},
        {"qms/mk-band-monotone", prop_mk_band_monotone},
        {"qms/mk-zero-distance", prop_mk_zero_distance},
        {"qms/mk-witness-feasible", prop_mk_witness_feasible},
        {"qms/diameter-bound", prop_diameter_bound},
        {"qms/leibniz-divergence", prop_leibniz_divergence},
        {"qms/q1-arclength", prop_q1_arclength},
        {"qms/gh-validity", prop_gh_validity},
        {"qms/continuity-scan", prop_continuity_scan},
    };
    return table;
}

}  // namespace

std::vector<PropertyReport> run_verify(VerifyLevel level) {
    std::vector<PropertyReport> reports;
    reports.reserve(property_table().size());
    for (const Property& prop : property_table()) {
        PropertyReport rep;
        rep.name = prop.name;
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            prop.fn(check, level);
            rep.passed = check.ok;
            rep.detail = check.summary();
        } catch (const std::exception& e) {
            rep.passed = false;
            rep.detail = std::string("exception: ") + e.what();
        }
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace qarc
