#include "qarc/laurent.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qarc {

namespace {

[[noreturn]] void throw_sigma_overflow(int n, double q, int power) {
    char msg[128];
    std::snprintf(msg, sizeof(msg), "sigma overflow: q^{n*power} out of range for n=%d, q=%.17g, power=%d",
                  n, q, power);
    throw std::overflow_error(msg);
}

}  // namespace

LaurentPoly::LaurentPoly(std::map<int, Complex> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= kPruneThreshold)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

LaurentPoly LaurentPoly::constant(Complex c) { return monomial(0, c); }

LaurentPoly LaurentPoly::monomial(int n, Complex c) {
    std::map<int, Complex> m;
    m[n] = c;
    return LaurentPoly(std::move(m));
}

Complex LaurentPoly::coeff(int n) const {
    const auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

int LaurentPoly::band() const noexcept {
    int b = 0;
    for (const auto& [n, c] : coeffs_) {
        const int a = n < 0 ? -n : n;
        if (a > b) b = a;
    }
    return b;
}

Complex LaurentPoly::eval(double theta) const {
    if (coeffs_.empty()) return {0.0, 0.0};
    const int b = band();
    // Dense coefficient tables for Horner accumulation on each side.
    std::vector<Complex> pos(static_cast<std::size_t>(b) + 1), neg(static_cast<std::size_t>(b) + 1);
    for (const auto& [n, c] : coeffs_) {
        if (n >= 0)
            pos[static_cast<std::size_t>(n)] = c;
        else
            neg[static_cast<std::size_t>(-n)] = c;
    }
    const Complex z = std::polar(1.0, theta);
    const Complex w = std::conj(z);
    Complex up(0.0, 0.0), down(0.0, 0.0);
    for (int k = b; k >= 1; --k) {
        up = up * z + pos[static_cast<std::size_t>(k)];
        down = down * w + neg[static_cast<std::size_t>(k)];
    }
    return pos[0] + up * z + down * w;
}

LaurentPoly LaurentPoly::adjoint() const {
    std::map<int, Complex> m;
    for (const auto& [n, c] : coeffs_) m[-n] = std::conj(c);
    return LaurentPoly(std::move(m));
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& g) const {
    std::map<int, Complex> m = coeffs_;
    for (const auto& [n, c] : g.coeffs_) m[n] += c;
    return LaurentPoly(std::move(m));
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& g) const {
    std::map<int, Complex> m = coeffs_;
    for (const auto& [n, c] : g.coeffs_) m[n] -= c;
    return LaurentPoly(std::move(m));
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& g) const {
    std::map<int, Complex> m;
    for (const auto& [n, a] : coeffs_)
        for (const auto& [k, b] : g.coeffs_) m[n + k] += a * b;
    return LaurentPoly(std::move(m));
}

LaurentPoly LaurentPoly::operator*(Complex s) const {
    std::map<int, Complex> m;
    for (const auto& [n, c] : coeffs_) m[n] = c * s;
    return LaurentPoly(std::move(m));
}

LaurentPoly sigma(const LaurentPoly& f, QDeformation q, int power) {
    if (power != 1 && power != -1)
        throw std::invalid_argument("sigma: power must be +1 or -1");
    if (q.is_one()) return f;
    std::map<int, Complex> m;
    for (const auto& [n, c] : f.coeffs()) {
        const double s = std::pow(q.value(), static_cast<double>(n) * power);
        if (!std::isfinite(s)) throw_sigma_overflow(n, q.value(), power);
        m[n] = c * s;
    }
    return LaurentPoly(std::move(m));
}

LaurentPoly d_q(const LaurentPoly& f, QDeformation q) {
    std::map<int, Complex> m;
    for (const auto& [n, c] : f.coeffs()) m[n] = c * Complex(0.0, q_integer(n, q));
    return LaurentPoly(std::move(m));
}

LaurentPoly q_integral(const LaurentPoly& f, QDeformation q) {
    std::map<int, Complex> m;
    for (const auto& [n, c] : f.coeffs()) {
        if (n == 0) continue;
        m[n] = c * Complex(0.0, -1.0 / q_integer(n, q));
    }
    return LaurentPoly(std::move(m));
}

LaurentPoly fejer(const LaurentPoly& f, int M) {
    std::map<int, Complex> m;
    for (const auto& [n, c] : f.coeffs()) {
        const double g = gamma_M(n, 0, M);
        if (g != 0.0) m[n] = c * g;
    }
    return LaurentPoly(std::move(m));
}

int default_sup_grid(int band) {
    const int n = 16 * band;
    return n > 4096 ? n : 4096;
}

SupNormCert sup_norm(const LaurentPoly& f, int N) {
    const int b = f.band();
    if (N == 0) N = default_sup_grid(b);
    if (N <= 2 * b) {
        char msg[96];
        std::snprintf(msg, sizeof(msg), "sup_norm: grid size %d must exceed twice the band %d", N, b);
        throw std::invalid_argument(msg);
    }
    double gmax = 0.0;
    const double step = 2.0 * std::numbers::pi / N;
    for (int k = 0; k < N; ++k) {
        const double v = std::abs(f.eval(step * k));
        if (v > gmax) gmax = v;
    }
    SupNormCert cert;
    cert.grid_max = gmax;
    cert.corrected_upper = gmax / std::cos(std::numbers::pi * b / N);
    cert.grid_size = N;
    cert.degree = b;
    return cert;
}

}  // namespace qarc
