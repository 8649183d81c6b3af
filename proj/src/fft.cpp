#include "qarc/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qarc::detail {

void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: length must be a power of two");
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Twiddle table computed directly from polar so no rounding accumulates
    // across the butterflies.
    std::vector<std::complex<double>> tw(n / 2);
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k) tw[k] = std::polar(1.0, ang * static_cast<double>(k));
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * tw[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<std::complex<double>> grid_values_fft(const LaurentPoly& f, std::size_t n) {
    if (static_cast<std::size_t>(2 * f.band()) >= n)
        throw std::invalid_argument("grid_values_fft: grid too coarse for the band");
    std::vector<std::complex<double>> a(n, {0.0, 0.0});
    for (const auto& [k, c] : f.coeffs()) {
        const std::size_t idx = k >= 0 ? static_cast<std::size_t>(k) : n - static_cast<std::size_t>(-k);
        a[idx] += c;
    }
    // f(2 pi k / n) = sum_m alpha_m exp(+2 pi i m k / n).
    fft_pow2(a, +1);
    return a;
}

}  // namespace qarc::detail
