#pragma once

#include <complex>
#include <vector>

#include "qarc/laurent.hpp"

namespace qarc::detail {

/// In-place radix-2 Cooley-Tukey transform of sum_j a_j w^{jk} with
/// w = exp(2 pi i sign / n); n must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

/// Values f(2 pi k / n) for k = 0..n-1 on a power-of-two grid, computed by
/// a single transform of the zero-padded coefficient vector.  This is the
/// brute-force evaluation route used to cross-check the grid/Ehlich-Zeller
/// sup-norm bracket; it shares no code with LaurentPoly::eval.
std::vector<std::complex<double>> grid_values_fft(const LaurentPoly& f, std::size_t n);

}  // namespace qarc::detail
