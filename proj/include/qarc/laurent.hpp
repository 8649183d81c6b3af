#pragma once

#include <map>
#include <complex>

#include "qarc/qcalc.hpp"

namespace qarc {

/// Laurent (trigonometric) polynomial sum_n alpha_n z^n with finite support.
/// This is the computational stand-in for the polynomial functions on the
/// circle; the frequency-n coefficient corresponds to the n-th power of the
/// bilateral shift.  Values are immutable after construction and coefficients
/// below 1e-15 in absolute value are pruned, so support cannot grow from
/// float noise under repeated multiplication.
class LaurentPoly {
public:
    static constexpr double kPruneThreshold = 1e-15;

    LaurentPoly() = default;  // zero polynomial
    explicit LaurentPoly(std::map<int, Complex> coeffs);

    static LaurentPoly constant(Complex c);
    static LaurentPoly monomial(int n, Complex c = Complex(1.0, 0.0));

    const std::map<int, Complex>& coeffs() const noexcept { return coeffs_; }
    Complex coeff(int n) const;
    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Smallest M with support contained in [-M, M]; 0 for the zero poly.
    int band() const noexcept;

    /// f(e^{i theta}), accumulated Horner-style in e^{i theta} and
    /// e^{-i theta} separately for the positive and negative frequencies.
    Complex eval(double theta) const;

    /// Involution: (f*)_n = conj(f_{-n}).
    LaurentPoly adjoint() const;

    /// Haar state: the frequency-zero coefficient.
    Complex haar() const { return coeff(0); }

    LaurentPoly operator+(const LaurentPoly& g) const;
    LaurentPoly operator-(const LaurentPoly& g) const;
    LaurentPoly operator*(const LaurentPoly& g) const;  // coefficient convolution
    LaurentPoly operator*(Complex s) const;
    friend LaurentPoly operator*(Complex s, const LaurentPoly& f) { return f * s; }

private:
    std::map<int, Complex> coeffs_;
};

/// Scaling automorphism: alpha_n -> q^{n*power} alpha_n, power in {+1, -1}.
LaurentPoly sigma(const LaurentPoly& f, QDeformation q, int power = 1);

/// q-derivative: alpha_n -> i [n]_q alpha_n.
LaurentPoly d_q(const LaurentPoly& f, QDeformation q);

/// q-integral: alpha_n -> -i alpha_n / [n]_q for n != 0, drops alpha_0.
/// Inverts d_q up to the Haar-state projection.
LaurentPoly q_integral(const LaurentPoly& f, QDeformation q);

/// Fejer compression: alpha_n -> gamma_M(n,0,M) alpha_n; output has band <= M.
LaurentPoly fejer(const LaurentPoly& f, int M);

inline Complex haar(const LaurentPoly& f) { return f.haar(); }

/// Two-sided bracket on the sup norm over the circle.  grid_max is the max
/// of |f| over grid_size equispaced points; the true sup norm lies in
/// [grid_max, corrected_upper] with corrected_upper = grid_max / cos(pi M / N),
/// valid whenever N > 2M (Ehlich-Zeller degree correction).
struct SupNormCert {
    double grid_max = 0.0;
    double corrected_upper = 0.0;
    int grid_size = 0;
    int degree = 0;
};

/// Default certification grid: max(4096, 16 * band), keeping the correction
/// factor below 1.02 for every band in use.
int default_sup_grid(int band);

/// Certified sup-norm bracket on an N-point equispaced grid.  N = 0 selects
/// the default grid; N <= 2 * band(f) is rejected.
SupNormCert sup_norm(const LaurentPoly& f, int N = 0);

}  // namespace qarc
