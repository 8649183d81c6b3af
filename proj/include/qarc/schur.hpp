#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "qarc/laurent.hpp"
#include "qarc/qcalc.hpp"

namespace qarc {

/// Dense complex matrix indexed by the finite window [-W, W] x [-W, W]:
/// the finite compression of an operator on l2(Z).  Schur multipliers act
/// entrywise, so they commute with compression and every multiplier
/// inequality proved on l2(Z) holds verbatim for these matrices.
class BandedOperator {
public:
    explicit BandedOperator(int window);

    static BandedOperator identity(int window);
    static BandedOperator matrix_unit(int window, int j, int k);

    /// Toeplitz compression of a Laurent polynomial: T_{jk} = alpha_{j-k}.
    static BandedOperator from_laurent(const LaurentPoly& f, int window);

    int window() const noexcept { return w_; }
    int dim() const noexcept { return 2 * w_ + 1; }

    Complex& at(int j, int k);
    const Complex& at(int j, int k) const;

    BandedOperator adjoint() const;

    BandedOperator operator+(const BandedOperator& other) const;
    BandedOperator operator-(const BandedOperator& other) const;
    BandedOperator operator*(Complex s) const;

    const std::vector<Complex>& entries() const noexcept { return a_; }
    std::vector<Complex>& entries() noexcept { return a_; }

    double max_abs_entry() const;

private:
    int w_ = 0;
    std::vector<Complex> a_;  // row-major, dim x dim

    std::size_t idx(int j, int k) const noexcept {
        return static_cast<std::size_t>(j + w_) * static_cast<std::size_t>(dim()) +
               static_cast<std::size_t>(k + w_);
    }
};

using SchurSymbol = std::function<Complex(int j, int k)>;

/// Entrywise multiplication by the symbol; the window is preserved.
BandedOperator schur_apply(const SchurSymbol& symbol, const BandedOperator& t);

/// Projection onto the diagonal.
BandedOperator conditional_expectation(const BandedOperator& t);

/// Largest singular value, by power iteration on T*T with a deterministic
/// start vector.  Tolerance 1e-10 on the residual; an iteration cap of 1e5
/// raises a diagnostic error.
double op_norm(const BandedOperator& t);

enum class Ensemble { gaussian, sparse, rank_one };

/// Deterministic test-matrix generator: i.i.d. CN(0,1) entries, sparse with
/// density 0.1, or the rank-one projection v v*.
BandedOperator random_operator(int window, std::uint64_t seed, Ensemble ensemble);

}  // namespace qarc
