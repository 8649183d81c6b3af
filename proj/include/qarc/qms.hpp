#pragma once

#include <utility>
#include <vector>

#include "qarc/laurent.hpp"
#include "qarc/qcalc.hpp"

namespace qarc {

/// The (2M+1)-dimensional operator system spanned by the frequencies
/// -M..M, carrying the seminorm f -> ||d_q f||.
struct SpectralBand {
    int M = 0;
    QDeformation q{1.0};
};

/// Evaluation state: the character f -> f(e^{i theta}).  The angle is kept
/// in [0, 2*pi).
class EvalState {
public:
    explicit EvalState(double theta);
    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

/// One Monge-Kantorovich instance: the distance between two evaluation
/// states restricted to a spectral band, with constraints sampled on an
/// N-point grid (N = 0 selects max(8M, 1024)).
struct MKProblem {
    SpectralBand band;
    EvalState state_a;
    EvalState state_b;
    int grid = 0;
};

/// Certified bracket for one MK instance.  lp_value solves the grid-relaxed
/// program, so the true band distance lies in [lower, upper] with
/// lower = lp_value * cos(pi M / N) and upper = lp_value; the rescaled
/// optimizer cos(pi M / N) * f is genuinely feasible.
struct MKResult {
    double lp_value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    LaurentPoly optimizer;  // self-adjoint witness, before rescaling
    long lp_iterations = 0;
};

/// Seminorm L_q(f) = ||d_q f||: returns the sup-norm bracket
/// (grid max, corrected upper) of the derivative.
std::pair<double, double> seminorm_Lq(const LaurentPoly& f, QDeformation q, int grid = 0);

int default_mk_grid(int M);

/// Solves the band-restricted Monge-Kantorovich program
///     maximize f(theta_a) - f(theta_b)  over self-adjoint zero-mean f in A_M
///     subject to |d_q f| <= 1 on the sampling grid
/// as a dense linear program.
MKResult mk_distance(const MKProblem& p);

/// Max of the MK upper brackets over all angle pairs.  The finite-diameter
/// estimate caps every value at 2 pi / sqrt(3); a violation beyond 1e-6
/// raises an error.
double diameter_scan(const SpectralBand& band, const std::vector<double>& angles, int grid = 0);

/// [2n]_q / (2 [n]_q): the quantity whose unboundedness in n defeats every
/// uniform Leibniz constant for q < 1.
double leibniz_ratio(int n, QDeformation q);

/// Bracket for chi(q) = ||(d_q - d_{q0}) restricted to the band||:
/// lower from the best monomial witness, upper from the l1 coefficient
/// estimate sum_{|n|<=M} |[n]_q - [n]_{q0}|.
std::pair<double, double> chi_bounds(int M, QDeformation q, QDeformation q0);

/// All constants of the two-step estimate through a spectral band composed
/// into one upper bound for the complete Gromov-Hausdorff distance between
/// the q- and q0-deformed metrics.
struct GHBoundReport {
    double q = 1.0;
    double q0 = 1.0;
    int M = 0;
    double chi_lower = 0.0;
    double chi_upper = 0.0;
    double band_bound = 0.0;   // (2 pi / sqrt 3) |1 - 1/(chi_upper pi/sqrt3 + 1)|
    double eps_M = 0.0;
    double total_upper = 0.0;  // 2 eps_M + band_bound
};

GHBoundReport gh_band_bound(int M, QDeformation q, QDeformation q0);

/// Sweep of gh_band_bound over deformation values and band sizes.
struct ContinuityScan {
    std::vector<GHBoundReport> rows;            // one per (q, M), q-major order
    std::vector<std::pair<double, double>> best;  // per q: (q, min over M of total_upper)
};

ContinuityScan continuity_scan(QDeformation q0, const std::vector<double>& q_list,
                               const std::vector<int>& m_list);

}  // namespace qarc
