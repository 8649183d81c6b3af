#include "qarc/qms.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qarc/simplex.hpp"

namespace qarc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

EvalState::EvalState(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("EvalState: angle must be finite");
    theta_ = std::fmod(theta, kTwoPi);
    if (theta_ < 0.0) theta_ += kTwoPi;
}

std::pair<double, double> seminorm_Lq(const LaurentPoly& f, QDeformation q, int grid) {
    const SupNormCert cert = sup_norm(d_q(f, q), grid);
    return {cert.grid_max, cert.corrected_upper};
}

int default_mk_grid(int m) {
    const int n = 8 * m;
    return n > 1024 ? n : 1024;
}

MKResult mk_distance(const MKProblem& p) {
    const int m = p.band.M;
    if (m < 0) throw std::invalid_argument("mk_distance: band size must be non-negative");
    const int grid = p.grid == 0 ? default_mk_grid(m) : p.grid;
    if (grid <= 2 * m) {
        char msg[96];
        std::snprintf(msg, sizeof(msg), "mk_distance: grid %d must exceed twice the band %d", grid, m);
        throw std::invalid_argument(msg);
    }

    MKResult result;
    if (m == 0) return result;  // the band is the scalars; every state agrees

    // Self-adjoint zero-mean f = sum_n a_n cos(n th) + b_n sin(n th) has
    // d_q f = sum_n [n]_q (b_n cos(n th) - a_n sin(n th)).  The grid-relaxed
    // program  max f(th_a) - f(th_b)  s.t. |d_q f| <= 1 on the grid  is
    // solved through its dual
    //     min sum_k (u_k + v_k)   s.t.  G^T (u - v) = c,  u, v >= 0,
    // whose simplex multipliers recover the primal coefficients.
    const std::size_t nvar = 2 * static_cast<std::size_t>(m);  // (a_n, b_n)
    const std::size_t ncols = 2 * static_cast<std::size_t>(grid);

    std::vector<double> qint(static_cast<std::size_t>(m) + 1, 0.0);
    for (int n = 1; n <= m; ++n) qint[static_cast<std::size_t>(n)] = q_integer(n, p.band.q);

    LpProblem lp;
    lp.rows = nvar;
    lp.cols = ncols;
    lp.a.assign(nvar * ncols, 0.0);
    lp.b.assign(nvar, 0.0);
    lp.c.assign(ncols, 1.0);

    const double ta = p.state_a.theta();
    const double tb = p.state_b.theta();
    for (int n = 1; n <= m; ++n) {
        lp.b[static_cast<std::size_t>(n - 1)] = std::cos(n * ta) - std::cos(n * tb);
        lp.b[static_cast<std::size_t>(m + n - 1)] = std::sin(n * ta) - std::sin(n * tb);
    }
    for (int k = 0; k < grid; ++k) {
        const double th = kTwoPi * k / grid;
        for (int n = 1; n <= m; ++n) {
            const double ga = -qint[static_cast<std::size_t>(n)] * std::sin(n * th);  // d/da_n of d_q f at th
            const double gb = qint[static_cast<std::size_t>(n)] * std::cos(n * th);   // d/db_n
            const std::size_t u = static_cast<std::size_t>(k);
            const std::size_t v = static_cast<std::size_t>(grid + k);
            lp.a[static_cast<std::size_t>(n - 1) * ncols + u] = ga;
            lp.a[static_cast<std::size_t>(n - 1) * ncols + v] = -ga;
            lp.a[static_cast<std::size_t>(m + n - 1) * ncols + u] = gb;
            lp.a[static_cast<std::size_t>(m + n - 1) * ncols + v] = -gb;
        }
    }

    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::infeasible)
        throw std::runtime_error("mk_distance: dual infeasible, i.e. the primal is unbounded (bug)");
    if (sol.status == LpStatus::unbounded)
        throw std::runtime_error("mk_distance: dual unbounded, i.e. the primal is infeasible (bug)");
    if (sol.status == LpStatus::iteration_limit) {
        char msg[96];
        std::snprintf(msg, sizeof(msg), "mk_distance: simplex did not converge within %ld pivots",
                      sol.iterations);
        throw std::runtime_error(msg);
    }

    result.lp_value = sol.objective;
    result.lp_iterations = sol.iterations;
    const double cosfac = std::cos(std::numbers::pi * m / grid);
    result.lower = sol.objective * cosfac;
    result.upper = sol.objective;

    // Witness from the multipliers: alpha_{+-n} = (a_n -+ i b_n)/2.
    std::map<int, Complex> coeffs;
    for (int n = 1; n <= m; ++n) {
        const double a = sol.y[static_cast<std::size_t>(n - 1)];
        const double b = sol.y[static_cast<std::size_t>(m + n - 1)];
        coeffs[n] = Complex(a / 2.0, -b / 2.0);
        coeffs[-n] = Complex(a / 2.0, b / 2.0);
    }
    result.optimizer = LaurentPoly(std::move(coeffs));
    return result;
}

double diameter_scan(const SpectralBand& band, const std::vector<double>& angles, int grid) {
    if (angles.size() < 2)
        throw std::invalid_argument("diameter_scan: need at least two angles");
    constexpr double kDiameterCap = 2.0 * std::numbers::pi / 1.7320508075688772;  // 2 pi / sqrt 3
    double worst = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        for (std::size_t j = i + 1; j < angles.size(); ++j) {
            MKProblem p{band, EvalState(angles[i]), EvalState(angles[j]), grid};
            const MKResult r = mk_distance(p);
            if (r.upper > worst) worst = r.upper;
        }
    }
    if (worst > kDiameterCap + 1e-6) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "diameter_scan: bracket %.12g exceeds the diameter bound 2*pi/sqrt(3)=%.12g", worst,
                      kDiameterCap);
        throw std::runtime_error(msg);
    }
    return worst;
}

double leibniz_ratio(int n, QDeformation q) {
    if (n < 1) throw std::invalid_argument("leibniz_ratio: n must be positive");
    return q_integer(2 * n, q) / (2.0 * q_integer(n, q));
}

std::pair<double, double> chi_bounds(int m, QDeformation q, QDeformation q0) {
    if (m < 0) throw std::invalid_argument("chi_bounds: band size must be non-negative");
    double lo = 0.0, hi = 0.0;
    for (int n = -m; n <= m; ++n) {
        const double d = std::abs(q_integer(n, q) - q_integer(n, q0));
        hi += d;
        if (d > lo) lo = d;
    }
    return {lo, hi};
}

GHBoundReport gh_band_bound(int m, QDeformation q, QDeformation q0) {
    constexpr double kPiOverSqrt3 = std::numbers::pi / 1.7320508075688772;
    GHBoundReport rep;
    rep.q = q.value();
    rep.q0 = q0.value();
    rep.M = m;
    const auto [lo, hi] = chi_bounds(m, q, q0);
    rep.chi_lower = lo;
    rep.chi_upper = hi;
    // The identity maps between (A_M, L_q) and (A_M, L_{q0}) are ucp with
    // Lipschitz constant C = chi * pi/sqrt3 + 1 in both directions and no
    // approximation defect, so the band comparison costs
    // diam * |1 - 1/C|; reaching the band from the full space costs eps_M
    // on each side.
    const double c = hi * kPiOverSqrt3 + 1.0;
    rep.band_bound = 2.0 * kPiOverSqrt3 * std::abs(1.0 - 1.0 / c);
    rep.eps_M = epsilon_M(m).value;
    rep.total_upper = 2.0 * rep.eps_M + rep.band_bound;
    return rep;
}

ContinuityScan continuity_scan(QDeformation q0, const std::vector<double>& q_list,
                               const std::vector<int>& m_list) {
    if (m_list.empty()) throw std::invalid_argument("continuity_scan: band list must be non-empty");
    ContinuityScan scan;
    scan.rows.reserve(q_list.size() * m_list.size());
    for (const double qv : q_list) {
        const QDeformation q(qv);
        double best = std::numeric_limits<double>::infinity();
        for (const int m : m_list) {
            const GHBoundReport rep = gh_band_bound(m, q, q0);
            if (rep.total_upper < best) best = rep.total_upper;
            scan.rows.push_back(rep);
        }
        scan.best.emplace_back(qv, best);
    }
    return scan;
}

}  // namespace qarc
