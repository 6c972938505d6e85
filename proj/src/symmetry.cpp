#include "ratchet/symmetry.hpp"

#include <cmath>
#include <numbers>

namespace ratchet {

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

// +1 symmetric, -1 antisymmetric, 0 neither (within tol)
int parity_class(const WaveFunction& phi, double tol = 1e-12) {
    double r_sym = 0.0, r_anti = 0.0;
    for (int m = 1; m <= phi.m_max(); ++m) {
        r_sym = std::max(r_sym, std::abs(phi.at(m) - phi.at(-m)));
        r_anti = std::max(r_anti, std::abs(phi.at(m) + phi.at(-m)));
    }
    r_anti = std::max(r_anti, std::abs(phi.at(0)));
    if (r_sym <= tol) return 1;
    if (r_anti <= tol) return -1;
    return 0;
}

double parity_residual(const WaveFunction& phi, int sign) {
    double r = 0.0;
    for (int m = 1; m <= phi.m_max(); ++m)
        r = std::max(r, std::abs(phi.at(m) - static_cast<double>(sign) * phi.at(-m)));
    if (sign < 0) r = std::max(r, std::abs(phi.at(0)));
    return r;
}

double fit_slope(const std::vector<TrajectoryRecord>& recs) {
    // least squares <p> vs N
    double sn = 0.0, sp = 0.0, snn = 0.0, snp = 0.0;
    const double cnt = static_cast<double>(recs.size());
    for (const auto& rec : recs) {
        sn += rec.N;
        sp += rec.obs.p_mean;
        snn += static_cast<double>(rec.N) * rec.N;
        snp += rec.N * rec.obs.p_mean;
    }
    return (cnt * snp - sn * sp) / (cnt * snn - sn * sn);
}

} // namespace

SymmetryReport check_zero_current(const WaveFunction& phi0, const KickPotential& V,
                                  const ResonanceOrder& order, int n_kicks) {
    SymmetryReport rep;
    if (!V.symmetric()) {
        rep.applicable = false;
        rep.message = "potential is not parity symmetric";
        return rep;
    }
    const int sign = parity_class(phi0);
    if (sign == 0) {
        rep.applicable = false;
        rep.message = "initial state is neither symmetric nor antisymmetric";
        return rep;
    }
    WaveFunction phi = phi0;
    for (int N = 1; N <= n_kicks; ++N) {
        phi = period_map(phi, V, order);
        rep.max_abs_p = std::max(rep.max_abs_p, std::abs(observables(phi, N).p_mean));
        rep.max_asymmetry = std::max(rep.max_asymmetry, parity_residual(phi, sign));
        rep.N_checked = N;
    }
    rep.passed = rep.max_abs_p <= 1e-10 && rep.max_asymmetry <= 1e-9;
    if (!rep.passed) rep.message = "current or parity residual above tolerance";
    return rep;
}

double eq19_residual(const ResonanceOrder& order, int L) {
    const GammaTable t = gamma_table(order);
    const int q = order.q;
    double res = 0.0;
    for (int n = 0; n < q; ++n) {
        const cplx lhs = t.gamma[static_cast<size_t>(n)] * std::polar(1.0, L * TWO_PI * n / q);
        const int nr = (q - n) % q;
        const cplx rhs =
            t.gamma[static_cast<size_t>(nr)] * std::polar(1.0, L * TWO_PI * (q - n) / q);
        res = std::max(res, std::abs(lhs - rhs));
    }
    return res;
}

SymmetryReport check_plane_wave_invariance(int L, const std::function<double(double)>& f_even,
                                           const KickPotential& V, const ResonanceOrder& order,
                                           int n_kicks) {
    SymmetryReport rep;
    if (!V.symmetric()) {
        rep.applicable = false;
        rep.message = "potential is not parity symmetric";
        return rep;
    }
    const GridSpec grid = make_grid(V.k, V.a, n_kicks);
    WaveFunction phi = state_from_position_function(
        [&](double th) { return std::polar(1.0, L * th) * f_even(th); }, grid);
    for (int N = 1; N <= n_kicks; ++N) {
        phi = period_map(phi, V, order);
        rep.max_abs_p = std::max(rep.max_abs_p, std::abs(observables(phi, N).p_mean - L));
        rep.N_checked = N;
    }
    rep.passed = rep.max_abs_p <= 1e-9;
    if (!rep.passed) rep.message = "momentum drifted away from L";
    return rep;
}

SlopePair check_t4pi_growth(const WaveFunction& phi0, const KickPotential& V, int n_kicks) {
    const ResonanceOrder order(1, 1); // T = 4 pi: free evolution is the identity
    Trajectory traj = evolve(phi0, V, order, n_kicks);
    if (traj.aborted) throw numerical_error("t4pi run aborted: " + traj.error);

    SlopePair out;
    out.slope_measured = fit_slope(traj.records);

    // quadrature of -integral |phi0|^2 V' dtheta; samples carry the 1/sqrt(2 pi)
    // basis factor implicitly, so the weight is 1/M
    const std::vector<cplx> s = to_position_samples(phi0);
    const int M = phi0.grid.M;
    double integral = 0.0;
    for (int j = 0; j < M; ++j)
        integral += std::norm(s[static_cast<size_t>(j)]) * V.Vprime(TWO_PI * j / M);
    out.slope_closed_form = -integral / M;
    return out;
}

WaveFunction asymmetric_ic(const GridSpec& grid) {
    return state_from_position_function(
        [](double th) { return cplx(std::cos(std::cos(th) + std::sin(2.0 * th)), 0.0); }, grid);
}

ForceCurve measure_asymmetric_ic_current(const ResonanceOrder& order, double a, double alpha,
                                         const std::vector<double>& ks, int n_kicks) {
    ForceCurve curve;
    curve.method = ForceMethod::numeric;
    curve.k = ks;
    curve.f.reserve(ks.size());
    for (double k : ks) {
        const KickPotential V{k, a, alpha};
        const GridSpec grid = make_grid(k, a, n_kicks);
        Trajectory traj = evolve(asymmetric_ic(grid), V, order, n_kicks);
        if (traj.aborted) throw numerical_error("sweep point aborted: " + traj.error);
        curve.f.push_back(traj.records.back().obs.f_avg);
    }
    return curve;
}

} // namespace ratchet
