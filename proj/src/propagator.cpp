#include "ratchet/propagator.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace ratchet {

namespace {
constexpr double TWO_PI = 2.0 * std::numbers::pi;
}

double KickPotential::V(double theta) const {
    return k * (std::cos(theta) + a * std::cos(2.0 * theta + alpha));
}

double KickPotential::Vprime(double theta) const {
    return -k * (std::sin(theta) + 2.0 * a * std::sin(2.0 * theta + alpha));
}

bool KickPotential::symmetric(double tol) const {
    // max_theta |V(2pi - theta) - V(theta)| = 2|k a sin(alpha)| * max|sin 2theta|
    return std::abs(2.0 * k * a * std::sin(alpha)) <= tol;
}

ResonanceOrder::ResonanceOrder(int r_, int q_) : r(r_), q(q_) {
    if (r <= 0 || q <= 0) throw config_error("resonance order needs positive r, q");
    if (std::gcd(r, q) != 1) throw config_error("resonance order (r,q) must be coprime");
}

double ResonanceOrder::period() const { return 2.0 * TWO_PI * r / q; }

GammaTable gamma_table(const ResonanceOrder& order) {
    const int q = order.q;
    GammaTable t;
    t.order = order;
    t.gamma.assign(static_cast<size_t>(q), cplx(0.0, 0.0));
    for (int n = 0; n < q; ++n) {
        cplx s(0.0, 0.0);
        for (int m = 0; m < q; ++m) {
            // phases live on the q-th roots of unity; keep the integer exact
            long long num = (static_cast<long long>(order.r) * m % q) * m % q;
            num = (num + static_cast<long long>(m) * n) % q;
            s += std::polar(1.0, -TWO_PI * static_cast<double>(num) / q);
        }
        t.gamma[static_cast<size_t>(n)] = s;
    }
    return t;
}

WaveFunction resonant_free_step(const WaveFunction& phi, const ResonanceOrder& order) {
    const int q = order.q;
    WaveFunction out = phi;
    for (int m = -phi.grid.m_max; m <= phi.grid.m_max; ++m) {
        // r m^2 mod q computed on integers so the phase is exact for any m
        long long mm = ((m % q) + q) % q;
        long long num = (static_cast<long long>(order.r) * mm % q) * mm % q;
        out.at(m) *= std::polar(1.0, -TWO_PI * static_cast<double>(num) / q);
    }
    return out;
}

WaveFunction resonant_free_step_gauss(const WaveFunction& phi, const ResonanceOrder& order) {
    if (order.q > 64) throw config_error("gauss-sum path limited to q <= 64");
    GammaTable t = gamma_table(order);
    WaveFunction out = phi;
    for (cplx& c : out.coeffs) c = 0.0;
    for (int n = 0; n < order.q; ++n) {
        WaveFunction shifted = translate(phi, TWO_PI * n / order.q);
        cplx w = t.gamma[static_cast<size_t>(n)] / static_cast<double>(order.q);
        for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += w * shifted.coeffs[i];
    }
    return out;
}

WaveFunction kick_step(const WaveFunction& phi, const KickPotential& V) {
    WaveFunction out = position_multiply(
        phi, [&V](double theta) { return std::polar(1.0, -V.V(theta)); });
    if (!out.tail_ok())
        throw numerical_error("tail mass above 1e-10 after kick: momentum grid too small");
    return out;
}

WaveFunction period_map(const WaveFunction& phi, const KickPotential& V,
                        const ResonanceOrder& order) {
    return kick_step(resonant_free_step(phi, order), V);
}

WaveFunction split_step_oracle(const WaveFunction& phi, const KickPotential& V,
                               const ResonanceOrder& order) {
    const double T = order.period();
    WaveFunction out = phi;
    for (int m = -phi.grid.m_max; m <= phi.grid.m_max; ++m)
        out.at(m) *= std::polar(1.0, -T * static_cast<double>(m) * m / 2.0);
    return kick_step(out, V);
}

Trajectory evolve(const WaveFunction& phi0, const KickPotential& V, const ResonanceOrder& order,
                  int n_kicks) {
    if (n_kicks < 1) throw config_error("evolve needs n_kicks >= 1");
    Trajectory traj;
    WaveFunction phi = phi0;
    traj.records.push_back({0, observables(phi, 0), phi.tail_mass()});
    // Sample the kick multiplier once; the period map reuses it every kick.
    std::vector<cplx> kick_samples(static_cast<size_t>(phi.grid.M));
    for (int j = 0; j < phi.grid.M; ++j)
        kick_samples[static_cast<size_t>(j)] =
            std::polar(1.0, -V.V(TWO_PI * j / phi.grid.M));
    for (int N = 1; N <= n_kicks; ++N) {
        phi = position_multiply(resonant_free_step(phi, order), kick_samples);
        double tail = phi.tail_mass();
        Observables ob = observables(phi, N);
        if (tail > 1e-10 || !std::isfinite(ob.norm)) {
            traj.aborted = true;
            traj.error = "tail mass above 1e-10 at kick " + std::to_string(N);
            traj.final_state = phi;
            return traj;
        }
        traj.records.push_back({N, ob, tail});
    }
    traj.final_state = phi;
    return traj;
}

} // namespace ratchet
