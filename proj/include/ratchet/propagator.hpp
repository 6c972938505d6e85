#pragma once

#include <string>
#include <vector>

#include "ratchet/state.hpp"

namespace ratchet {

// V(theta) = k (cos theta + a cos(2 theta + alpha)), the double-well kick.
struct KickPotential {
    double k = 0.0;
    double a = 0.0;
    double alpha = 0.0;

    double V(double theta) const;
    double Vprime(double theta) const;
    // V(2 pi - theta) == V(theta), i.e. a == 0 or sin(alpha) == 0.
    bool symmetric(double tol = 1e-12) const;
};

// Coprime (r, q) fixing the resonant period T = 4 pi r / q.
struct ResonanceOrder {
    int r = 1;
    int q = 1;

    ResonanceOrder() = default;
    ResonanceOrder(int r_, int q_); // throws config_error unless coprime and positive
    double period() const;
};

// gamma[n] = sum_{m=0}^{q-1} exp(-i 2 pi r m^2 / q - i 2 pi m n / q)
struct GammaTable {
    ResonanceOrder order;
    std::vector<cplx> gamma;
};

GammaTable gamma_table(const ResonanceOrder& order);

// Free half of the resonant period map: c_m -> exp(-i 2 pi r m^2 / q) c_m.
// Equals (1/q) sum_n gamma_n translate(phi, 2 pi n / q); the Gauss-sum form is
// kept as a test-only path below.
WaveFunction resonant_free_step(const WaveFunction& phi, const ResonanceOrder& order);
WaveFunction resonant_free_step_gauss(const WaveFunction& phi, const ResonanceOrder& order);

// Position-space multiplication by exp(-i V(theta)).
WaveFunction kick_step(const WaveFunction& phi, const KickPotential& V);

// One full period: free evolution then kick (uniform state -> e^{-iV}/sqrt(2 pi)).
WaveFunction period_map(const WaveFunction& phi, const KickPotential& V, const ResonanceOrder& order);

// Independent check: generic Floquet splitting c_m -> e^{-i T m^2 / 2} c_m, then the
// kick, with T = 4 pi r / q evaluated in floating point instead of modular phases.
WaveFunction split_step_oracle(const WaveFunction& phi, const KickPotential& V,
                               const ResonanceOrder& order);

struct TrajectoryRecord {
    int N = 0;
    Observables obs;
    double tail_mass = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryRecord> records; // N = 0, 1, ..., possibly truncated
    WaveFunction final_state;
    bool aborted = false;
    std::string error;
};

// Applies period_map n_kicks times, recording observables after every kick
// (plus the N=0 record). A tail-mass violation aborts the run, leaving the
// records accumulated so far and aborted = true.
Trajectory evolve(const WaveFunction& phi0, const KickPotential& V, const ResonanceOrder& order,
                  int n_kicks);

} // namespace ratchet
