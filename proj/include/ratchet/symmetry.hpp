#pragma once

#include <functional>
#include <vector>

#include "ratchet/perturbation.hpp"
#include "ratchet/propagator.hpp"

namespace ratchet {

struct SymmetryReport {
    double max_abs_p = 0.0;      // max |<p> - target| over the trajectory
    double max_asymmetry = 0.0;  // worst parity residual max_m |c_m -+ c_{-m}|
    bool passed = false;
    bool applicable = true;      // preconditions held; false is not a failure
    int N_checked = 0;
    std::string message;
};

// Zero-current theorem: symmetric V plus parity-symmetric (or antisymmetric)
// initial state keeps <p> = 0. Asymmetric inputs yield applicable = false.
SymmetryReport check_zero_current(const WaveFunction& phi0, const KickPotential& V,
                                  const ResonanceOrder& order, int n_kicks);

// Residual of the phase identity gamma_n e^{i 2 pi L n / q} = gamma_{q-n} e^{i 2 pi L (q-n) / q}
// (claimed for all L; actually an identity only when q | 4 L r — see tests).
double eq19_residual(const ResonanceOrder& order, int L);

// Momentum-eigenstate invariance: phi0 = normalized e^{i L theta} f_even(theta),
// symmetric V; checks |<p>_N - L| <= 1e-9 at every kick.
SymmetryReport check_plane_wave_invariance(int L, const std::function<double(double)>& f_even,
                                           const KickPotential& V, const ResonanceOrder& order,
                                           int n_kicks);

struct SlopePair {
    double slope_measured = 0.0;
    double slope_closed_form = 0.0; // -integral |phi0|^2 V' dtheta
};

// T = 4 pi case ((r,q) = (1,1)): phi_N = e^{-i N V} phi_0, so <p> grows linearly
// with slope -integral |phi0|^2 V' dtheta. Returns fitted vs quadrature slope.
SlopePair check_t4pi_growth(const WaveFunction& phi0, const KickPotential& V, int n_kicks);

// The generic-asymmetric initial state of the last figure:
// phi0 = eta cos(cos theta + sin 2theta).
WaveFunction asymmetric_ic(const GridSpec& grid);

// <f> versus k for the asymmetric initial state at fixed (a, alpha, order).
ForceCurve measure_asymmetric_ic_current(const ResonanceOrder& order, double a, double alpha,
                                         const std::vector<double>& ks, int n_kicks);

} // namespace ratchet
