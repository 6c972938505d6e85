#pragma once

#include <vector>

#include "ratchet/propagator.hpp"
#include "ratchet/state.hpp"

namespace ratchet {

// Geometry of a lattice pair (m, n) on the q-th roots of unity.
struct PairGeometry {
    int m = 0;
    int n = 0;
    double mu = 0.0;    // cos(2 pi n / q) - cos(2 pi m / q)
    double nu = 0.0;    // sin(2 pi n / q) - sin(2 pi m / q)
    double Omega = 0.0; // sqrt(mu^2 + nu^2), in [0, 2]
    double omega = 0.0; // atan2(nu, mu), 0 when Omega = 0
};

PairGeometry pair_geometry(int m, int n, int q);

enum class ForceMethod { numeric, perturbative, analytic_q3, asymptotic };

struct ForceCurve {
    std::vector<double> k;
    std::vector<double> f;
    ForceMethod method = ForceMethod::numeric;
};

// Bessel function of the first kind, integer order 0..10, x >= 0.
// Ascending series (Gamma = factorial) for small x, Miller downward
// recurrence for large x; relative accuracy <= 1e-10 over the domain.
double bessel_j(int order, double x);

// O(a) pair contribution to the per-kick momentum gain. The sum over all
// (m, n) is real and already carries the 1/(N q^2) normalization, fixed once
// by exact agreement with the q = 3 closed form (see perturbative_force).
cplx L_term(int m, int n, double k, double a, double alpha, const ResonanceOrder& order);

// Re sum_{m,n} L_term; throws numerical_error if the imaginary residual
// exceeds 1e-10 relative (the momentum must come out real).
double perturbative_force(double k, double a, double alpha, const ResonanceOrder& order);

// Leading-order validity gate k*a <= 0.3 used by the CLI to flag columns.
bool perturbative_in_regime(double k, double a);

// Closed form for r/q = 1/3:
// k a sin(alpha) [ (1/sqrt 3 - 1) k J1(sqrt 3 k) + (2/3)(1 + sqrt 3) J2(sqrt 3 k) ]
double analytic_force_q3(double k, double a, double alpha);

// All zeros of analytic_force_q3 in (0, k_max]: sign-change bracketing on a
// 0.01 grid plus bisection to 1e-8. Zeros do not depend on a or alpha.
std::vector<double> reversal_points_q3(double a, double alpha, double k_max);

// Same pair sum with the large-argument Bessel forms
// J_eta(z) ~ sqrt(2/(pi z)) cos(z - eta pi/2 - pi/4); valid for k*Omega_min >~ 10.
double asymptotic_force(double k, double a, double alpha, const ResonanceOrder& order);

} // namespace ratchet
