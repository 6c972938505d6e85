#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ratchet/errors.hpp"

namespace ratchet {

using cplx = std::complex<double>;

// Momentum cutoff and position-grid size for one wavefunction.
// Momenta are the integers m in [-m_max, m_max] (hbar = 1 on the 2*pi torus);
// M is the uniform theta-grid used only when a position-space multiplier is applied.
struct GridSpec {
    int m_max = 1;
    int M = 4;

    bool valid() const { return m_max >= 1 && M >= 2 * m_max + 1; }
};

// Grid sized for an N-kick resonant run at kick strength k, second harmonic a.
// m_max defaults to ceil(4*k*(N+1)) + 64 (ballistic spreading bound); pass
// m_max_override > 0 to replace it (needed for a > ~0.3 where the per-kick
// momentum gain can reach k*(1+2a)).
GridSpec make_grid(double k, double a, int n_kicks, int m_max_override = 0);

struct Observables {
    double p_mean = 0.0;
    double p_second = 0.0;
    double norm = 0.0;
    double f_avg = 0.0; // p_mean / kick count; 0 when kick count is 0
};

// State on the torus in the momentum basis: coeffs[i] is the amplitude of
// e^{i m theta}/sqrt(2 pi) with m = i - m_max.
struct WaveFunction {
    std::vector<cplx> coeffs;
    GridSpec grid;

    cplx& at(int m) { return coeffs[static_cast<size_t>(m + grid.m_max)]; }
    const cplx& at(int m) const { return coeffs[static_cast<size_t>(m + grid.m_max)]; }
    int m_max() const { return grid.m_max; }

    double norm_sq() const;
    // Probability weight beyond |m| > 0.9 * m_max.
    double tail_mass() const;
    bool tail_ok(double tol = 1e-10) const { return tail_mass() <= tol; }
};

WaveFunction uniform_state(const GridSpec& grid);
WaveFunction plane_wave_state(int L, const GridSpec& grid);

// Builds a normalized state from M uniform samples of `sampler` on [0, 2 pi).
// Throws config_error on zero input norm, numerical_error if the truncated
// state violates the tail-mass bound (sampler not band-limited enough).
WaveFunction state_from_position_function(const std::function<cplx(double)>& sampler,
                                          const GridSpec& grid);

// Samples of phi(theta_j), theta_j = 2 pi j / M, j = 0..M-1.
std::vector<cplx> to_position_samples(const WaveFunction& phi);

// Pointwise multiplication by g(theta) in position space, back to momentum basis.
WaveFunction position_multiply(const WaveFunction& phi, const std::function<cplx(double)>& g);
// Same, but g given as precomputed samples on the M-point grid (hot path).
WaveFunction position_multiply(const WaveFunction& phi, const std::vector<cplx>& g_samples);

// c_m -> c_m * e^{i m s}; exact, no grid involved.
WaveFunction translate(const WaveFunction& phi, double s);

// theta -> 2 pi - theta, i.e. c_m -> c_{-m}.
WaveFunction parity_reflect(const WaveFunction& phi);

Observables observables(const WaveFunction& phi, int n_kicks);

// <p> / sqrt(<p^2> - <p>^2); throws numerical_error on (near-)zero variance.
double directionality_ratio(const WaveFunction& phi);

} // namespace ratchet
