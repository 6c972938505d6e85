#include "ratchet/state.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>

namespace ratchet {

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

// Cached FFTW plans per grid size. Plans are created once under a lock
// (fftw planning is not thread-safe) with FFTW_UNALIGNED so they can be
// executed on any caller buffer; fftw_execute_dft itself is reentrant.
struct PlanPair {
    fftw_plan fwd = nullptr; // e^{-i 2 pi j l / M}
    fftw_plan bwd = nullptr; // e^{+i 2 pi j l / M}
};

PlanPair plans_for(int M) {
    static std::mutex mu;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
    std::vector<cplx> buf(static_cast<size_t>(M));
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair pp;
    pp.fwd = fftw_plan_dft_1d(M, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    pp.bwd = fftw_plan_dft_1d(M, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[M] = pp;
    return pp;
}

void fft_inplace(std::vector<cplx>& buf, bool forward) {
    PlanPair pp = plans_for(static_cast<int>(buf.size()));
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(forward ? pp.fwd : pp.bwd, p, p);
}

} // namespace

GridSpec make_grid(double k, double a, int n_kicks, int m_max_override) {
    int m_max = m_max_override > 0
                    ? m_max_override
                    : static_cast<int>(std::ceil(4.0 * k * (n_kicks + 1))) + 64;
    // Kick multiplier harmonics decay like J_m(k) past |m| ~ k; keep margin.
    int kick_band = 4 * (static_cast<int>(std::ceil(k)) + static_cast<int>(std::ceil(2.0 * k * a)) + 32);
    int M = next_pow2(std::max(2 * m_max + 1, next_pow2(kick_band)));
    return GridSpec{m_max, M};
}

double WaveFunction::norm_sq() const {
    double s = 0.0;
    for (const cplx& c : coeffs) s += std::norm(c);
    return s;
}

double WaveFunction::tail_mass() const {
    const int edge = static_cast<int>(0.9 * grid.m_max);
    double s = 0.0;
    for (int m = edge + 1; m <= grid.m_max; ++m) s += std::norm(at(m)) + std::norm(at(-m));
    return s;
}

WaveFunction uniform_state(const GridSpec& grid) {
    if (!grid.valid()) throw config_error("invalid grid spec");
    WaveFunction phi;
    phi.grid = grid;
    phi.coeffs.assign(static_cast<size_t>(2 * grid.m_max + 1), cplx(0.0, 0.0));
    phi.at(0) = 1.0;
    return phi;
}

WaveFunction plane_wave_state(int L, const GridSpec& grid) {
    if (!grid.valid()) throw config_error("invalid grid spec");
    if (std::abs(L) > grid.m_max) throw config_error("plane wave momentum outside grid");
    WaveFunction phi;
    phi.grid = grid;
    phi.coeffs.assign(static_cast<size_t>(2 * grid.m_max + 1), cplx(0.0, 0.0));
    phi.at(L) = 1.0;
    return phi;
}

WaveFunction state_from_position_function(const std::function<cplx(double)>& sampler,
                                          const GridSpec& grid) {
    if (!grid.valid()) throw config_error("invalid grid spec");
    const int M = grid.M;
    std::vector<cplx> buf(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) buf[static_cast<size_t>(j)] = sampler(TWO_PI * j / M);
    // c_m = (1/M) sum_j phi(theta_j) e^{-i m theta_j}, up to overall normalization.
    fft_inplace(buf, true);

    WaveFunction phi;
    phi.grid = grid;
    phi.coeffs.assign(static_cast<size_t>(2 * grid.m_max + 1), cplx(0.0, 0.0));
    for (int m = -grid.m_max; m <= grid.m_max; ++m)
        phi.at(m) = buf[static_cast<size_t>((m % M + M) % M)] / static_cast<double>(M);

    double n2 = phi.norm_sq();
    if (n2 <= 1e-300) throw config_error("position sampler has zero norm");
    double inv = 1.0 / std::sqrt(n2);
    for (cplx& c : phi.coeffs) c *= inv;
    if (!phi.tail_ok())
        throw numerical_error("initial state tail mass above 1e-10: sampler not band-limited for this grid");
    return phi;
}

std::vector<cplx> to_position_samples(const WaveFunction& phi) {
    const int M = phi.grid.M;
    std::vector<cplx> buf(static_cast<size_t>(M), cplx(0.0, 0.0));
    for (int m = -phi.grid.m_max; m <= phi.grid.m_max; ++m)
        buf[static_cast<size_t>((m % M + M) % M)] = phi.at(m);
    // phi(theta_j) * sqrt(2 pi) = sum_m c_m e^{+i m theta_j}; the 1/sqrt(2 pi)
    // basis factor cancels in every use below, so samples carry it implicitly.
    fft_inplace(buf, false);
    return buf;
}

WaveFunction position_multiply(const WaveFunction& phi, const std::vector<cplx>& g_samples) {
    const int M = phi.grid.M;
    if (static_cast<int>(g_samples.size()) != M)
        throw config_error("multiplier sample count does not match grid");
    std::vector<cplx> buf = to_position_samples(phi);
    for (int j = 0; j < M; ++j) buf[static_cast<size_t>(j)] *= g_samples[static_cast<size_t>(j)];
    fft_inplace(buf, true);
    WaveFunction out;
    out.grid = phi.grid;
    out.coeffs.assign(phi.coeffs.size(), cplx(0.0, 0.0));
    for (int m = -phi.grid.m_max; m <= phi.grid.m_max; ++m)
        out.at(m) = buf[static_cast<size_t>((m % M + M) % M)] / static_cast<double>(M);
    return out;
}

WaveFunction position_multiply(const WaveFunction& phi, const std::function<cplx(double)>& g) {
    const int M = phi.grid.M;
    std::vector<cplx> gs(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) gs[static_cast<size_t>(j)] = g(TWO_PI * j / M);
    return position_multiply(phi, gs);
}

WaveFunction translate(const WaveFunction& phi, double s) {
    WaveFunction out = phi;
    for (int m = -phi.grid.m_max; m <= phi.grid.m_max; ++m)
        out.at(m) *= std::polar(1.0, m * s);
    return out;
}

WaveFunction parity_reflect(const WaveFunction& phi) {
    WaveFunction out = phi;
    for (int m = 1; m <= phi.grid.m_max; ++m) std::swap(out.at(m), out.at(-m));
    return out;
}

Observables observables(const WaveFunction& phi, int n_kicks) {
    Observables ob;
    for (int m = -phi.grid.m_max; m <= phi.grid.m_max; ++m) {
        double w = std::norm(phi.at(m));
        ob.norm += w;
        ob.p_mean += m * w;
        ob.p_second += static_cast<double>(m) * m * w;
    }
    ob.f_avg = n_kicks >= 1 ? ob.p_mean / n_kicks : 0.0;
    return ob;
}

double directionality_ratio(const WaveFunction& phi) {
    Observables ob = observables(phi, 0);
    double var = ob.p_second - ob.p_mean * ob.p_mean;
    if (var <= 1e-14) throw numerical_error("directionality ratio undefined: zero momentum variance");
    return ob.p_mean / std::sqrt(var);
}

} // namespace ratchet
