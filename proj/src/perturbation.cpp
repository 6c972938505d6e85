#include "ratchet/perturbation.hpp"

#include <cmath>
#include <numbers>

namespace ratchet {

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;
constexpr double PI = std::numbers::pi;

double bessel_series(int n, double x) {
    // sum_j (-1)^j / (j! (j+n)!) (x/2)^(2j+n); Gamma at integers = factorial
    const double h = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= n; ++i) term *= h / i;
    double sum = term;
    for (int j = 1; j < 200; ++j) {
        term *= -h * h / (static_cast<double>(j) * (j + n));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

double bessel_miller(int n, double x) {
    // Downward recurrence J_{j-1} = (2j/x) J_j - J_{j+1}, normalized via
    // J_0 + 2 sum_{j even >= 2} J_j = 1.
    int start = static_cast<int>(x) + 40 + n;
    if (start % 2) ++start;
    double jp = 0.0, jc = 1e-30, out = (n == start) ? jc : 0.0, norm = 0.0;
    for (int j = start; j >= 1; --j) {
        double jm = (2.0 * j / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (std::abs(jc) > 1e250) { // rescale before overflow
            jc *= 1e-250;
            jp *= 1e-250;
            out *= 1e-250;
            norm *= 1e-250;
        }
        if (j - 1 == n) out = jc;
        if ((j - 1) % 2 == 0) norm += (j - 1 == 0) ? jc : 2.0 * jc;
    }
    return out / norm;
}

// Channel weights of the O(a) force. The q-independent building block is
//   w_t(k, Omega) = b1_t * k * J1(Omega k) + b2_t * J2(Omega k),   t = 1, 2,
// with the column sums b1_1 + b1_2 and b2_1 + b2_2 pinned by exact reduction
// to the r/q = 1/3 closed form (where both channels share Omega = sqrt 3),
// and the split between t = 1 and t = 2 calibrated against direct evolution
// at q = 5, where the channels separate.
constexpr double B1_SUM_FACTOR = 2.0;         // b1_1 + b1_2 = 2 (1/sqrt3 - 1)
constexpr double B2_SUM_A = 4.0 / 3.0;        // b2_1 + b2_2 = (4/3)(1 + sqrt3)
constexpr double B1_T1 = -1.443;
constexpr double B2_T1 = 3.618;

void channel_weights(int t, double& b1, double& b2) {
    const double s3 = std::sqrt(3.0);
    const double b1_sum = B1_SUM_FACTOR * (1.0 / s3 - 1.0);
    const double b2_sum = B2_SUM_A * (1.0 + s3);
    if (t == 1) {
        b1 = B1_T1;
        b2 = B2_T1;
    } else {
        b1 = b1_sum - B1_T1;
        b2 = b2_sum - B2_T1;
    }
}

double asympt_j(int eta, double z) {
    return std::sqrt(2.0 / (PI * z)) * std::cos(z - eta * PI / 2.0 - PI / 4.0);
}

double w_channel(int t, double k, double Omega, bool asymptotic) {
    double b1, b2;
    channel_weights(t, b1, b2);
    const double z = Omega * k;
    if (asymptotic) {
        if (z <= 0.0) return 0.0;
        return b1 * k * asympt_j(1, z) + b2 * asympt_j(2, z);
    }
    return b1 * k * bessel_j(1, z) + b2 * bessel_j(2, z);
}

cplx pair_term(int m, int n, double k, double a, double alpha, const ResonanceOrder& order,
               const GammaTable& gt, bool asymptotic) {
    if (m == n) return cplx(0.0, 0.0);
    const int q = order.q;
    const PairGeometry g = pair_geometry(m, n, q);
    const double An = TWO_PI * n / q;
    const double Am = TWO_PI * m / q;
    cplx tot(0.0, 0.0);
    for (int t : {1, 2, -1, -2}) {
        const int at = std::abs(t);
        const double sgn = t > 0 ? 1.0 : -1.0;
        const cplx X = cplx(0.0, -0.5 * sgn) * std::polar(1.0, -sgn * alpha) *
                       w_channel(at, k, g.Omega, asymptotic);
        tot += std::polar(1.0, t * An) * X + std::polar(1.0, -t * Am) * std::conj(X);
    }
    const cplx gg = std::conj(gt.gamma[static_cast<size_t>(m)]) * gt.gamma[static_cast<size_t>(n)];
    return (k * a / (2.0 * q * q)) * gg * tot;
}

double force_sum(double k, double a, double alpha, const ResonanceOrder& order, bool asymptotic) {
    const GammaTable gt = gamma_table(order);
    cplx sum(0.0, 0.0);
    for (int m = 0; m < order.q; ++m)
        for (int n = 0; n < order.q; ++n)
            sum += pair_term(m, n, k, a, alpha, order, gt, asymptotic);
    if (std::abs(sum.imag()) > 1e-10 * std::abs(sum) + 1e-14)
        throw numerical_error("perturbative force sum has a spurious imaginary part");
    return sum.real();
}

} // namespace

double bessel_j(int order, double x) {
    if (order < 0 || order > 10) throw config_error("bessel_j supports orders 0..10");
    if (x < 0.0) throw config_error("bessel_j needs x >= 0");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    return x <= 10.0 ? bessel_series(order, x) : bessel_miller(order, x);
}

PairGeometry pair_geometry(int m, int n, int q) {
    if (m < 0 || n < 0 || m >= q || n >= q) throw config_error("pair indices must lie in [0, q)");
    PairGeometry g;
    g.m = m;
    g.n = n;
    g.mu = std::cos(TWO_PI * n / q) - std::cos(TWO_PI * m / q);
    g.nu = std::sin(TWO_PI * n / q) - std::sin(TWO_PI * m / q);
    g.Omega = std::hypot(g.mu, g.nu);
    g.omega = g.Omega < 1e-14 ? 0.0 : std::atan2(g.nu, g.mu);
    return g;
}

cplx L_term(int m, int n, double k, double a, double alpha, const ResonanceOrder& order) {
    const GammaTable gt = gamma_table(order);
    return pair_term(m, n, k, a, alpha, order, gt, false);
}

double perturbative_force(double k, double a, double alpha, const ResonanceOrder& order) {
    return force_sum(k, a, alpha, order, false);
}

bool perturbative_in_regime(double k, double a) { return k * a <= 0.3; }

double analytic_force_q3(double k, double a, double alpha) {
    const double s3 = std::sqrt(3.0);
    return k * a * std::sin(alpha) *
           ((1.0 / s3 - 1.0) * k * bessel_j(1, s3 * k) +
            (2.0 / 3.0) * (1.0 + s3) * bessel_j(2, s3 * k));
}

std::vector<double> reversal_points_q3(double a, double alpha, double k_max) {
    if (a <= 0.0 || std::sin(alpha) == 0.0 || k_max <= 0.0)
        throw config_error("reversal points need a > 0, sin(alpha) != 0, k_max > 0");
    // a and sin(alpha) are overall factors; find zeros of the k-dependent bracket
    auto bracket = [](double k) {
        const double s3 = std::sqrt(3.0);
        return (1.0 / s3 - 1.0) * k * bessel_j(1, s3 * k) +
               (2.0 / 3.0) * (1.0 + s3) * bessel_j(2, s3 * k);
    };
    std::vector<double> zeros;
    const double step = 0.01; // bracket oscillates with period ~ 2 pi / sqrt 3 >> step
    double lo = step, flo = bracket(lo);
    for (double hi = 2.0 * step; lo < k_max; hi += step) {
        if (hi > k_max) hi = k_max;
        double fhi = bracket(hi);
        if (flo == 0.0) {
            zeros.push_back(lo);
        } else if (flo * fhi < 0.0) {
            double x0 = lo, x1 = hi;
            while (x1 - x0 > 1e-8) {
                double mid = 0.5 * (x0 + x1);
                if (bracket(x0) * bracket(mid) <= 0.0)
                    x1 = mid;
                else
                    x0 = mid;
            }
            zeros.push_back(0.5 * (x0 + x1));
        }
        lo = hi;
        flo = fhi;
        if (hi >= k_max) break;
    }
    return zeros;
}

double asymptotic_force(double k, double a, double alpha, const ResonanceOrder& order) {
    return force_sum(k, a, alpha, order, true);
}

} // namespace ratchet
