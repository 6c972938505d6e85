#include "ratchet/commands.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "ratchet/parallel.hpp"
#include "ratchet/perturbation.hpp"
#include "ratchet/symmetry.hpp"

namespace ratchet {

namespace {

constexpr double PI = std::numbers::pi;

WaveFunction initial_state(const RunConfig& cfg, const GridSpec& grid) {
    if (cfg.initial == "uniform") return uniform_state(grid);
    if (cfg.initial.rfind("plane:", 0) == 0)
        return plane_wave_state(std::stoi(cfg.initial.substr(6)), grid);
    if (cfg.initial == "expr:fig3") return asymmetric_ic(grid);
    throw config_error("unknown initial state: " + cfg.initial);
}

void emit_config_header(const RunConfig& cfg, std::ostream& out) {
    std::istringstream lines(serialize_config(cfg));
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

std::vector<double> sweep_grid(const RunConfig& cfg) {
    if (!cfg.k_min) throw config_error("sweep needs a k range");
    const int n = *cfg.k_steps;
    std::vector<double> ks(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        ks[static_cast<size_t>(i)] = *cfg.k_min + (*cfg.k_max - *cfg.k_min) * i / (n - 1);
    return ks;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    if (!cfg.k) throw config_error("evolve needs a single k, not a range");
    const ResonanceOrder order(cfg.r, cfg.q);
    const KickPotential V{*cfg.k, cfg.a, cfg.alpha};
    const GridSpec grid = make_grid(*cfg.k, cfg.a, cfg.n_kicks, cfg.m_max_override.value_or(0));
    const WaveFunction phi0 = initial_state(cfg, grid);

    Trajectory traj = evolve(phi0, V, order, cfg.n_kicks);

    emit_config_header(cfg, out);
    out << "N,p_mean,p_second,f_avg,norm,tail_mass\n";
    bool bad_value = false;
    for (size_t i = 1; i < traj.records.size(); ++i) {
        const auto& rec = traj.records[i];
        if (!finite(rec.obs.p_mean) || !finite(rec.obs.p_second) || !finite(rec.obs.norm)) {
            bad_value = true;
            break;
        }
        out << rec.N << ',' << fmt_g(rec.obs.p_mean) << ',' << fmt_g(rec.obs.p_second) << ','
            << fmt_g(rec.obs.f_avg) << ',' << fmt_g(rec.obs.norm) << ',' << fmt_g(rec.tail_mass)
            << "\n";
    }
    if (traj.aborted || bad_value) {
        out << "# aborted: " << (traj.aborted ? traj.error : "non-finite observable") << "\n";
        return EXIT_NUMERICAL;
    }
    return EXIT_OK;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, int jobs) {
    cfg.validate();
    if (cfg.k) throw config_error("sweep needs a k range, not a single k");
    const ResonanceOrder order(cfg.r, cfg.q);
    const std::vector<double> ks = sweep_grid(cfg);
    const int n = static_cast<int>(ks.size());

    struct Point {
        double f_num = 0.0;
        double f_pert = 0.0;
        double f_q3 = 0.0;
        double f_asym = 0.0;
        bool in_regime = false;
        std::string err;
    };
    std::vector<Point> pts(static_cast<size_t>(n));

    parallel_for(n, jobs, [&](int i) {
        Point& pt = pts[static_cast<size_t>(i)];
        const double k = ks[static_cast<size_t>(i)];
        try {
            const KickPotential V{k, cfg.a, cfg.alpha};
            const GridSpec grid = make_grid(k, cfg.a, cfg.n_kicks, cfg.m_max_override.value_or(0));
            Trajectory traj = evolve(initial_state(cfg, grid), V, order, cfg.n_kicks);
            if (traj.aborted) {
                pt.err = traj.error;
                return;
            }
            pt.f_num = traj.records.back().obs.f_avg;
            pt.in_regime = perturbative_in_regime(k, cfg.a);
            if (pt.in_regime) {
                pt.f_pert = perturbative_force(k, cfg.a, cfg.alpha, order);
                pt.f_asym = asymptotic_force(k, cfg.a, cfg.alpha, order);
                if (cfg.q == 3) pt.f_q3 = analytic_force_q3(k, cfg.a, cfg.alpha);
            }
            if (!finite(pt.f_num) || (pt.in_regime && !finite(pt.f_pert)))
                pt.err = "non-finite force value";
        } catch (const std::exception& e) {
            pt.err = e.what();
        }
    });

    emit_config_header(cfg, out);
    out << "k,f_numeric,f_perturbative,f_analytic_q3,f_asymptotic\n";
    for (int i = 0; i < n; ++i) {
        const Point& pt = pts[static_cast<size_t>(i)];
        if (!pt.err.empty()) {
            out << "# aborted at k=" << fmt_g(ks[static_cast<size_t>(i)]) << ": " << pt.err << "\n";
            return EXIT_NUMERICAL;
        }
        out << fmt_g(ks[static_cast<size_t>(i)]) << ',' << fmt_g(pt.f_num) << ',';
        if (pt.in_regime) {
            out << fmt_g(pt.f_pert) << ',' << (cfg.q == 3 ? fmt_g(pt.f_q3) : std::string()) << ','
                << fmt_g(pt.f_asym);
        } else {
            out << ",,"; // out of the k*a <= 0.3 regime: perturbative columns withheld
        }
        out << "\n";
    }
    return EXIT_OK;
}

int cmd_gamma(int r, int q, std::ostream& out) {
    const ResonanceOrder order(r, q);
    const GammaTable t = gamma_table(order);
    out << "n,re_gamma,im_gamma,abs_gamma\n";
    for (int n = 0; n < q; ++n) {
        const cplx g = t.gamma[static_cast<size_t>(n)];
        out << n << ',' << fmt_g(g.real()) << ',' << fmt_g(g.imag()) << ',' << fmt_g(std::abs(g))
            << "\n";
    }
    double refl = 0.0;
    cplx sum(0.0, 0.0);
    double mod = 0.0;
    for (int n = 0; n < q; ++n) {
        refl = std::max(refl,
                        std::abs(t.gamma[static_cast<size_t>(n)] -
                                 t.gamma[static_cast<size_t>((q - n) % q)]));
        sum += t.gamma[static_cast<size_t>(n)];
        mod = std::max(mod, std::abs(std::abs(t.gamma[static_cast<size_t>(n)]) - std::sqrt(q)));
    }
    out << "residuals," << fmt_g(refl) << ',' << fmt_g(std::abs(sum - cplx(q, 0.0))) << ','
        << (q % 2 == 1 ? fmt_g(mod) : std::string()) << "\n";
    return EXIT_OK;
}

namespace {

struct CheckLog {
    std::ostream& out;
    int failures = 0;

    void report(bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        if (!ok) ++failures;
    }
    void info(const std::string& name, const std::string& detail) {
        out << "INFO " << name << ": " << detail << "\n";
    }
};

void verify_gamma(CheckLog& log) {
    double refl = 0.0, sum = 0.0, mod = 0.0;
    for (int q = 1; q <= 32; ++q)
        for (int r = 1; r <= q; ++r) {
            if (std::gcd(r, q) != 1) continue;
            const GammaTable t = gamma_table(ResonanceOrder(r, q));
            cplx s(0.0, 0.0);
            for (int n = 0; n < q; ++n) {
                refl = std::max(refl, std::abs(t.gamma[static_cast<size_t>(n)] -
                                               t.gamma[static_cast<size_t>((q - n) % q)]));
                s += t.gamma[static_cast<size_t>(n)];
                if (q % 2 == 1)
                    mod = std::max(
                        mod, std::abs(std::abs(t.gamma[static_cast<size_t>(n)]) - std::sqrt(q)));
            }
            sum = std::max(sum, std::abs(s - cplx(q, 0.0)));
        }
    log.report(refl <= 1e-12, "gamma.reflection", "max residual " + fmt_g(refl));
    log.report(sum <= 1e-10, "gamma.sum", "max |sum - q| " + fmt_g(sum));
    log.report(mod <= 1e-10, "gamma.modulus_odd_q", "max ||gamma| - sqrt q| " + fmt_g(mod));
}

WaveFunction random_state(std::mt19937& rng, const GridSpec& grid, int band) {
    std::normal_distribution<double> nd;
    WaveFunction phi = uniform_state(grid);
    for (int m = -band; m <= band; ++m) phi.at(m) = cplx(nd(rng), nd(rng));
    const double inv = 1.0 / std::sqrt(phi.norm_sq());
    for (cplx& c : phi.coeffs) c *= inv;
    return phi;
}

void verify_oracle(CheckLog& log) {
    std::mt19937 rng(12345);
    const GridSpec grid{200, 512};
    double worst = 0.0;
    for (auto [r, q] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}, {1, 5}, {3, 5}})
        for (double k : {0.5, 5.0})
            for (double a : {0.0, 0.01, 2.0})
                for (int rep = 0; rep < 5; ++rep) {
                    const WaveFunction phi = random_state(rng, grid, 20);
                    const KickPotential V{k, a, PI / 4.0};
                    const ResonanceOrder order(r, q);
                    const WaveFunction x = period_map(phi, V, order);
                    const WaveFunction y = split_step_oracle(phi, V, order);
                    for (size_t i = 0; i < x.coeffs.size(); ++i)
                        worst = std::max(worst, std::abs(x.coeffs[i] - y.coeffs[i]));
                }
    log.report(worst <= 1e-10, "oracle.period_map_vs_split_step",
               "max coefficient difference " + fmt_g(worst));
}

void verify_symmetry(CheckLog& log) {
    // zero-current theorem instances
    for (int q : {2, 3, 5})
        for (double k : {1.0, 5.0}) {
            const ResonanceOrder order(1, q);
            const KickPotential V{k, 0.0, 0.0};
            const GridSpec grid = make_grid(k, 0.0, 100);
            const SymmetryReport rep = check_zero_current(uniform_state(grid), V, order, 100);
            log.report(rep.applicable && rep.passed,
                       "symmetry.zero_current q=" + std::to_string(q) + " k=" + fmt_g(k),
                       "max |<p>| " + fmt_g(rep.max_abs_p));
        }
    {
        // antisymmetric initial state
        const GridSpec grid = make_grid(3.0, 0.0, 100);
        const WaveFunction phi0 = state_from_position_function(
            [](double th) { return cplx(std::sin(th), 0.0); }, grid);
        const SymmetryReport rep =
            check_zero_current(phi0, KickPotential{3.0, 0.0, 0.0}, ResonanceOrder(1, 5), 100);
        log.report(rep.applicable && rep.passed, "symmetry.zero_current_antisymmetric",
                   "max |<p>| " + fmt_g(rep.max_abs_p));
    }
    {
        // necessity: asymmetric V escapes the hypothesis and does transport
        const KickPotential V{5.0, 2.0, PI / 4.0};
        const GridSpec grid = make_grid(5.0, 2.0, 30, 2000);
        const SymmetryReport rep =
            check_zero_current(uniform_state(grid), V, ResonanceOrder(1, 3), 30);
        Trajectory traj = evolve(uniform_state(grid), V, ResonanceOrder(1, 3), 30);
        log.info("symmetry.asymmetric_V",
                 std::string("check inapplicable (as expected); |<p>| after 30 kicks = ") +
                     fmt_g(std::abs(traj.records.back().obs.p_mean)) +
                     (rep.applicable ? " [UNEXPECTED: reported applicable]" : ""));
    }
    {
        // T = 4 pi closed form; e^{-i N V} harmonics reach N*k = 250
        const GridSpec grid{512, 2048};
        // phase-shifted so |phi0|^2 has a sin-theta component (else the slope is 0)
        const WaveFunction phi0 = state_from_position_function(
            [](double th) { return 1.0 + 0.5 * std::polar(1.0, th + PI / 2.0); }, grid);
        const SlopePair sp = check_t4pi_growth(phi0, KickPotential{5.0, 0.0, 0.0}, 50);
        const double rel = std::abs(sp.slope_measured - sp.slope_closed_form) /
                           std::max(std::abs(sp.slope_closed_form), 1e-300);
        log.report(rel <= 1e-8, "symmetry.t4pi_growth",
                   "slope " + fmt_g(sp.slope_measured) + " vs quadrature " +
                       fmt_g(sp.slope_closed_form));
    }
    // plane-wave invariance battery (|L| <= 5). NOTE: the underlying theorem
    // only holds when q divides 4*L*r; the battery reports the full range
    // honestly, so FAIL lines here reflect the source analysis, not a bug.
    for (int q : {3, 5}) {
        const ResonanceOrder order(1, q);
        for (int L = -5; L <= 5; ++L) {
            const SymmetryReport rep = check_plane_wave_invariance(
                L, [](double th) { return 1.0 + 0.3 * std::cos(th); },
                KickPotential{4.0, 0.0, 0.0}, order, 100);
            log.report(rep.passed, "symmetry.plane_wave q=" + std::to_string(q) +
                                       " L=" + std::to_string(L),
                       "max |<p> - L| " + fmt_g(rep.max_abs_p));
        }
    }
    {
        double res_all = 0.0, res_qL = 0.0;
        for (int q = 1; q <= 16; ++q)
            for (int r = 1; r <= q; ++r) {
                if (std::gcd(r, q) != 1) continue;
                for (int L = -q; L <= q; ++L) {
                    const double res = eq19_residual(ResonanceOrder(r, q), L);
                    res_all = std::max(res_all, res);
                    if ((4LL * L * r) % q == 0) res_qL = std::max(res_qL, res);
                }
            }
        log.report(res_all <= 1e-12, "symmetry.eq19_identity_all_L",
                   "max residual " + fmt_g(res_all) + " (identity fails off q | 4Lr)");
        log.report(res_qL <= 1e-12, "symmetry.eq19_identity_q_divides_4Lr",
                   "max residual " + fmt_g(res_qL));
    }
}

} // namespace

int cmd_verify(const std::string& suite, std::ostream& out) {
    CheckLog log{out};
    if (suite == "gamma")
        verify_gamma(log);
    else if (suite == "oracle")
        verify_oracle(log);
    else if (suite == "symmetry")
        verify_symmetry(log);
    else if (suite == "all") {
        verify_gamma(log);
        verify_oracle(log);
        verify_symmetry(log);
    } else
        throw config_error("unknown suite '" + suite + "' (want gamma|oracle|symmetry|all)");
    out << (log.failures == 0 ? "ALL CHECKS PASSED\n"
                              : std::to_string(log.failures) + " CHECK(S) FAILED\n");
    return log.failures == 0 ? EXIT_OK : EXIT_VERIFY;
}

RunConfig fig_config(const std::string& id, bool& is_sweep) {
    RunConfig cfg;
    cfg.r = 1;
    cfg.q = 3;
    cfg.n_kicks = 100;
    is_sweep = true;
    if (id == "1") {
        cfg.a = 2.0;
        cfg.alpha = PI / 4.0;
        cfg.k_min = 0.1;
        cfg.k_max = 10.0;
        cfg.k_steps = 100;
        // per-kick momentum gain reaches k(1+2a); the default cutoff assumes small a
        cfg.m_max_override = 6200;
    } else if (id == "1-inset") {
        is_sweep = false;
        cfg.k = 5.0;
        cfg.a = 0.01;
        cfg.alpha = PI / 4.0;
        cfg.n_kicks = 50;
    } else if (id == "2a" || id == "2b" || id == "3") {
        cfg.q = (id == "2b") ? 5 : 3;
        cfg.a = 0.01;
        cfg.alpha = PI / 3.0;
        cfg.k_min = 0.1;
        cfg.k_max = 10.0;
        cfg.k_steps = 100;
        if (id == "3") cfg.initial = "expr:fig3";
    } else {
        throw config_error("unknown figure id '" + id + "' (want 1|1-inset|2a|2b|3)");
    }
    cfg.validate();
    return cfg;
}

int cmd_fig(const std::string& id, std::ostream& out, int jobs) {
    bool is_sweep = true;
    const RunConfig cfg = fig_config(id, is_sweep);
    return is_sweep ? cmd_sweep(cfg, out, jobs) : cmd_evolve(cfg, out);
}

} // namespace ratchet
