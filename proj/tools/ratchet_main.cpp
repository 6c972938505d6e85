#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ratchet/commands.hpp"
#include "ratchet/parallel.hpp"

namespace {

// Buffer the whole CSV and write it in one go, so an abort mid-command still
// leaves deterministic partial output and --out never gets a torn file.
int with_output(const std::string& out_path, const std::function<int(std::ostream&)>& fn) {
    std::ostringstream buf;
    const int rc = fn(buf);
    if (out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open output file: " << out_path << "\n";
            return ratchet::EXIT_CONFIG;
        }
        f << buf.str();
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral kicked-rotor ratchet simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, suite, fig_id;
    int jobs = ratchet::default_jobs();
    int r = 1, q = 1;
    int n_kicks_override = 0;

    auto* evolve = app.add_subcommand("evolve", "single-k trajectory CSV");
    evolve->add_option("--config", config_path, "key=value config file")->required();
    evolve->add_option("--out", out_path, "output file (default stdout)");
    evolve->add_option("--n-kicks", n_kicks_override, "override n_kicks from the config");

    auto* sweep = app.add_subcommand("sweep", "k-sweep force-curve CSV");
    sweep->add_option("--config", config_path, "key=value config file")->required();
    sweep->add_option("--out", out_path, "output file (default stdout)");
    sweep->add_option("--jobs", jobs, "worker threads (default: RATCHET_JOBS or hw threads)");
    sweep->add_option("--n-kicks", n_kicks_override, "override n_kicks from the config");

    auto* gamma = app.add_subcommand("gamma", "Gauss-sum coefficient table");
    gamma->add_option("r", r, "resonance numerator")->required();
    gamma->add_option("q", q, "resonance denominator")->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "gamma|oracle|symmetry|all")->required();

    auto* fig = app.add_subcommand("fig", "paper figure recipe CSV");
    fig->add_option("id", fig_id, "1|1-inset|2a|2b|3")->required();
    fig->add_option("--out", out_path, "output file (default stdout)");
    fig->add_option("--jobs", jobs, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evolve->parsed() || sweep->parsed()) {
            ratchet::RunConfig cfg = ratchet::parse_config_file(config_path);
            if (n_kicks_override > 0) cfg.n_kicks = n_kicks_override;
            return with_output(out_path, [&](std::ostream& os) {
                return evolve->parsed() ? ratchet::cmd_evolve(cfg, os)
                                        : ratchet::cmd_sweep(cfg, os, jobs);
            });
        }
        if (gamma->parsed()) return ratchet::cmd_gamma(r, q, std::cout);
        if (verify->parsed()) return ratchet::cmd_verify(suite, std::cout);
        if (fig->parsed())
            return with_output(out_path,
                               [&](std::ostream& os) { return ratchet::cmd_fig(fig_id, os, jobs); });
    } catch (const ratchet::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ratchet::EXIT_CONFIG;
    } catch (const ratchet::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return ratchet::EXIT_NUMERICAL;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ratchet::EXIT_CONFIG;
    }
    return ratchet::EXIT_CONFIG;
}
