#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ratchet/config.hpp"

namespace ratchet {

// Exit codes shared by the CLI and by tests driving the commands directly.
inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_CONFIG = 1;    // bad user input
inline constexpr int EXIT_NUMERICAL = 2; // tail-mass abort / non-finite output
inline constexpr int EXIT_VERIFY = 3;    // a verification suite failed

// Uniform k grid of a range config (k_min..k_max inclusive, k_steps points).
std::vector<double> sweep_grid(const RunConfig& cfg);

// Single-k trajectory: columns N, p_mean, p_second, f_avg, norm, tail_mass.
// On tail abort, rows up to the failure are emitted and EXIT_NUMERICAL returned.
int cmd_evolve(const RunConfig& cfg, std::ostream& out);

// k sweep: columns k, f_numeric, f_perturbative, f_analytic_q3, f_asymptotic.
// f_analytic_q3 is empty unless q = 3; perturbative columns are empty when
// k*a > 0.3 (out of the small-coupling regime). Points run on `jobs` threads,
// rows always emitted in ascending k.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, int jobs);

// Gauss-sum table: columns n, re_gamma, im_gamma, abs_gamma, plus a footer row
// of identity residuals (reflection, sum; modulus for odd q).
int cmd_gamma(int r, int q, std::ostream& out);

// suite in {gamma, oracle, symmetry, all}; prints one line per check.
int cmd_verify(const std::string& suite, std::ostream& out);

// Figure recipes: "1", "1-inset", "2a", "2b", "3". Emits the full config as
// '#'-prefixed header lines, then delegates to evolve/sweep byte-for-byte.
int cmd_fig(const std::string& id, std::ostream& out, int jobs);
RunConfig fig_config(const std::string& id, bool& is_sweep); // throws on unknown id

} // namespace ratchet
