#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ratchet/errors.hpp"

namespace ratchet {

// Flat key=value run description ('#' starts a comment). Exactly one of
// `k` or the (k_min, k_max, k_steps) triple must be present.
struct RunConfig {
    int r = 1;
    int q = 3;
    std::optional<double> k;
    std::optional<double> k_min;
    std::optional<double> k_max;
    std::optional<int> k_steps;
    double a = 0.0;
    double alpha = 0.0;
    int n_kicks = 100;
    std::string initial = "uniform"; // uniform | plane:<L> | expr:fig3
    std::optional<int> m_max_override;
    std::optional<long> seed; // reserved: the dynamics is deterministic

    void validate() const; // throws config_error
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

// Deterministic round-trippable serialization (fixed key order, %.17g).
std::string serialize_config(const RunConfig& cfg);

// Shortest-ish decimal with >= 17 significant digits; locale independent.
std::string fmt_g(double x);

} // namespace ratchet
