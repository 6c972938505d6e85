#include "ratchet/config.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ratchet {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) + ": not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw config_error("line " + std::to_string(line) + ": trailing junk in number: '" + v + "'");
    return x;
}

long parse_int(const std::string& v, int line) {
    size_t pos = 0;
    long x;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) + ": not an integer: '" + v + "'");
    }
    if (pos != v.size())
        throw config_error("line " + std::to_string(line) + ": trailing junk in integer: '" + v + "'");
    return x;
}

} // namespace

std::string fmt_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void RunConfig::validate() const {
    if (r < 1 || q < 1) throw config_error("r and q must be positive");
    if (std::gcd(r, q) != 1) throw config_error("r and q must be coprime");
    const bool single = k.has_value();
    const bool range = k_min.has_value() || k_max.has_value() || k_steps.has_value();
    if (single == range)
        throw config_error("specify exactly one of 'k' or the (k_min, k_max, k_steps) range");
    if (range) {
        if (!k_min || !k_max || !k_steps)
            throw config_error("a k-range needs all of k_min, k_max, k_steps");
        if (!(*k_min < *k_max)) throw config_error("k_min must be below k_max");
        if (*k_steps < 2) throw config_error("k_steps must be at least 2");
    }
    if (single && *k < 0.0) throw config_error("k must be non-negative");
    if (a < 0.0) throw config_error("a must be non-negative");
    if (n_kicks < 1) throw config_error("n_kicks must be at least 1");
    if (m_max_override && *m_max_override < 1) throw config_error("m_max_override must be positive");
    if (initial != "uniform" && initial.rfind("plane:", 0) != 0 && initial != "expr:fig3")
        throw config_error("initial must be 'uniform', 'plane:<L>' or 'expr:fig3'");
    if (initial.rfind("plane:", 0) == 0) {
        const std::string v = initial.substr(6);
        try {
            (void)parse_int(v, 0);
        } catch (const config_error&) {
            throw config_error("bad momentum in initial='" + initial + "'");
        }
    }
}

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key=value, got '" +
                               trim(raw) + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "r")
            cfg.r = static_cast<int>(parse_int(val, lineno));
        else if (key == "q")
            cfg.q = static_cast<int>(parse_int(val, lineno));
        else if (key == "k")
            cfg.k = parse_double(val, lineno);
        else if (key == "k_min")
            cfg.k_min = parse_double(val, lineno);
        else if (key == "k_max")
            cfg.k_max = parse_double(val, lineno);
        else if (key == "k_steps")
            cfg.k_steps = static_cast<int>(parse_int(val, lineno));
        else if (key == "a")
            cfg.a = parse_double(val, lineno);
        else if (key == "alpha")
            cfg.alpha = parse_double(val, lineno);
        else if (key == "n_kicks")
            cfg.n_kicks = static_cast<int>(parse_int(val, lineno));
        else if (key == "initial")
            cfg.initial = val;
        else if (key == "m_max_override")
            cfg.m_max_override = static_cast<int>(parse_int(val, lineno));
        else if (key == "seed")
            cfg.seed = parse_int(val, lineno);
        else
            throw config_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    return parse_config(in);
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "r=" << cfg.r << "\n";
    os << "q=" << cfg.q << "\n";
    if (cfg.k) os << "k=" << fmt_g(*cfg.k) << "\n";
    if (cfg.k_min) os << "k_min=" << fmt_g(*cfg.k_min) << "\n";
    if (cfg.k_max) os << "k_max=" << fmt_g(*cfg.k_max) << "\n";
    if (cfg.k_steps) os << "k_steps=" << *cfg.k_steps << "\n";
    os << "a=" << fmt_g(cfg.a) << "\n";
    os << "alpha=" << fmt_g(cfg.alpha) << "\n";
    os << "n_kicks=" << cfg.n_kicks << "\n";
    os << "initial=" << cfg.initial << "\n";
    if (cfg.m_max_override) os << "m_max_override=" << *cfg.m_max_override << "\n";
    if (cfg.seed) os << "seed=" << *cfg.seed << "\n";
    return os.str();
}

} // namespace ratchet
