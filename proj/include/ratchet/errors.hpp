#pragma once

#include <stdexcept>
#include <string>

namespace ratchet {

// Bad user input: malformed config, out-of-range parameters, non-coprime (r,q), ...
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown at runtime: tail-mass overflow, norm drift, non-finite values.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ratchet
