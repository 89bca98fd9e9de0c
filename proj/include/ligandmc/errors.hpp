#pragma once

#include <stdexcept>
#include <string>

namespace ligandmc {

// Invalid scenario, configuration, or operation inputs. Mapped to exit code 2
// by the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (non-converging truncated sum, ODE timeout, degenerate
// discriminant). Mapped to exit code 3 by the CLI.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ligandmc
