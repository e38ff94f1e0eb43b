#pragma once

#include <stdexcept>
#include <string>

namespace cogcap {

/// Raised when an iterative numerical procedure (quadrature, bisection,
/// bracket growth) fails to converge. Carries a human-readable diagnostic.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an experiment configuration file cannot be parsed or violates
/// a config-level invariant. Maps to CLI exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cogcap
