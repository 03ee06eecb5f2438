#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fluxon {

/// Base of every numeric/regime failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Perturbative or approximation regime assumption violated.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// Explicit integrator blew up or violated its CFL bound.
class StabilityError : public Error {
public:
    using Error::Error;
};

/// Kink velocity reached the light cone |u| -> 1.
class RangeError : public Error {
public:
    using Error::Error;
};

class NoKinkError : public Error {
public:
    using Error::Error;
};

class NoCrossingError : public Error {
public:
    using Error::Error;
};

/// Evaluation exactly at the plasma-frequency gap edge.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Aggregates every schema violation found in a configuration document.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid configuration:";
        for (const auto& s : v) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

}  // namespace fluxon
