#pragma once

#include <stdexcept>
#include <string>

namespace bfb {

// Caller broke a documented precondition (dimension mismatch, p < 1, ...).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// An iterate or query point left the region where the object is defined
// (e.g. a gradient request outside int dom f).
class DomainViolation : public std::runtime_error {
public:
    explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

// No dispatch path exists for a (kernel, operator) combination.
class UnsupportedPair : public std::runtime_error {
public:
    explicit UnsupportedPair(const std::string& what) : std::runtime_error(what) {}
};

// Inner solver ran out of iterations; carries the best residual seen.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual(best_residual) {}
    double best_residual;
};

// A randomized checker could not produce admissible sample points.
class SamplingError : public std::runtime_error {
public:
    explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent configuration document.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bfb
