#pragma once

#include <stdexcept>
#include <string>

namespace lcn {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Operation invoked in a configuration it does not support (wrong flag
// combination, density kind, parameter range, ...).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Adaptive integration exhausted its subdivision budget before reaching the
// requested tolerance. Carries the best estimate so callers can still inspect
// how far the run got.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double best_estimate,
                        double error_estimate)
        : std::runtime_error(what),
          best_estimate(best_estimate),
          error_estimate(error_estimate) {}

    double best_estimate;
    double error_estimate;
};

}  // namespace lcn
