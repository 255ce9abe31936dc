#pragma once

#include <stdexcept>
#include <string>

namespace ruinlab {

/// Precondition or parameter violation. Messages name the offending field.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a claim law has no finite mean (Pareto with shape <= 1).
class UndefinedMeanError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Quadrature that did not converge, non-finite surplus, and similar.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ruinlab
