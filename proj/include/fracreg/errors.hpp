#pragma once

#include <stdexcept>
#include <string>

namespace fracreg {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Value requested outside the range a function attains.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Input violates a structural precondition (wrong shape, non-monotone, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A symmetrized integrand is not integrable at the origin.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, double local_exponent)
        : std::runtime_error(what), local_exponent_(local_exponent) {}

    double local_exponent() const noexcept { return local_exponent_; }

private:
    double local_exponent_;
};

/// Quadrature could not reach the requested tolerance within its budget.
/// Carries the best value found so callers can still report it.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_value, double est_error)
        : std::runtime_error(what), best_value_(best_value), est_error_(est_error) {}

    double best_value() const noexcept { return best_value_; }
    double est_error() const noexcept { return est_error_; }

private:
    double best_value_;
    double est_error_;
};

/// A constructive builder failed to find an admissible object.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency violated (e.g. a nonlinearity that should vanish at 0).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracreg
