#ifndef VGSMILE_ERRORS_HPP
#define VGSMILE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vgsmile {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument or model parameter (maps to CLI exit code 2).
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation at a point where the function is singular or discontinuous.
// left/right carry one-sided limits when they are finite.
class SingularityError : public DomainError {
public:
    SingularityError(const std::string& msg, double left, double right)
        : DomainError(msg), left_limit(left), right_limit(right) {}
    explicit SingularityError(const std::string& msg)
        : DomainError(msg), left_limit(0), right_limit(0) {}
    double left_limit;
    double right_limit;
};

// Requested price violates a static arbitrage bound; `bound` names which one.
class BoundViolationError : public DomainError {
public:
    BoundViolationError(const std::string& msg, std::string which)
        : DomainError(msg), bound(std::move(which)) {}
    std::string bound;
};

// A conversion that has no representation (e.g. the v = 0 limit has no
// standard variance-gamma parameterization).
class NotRepresentableError : public DomainError {
public:
    using DomainError::DomainError;
};

// Iterative scheme failed to converge (maps to CLI exit code 3).
// Carries the best estimate reached.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, double partial, int iters)
        : Error(msg), partial_estimate(partial), iterations(iters) {}
    double partial_estimate;
    int iterations;
};

// Root bracketing failed over the search interval.
class BracketError : public Error {
public:
    BracketError(const std::string& msg, double lo, double hi)
        : Error(msg), lower(lo), upper(hi) {}
    double lower;
    double upper;
};

} // namespace vgsmile

#endif
