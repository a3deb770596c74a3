#pragma once

#include <stdexcept>
#include <string>

namespace critline {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : NumericError {
    using NumericError::NumericError;
};

// Pole of Gamma / zeta / chi at an integer.
struct PoleError : NumericError {
    long where;
    PoleError(const std::string& msg, long at) : NumericError(msg), where(at) {}
};

// Target accuracy out of reach; `achievable` is the best relative eps seen.
struct AccuracyError : NumericError {
    double achievable;
    AccuracyError(const std::string& msg, double eps) : NumericError(msg), achievable(eps) {}
};

struct ConvergenceError : NumericError {
    using NumericError::NumericError;
};

struct PreconditionError : NumericError {
    using NumericError::NumericError;
};

struct ContinuationError : NumericError {
    using NumericError::NumericError;
};

struct RegimeError : NumericError {
    using NumericError::NumericError;
};

struct DegenerateZeroError : NumericError {
    using NumericError::NumericError;
};

struct ResolutionError : NumericError {
    using NumericError::NumericError;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : ValidationError {
    long line;
    ParseError(const std::string& msg, long ln) : ValidationError(msg), line(ln) {}
};

}  // namespace critline
