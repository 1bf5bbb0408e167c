#pragma once

#include <stdexcept>
#include <string>

namespace helixkit {

/// Base class of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax problem in a curve definition or expression, with 1-based location.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(message + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line(line),
          column(column) {}

    int line;
    int column;
};

/// Math domain violation: log/sqrt of a nonpositive value, division by a jet
/// with zero value entry. Raised instead of letting NaNs propagate.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested computation exceeds what the input representation supports
/// (jet order caps, derivative depth of sampled curves, sphere-scan budgets).
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// An input violates a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The curve fails non-degeneracy: the i-th Gram-Schmidt step found no
/// independent direction, or a curvature sits below tolerance.
class DegenerateCurveError : public Error {
public:
    DegenerateCurveError(const std::string& message, double t, int step)
        : Error(message), t(t), step(step) {}

    double t;
    int step;
};

/// |alpha'(t)| below tolerance: the curve is not regular at t.
class NotRegularError : public Error {
public:
    NotRegularError(const std::string& message, double t) : Error(message), t(t) {}

    double t;
};

}  // namespace helixkit
