#pragma once

#include <stdexcept>
#include <string>

namespace nlk {

/// Base class for all errors raised by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter value outside its admissible range (lambda <= 0, xi = 0, ...).
struct InvalidParameter : Error {
    using Error::Error;
};

/// Parameters on which the underlying statement is not available
/// (p*s = 1 for Hardy/extension, s = 1/2 or p != 2 for Korn, p < 2 for c_p).
struct ExcludedParameter : Error {
    using Error::Error;
};

/// Coincident points handed to a difference quotient.
struct DegeneratePair : Error {
    using Error::Error;
};

/// Field and integration domain do not fit together.
struct DomainError : Error {
    using Error::Error;
};

/// Field cannot be handled by the requested operation
/// (no compact support on an unbounded domain, missing gradient, ...).
struct UnsupportedField : Error {
    using Error::Error;
};

/// Half-space field whose support touches the hyperplane x_d = 0.
struct BoundaryContact : Error {
    using Error::Error;
};

/// Ratio against a seminorm that is identically zero.
struct NullSeminorm : Error {
    using Error::Error;
};

} // namespace nlk
