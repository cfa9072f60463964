#pragma once

#include <stdexcept>
#include <string>

namespace kalman {

/// Parameter outside the documented range of an operation.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operands live in different truncated rings.
struct RingMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Inexact or impossible exact arithmetic (non-unit inverse, division by zero).
struct ArithmeticError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A claimed witness failed exact re-verification.
struct CertificationError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Two degree routes produced different values for the same instance.
struct RouteDisagreement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed matrix/tensor input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace kalman
