#pragma once

#include <stdexcept>
#include <string>

namespace perplex {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands belong to different rings.
class ring_mismatch_error : public error {
public:
    using error::error;
};

/// Inversion of a non-unit was requested.
class not_a_unit_error : public error {
public:
    using error::error;
};

/// The operation is not defined for the given ring class
/// (e.g. Smith normal form outside PIDs). A capability refusal,
/// not a mathematical verdict.
class unsupported_ring_error : public error {
public:
    using error::error;
};

/// Malformed textual or JSON input.
class parse_error : public error {
public:
    using error::error;
};

/// A complex-valued argument failed validation (shape or d*d != 0).
class invalid_complex_error : public error {
public:
    using error::error;
};

/// Dimensions of two objects that must match do not.
class shape_mismatch_error : public error {
public:
    using error::error;
};

} // namespace perplex
