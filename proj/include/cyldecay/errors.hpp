#pragma once

#include <stdexcept>
#include <string>

namespace cyldecay {

/// Base class for all construction/evaluation errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A builder parameter violates its admissible domain.
class ParameterDomain : public Error {
public:
    using Error::Error;
};

/// A field does not solve the constant-coefficient equation it was declared for.
class IncompatibleField : public Error {
public:
    using Error::Error;
};

/// Strict-mode packing: a phase does not fit in its slot.
class PackingViolation : public Error {
public:
    using Error::Error;
};

/// The frequency seed is too small for the requested eigenvalue.
class FrequencyFloor : public Error {
public:
    using Error::Error;
};

/// The ODE integrator could not meet its error budget.
class OdeTolerance : public Error {
public:
    using Error::Error;
};

/// The oscillatory tail of the symmetrization head degenerated.
class DegenerateMatch : public Error {
public:
    using Error::Error;
};

/// Evaluation outside a segment's time interval.
class OutOfInterval : public Error {
public:
    using Error::Error;
};

/// Evaluation outside a timeline's covered range.
class OutOfRange : public Error {
public:
    using Error::Error;
};

/// A verifier was invoked on a timeline of the wrong kind.
class WrongKind : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent serialized data.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace cyldecay
