#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace swcalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (scenario JSON, unknown command).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Operands live in different graded rings.
class RingMismatch : public Error {
public:
    using Error::Error;
};

/// Input data violates a structural invariant (non-symmetric Gram matrix,
/// non-characteristic c1, unresolved name, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A named precondition of an operation does not hold.
class HypothesisError : public Error {
public:
    HypothesisError(std::string hypothesis, const std::string& detail)
        : Error("hypothesis '" + hypothesis + "' fails: " + detail), name_(std::move(hypothesis)) {}

    const std::string& hypothesis() const noexcept { return name_; }

private:
    std::string name_;
};

/// An operation is undefined at the given input (e.g. ambiguous cohomology).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Derived data contradicts data already recorded.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// An identity that must hold by construction failed; indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace swcalc
