#pragma once

#include <stdexcept>
#include <string>

namespace natanzon {

// Root of the library's exception hierarchy. Each subclass names the failure
// class; the CLI maps them onto exit codes (domain -> 2, numerical -> 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (negative radicand, r outside the
// coordinate map, R <= 0 at the anchor, violated precondition ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Gamma function evaluated at (or within the pole guard of) a non-positive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Kummer M with b a non-positive integer.
class DegenerateParameterError : public DomainError {
public:
    using DomainError::DomainError;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Series / continued fraction / iteration exhausted its budget.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// More than one quartic root survived the branch filter.
class MultipleRootsError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace natanzon
