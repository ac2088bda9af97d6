#pragma once

#include <stdexcept>
#include <string>

namespace semtrack {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter is outside its admissible range. `field()` names it.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// The model has no well-defined answer (zero effective sampling, zero budget).
class DegenerateModelError : public Error {
public:
    using Error::Error;
};

// The joint chain has more than one closed class, so no unique stationary law.
class ReducibleChainError : public DegenerateModelError {
public:
    using DegenerateModelError::DegenerateModelError;
};

// A formula was evaluated outside the domain on which it is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

// A geometric series required by a mean does not converge.
class ConvergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace semtrack
