#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: a parameter outside its domain or a malformed file.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A wavelength outside a material's Sellmeier validity range.
class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Inputs are well formed but the requested physics has no solution, or an
/// approximation is used outside the regime where it holds.
class RegimeError : public Error {
public:
    using Error::Error;
};

class NotPhaseMatchableError : public RegimeError {
public:
    using RegimeError::RegimeError;
};

}  // namespace biphoton
