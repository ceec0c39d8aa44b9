#pragma once

#include <stdexcept>
#include <string>

namespace slinv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or preconditions violated by the caller.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Input spectral data that fails an admissibility check.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A computation that could not be carried out reliably
/// (singular systems, missed brackets, degenerate fits).
class NumericalError : public Error {
  public:
    using Error::Error;
};

} // namespace slinv
