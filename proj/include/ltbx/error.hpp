#pragma once

#include <stdexcept>
#include <string>

namespace ltbx {

/// Base class for all library errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or configuration (bad JSON, schema violations, bad arguments).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical precondition does not hold (indefinite Gram matrix,
/// unresolved quadrature tail, insufficient bump smoothness, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An exact identity that the algebra engine asserts internally failed.
class IdentityError : public Error {
 public:
  using Error::Error;
};

}  // namespace ltbx
