#pragma once

#include <stdexcept>
#include <string>

namespace ddent {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A scenario or parameter record is inconsistent or malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A quadrature or iterative solve failed to reach its tolerance, or the
// integrand produced a non-finite value.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A computed object violates one of its invariants (Hermiticity, trace,
// positivity, truncation checks).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ddent
