#pragma once

#include <stdexcept>
#include <string>

namespace csq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncation size outside the supported range.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the mathematical domain of an operation (s >= 1, alpha <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or output, or a failed numerical invariant.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues did not settle within the largest allowed truncation.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or malformed configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Unparseable function specification.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace csq
