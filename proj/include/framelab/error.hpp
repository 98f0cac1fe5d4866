#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share an ambient dimension do not.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An iterative method stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration that does not match its schema.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace framelab
