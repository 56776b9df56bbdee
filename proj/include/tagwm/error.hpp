#pragma once

#include <stdexcept>
#include <string>

namespace tagwm {

/// Base of every error raised by the library. The CLI maps IoError to exit
/// code 3 and everything else to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input values violate a type invariant (non-binary bits, non-finite
/// latents, out-of-range densities).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported array file.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParameterError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Message longer than the latent grid can hold.
class CapacityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Metric is undefined for the given inputs (e.g. AUC with one class).
class MetricError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tagwm
