#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace iosnoma {

// Rejected parameter values. Maps to the CLI's configuration exit code.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidShape : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidOrder : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidAlpha : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Failures of the numerical pipeline itself (quadrature, moment matching).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureNotConverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateDistribution : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// E[1/|h|^2] does not exist under the moment-matched Gamma law (shape <= 1).
class NonIntegrableInverseMoment : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A configuration document that parses but does not describe a valid run.
// `field` is the dotted path of the offending key.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, const std::string& msg)
      : InvalidArgument(field.empty() || msg.rfind(field + ":", 0) == 0 ? msg : field + ": " + msg),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace iosnoma
