#pragma once

#include <stdexcept>
#include <string>

namespace axiskit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (axis evaluation, diagonal
/// kernel point, exponent out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The field lacks a component required by the operation (e.g. pressure).
class IncompleteFieldError : public Error {
 public:
  using Error::Error;
};

/// An adaptive integrator exhausted its subdivision budget. Carries the best
/// estimate reached so callers can still report it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const { return best_estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// Invalid run configuration (unknown key, malformed value, failed validation).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace axiskit
