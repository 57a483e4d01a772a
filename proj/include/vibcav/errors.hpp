#pragma once

#include <stdexcept>
#include <string>

namespace vibcav {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested parameters are outside the regime a given method supports.
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration stopped before meeting its tolerance.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double partial_value,
                     double error_estimate)
      : Error(what), partial_value_(partial_value),
        error_estimate_(error_estimate) {}

  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_value_;
  double error_estimate_;
};

/// A spectral peak is narrower than the sampling grid can resolve.
class PeakUnresolved : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vibcav
