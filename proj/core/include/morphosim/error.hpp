#pragma once

#include <stdexcept>
#include <string>

namespace morphosim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: parameters out of range, malformed config values.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The profile can no longer be parametrized by its angle (dphi <= 0, or a
/// vanishing Icos weight away from the poles).
class ParametrizationLoss : public Error {
 public:
  ParametrizationLoss(const std::string& what, double time)
      : Error(what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A numerical procedure produced a non-finite value or failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace morphosim
