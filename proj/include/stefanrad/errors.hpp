#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stefanrad {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration or grid parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver gave up. Carries the last iterate for inspection.
class NonconvergenceError : public Error {
 public:
  NonconvergenceError(const std::string& what, std::vector<double> last_iterate)
      : Error(what), last_iterate_(std::move(last_iterate)) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::vector<double> last_iterate_;
};

/// Requested speed lies above c_max: the liquid slope coefficient is negative.
class SupercriticalSpeedError : public Error {
 public:
  SupercriticalSpeedError(const std::string& what, double slope_coefficient)
      : Error(what), slope_coefficient_(slope_coefficient) {}

  double slope_coefficient() const noexcept { return slope_coefficient_; }

 private:
  double slope_coefficient_;
};

/// The measured contraction ratio of the small-T_M map stayed >= 1.
class ContractionFailure : public Error {
 public:
  using Error::Error;
};

/// An iterate left the weighted space used by the small-T_M map.
class SpaceViolation : public Error {
 public:
  using Error::Error;
};

/// No sign change of the c_max indicator inside the scanned speed range.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double psi_low, double psi_high)
      : Error(what), psi_low_(psi_low), psi_high_(psi_high) {}

  double psi_low() const noexcept { return psi_low_; }
  double psi_high() const noexcept { return psi_high_; }

 private:
  double psi_low_;
  double psi_high_;
};

}  // namespace stefanrad
