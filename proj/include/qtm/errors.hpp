#pragma once

#include <stdexcept>
#include <string>

namespace qtm {

/// Invalid run configuration or malformed input file. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to reach its accuracy or validity target.
/// CLI maps this (and std::domain_error) to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature or iteration stopped short of the requested tolerance.
class AccuracyError : public NumericError {
 public:
  AccuracyError(const std::string& what, double achieved)
      : NumericError(what), achieved_tolerance(achieved) {}
  double achieved_tolerance;
};

/// The dressed-propagator denominator is too close to a pole to evaluate.
class PoleProximityError : public NumericError {
 public:
  PoleProximityError(const std::string& what, double s_real, double s_imag, double denom_abs)
      : NumericError(what), s_re(s_real), s_im(s_imag), denominator_abs(denom_abs) {}
  double s_re;
  double s_im;
  double denominator_abs;
};

}  // namespace qtm
