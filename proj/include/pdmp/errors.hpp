#pragma once

#include <stdexcept>
#include <string>

namespace pdmp {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature ran out of subdivisions; carries the best estimate reached.
struct IntegrationError : Error {
  IntegrationError(const std::string& what, double best, double bound)
      : Error(what), best_estimate(best), error_bound(bound) {}
  double best_estimate;
  double error_bound;
};

/// The integrand produced non-finite values (overflow or domain error).
struct NonFiniteIntegralError : Error {
  explicit NonFiniteIntegralError(const std::string& what, double sign = 0.0)
      : Error(what), sign(sign) {}
  double sign;  // +1 / -1 when the blow-up direction is known, 0 otherwise
};

/// Improper integral whose partial sums neither settle nor grow monotonically.
struct OscillatoryIntegralError : Error {
  using Error::Error;
};

/// Root bracketing failed: the target lies outside the range of g.
struct NoRootError : Error {
  using Error::Error;
};

struct AbsorbedAtZeroError : Error {
  using Error::Error;
};

struct UnsupportedKernelError : Error {
  using Error::Error;
};

struct ZeroNotReflectingError : Error {
  using Error::Error;
};

struct NotPositiveRecurrentError : Error {
  using Error::Error;
};

}  // namespace pdmp
