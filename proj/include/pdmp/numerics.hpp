#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "pdmp/errors.hpp"

namespace pdmp {

using Fn = std::function<double(double)>;

/// Accuracy budget shared by quadrature and root finding.
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;
  int max_subdivisions = 50000;
};

/// Adaptive Gauss-Kronrod 7-15 integration over a finite interval.
/// Integrable endpoint power singularities (y^p, p > -1) are handled by
/// bisection concentrating at the endpoint; nodes never touch a or b.
/// Throws IntegrationError when the subdivision budget is exhausted and
/// NonFiniteIntegralError when the integrand overflows.
double integrate(const Fn& f, double a, double b, const Tolerance& tol = {});

/// Result of an integral over [a, inf).
struct Improper {
  double value = 0.0;
  bool divergent = false;
  double value_or_inf() const {
    return divergent ? std::numeric_limits<double>::infinity() : value;
  }
};

/// Integral over [a, inf) by interval doubling with a Cauchy stopping rule.
/// Divergence (increments that refuse to shrink for 8 consecutive doublings,
/// or overflow of a nonnegative integrand) is a normal outcome, not an error.
/// Sign-alternating increments that do not shrink raise
/// OscillatoryIntegralError instead.
Improper integrate_to_infinity(const Fn& f, double a, const Tolerance& tol = {});

/// Solves g(x) = target for non-decreasing continuous g with g(lo) <= target.
/// hi may be +inf, in which case the bracket is expanded by doubling;
/// expansion failure raises NoRootError.
double invert_monotone(const Fn& g, double target, double lo, double hi,
                       const Tolerance& tol = {});

/// Prefix table of the primitive F(x) = head + \int_{x_lo}^x f of a positive,
/// piecewise-smooth f over a geometric grid. Gives O(1)-ish evaluation of the
/// primitive at arbitrary points and inversion of the primitive, both exact up
/// to quadrature tolerance (each query finishes with a fresh partial-panel
/// integral, no interpolation). Immutable after construction.
class CumulativeIntegral {
 public:
  /// head = \int_0^{x_lo} f when f is integrable at 0; pass head = 0 with
  /// anchored = true to anchor the primitive at x_lo instead.
  CumulativeIntegral(Fn f, double head, bool anchored, double x_lo, double x_hi);

  double primitive(double x) const;          // F(x); negative below the anchor
  double between(double x, double y) const;  // F(y) - F(x), any order
  double inverse(double target) const;       // solve F(z) = target
  double x_lo() const { return nodes_.front(); }
  double x_hi() const { return nodes_.back(); }
  double total() const { return prefix_.back(); }

 private:
  std::size_t panel_of(double x) const;

  Fn f_;
  double head0_;  // primitive at x_lo (0 when anchored)
  std::vector<double> nodes_;
  std::vector<double> prefix_;
};

/// Deterministic pairwise (tree) summation; result is independent of how the
/// array was filled, which keeps multi-threaded estimators bit-reproducible.
double pairwise_sum(const double* v, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

}  // namespace pdmp
