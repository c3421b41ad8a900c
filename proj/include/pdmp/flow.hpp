#pragma once

#include <cmath>

#include "pdmp/model.hpp"

namespace pdmp {

/// Value of the deterministic flow; +infinity is an explicit marker reached
/// only when state infinity is accessible (finite I_infinity).
struct FlowPoint {
  double value;
  bool at_infinity() const { return std::isinf(value); }
};

/// States above this cap count as "reached infinity" whenever the travel time
/// to infinity is finite.
inline constexpr double kXMax = 1e12;

/// Flow started at x evaluated after time t. Starting at x = 0 picks the
/// maximal (spontaneous-generation) solution when 0 is reflecting and raises
/// AbsorbedAtZeroError otherwise (for t > 0).
FlowPoint flow_at(const Model& m, double x, double t);

/// Time for the flow to climb from x to y >= x; +infinity exactly when x = 0
/// and 0 is absorbing.
double time_to_reach(const Model& m, double x, double y);

struct BoundaryIntegrals {
  double i_zero;      // int_0^x dz/alpha, +inf when 0 is absorbing.
  double i_infinity;  // int_x^inf dz/alpha, +inf when infinity is inaccessible.
};

BoundaryIntegrals boundary_integrals(const Model& m, double x);

}  // namespace pdmp
