#include "pdmp/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace pdmp {

FlowPoint flow_at(const Model& m, double x, double t) {
  if (t < 0.0 || x < 0.0) throw std::invalid_argument("flow_at: need x >= 0 and t >= 0");
  if (x == 0.0) {
    if (t == 0.0) return {0.0};
    if (!m.i_zero_finite()) {
      throw AbsorbedAtZeroError("flow_at: state 0 is absorbing, no flow leaves it");
    }
  }
  if (m.i_infinity_finite() && t >= m.i_infinity(x)) {
    return {std::numeric_limits<double>::infinity()};
  }
  double v = m.flow_raw(x, t);
  if (m.i_infinity_finite() && v > kXMax) {
    return {std::numeric_limits<double>::infinity()};
  }
  return {v};
}

double time_to_reach(const Model& m, double x, double y) {
  if (x < 0.0 || y < x) throw std::invalid_argument("time_to_reach: need y >= x >= 0");
  if (y == x) return 0.0;
  return m.travel_time(x, y);
}

BoundaryIntegrals boundary_integrals(const Model& m, double x) {
  if (x <= 0.0) throw std::invalid_argument("boundary_integrals: need x > 0");
  return {m.i_zero(x), m.i_infinity(x)};
}

}  // namespace pdmp
