#include "pdmp/hazard.hpp"

#include <cmath>
#include <stdexcept>

#include "pdmp/flow.hpp"

namespace pdmp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

double gamma_big(const Model& m, double x) {
  if (x < 0.0) throw std::invalid_argument("gamma_big: need x >= 0");
  if (!m.gamma_zero_finite()) {
    throw Error("gamma_big: Gamma is not integrable at 0 (Assumption 2 fails)");
  }
  if (x == 0.0) return 0.0;
  return m.gamma_anti(x);
}

double survival(const Model& m, double x, double t) {
  if (t < 0.0 || x < 0.0) throw std::invalid_argument("survival: need x >= 0 and t >= 0");
  if (t == 0.0) return 1.0;
  if (x == 0.0 && !m.i_zero_finite()) {
    throw AbsorbedAtZeroError("survival: state 0 is absorbing, T_0 is undefined");
  }
  if (m.i_infinity_finite() && t >= m.i_infinity(x)) {
    const double slack = m.gamma_anti_infinity() - m.gamma_anti(x);
    return std::isinf(slack) ? 0.0 : std::exp(-slack);
  }
  const FlowPoint p = flow_at(m, x, t);
  if (p.at_infinity()) {
    const double slack = m.gamma_anti_infinity() - m.gamma_anti(x);
    return std::isinf(slack) ? 0.0 : std::exp(-slack);
  }
  return std::exp(-m.gamma_between(x, p.value));
}

JumpDraw sample_jump(const Model& m, double x, RandomStream& rng) {
  if (x < 0.0) throw std::invalid_argument("sample_jump: need x >= 0");
  if (x == 0.0 && !m.i_zero_finite()) {
    throw AbsorbedAtZeroError("sample_jump: state 0 is absorbing");
  }
  const double e = rng.exponential();
  const double gx = m.gamma_anti(x);
  const double slack = m.gamma_anti_infinity() - gx;
  if (e < slack) {
    const double pre = m.gamma_anti_inverse(gx + e);
    const double dt = m.travel_time(x, pre);
    return {{JumpTimeSample::Kind::At, dt}, pre};
  }
  if (m.i_infinity_finite()) {
    return {{JumpTimeSample::Kind::AtBlowup, m.i_infinity(x)}, kInf};
  }
  return {{JumpTimeSample::Kind::Never, kNaN}, kInf};
}

JumpTimeSample sample_jump_time(const Model& m, double x, RandomStream& rng) {
  return sample_jump(m, x, rng).sample;
}

double expected_jump_time(const Model& m, double x) {
  if (x < 0.0) throw std::invalid_argument("expected_jump_time: need x >= 0");
  if (x == 0.0 && !m.i_zero_finite()) {
    throw AbsorbedAtZeroError("expected_jump_time: state 0 is absorbing");
  }
  // Written with Gamma differences only, so huge absolute Gamma values never
  // overflow the exponential.
  Fn integrand = [&m, x](double z) {
    return std::exp(-m.gamma_between(x, z)) / m.alpha(z);
  };
  return integrate_to_infinity(integrand, x).value_or_inf();
}

}  // namespace pdmp
