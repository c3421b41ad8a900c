#pragma once

#include "pdmp/model.hpp"

namespace fixtures {

using namespace pdmp;

// sqrt growth, constant rate, total disasters: Gamma(x) = 2 sqrt(x),
// s(x) = e^{Gamma(x)} - 1, positive recurrent, u(0) = 1
inline ModelSpec total_disaster_sqrt() {
  return {PowerLawDrift{1.0, 0.5}, ConstantRate{1.0}, TotalDisasterKernel{}};
}

// affine growth with immigration, exponential kernel: Gamma = log(1 + x),
// s(x) = 1 - e^{-x}, transient towards infinity
inline ModelSpec affine_exp() {
  return {AffineDrift{1.0, 1.0}, ConstantRate{1.0}, SeparableExpKernel{}};
}

// sqrt growth with gamma == 2, exponential kernel: positive recurrent,
// speed density y^{-1/2} e^{-y} / sqrt(pi), u(0) = sqrt(pi)
inline ModelSpec recurrent_exp() {
  return {PowerLawDrift{1.0, 0.5}, PowerLawRate{2.0, 0.5}, SeparableExpKernel{}};
}

// quadratic growth with immigration, rate x^{3/2}, exponential kernel:
// the flow blows up in finite time but a jump always comes first
inline ModelSpec power_immigration_exp() {
  return {PowerImmigrationDrift{1.0, 1.0, 2.0}, PowerLawRate{1.0, 1.5},
          SeparableExpKernel{}};
}

// total-disaster variant of the explosive immigration model
inline ModelSpec power_immigration_disaster() {
  return {PowerImmigrationDrift{1.0, 1.0, 2.0}, PowerLawRate{1.0, 1.5},
          TotalDisasterKernel{}};
}

// Malthus drift, rate vanishing linearly at 0: state 0 is absorbing and is
// reached in finite time (s(inf) = inf)
inline ModelSpec absorbed_exp() {
  return {PowerLawDrift{1.0, 1.0}, PowerLawRate{1.0, 1.0}, SeparableExpKernel{}};
}

// quadratic blow-up with constant rate: T_x carries an atom at the blow-up
// time I_inf(x) = 1/x
inline ModelSpec blowup_constant_rate() {
  return {PowerLawDrift{1.0, 2.0}, ConstantRate{1.0}, SeparableExpKernel{}};
}

}  // namespace fixtures
