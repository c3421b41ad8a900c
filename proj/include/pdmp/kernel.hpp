#pragma once

#include "pdmp/model.hpp"
#include "pdmp/rng.hpp"

namespace pdmp {

/// H(x, y) = P(post-jump value <= y | pre-jump value x), a CDF in y with all
/// mass on [0, x].
double kernel_cdf(const Model& m, double x, double y);

/// Mass of the atom at 0: H(x, 0), the probability that a catastrophe at x is
/// a disaster (instantaneous extinction).
double disaster_prob(const Model& m, double x);

/// Draws the post-jump position. The atom at 0 is sampled by an explicit
/// branch so that disasters land on exactly 0.0, never on a rounded small
/// number; the continuous part is inverted in closed form.
double sample_after_jump(const Model& m, double x, RandomStream& rng);

}  // namespace pdmp
