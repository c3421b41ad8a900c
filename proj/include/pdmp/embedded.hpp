#pragma once

#include <vector>

#include "pdmp/hazard.hpp"
#include "pdmp/model.hpp"
#include "pdmp/rng.hpp"

namespace pdmp {

/// The post-jump chain terminated: the next jump never happens (the draw came
/// out AtBlowup or Never).
struct ChainTerminatedError : Error {
  explicit ChainTerminatedError(JumpTimeSample outcome)
      : Error("embedded chain terminated: no further jump"), outcome(outcome) {}
  JumpTimeSample outcome;
};

/// One-step transition CDF of the post-jump chain Z_n:
/// P(Z_n <= y | Z_{n-1} = x) =
///   1 - e^{-(Gamma(x v y) - Gamma(x))}
///   + int_{x v y}^inf gamma(z) e^{-(Gamma(z) - Gamma(x))} H(z, y) dz.
/// Works for every kernel family; with 0 absorbing the boundary row
/// P(Z_n = 0 | Z_{n-1} = 0) = 1 applies.
double embedded_cdf(const Model& m, double x, double y);

/// embedded_cdf evaluated on an ascending grid in one cumulative backward
/// pass (separable kernels); falls back to pointwise evaluation otherwise.
std::vector<double> embedded_cdf_batch(const Model& m, double x,
                                       const std::vector<double>& sorted_y);

/// P(Z_n <= x | Z_{n-1} = x), the probability that the chain moves down.
double down_move_prob(const Model& m, double x);

struct EmbeddedStep {
  double z;   // next post-jump value
  double u;   // pre-jump value (position at the jump)
  double dt;  // holding time
};

/// Exact draw of one chain step by composing the jump-time and kernel
/// samplers; the transition CDF above stays an independent check.
EmbeddedStep sample_embedded_step(const Model& m, double x, RandomStream& rng);

/// Running sums sum_{k<=m} e(Z_k), m = 1..n (shorter if the chain
/// terminates); a bounded limit signals explosion in finite time.
std::vector<double> explosion_partial_sums(const Model& m, double x, std::size_t n,
                                           RandomStream& rng);

/// Density of the pre-jump chain's invariant law in the total-disaster case,
/// where the chain is an i.i.d. sequence: gamma(y) e^{-Gamma(y)}.
double prejump_invariant_density(const Model& m, double y);

}  // namespace pdmp
