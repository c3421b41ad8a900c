#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdmp/model.hpp"

namespace pdmp {

enum class ZeroClass { regular, exit, entrance, natural };
enum class InfinityClass { inaccessible, accessible };
enum class Recurrence {
  positive_recurrent,
  null_recurrent,
  transient_absorbed_at_zero,
  transient_to_infinity,
  hits_infinity_finite_time_possible,
  unknown_no_scale,
};

const char* to_string(ZeroClass c);
const char* to_string(InfinityClass c);
const char* to_string(Recurrence r);

struct BoundaryReport {
  ZeroClass zero_class;
  InfinityClass infinity_class;
  Recurrence recurrence;
  double s_infinity;  // +inf allowed; NaN when no scale function exists
  double pi_mass;     // unnormalized speed mass; +inf allowed; NaN without h
  std::vector<std::string> notes;
};

/// Speed density pi(y) = C h(y)/alpha(y) e^{-Gamma(y)}. When the total mass is
/// finite, C normalizes pi to a probability density; otherwise C = 1 and the
/// unnormalizable flag is set. The evaluator references the model it was
/// built from, which must stay alive.
struct SpeedDensity {
  bool normalizable;
  double C;
  double mass;  // +inf when divergent
  std::function<double(double)> density;
};

/// Modified scale function s(x) = int_0^x (gamma(y)/h(y)) e^{Gamma(y)} dy.
/// Requires a separable kernel with h(0) > 0 and Gamma anchored at 0.
double scale_s(const Model& m, double x);

/// s(infinity), +inf when the integral diverges (recurrence indicator).
double scale_s_infinity(const Model& m);

/// P(hit b before 0 | start x) = (kappa + s(x)) / (kappa + s(b)), kappa = 1/h(0).
double exit_prob_up(const Model& m, double x, double b);

/// P(excursion height < b) = s(b) / (kappa + s(b)); requires 0 reflecting.
double excursion_height_cdf(const Model& m, double b);

SpeedDensity speed_density(const Model& m);

BoundaryReport classify(const Model& m);

/// Expected first hitting time of 0 from x, finite in the positive-recurrent
/// regime; u(0+) = 1 / (C h(0)).
double expected_return_time(const Model& m, double x);

/// Invariant law of the post-jump chain: an atom at 0 plus a density on
/// (0, inf). The evaluator references the model it was built from.
struct EmbeddedInvariant {
  double atom_at_zero;
  std::function<double(double)> density;
};

EmbeddedInvariant embedded_invariant(const Model& m);

}  // namespace pdmp
