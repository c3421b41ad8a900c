#pragma once

#include "pdmp/model.hpp"
#include "pdmp/rng.hpp"

namespace pdmp {

/// First jump time of the process started at x. The time is exact: no
/// discretization is involved anywhere.
struct JumpTimeSample {
  enum class Kind {
    At,       // jump at finite time t
    AtBlowup, // no jump before the flow reaches infinity; t = I_infinity(x)
    Never     // the flow escapes without ever jumping (Gamma(inf) finite,
              // infinity inaccessible)
  };
  Kind kind;
  double t;  // defined for At and AtBlowup

  bool is_at() const { return kind == Kind::At; }
};

/// Integrated hazard Gamma(x) = int_0^x beta/alpha with Gamma(0) = 0.
/// Raises Error when Gamma is not integrable at 0.
double gamma_big(const Model& m, double x);

/// P(T_x > t). For t past a finite blow-up time this is the atom mass
/// exp(-(Gamma(inf) - Gamma(x))), zero when Gamma(inf) = inf.
double survival(const Model& m, double x, double t);

/// Exact draw of the first jump time by inverting the integrated hazard along
/// the flow: t solves Gamma(x_t(x)) = Gamma(x) + E for a standard exponential E.
JumpTimeSample sample_jump_time(const Model& m, double x, RandomStream& rng);

/// Mean of T_x: e(x) = e^{Gamma(x)} int_x^inf e^{-Gamma(z)} / alpha(z) dz.
/// Returns +inf when the tail integral diverges.
double expected_jump_time(const Model& m, double x);

/// First jump time and the pre-jump position drawn jointly (the inversion
/// solves for the position first, so both come out of one draw).
struct JumpDraw {
  JumpTimeSample sample;
  double pre_jump;  // flow value at the jump; +inf for AtBlowup / Never
};

JumpDraw sample_jump(const Model& m, double x, RandomStream& rng);

}  // namespace pdmp
