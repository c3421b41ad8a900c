#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdmp/numerics.hpp"

namespace pdmp {

// ---- drift families: growth field alpha ----
struct PowerLawDrift {
  double alpha1 = 1.0;  // positive
  double a = 1.0;       // any real exponent
};
struct AffineDrift {
  double alpha0 = 0.0;  // nonnegative
  double alpha1 = 0.0;  // nonnegative, not both zero
};
struct PowerImmigrationDrift {
  double alpha0 = 1.0;  // positive
  double alpha1 = 1.0;  // positive
  double a = 1.0;       // positive
};
using DriftSpec = std::variant<PowerLawDrift, AffineDrift, PowerImmigrationDrift>;

// ---- jump rate families: beta ----
struct PowerLawRate {
  double beta1 = 1.0;  // positive
  double b = 0.0;
};
struct ConstantRate {
  double beta1 = 1.0;  // positive
};
using RateSpec = std::variant<PowerLawRate, ConstantRate>;

// ---- catastrophe kernel families: H(x, y) on [0, x] ----
struct SeparableExpKernel {};     // h(y) = e^y
struct SeparableLinearKernel {};  // h(y) = y, no atom at 0
struct TotalDisasterKernel {};    // h == 1, every jump lands at 0
struct SeparableBoundedKernel {   // h(y) = hinf - (hinf - h0) e^{-lambda y}
  double h0 = 1.0;
  double hinf = 2.0;  // > h0
  double lambda = 1.0;
};
struct FixedFractionKernel {  // jump to u * x
  double u = 0.5;             // in (0, 1)
};
struct UniformFractionKernel {};  // jump to U * x, U uniform on (0, 1)

using KernelSpec =
    std::variant<SeparableExpKernel, SeparableLinearKernel, TotalDisasterKernel,
                 SeparableBoundedKernel, FixedFractionKernel, UniformFractionKernel>;

struct ModelSpec {
  DriftSpec drift;
  RateSpec rate;
  KernelSpec kernel;
};

ModelSpec model_from_json(const std::string& text);
ModelSpec model_from_json_file(const std::string& path);
std::string model_to_json(const ModelSpec& spec);

/// Named checks on a model. Parameter-domain violations are hard errors
/// raised at construction; assumption flags describe the model and land in
/// `violations` when they fail.
struct ValidationReport {
  bool assumption1 = false;  // Gamma(inf) = inf: first jump happens a.s.
  bool assumption2 = false;  // Gamma integrable at 0 (Gamma(0) > -inf)
  bool separable = false;
  bool h0_positive = false;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// A validated model. Immutable after construction and safe to share across
/// threads; families without closed-form hazard or flow primitives carry
/// precomputed prefix tables built here.
class Model {
 public:
  /// Throws std::invalid_argument naming the offending field on
  /// parameter-domain violations.
  explicit Model(const ModelSpec& spec);

  const ModelSpec& spec() const { return spec_; }
  ValidationReport validate() const;

  // coefficients
  double alpha(double x) const;
  double beta(double x) const;
  double gamma(double x) const;  // beta / alpha, finite on (0, inf)

  // kernel structure
  bool separable() const { return separable_; }
  double h(double y) const;        // separable families only
  double log_h(double y) const;    // log h, safe where h itself overflows
  double h_prime(double y) const;  // derivative of h, separable families only
  double h0() const { return h0_; }
  double h_infinity() const { return h_inf_; }  // +inf for unbounded h

  // boundary structure of the deterministic flow
  bool i_zero_finite() const { return i_zero_finite_; }
  bool i_infinity_finite() const { return i_infinity_finite_; }
  double i_zero(double x) const;      // int_0^x dz/alpha, +inf allowed
  double i_infinity(double x) const;  // int_x^inf dz/alpha, +inf allowed

  // integrated hazard Gamma = int beta/alpha. The antiderivative is anchored
  // at Gamma(0) = 0 whenever gamma is integrable at 0; otherwise it is a fixed
  // antiderivative whose differences remain exact.
  bool gamma_zero_finite() const { return gamma_zero_finite_; }
  bool gamma_infinity_finite() const { return gamma_inf_finite_; }
  double gamma_anti(double x) const;
  double gamma_between(double x, double y) const;  // Gamma(y) - Gamma(x)
  double gamma_anti_infinity() const { return gamma_anti_inf_; }
  double gamma_anti_inverse(double target) const;

  // deterministic flow primitives (markers and 0-boundary policy live in flow.hpp)
  double flow_raw(double x, double t) const;
  double travel_time(double x, double y) const;  // int_x^y dz/alpha, y >= x

  // leading power of alpha at the boundaries (alpha ~ c x^p)
  double alpha_exponent_zero() const { return a_zero_; }
  double alpha_exponent_infinity() const { return a_inf_; }

 private:
  enum class DriftFamily { power_law, affine, power_immigration };
  enum class RateFamily { power_law, constant };
  enum class KernelFamily {
    separable_exp,
    separable_linear,
    total_disaster,
    separable_bounded,
    fixed_fraction,
    uniform_fraction
  };

  void check_parameters() const;
  void derive_structure();
  void build_tables();

  ModelSpec spec_;
  DriftFamily drift_family_;
  RateFamily rate_family_;
  KernelFamily kernel_family_;
  double alpha0_ = 0.0, alpha1_ = 0.0, drift_a_ = 0.0;
  double beta1_ = 0.0, rate_b_ = 0.0;

  bool separable_ = false;
  double h0_ = 0.0, h_inf_ = 0.0;

  double a_zero_ = 0.0, a_inf_ = 0.0;  // alpha exponents at 0 / inf
  double q_zero_ = 0.0, q_inf_ = 0.0;  // gamma exponents at 0 / inf
  bool i_zero_finite_ = false, i_infinity_finite_ = false;
  bool gamma_zero_finite_ = false, gamma_inf_finite_ = false;

  // closed-form hazard: gamma(x) = gamma1 x^p or the affine/constant log form
  enum class GammaForm { power, affine_log, table };
  GammaForm gamma_form_ = GammaForm::table;
  double gamma1_ = 0.0, gamma_p_ = 0.0;

  double gamma_anti_inf_ = 0.0;
  double i_total_ = 0.0;  // int_0^inf dz/alpha when finite

  std::shared_ptr<const CumulativeIntegral> gamma_table_;
  std::shared_ptr<const CumulativeIntegral> flow_table_;  // primitive of 1/alpha
};

ValidationReport validate(const ModelSpec& spec);

}  // namespace pdmp
