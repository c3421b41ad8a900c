#include "pdmp/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pdmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTableLo = 1e-8;
constexpr double kTableHi = 1e12;
constexpr double kSaturate = 1e300;  // finite stand-in when the flow overflows but
                                     // infinity is inaccessible

bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }
bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

Model::Model(const ModelSpec& spec) : spec_(spec) {
  drift_family_ = std::holds_alternative<PowerLawDrift>(spec_.drift)
                      ? DriftFamily::power_law
                      : (std::holds_alternative<AffineDrift>(spec_.drift)
                             ? DriftFamily::affine
                             : DriftFamily::power_immigration);
  rate_family_ = std::holds_alternative<PowerLawRate>(spec_.rate) ? RateFamily::power_law
                                                                  : RateFamily::constant;
  if (std::holds_alternative<SeparableExpKernel>(spec_.kernel)) {
    kernel_family_ = KernelFamily::separable_exp;
  } else if (std::holds_alternative<SeparableLinearKernel>(spec_.kernel)) {
    kernel_family_ = KernelFamily::separable_linear;
  } else if (std::holds_alternative<TotalDisasterKernel>(spec_.kernel)) {
    kernel_family_ = KernelFamily::total_disaster;
  } else if (std::holds_alternative<SeparableBoundedKernel>(spec_.kernel)) {
    kernel_family_ = KernelFamily::separable_bounded;
  } else if (std::holds_alternative<FixedFractionKernel>(spec_.kernel)) {
    kernel_family_ = KernelFamily::fixed_fraction;
  } else {
    kernel_family_ = KernelFamily::uniform_fraction;
  }
  check_parameters();
  derive_structure();
  build_tables();
}

void Model::check_parameters() const {
  std::vector<std::string> bad;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PowerLawDrift>) {
          if (!finite_pos(d.alpha1)) bad.push_back("drift.alpha1 must be positive");
          if (!std::isfinite(d.a)) bad.push_back("drift.a must be finite");
        } else if constexpr (std::is_same_v<T, AffineDrift>) {
          if (!finite_nonneg(d.alpha0)) bad.push_back("drift.alpha0 must be nonnegative");
          if (!finite_nonneg(d.alpha1)) bad.push_back("drift.alpha1 must be nonnegative");
          if (d.alpha0 == 0.0 && d.alpha1 == 0.0)
            bad.push_back("drift.alpha0 and drift.alpha1 must not both be zero");
        } else {
          if (!finite_pos(d.alpha0)) bad.push_back("drift.alpha0 must be positive");
          if (!finite_pos(d.alpha1)) bad.push_back("drift.alpha1 must be positive");
          if (!finite_pos(d.a)) bad.push_back("drift.a must be positive");
        }
      },
      spec_.drift);
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if (!finite_pos(r.beta1)) bad.push_back("rate.beta1 must be positive");
        if constexpr (std::is_same_v<T, PowerLawRate>) {
          if (!std::isfinite(r.b)) bad.push_back("rate.b must be finite");
        }
      },
      spec_.rate);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, SeparableBoundedKernel>) {
          if (!finite_pos(k.h0)) bad.push_back("kernel.h0 must be positive");
          if (!std::isfinite(k.hinf) || k.hinf <= k.h0)
            bad.push_back("kernel.hinf must exceed kernel.h0");
          if (!finite_pos(k.lambda)) bad.push_back("kernel.lambda must be positive");
        } else if constexpr (std::is_same_v<T, FixedFractionKernel>) {
          if (!(std::isfinite(k.u) && k.u > 0.0 && k.u < 1.0))
            bad.push_back("kernel.u outside (0, 1)");
        }
      },
      spec_.kernel);
  if (!bad.empty()) {
    std::string msg = "invalid model parameters: ";
    for (std::size_t i = 0; i < bad.size(); ++i) {
      if (i) msg += "; ";
      msg += bad[i];
    }
    throw std::invalid_argument(msg);
  }
}

void Model::derive_structure() {
  switch (drift_family_) {
    case DriftFamily::power_law: {
      const auto& d = std::get<PowerLawDrift>(spec_.drift);
      alpha1_ = d.alpha1;
      drift_a_ = d.a;
      a_zero_ = d.a;
      a_inf_ = d.a;
      break;
    }
    case DriftFamily::affine: {
      const auto& d = std::get<AffineDrift>(spec_.drift);
      alpha0_ = d.alpha0;
      alpha1_ = d.alpha1;
      a_zero_ = d.alpha0 > 0.0 ? 0.0 : 1.0;
      a_inf_ = d.alpha1 > 0.0 ? 1.0 : 0.0;
      break;
    }
    case DriftFamily::power_immigration: {
      const auto& d = std::get<PowerImmigrationDrift>(spec_.drift);
      alpha0_ = d.alpha0;
      alpha1_ = d.alpha1;
      drift_a_ = d.a;
      a_zero_ = 0.0;
      a_inf_ = d.a;
      break;
    }
  }
  if (rate_family_ == RateFamily::power_law) {
    const auto& r = std::get<PowerLawRate>(spec_.rate);
    beta1_ = r.beta1;
    rate_b_ = r.b;
  } else {
    beta1_ = std::get<ConstantRate>(spec_.rate).beta1;
    rate_b_ = 0.0;
  }

  i_zero_finite_ = a_zero_ < 1.0;
  i_infinity_finite_ = a_inf_ > 1.0;
  q_zero_ = rate_b_ - a_zero_;
  q_inf_ = rate_b_ - a_inf_;
  gamma_zero_finite_ = q_zero_ > -1.0;
  gamma_inf_finite_ = q_inf_ < -1.0;

  // closed hazard forms: gamma is a pure power whenever one drift term rules
  // both ends, and a log for the genuinely affine drift with constant rate
  gamma_form_ = GammaForm::table;
  switch (drift_family_) {
    case DriftFamily::power_law:
      gamma_form_ = GammaForm::power;
      gamma1_ = beta1_ / alpha1_;
      gamma_p_ = rate_b_ - drift_a_;
      break;
    case DriftFamily::affine:
      if (alpha1_ == 0.0) {
        gamma_form_ = GammaForm::power;
        gamma1_ = beta1_ / alpha0_;
        gamma_p_ = rate_b_;
      } else if (alpha0_ == 0.0) {
        gamma_form_ = GammaForm::power;
        gamma1_ = beta1_ / alpha1_;
        gamma_p_ = rate_b_ - 1.0;
      } else if (rate_b_ == 0.0) {
        gamma_form_ = GammaForm::affine_log;
      }
      break;
    case DriftFamily::power_immigration:
      break;
  }

  switch (kernel_family_) {
    case KernelFamily::separable_exp:
      separable_ = true;
      h0_ = 1.0;
      h_inf_ = kInf;
      break;
    case KernelFamily::separable_linear:
      separable_ = true;
      h0_ = 0.0;
      h_inf_ = kInf;
      break;
    case KernelFamily::total_disaster:
      separable_ = true;
      h0_ = 1.0;
      h_inf_ = 1.0;
      break;
    case KernelFamily::separable_bounded: {
      const auto& k = std::get<SeparableBoundedKernel>(spec_.kernel);
      separable_ = true;
      h0_ = k.h0;
      h_inf_ = k.hinf;
      break;
    }
    case KernelFamily::fixed_fraction:
    case KernelFamily::uniform_fraction:
      separable_ = false;
      h0_ = std::numeric_limits<double>::quiet_NaN();
      h_inf_ = std::numeric_limits<double>::quiet_NaN();
      break;
  }
}

void Model::build_tables() {
  const Tolerance head_tol{1e-14, 1e-12, 20000};
  if (gamma_form_ == GammaForm::table) {
    Fn g = [this](double z) { return gamma(z); };
    double head = 0.0;
    bool anchored = true;
    if (gamma_zero_finite_) {
      head = integrate(g, 0.0, kTableLo, head_tol);
      anchored = false;
    }
    gamma_table_ = std::make_shared<CumulativeIntegral>(g, head, anchored, kTableLo, kTableHi);
  }
  if (drift_family_ == DriftFamily::power_immigration) {
    Fn inv_alpha = [this](double z) { return 1.0 / alpha(z); };
    const double head = integrate(inv_alpha, 0.0, kTableLo, head_tol);
    flow_table_ =
        std::make_shared<CumulativeIntegral>(inv_alpha, head, false, kTableLo, kTableHi);
    if (i_infinity_finite_) {
      i_total_ = flow_table_->total() +
                 integrate_to_infinity(inv_alpha, flow_table_->x_hi()).value_or_inf();
    } else {
      i_total_ = kInf;
    }
  }

  switch (gamma_form_) {
    case GammaForm::power:
      gamma_anti_inf_ = gamma_p_ < -1.0 ? 0.0 : kInf;
      break;
    case GammaForm::affine_log:
      gamma_anti_inf_ = kInf;
      break;
    case GammaForm::table:
      if (gamma_inf_finite_) {
        Fn g = [this](double z) { return gamma(z); };
        gamma_anti_inf_ = gamma_table_->total() +
                          integrate_to_infinity(g, gamma_table_->x_hi()).value_or_inf();
      } else {
        gamma_anti_inf_ = kInf;
      }
      break;
  }
}

ValidationReport Model::validate() const {
  ValidationReport rep;
  rep.assumption1 = !gamma_inf_finite_;
  rep.assumption2 = gamma_zero_finite_;
  rep.separable = separable_;
  rep.h0_positive = separable_ && h0_ > 0.0;
  if (!rep.assumption1) {
    rep.violations.push_back(
        "assumption1: Gamma(infinity) is finite, the first jump may never occur");
  }
  if (!rep.assumption2) {
    rep.violations.push_back("assumption2: Gamma is not integrable at 0");
  }
  return rep;
}

double Model::alpha(double x) const {
  switch (drift_family_) {
    case DriftFamily::power_law:
      return alpha1_ * std::pow(x, drift_a_);
    case DriftFamily::affine:
      return alpha0_ + alpha1_ * x;
    case DriftFamily::power_immigration:
      return alpha0_ + alpha1_ * std::pow(x, drift_a_);
  }
  return 0.0;
}

double Model::beta(double x) const {
  return rate_family_ == RateFamily::power_law ? beta1_ * std::pow(x, rate_b_) : beta1_;
}

double Model::gamma(double x) const { return beta(x) / alpha(x); }

double Model::h(double y) const {
  switch (kernel_family_) {
    case KernelFamily::separable_exp:
      return std::exp(y);
    case KernelFamily::separable_linear:
      return y;
    case KernelFamily::total_disaster:
      return 1.0;
    case KernelFamily::separable_bounded: {
      const auto& k = std::get<SeparableBoundedKernel>(spec_.kernel);
      return k.hinf - (k.hinf - k.h0) * std::exp(-k.lambda * y);
    }
    default:
      throw UnsupportedKernelError("kernel is not separable: h is undefined");
  }
}

double Model::log_h(double y) const {
  switch (kernel_family_) {
    case KernelFamily::separable_exp:
      return y;
    case KernelFamily::separable_linear:
      return std::log(y);
    case KernelFamily::total_disaster:
      return 0.0;
    case KernelFamily::separable_bounded:
      return std::log(h(y));
    default:
      throw UnsupportedKernelError("kernel is not separable: h is undefined");
  }
}

double Model::h_prime(double y) const {
  switch (kernel_family_) {
    case KernelFamily::separable_exp:
      return std::exp(y);
    case KernelFamily::separable_linear:
      return 1.0;
    case KernelFamily::total_disaster:
      return 0.0;
    case KernelFamily::separable_bounded: {
      const auto& k = std::get<SeparableBoundedKernel>(spec_.kernel);
      return k.lambda * (k.hinf - k.h0) * std::exp(-k.lambda * y);
    }
    default:
      throw UnsupportedKernelError("kernel is not separable: h is undefined");
  }
}

double Model::i_zero(double x) const {
  if (x == 0.0) return 0.0;
  switch (drift_family_) {
    case DriftFamily::power_law:
      if (drift_a_ >= 1.0) return kInf;
      return std::pow(x, 1.0 - drift_a_) / (alpha1_ * (1.0 - drift_a_));
    case DriftFamily::affine:
      if (alpha0_ == 0.0) return kInf;
      if (alpha1_ == 0.0) return x / alpha0_;
      return std::log1p(alpha1_ * x / alpha0_) / alpha1_;
    case DriftFamily::power_immigration:
      return flow_table_->primitive(x);
  }
  return kInf;
}

double Model::i_infinity(double x) const {
  switch (drift_family_) {
    case DriftFamily::power_law:
      if (drift_a_ <= 1.0) return kInf;
      return std::pow(x, 1.0 - drift_a_) / (alpha1_ * (drift_a_ - 1.0));
    case DriftFamily::affine:
      return kInf;
    case DriftFamily::power_immigration:
      if (!i_infinity_finite_) return kInf;
      return i_total_ - flow_table_->primitive(x);
  }
  return kInf;
}

double Model::gamma_anti(double x) const {
  switch (gamma_form_) {
    case GammaForm::power: {
      const double q = gamma_p_ + 1.0;
      if (q == 0.0) return gamma1_ * std::log(x);
      return gamma1_ * std::pow(x, q) / q;
    }
    case GammaForm::affine_log:
      if (alpha0_ > 0.0)
        return (beta1_ / alpha1_) * std::log1p(alpha1_ * x / alpha0_);
      return (beta1_ / alpha1_) * std::log(x);
    case GammaForm::table:
      return gamma_table_->primitive(x);
  }
  return 0.0;
}

double Model::gamma_between(double x, double y) const {
  if (x == y) return 0.0;
  switch (gamma_form_) {
    case GammaForm::power: {
      const double q = gamma_p_ + 1.0;
      if (q == 0.0) return gamma1_ * std::log(y / x);
      return gamma1_ * (std::pow(y, q) - std::pow(x, q)) / q;
    }
    case GammaForm::affine_log:
      return (beta1_ / alpha1_) * std::log((alpha0_ + alpha1_ * y) / (alpha0_ + alpha1_ * x));
    case GammaForm::table:
      return gamma_table_->between(x, y);
  }
  return 0.0;
}

double Model::gamma_anti_inverse(double target) const {
  switch (gamma_form_) {
    case GammaForm::power: {
      const double q = gamma_p_ + 1.0;
      if (q == 0.0) return std::exp(target / gamma1_);
      return std::pow(q * target / gamma1_, 1.0 / q);
    }
    case GammaForm::affine_log:
      if (alpha0_ > 0.0)
        return alpha0_ * std::expm1(target * alpha1_ / beta1_) / alpha1_;
      return std::exp(target * alpha1_ / beta1_);
    case GammaForm::table:
      return gamma_table_->inverse(target);
  }
  return 0.0;
}

double Model::flow_raw(double x, double t) const {
  if (t == 0.0) return x;
  double v = 0.0;
  switch (drift_family_) {
    case DriftFamily::power_law: {
      if (drift_a_ == 1.0) {
        v = x * std::exp(alpha1_ * t);
      } else {
        const double q = 1.0 - drift_a_;
        const double base = std::pow(x, q) + alpha1_ * q * t;
        if (q < 0.0 && base <= 0.0) return kInf;  // blow-up time passed
        v = std::pow(base, 1.0 / q);
      }
      break;
    }
    case DriftFamily::affine: {
      if (alpha1_ == 0.0) {
        v = x + alpha0_ * t;
      } else {
        const double c = alpha0_ / alpha1_;
        v = (x + c) * std::exp(alpha1_ * t) - c;
      }
      break;
    }
    case DriftFamily::power_immigration: {
      const double target = flow_table_->primitive(x) + t;
      if (i_infinity_finite_ && target >= i_total_) return kInf;
      v = flow_table_->inverse(target);
      break;
    }
  }
  if (!std::isfinite(v)) return i_infinity_finite_ ? kInf : kSaturate;
  return v;
}

double Model::travel_time(double x, double y) const {
  if (y <= x) return 0.0;
  switch (drift_family_) {
    case DriftFamily::power_law: {
      if (drift_a_ == 1.0) {
        if (x == 0.0) return kInf;
        return std::log(y / x) / alpha1_;
      }
      const double q = 1.0 - drift_a_;
      return (std::pow(y, q) - std::pow(x, q)) / (alpha1_ * q);
    }
    case DriftFamily::affine: {
      if (alpha1_ == 0.0) return (y - x) / alpha0_;
      if (alpha0_ == 0.0) {
        if (x == 0.0) return kInf;
        return std::log(y / x) / alpha1_;
      }
      if (std::isinf(y)) return kInf;
      return std::log((alpha0_ + alpha1_ * y) / (alpha0_ + alpha1_ * x)) / alpha1_;
    }
    case DriftFamily::power_immigration: {
      if (std::isinf(y)) return i_infinity(x);
      return flow_table_->between(x, y);
    }
  }
  return kInf;
}

ValidationReport validate(const ModelSpec& spec) { return Model(spec).validate(); }

// ---------------------------------------------------------------------------
// JSON configuration
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

double need_number(const json& j, const char* section, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string("model config: ") + section + "." + key +
                                " must be a number");
  }
  return j.at(key).get<double>();
}

std::string need_family(const json& j, const char* section) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw std::invalid_argument(std::string("model config: ") + section +
                                " needs a \"family\" string");
  }
  return j.at("family").get<std::string>();
}

}  // namespace

ModelSpec model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model config: invalid JSON: ") + e.what());
  }
  ModelSpec spec;

  const json& jd = j.contains("drift") ? j.at("drift") : json();
  const std::string drift = need_family(jd, "drift");
  if (drift == "power_law") {
    spec.drift = PowerLawDrift{need_number(jd, "drift", "alpha1"), need_number(jd, "drift", "a")};
  } else if (drift == "affine") {
    spec.drift =
        AffineDrift{need_number(jd, "drift", "alpha0"), need_number(jd, "drift", "alpha1")};
  } else if (drift == "power_immigration") {
    spec.drift = PowerImmigrationDrift{need_number(jd, "drift", "alpha0"),
                                       need_number(jd, "drift", "alpha1"),
                                       need_number(jd, "drift", "a")};
  } else {
    throw std::invalid_argument("model config: unknown drift family \"" + drift + "\"");
  }

  const json& jr = j.contains("rate") ? j.at("rate") : json();
  const std::string rate = need_family(jr, "rate");
  if (rate == "power_law") {
    spec.rate = PowerLawRate{need_number(jr, "rate", "beta1"), need_number(jr, "rate", "b")};
  } else if (rate == "constant") {
    spec.rate = ConstantRate{need_number(jr, "rate", "beta1")};
  } else {
    throw std::invalid_argument("model config: unknown rate family \"" + rate + "\"");
  }

  const json& jk = j.contains("kernel") ? j.at("kernel") : json();
  const std::string kernel = need_family(jk, "kernel");
  if (kernel == "separable_exp") {
    spec.kernel = SeparableExpKernel{};
  } else if (kernel == "separable_linear") {
    spec.kernel = SeparableLinearKernel{};
  } else if (kernel == "total_disaster") {
    spec.kernel = TotalDisasterKernel{};
  } else if (kernel == "separable_bounded") {
    spec.kernel = SeparableBoundedKernel{need_number(jk, "kernel", "h0"),
                                         need_number(jk, "kernel", "hinf"),
                                         need_number(jk, "kernel", "lambda")};
  } else if (kernel == "fixed_fraction") {
    spec.kernel = FixedFractionKernel{need_number(jk, "kernel", "u")};
  } else if (kernel == "uniform_fraction") {
    spec.kernel = UniformFractionKernel{};
  } else {
    throw std::invalid_argument("model config: unknown kernel family \"" + kernel + "\"");
  }
  return spec;
}

ModelSpec model_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("model config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string model_to_json(const ModelSpec& spec) {
  json j;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PowerLawDrift>) {
          j["drift"] = {{"family", "power_law"}, {"alpha1", d.alpha1}, {"a", d.a}};
        } else if constexpr (std::is_same_v<T, AffineDrift>) {
          j["drift"] = {{"family", "affine"}, {"alpha0", d.alpha0}, {"alpha1", d.alpha1}};
        } else {
          j["drift"] = {{"family", "power_immigration"},
                        {"alpha0", d.alpha0},
                        {"alpha1", d.alpha1},
                        {"a", d.a}};
        }
      },
      spec.drift);
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PowerLawRate>) {
          j["rate"] = {{"family", "power_law"}, {"beta1", r.beta1}, {"b", r.b}};
        } else {
          j["rate"] = {{"family", "constant"}, {"beta1", r.beta1}};
        }
      },
      spec.rate);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, SeparableExpKernel>) {
          j["kernel"] = {{"family", "separable_exp"}};
        } else if constexpr (std::is_same_v<T, SeparableLinearKernel>) {
          j["kernel"] = {{"family", "separable_linear"}};
        } else if constexpr (std::is_same_v<T, TotalDisasterKernel>) {
          j["kernel"] = {{"family", "total_disaster"}};
        } else if constexpr (std::is_same_v<T, SeparableBoundedKernel>) {
          j["kernel"] = {{"family", "separable_bounded"},
                         {"h0", k.h0},
                         {"hinf", k.hinf},
                         {"lambda", k.lambda}};
        } else if constexpr (std::is_same_v<T, FixedFractionKernel>) {
          j["kernel"] = {{"family", "fixed_fraction"}, {"u", k.u}};
        } else {
          j["kernel"] = {{"family", "uniform_fraction"}};
        }
      },
      spec.kernel);
  return j.dump(2);
}

}  // namespace pdmp
