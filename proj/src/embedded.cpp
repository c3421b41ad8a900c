#include "pdmp/embedded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdmp/kernel.hpp"

namespace pdmp {

namespace {

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

double embedded_cdf(const Model& m, double x, double y) {
  if (x < 0.0) throw std::invalid_argument("embedded_cdf: need x >= 0");
  if (x == 0.0 && !m.i_zero_finite()) return y >= 0.0 ? 1.0 : 0.0;  // absorbing row
  if (y < 0.0) return 0.0;
  const double w = std::max(x, y);
  const double flow_part = y > x ? -std::expm1(-m.gamma_between(x, w)) : 0.0;
  Fn integrand = [&m, x, y](double z) {
    return m.gamma(z) * std::exp(-m.gamma_between(x, z)) * kernel_cdf(m, z, y);
  };
  const double start = std::max(w, 1e-300);  // kernel_cdf needs z > 0
  const double jump_part = integrate_to_infinity(integrand, start).value_or_inf();
  return clamp01(flow_part + jump_part);
}

std::vector<double> embedded_cdf_batch(const Model& m, double x,
                                       const std::vector<double>& sorted_y) {
  std::vector<double> out(sorted_y.size());
  if (sorted_y.empty()) return out;
  if (!std::is_sorted(sorted_y.begin(), sorted_y.end())) {
    throw std::invalid_argument("embedded_cdf_batch: grid must be ascending");
  }
  if (!m.separable() || (x == 0.0 && !m.i_zero_finite())) {
    for (std::size_t i = 0; i < sorted_y.size(); ++i) {
      out[i] = embedded_cdf(m, x, sorted_y[i]);
    }
    return out;
  }

  // J(w) = int_w^inf (gamma/h)(z) e^{-(Gamma(z)-Gamma(x))} dz accumulated once
  // from the far tail; then F(y) = [1 - e^{-(Gamma(y)-Gamma(x))}]_+ + h(y) J(x v y).
  // Exponents are taken relative to a fixed reference so nothing overflows
  // along the tail; the reference cancels between g and the h(y) factor.
  const double lhx = m.log_h(std::max(x, 1.0));
  Fn g = [&m, x, lhx](double z) {
    return m.gamma(z) * std::exp(-m.gamma_between(x, z) - (m.log_h(z) - lhx));
  };
  std::vector<double> w(sorted_y.size());
  for (std::size_t i = 0; i < sorted_y.size(); ++i) {
    w[i] = std::max(std::max(x, sorted_y[i]), 1e-300);
  }
  std::vector<double> j(w.size());
  double acc = integrate_to_infinity(g, w.back()).value_or_inf();
  j.back() = acc;
  for (std::size_t i = w.size() - 1; i > 0; --i) {
    acc += integrate(g, w[i - 1], w[i]);
    j[i - 1] = acc;
  }
  for (std::size_t i = 0; i < sorted_y.size(); ++i) {
    const double y = sorted_y[i];
    if (y < 0.0) {
      out[i] = 0.0;
      continue;
    }
    const double flow_part = y > x ? -std::expm1(-m.gamma_between(x, y)) : 0.0;
    const double hy = y == 0.0 ? m.h0() * std::exp(-lhx)
                               : std::exp(m.log_h(y) - lhx);
    out[i] = clamp01(flow_part + hy * j[i]);
  }
  return out;
}

double down_move_prob(const Model& m, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("down_move_prob: need x > 0");
  return embedded_cdf(m, x, x);
}

EmbeddedStep sample_embedded_step(const Model& m, double x, RandomStream& rng) {
  const JumpDraw draw = sample_jump(m, x, rng);
  if (!draw.sample.is_at()) throw ChainTerminatedError(draw.sample);
  const double z = sample_after_jump(m, draw.pre_jump, rng);
  return {z, draw.pre_jump, draw.sample.t};
}

std::vector<double> explosion_partial_sums(const Model& m, double x, std::size_t n,
                                           RandomStream& rng) {
  std::vector<double> sums;
  sums.reserve(n);
  double cur = x;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    EmbeddedStep step;
    try {
      step = sample_embedded_step(m, cur, rng);
    } catch (const ChainTerminatedError&) {
      break;
    }
    cur = step.z;
    total += expected_jump_time(m, cur);
    sums.push_back(total);
  }
  return sums;
}

double prejump_invariant_density(const Model& m, double y) {
  if (!std::holds_alternative<TotalDisasterKernel>(m.spec().kernel)) {
    throw UnsupportedKernelError(
        "pre-jump invariant density is only available for total disasters");
  }
  if (!m.i_zero_finite()) {
    throw ZeroNotReflectingError("pre-jump chain needs 0 reflecting");
  }
  if (y <= 0.0) return 0.0;
  return m.gamma(y) * std::exp(-m.gamma_anti(y));
}

}  // namespace pdmp
