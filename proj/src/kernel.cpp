#include "pdmp/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace pdmp {

double kernel_cdf(const Model& m, double x, double y) {
  if (x <= 0.0) throw std::invalid_argument("kernel_cdf: need x > 0");
  if (y < 0.0) return 0.0;
  if (y >= x) return 1.0;
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, SeparableExpKernel>) {
          return std::exp(y - x);
        } else if constexpr (std::is_same_v<T, SeparableLinearKernel>) {
          return y / x;
        } else if constexpr (std::is_same_v<T, TotalDisasterKernel>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, SeparableBoundedKernel>) {
          return m.h(y) / m.h(x);
        } else if constexpr (std::is_same_v<T, FixedFractionKernel>) {
          return y >= k.u * x ? 1.0 : 0.0;
        } else {
          return y / x;  // uniform fraction of the population is kept
        }
      },
      m.spec().kernel);
}

double disaster_prob(const Model& m, double x) { return kernel_cdf(m, x, 0.0); }

double sample_after_jump(const Model& m, double x, RandomStream& rng) {
  if (x <= 0.0) throw std::invalid_argument("sample_after_jump: need x > 0");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, TotalDisasterKernel>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, FixedFractionKernel>) {
          return k.u * x;
        } else if constexpr (std::is_same_v<T, SeparableLinearKernel>) {
          return x * rng.uniform01();
        } else if constexpr (std::is_same_v<T, UniformFractionKernel>) {
          return x * rng.uniform01();
        } else if constexpr (std::is_same_v<T, SeparableExpKernel>) {
          const double u = rng.uniform01();
          if (u <= std::exp(-x)) return 0.0;  // exact atom
          return x + std::log(u);
        } else {
          static_assert(std::is_same_v<T, SeparableBoundedKernel>);
          const double u = rng.uniform01();
          const double hx = m.h(x);
          if (u <= k.h0 / hx) return 0.0;  // exact atom
          // invert h(y) = u h(x) on (0, x]
          return -std::log((k.hinf - u * hx) / (k.hinf - k.h0)) / k.lambda;
        }
      },
      m.spec().kernel);
}

}  // namespace pdmp
