#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "pdmp/kernel.hpp"
#include "pdmp/montecarlo.hpp"

using namespace pdmp;

namespace {

ModelSpec with_kernel(KernelSpec k) {
  return {PowerLawDrift{1.0, 0.5}, ConstantRate{1.0}, std::move(k)};
}

std::vector<KernelSpec> all_kernels() {
  return {SeparableExpKernel{},   SeparableLinearKernel{},
          TotalDisasterKernel{},  SeparableBoundedKernel{1.0, 2.0, 1.0},
          FixedFractionKernel{0.25}, UniformFractionKernel{}};
}

}  // namespace

TEST_CASE("kernel_cdf: atoms and full mass") {
  Model exp_kernel(with_kernel(SeparableExpKernel{}));
  CHECK(kernel_cdf(exp_kernel, 1.0, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

  Model lin(with_kernel(SeparableLinearKernel{}));
  CHECK(kernel_cdf(lin, 2.0, 0.0) == 0.0);

  for (KernelSpec k : all_kernels()) {
    Model m(with_kernel(k));
    CHECK(kernel_cdf(m, 3.0, 3.0) == 1.0);
    CHECK(kernel_cdf(m, 3.0, 4.5) == 1.0);
    CHECK(kernel_cdf(m, 3.0, -0.1) == 0.0);
  }
}

TEST_CASE("disaster_prob: per-family values") {
  CHECK(disaster_prob(Model(with_kernel(TotalDisasterKernel{})), 5.0) == 1.0);
  CHECK(disaster_prob(Model(with_kernel(FixedFractionKernel{0.5})), 1.0) == 0.0);
  CHECK(disaster_prob(Model(with_kernel(SeparableLinearKernel{})), 1.0) == 0.0);
  CHECK(disaster_prob(Model(with_kernel(UniformFractionKernel{})), 1.0) == 0.0);
  // bounded h: in the limit of large x the disaster mass is h0 / h(inf)
  Model bounded(with_kernel(SeparableBoundedKernel{1.0, 2.0, 1.0}));
  CHECK(disaster_prob(bounded, 50.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("sample_after_jump: degenerate kernels") {
  RandomStream rng(3);
  Model total(with_kernel(TotalDisasterKernel{}));
  Model fixed(with_kernel(FixedFractionKernel{0.25}));
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_after_jump(total, 2.7, rng) == 0.0);
    CHECK(sample_after_jump(fixed, 8.0, rng) == 2.0);
  }
}

TEST_CASE("sample_after_jump: empirical CDF matches kernel_cdf") {
  const std::size_t n = 20000;
  for (KernelSpec k : all_kernels()) {
    Model m(with_kernel(k));
    for (double x : {0.5, 1.0, 5.0}) {
      RandomStream rng(1000 + static_cast<std::uint64_t>(10 * x));
      std::vector<double> draws(n);
      for (std::size_t i = 0; i < n; ++i) {
        draws[i] = sample_after_jump(m, x, rng);
        CHECK(draws[i] >= 0.0);
        CHECK(draws[i] <= x);
      }
      std::sort(draws.begin(), draws.end());
      std::vector<double> cdf(n), cdf_left(n);
      for (std::size_t i = 0; i < n; ++i) {
        cdf[i] = kernel_cdf(m, x, draws[i]);
        cdf_left[i] =
            draws[i] == 0.0 ? 0.0 : kernel_cdf(m, x, draws[i] * (1.0 - 1e-12));
      }
      CHECK(mc::ks_statistic(draws, cdf, cdf_left) <
            1.63 / std::sqrt(static_cast<double>(n)));
    }
  }
}

TEST_CASE("sample_after_jump: exact zeros occur at the disaster rate") {
  const std::size_t n = 20000;
  for (KernelSpec k : all_kernels()) {
    Model m(with_kernel(k));
    const double x = 1.0;
    const double p = disaster_prob(m, x);
    RandomStream rng(77);
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sample_after_jump(m, x, rng) == 0.0) ++zeros;
    }
    const double frac = static_cast<double>(zeros) / n;
    if (p == 0.0) {
      CHECK(zeros == 0);
    } else {
      const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
      CHECK(std::abs(frac - p) <= 3.0 * std::max(sigma, 1e-12));
    }
  }
}
