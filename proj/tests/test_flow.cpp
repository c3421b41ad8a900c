#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "pdmp/flow.hpp"
#include "pdmp/rng.hpp"

using namespace pdmp;

TEST_CASE("flow_at: Malthus growth, spontaneous generation, blow-up") {
  Model malthus({PowerLawDrift{1.0, 1.0}, ConstantRate{1.0}, TotalDisasterKernel{}});
  CHECK(flow_at(malthus, 1.0, 1.0).value == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

  // sqrt growth from 0 picks the maximal solution (0.5 t)^2
  Model sqrt_growth(fixtures::total_disaster_sqrt());
  CHECK(flow_at(sqrt_growth, 0.0, 2.0).value == doctest::Approx(1.0).epsilon(1e-12));

  // quadratic growth from 1 blows up at t = 1
  Model quad(fixtures::blowup_constant_rate());
  CHECK(flow_at(quad, 1.0, 1.0).at_infinity());
  CHECK(flow_at(quad, 1.0, 1.5).at_infinity());
  CHECK(!flow_at(quad, 1.0, 0.5).at_infinity());
}

TEST_CASE("flow_at: absorbing zero raises") {
  Model malthus({PowerLawDrift{1.0, 1.0}, ConstantRate{1.0}, TotalDisasterKernel{}});
  CHECK(flow_at(malthus, 0.0, 0.0).value == 0.0);
  CHECK_THROWS_AS(flow_at(malthus, 0.0, 1.0), AbsorbedAtZeroError);
}

TEST_CASE("time_to_reach: closed forms") {
  Model sqrt_growth(fixtures::total_disaster_sqrt());
  CHECK(time_to_reach(sqrt_growth, 1.0, 4.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(time_to_reach(sqrt_growth, 3.7, 3.7) == 0.0);

  Model affine(fixtures::affine_exp());
  CHECK(time_to_reach(affine, 0.0, std::exp(1.0) - 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Model malthus({PowerLawDrift{1.0, 1.0}, ConstantRate{1.0}, TotalDisasterKernel{}});
  CHECK(std::isinf(time_to_reach(malthus, 0.0, 1.0)));
  CHECK(time_to_reach(malthus, 0.0, 0.0) == 0.0);
}

TEST_CASE("boundary_integrals: the three regimes") {
  Model sqrt_growth(fixtures::total_disaster_sqrt());
  auto b1 = boundary_integrals(sqrt_growth, 1.0);
  CHECK(b1.i_zero == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(b1.i_infinity));

  Model quad(fixtures::blowup_constant_rate());
  auto b2 = boundary_integrals(quad, 1.0);
  CHECK(std::isinf(b2.i_zero));
  CHECK(b2.i_infinity == doctest::Approx(1.0).epsilon(1e-12));

  // alpha = 1 + x^2: both travel times are finite (arctan integrals)
  Model imm(fixtures::power_immigration_exp());
  auto b3 = boundary_integrals(imm, 1.0);
  CHECK(std::isfinite(b3.i_zero));
  CHECK(std::isfinite(b3.i_infinity));
  CHECK(b3.i_zero == doctest::Approx(std::atan(1.0)).epsilon(1e-9));
  CHECK(b3.i_infinity == doctest::Approx(std::acos(-1.0) / 2 - std::atan(1.0)).epsilon(1e-8));
}

TEST_CASE("flow properties: semigroup, monotonicity, inverse travel times") {
  std::vector<ModelSpec> specs = {
      fixtures::total_disaster_sqrt(),
      fixtures::affine_exp(),
      fixtures::power_immigration_exp(),
      {PowerLawDrift{1.0, 1.0}, ConstantRate{1.0}, TotalDisasterKernel{}},
      {AffineDrift{2.0, 0.0}, ConstantRate{1.0}, TotalDisasterKernel{}},
  };
  RandomStream rng(23);
  for (const ModelSpec& spec : specs) {
    Model m(spec);
    for (int i = 0; i < 40; ++i) {
      const double x = 0.05 + 3.0 * rng.uniform01();
      double s = 0.4 * rng.uniform01();
      double t = 0.4 * rng.uniform01();
      if (m.i_infinity_finite()) {
        const double cap = m.i_infinity(x);
        s = std::min(s, 0.45 * cap);
        t = std::min(t, 0.45 * cap);
      }
      const double one_leg = flow_at(m, x, s + t).value;
      const double two_leg = flow_at(m, flow_at(m, x, s).value, t).value;
      CHECK(two_leg == doctest::Approx(one_leg).epsilon(1e-7));
      CHECK(flow_at(m, x, s + t).value >= flow_at(m, x, s).value);

      const double y = flow_at(m, x, t).value;
      CHECK(time_to_reach(m, x, y) == doctest::Approx(t).epsilon(1e-7));
    }
  }
}
