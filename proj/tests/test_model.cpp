#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "pdmp/hazard.hpp"
#include "pdmp/kernel.hpp"
#include "pdmp/rng.hpp"

using namespace pdmp;

TEST_CASE("validate: sqrt-growth total-disaster model passes all checks") {
  Model m(fixtures::total_disaster_sqrt());
  const ValidationReport rep = m.validate();
  CHECK(rep.ok());
  CHECK(rep.assumption1);
  CHECK(rep.assumption2);
  CHECK(rep.separable);
  CHECK(rep.h0_positive);
  // Gamma(x) = 2 sqrt(x) diverges at infinity
  CHECK(gamma_big(m, 4.0) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("validate: affine growth with exponential kernel") {
  Model m(fixtures::affine_exp());
  const ValidationReport rep = m.validate();
  CHECK(rep.ok());
  CHECK(rep.assumption1);  // Gamma(x) = log(1 + x) -> inf
  CHECK(rep.assumption2);
  CHECK(gamma_big(m, std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("validate: malformed fraction parameter is a hard error") {
  ModelSpec spec{PowerLawDrift{1.0, 0.5}, ConstantRate{1.0}, FixedFractionKernel{1.5}};
  CHECK_THROWS_WITH_AS(Model{spec}, doctest::Contains("kernel.u outside (0, 1)"),
                       std::invalid_argument);
}

TEST_CASE("validate: assumption flags for degenerate hazards") {
  // gamma = x^{-2}: not integrable at 0 and Gamma(inf) finite
  Model m(fixtures::blowup_constant_rate());
  const ValidationReport rep = m.validate();
  CHECK(!rep.assumption1);
  CHECK(!rep.assumption2);
  CHECK(rep.violations.size() == 2);
  CHECK_THROWS_AS(gamma_big(m, 1.0), Error);
}

TEST_CASE("separable kernels compose: H(x,z) = H(x,y) H(y,z)") {
  std::vector<ModelSpec> specs = {
      fixtures::total_disaster_sqrt(),
      fixtures::affine_exp(),
      {PowerLawDrift{1.0, 0.5}, ConstantRate{1.0}, SeparableBoundedKernel{1.0, 2.0, 1.0}},
      {PowerLawDrift{1.0, 0.5}, ConstantRate{1.0}, SeparableLinearKernel{}},
  };
  RandomStream rng(11);
  for (const ModelSpec& spec : specs) {
    Model m(spec);
    for (int i = 0; i < 25; ++i) {
      double x = 0.1 + 10.0 * rng.uniform01();
      double y = x * rng.uniform01();
      double z = y * rng.uniform01();
      if (y <= 0.0 || z < 0.0) continue;
      const double direct = kernel_cdf(m, x, z);
      const double composed = kernel_cdf(m, x, y) * kernel_cdf(m, y, z);
      CHECK(direct == doctest::Approx(composed).epsilon(1e-12));
    }
  }
}

TEST_CASE("integrated hazard is non-decreasing and anchored at 0") {
  std::vector<ModelSpec> specs = {fixtures::total_disaster_sqrt(), fixtures::affine_exp(),
                                  fixtures::recurrent_exp(),
                                  fixtures::power_immigration_exp()};
  RandomStream rng(12);
  for (const ModelSpec& spec : specs) {
    Model m(spec);
    CHECK(gamma_big(m, 0.0) == 0.0);
    for (int i = 0; i < 25; ++i) {
      double x = 20.0 * rng.uniform01();
      double y = x + 20.0 * rng.uniform01();
      CHECK(gamma_big(m, y) >= gamma_big(m, x));
      CHECK(m.gamma_between(x, y) ==
            doctest::Approx(gamma_big(m, y) - gamma_big(m, x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("model config round trips through JSON") {
  for (const ModelSpec& spec :
       {fixtures::total_disaster_sqrt(), fixtures::power_immigration_exp(),
        ModelSpec{AffineDrift{0.5, 2.0}, PowerLawRate{3.0, -0.25},
                  SeparableBoundedKernel{1.0, 3.0, 0.7}},
        ModelSpec{PowerLawDrift{2.0, 1.0}, ConstantRate{0.5}, FixedFractionKernel{0.25}},
        ModelSpec{PowerLawDrift{2.0, 1.0}, ConstantRate{0.5}, UniformFractionKernel{}}}) {
    const std::string text = model_to_json(spec);
    const ModelSpec back = model_from_json(text);
    CHECK(model_to_json(back) == text);
  }
}

TEST_CASE("model config rejects unknown families") {
  CHECK_THROWS_AS(model_from_json(R"({"drift":{"family":"cubic"},
      "rate":{"family":"constant","beta1":1},"kernel":{"family":"total_disaster"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(model_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(model_from_json(R"({"rate":{"family":"constant","beta1":1},
      "kernel":{"family":"total_disaster"}})"),
                  std::invalid_argument);
}
