#include <cmath>

#include "doctest.h"
#include "pdmp/numerics.hpp"
#include "pdmp/rng.hpp"

using namespace pdmp;

namespace {

// Independent oracle for int_0^inf y^{-1/2} e^{-y} dy: substitute y = u^2 and
// evaluate 2 * int_0^inf e^{-u^2} du by a plain midpoint Riemann sum.
double half_factorial_oracle() {
  const double h = 1e-5;
  double sum = 0.0;
  for (double u = 0.5 * h; u < 12.0; u += h) sum += std::exp(-u * u);
  return 2.0 * sum * h;
}

}  // namespace

TEST_CASE("integrate: constants and power singularities") {
  CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate([](double y) { return 1.0 / std::sqrt(y); }, 0.0, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("integrate: gamma(1/2) against a Riemann-sum oracle") {
  const double oracle = half_factorial_oracle();
  Fn f = [](double y) { return std::exp(-y) / std::sqrt(y); };
  const double got = integrate(f, 0.0, 1.0) + integrate_to_infinity(f, 1.0).value;
  CHECK(got == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(got == doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-8));
}

TEST_CASE("integrate: additivity over random splits") {
  RandomStream rng(17);
  Fn f = [](double y) { return std::exp(-y) * (1.0 + std::sin(3.0 * y)); };
  for (int i = 0; i < 50; ++i) {
    double a = 5.0 * rng.uniform01();
    double b = a + 5.0 * rng.uniform01();
    double c = b + 5.0 * rng.uniform01();
    const double whole = integrate(f, a, c);
    const double split = integrate(f, a, b) + integrate(f, b, c);
    CHECK(std::abs(whole - split) <= 3e-9);
  }
}

TEST_CASE("integrate_to_infinity: convergent, divergent, exact-derivative tails") {
  auto expo = integrate_to_infinity([](double y) { return std::exp(-y); }, 1.0);
  CHECK(!expo.divergent);
  CHECK(expo.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

  auto harmonic = integrate_to_infinity([](double y) { return 1.0 / y; }, 1.0);
  CHECK(harmonic.divergent);

  // f = gamma e^{-Gamma} with Gamma = 2 sqrt(y) integrates to exactly 1 on (0, inf)
  Fn f = [](double y) { return std::exp(-2.0 * std::sqrt(y)) / std::sqrt(y); };
  const double total = integrate(f, 0.0, 1.0) + integrate_to_infinity(f, 1.0).value;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("invert_monotone: closed-form fixtures") {
  CHECK(invert_monotone([](double x) { return x; }, 0.7, 0.0, 1.0) ==
        doctest::Approx(0.7).epsilon(1e-10));
  CHECK(invert_monotone([](double x) { return 2.0 * std::sqrt(x); }, 4.0, 0.0,
                        std::numeric_limits<double>::infinity()) ==
        doctest::Approx(4.0).epsilon(1e-9));
  CHECK(invert_monotone([](double x) { return std::log1p(x); }, 1.0, 0.0,
                        std::numeric_limits<double>::infinity()) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-9));
}

TEST_CASE("invert_monotone: no root above the supremum") {
  CHECK_THROWS_AS(invert_monotone([](double x) { return 1.0 - std::exp(-x); }, 2.0, 0.0,
                                  std::numeric_limits<double>::infinity()),
                  NoRootError);
}

TEST_CASE("invert_monotone: round trip on random points") {
  RandomStream rng(4);
  std::vector<Fn> gs = {
      [](double x) { return 2.0 * std::sqrt(x); },
      [](double x) { return std::log1p(x); },
      [](double x) { return x * x * x + x; },
  };
  for (const Fn& g : gs) {
    for (int i = 0; i < 100; ++i) {
      const double x = 10.0 * rng.uniform01();
      const double back = invert_monotone(g, g(x), 0.0, std::numeric_limits<double>::infinity());
      CHECK(std::abs(g(back) - g(x)) <= 1e-8);
    }
  }
}

TEST_CASE("cumulative integral table matches direct quadrature") {
  Fn f = [](double z) { return std::pow(z, 1.5) / (1.0 + z * z); };
  const double head = integrate(f, 0.0, 1e-8, Tolerance{1e-14, 1e-12, 20000});
  CumulativeIntegral table(f, head, false, 1e-8, 1e12);
  for (double x : {1e-9, 0.3, 1.0, 7.5, 123.0, 4.2e6}) {
    const double direct = integrate(f, 0.0, std::min(x, 200.0), Tolerance{1e-12, 1e-12, 50000}) +
                          (x > 200.0 ? integrate(f, 200.0, x, Tolerance{1e-12, 1e-12, 50000}) : 0.0);
    CHECK(table.primitive(x) == doctest::Approx(direct).epsilon(1e-9));
  }
  SUBCASE("between agrees with primitive differences") {
    CHECK(table.between(0.7, 9.25) ==
          doctest::Approx(table.primitive(9.25) - table.primitive(0.7)).epsilon(1e-10));
  }
  SUBCASE("inverse round trip") {
    for (double x : {0.05, 1.7, 42.0, 9000.0}) {
      const double t = table.primitive(x);
      CHECK(table.inverse(t) == doctest::Approx(x).epsilon(1e-8));
    }
  }
}
