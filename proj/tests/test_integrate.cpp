#include <doctest.h>

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "integrate.hpp"
#include "oracles.hpp"

using namespace virial;

namespace {
const double kSqrtPi = std::sqrt(std::numbers::pi);
}

TEST_CASE("gaussian integrals") {
  const RealFn half_square = [](double x) { return 0.5 * x * x; };
  CHECK(integrate_weighted([](double) { return 1.0; }, half_square).value ==
        doctest::Approx(kSqrtPi).epsilon(1e-12));
  CHECK(integrate_weighted([](double x) { return x * x; }, half_square).value ==
        doctest::Approx(kSqrtPi / 2).epsilon(1e-12));
}

TEST_CASE("cubic decay against the gamma oracle") {
  const RealFn g = [](double x) { return 2.0 / 3.0 * std::pow(std::abs(x), 3); };
  const double expected = std::cbrt(0.75) * 2.0 / 3.0 * oracle::gamma(1.0 / 3.0);
  CHECK(expected == doctest::Approx(1.62265145944967).epsilon(1e-13));
  CHECK(integrate_weighted([](double) { return 1.0; }, g).value ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(integrate_weighted([](double) { return 1.0; }, g, {}, Parity::Even).value ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("parity hints") {
  const RealFn g = [](double x) { return x * x; };
  CHECK(integrate_weighted([](double x) { return x * x * x; }, g, {}, Parity::Odd).value == 0.0);
  // shifted centre
  const RealFn gs = [](double x) { return 0.5 * (x - 2.0) * (x - 2.0); };
  CHECK(integrate_weighted([](double) { return 1.0; }, gs, {}, Parity::Even, 2.0).value ==
        doctest::Approx(kSqrtPi).epsilon(1e-12));
  CHECK(integrate_weighted([](double x) { return x; }, gs, {}, Parity::None, 2.0).value ==
        doctest::Approx(2.0 * kSqrtPi).epsilon(1e-12));
}

TEST_CASE("quadrature failures") {
  const RealFn g = [](double x) { return 0.5 * x * x; };
  CHECK_THROWS_AS(integrate_weighted([](double) { return NAN; }, g), Error);
  try {
    integrate_weighted([](double x) { return x == 0.0 ? INFINITY : 1.0; }, g);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteIntegrand);
  }
  QuadratureSettings tight;
  tight.max_subdivisions = 16;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-300;
  try {
    integrate_weighted([](double x) { return std::cos(400.0 * x); }, g, tight);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
  QuadratureSettings bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate_weighted([](double) { return 1.0; }, g, bad), Error);
}

TEST_CASE("gamma function") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_fn(0.5) == doctest::Approx(kSqrtPi).epsilon(1e-15));
  CHECK(gamma_fn(1.0 / 3.0) == doctest::Approx(2.6789385347077476).epsilon(1e-14));
  for (double z : {0.1, 0.25, 1.0 / 3.0, 0.7, 1.5, 2.2, 5.0 / 3.0, 7.5, 13.0, 30.5})
    CHECK(gamma_fn(z) == doctest::Approx(oracle::gamma(z)).epsilon(1e-13));
  for (double z : {0.0, -1.0, -0.5}) {
    try {
      gamma_fn(z);
      FAIL("accepted z <= 0");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DomainError);
    }
  }
}

TEST_CASE("monomial base integrals") {
  CHECK(monomial_base_integral(1, 0) == doctest::Approx(kSqrtPi).epsilon(1e-14));
  CHECK(monomial_base_integral(2, 0) == doctest::Approx(2.0 / 3.0 * oracle::gamma(1.0 / 3.0)).epsilon(1e-13));
  CHECK(monomial_base_integral(2, 0) == doctest::Approx(1.7859590231385).epsilon(1e-12));
  CHECK(monomial_base_ratio(2, 2) ==
        doctest::Approx(oracle::gamma(5.0 / 3.0) / oracle::gamma(1.0 / 3.0)).epsilon(1e-13));
  CHECK(monomial_base_ratio(2, 2) == doctest::Approx(0.33697872543739).epsilon(1e-12));
  // independent Simpson check on [-8, 8]
  for (int kappa = 1; kappa <= 5; ++kappa)
    for (int i = 0; i <= 4; ++i) {
      const double simpson = oracle::simpson(
          [=](double x) { return std::pow(x, 2 * i) * std::exp(-std::pow(std::abs(x), kappa + 1)); },
          -8.0, 8.0, 40000);
      CHECK(monomial_base_integral(kappa, i) == doctest::Approx(simpson).epsilon(1e-9));
    }
}
