#include <doctest.h>

#include <cmath>
#include <vector>

#include "error.hpp"
#include "oracles.hpp"
#include "virial_weight.hpp"

using namespace virial;

TEST_CASE("weight modes") {
  CHECK(make_weight(validate(PotentialSpec::monomial(3, 0.4))).mode() == WeightMode::ClosedFormMonomial);
  CHECK(make_weight(validate(PotentialSpec::quartic_anharmonic(1.0, 0.2))).mode() ==
        WeightMode::ClosedFormQuarticAnharmonic);
  CHECK(make_weight(validate(PotentialSpec::even_polynomial({1.0, 0.0, 0.5}))).mode() ==
        WeightMode::NumericG);
  const auto harmonic = make_weight(validate(PotentialSpec::quartic_anharmonic(2.0, 1e-14)));
  CHECK(harmonic.harmonic_limit());
  CHECK_FALSE(make_weight(validate(PotentialSpec::quartic_anharmonic(2.0, 1e-3))).harmonic_limit());
}

TEST_CASE("g'^2 equals (x - xi) U' pointwise") {
  std::vector<PotentialSpec> specs{PotentialSpec::monomial(1, 0.5), PotentialSpec::monomial(2, 1.0),
                                   PotentialSpec::monomial(5, 0.3),
                                   PotentialSpec::quartic_anharmonic(1.0, 0.1),
                                   PotentialSpec::quartic_anharmonic(0.0, 2.0),
                                   PotentialSpec::even_polynomial({0.5, 0.0, 0.2})};
  specs.back().xi = 0.6;
  for (const auto& spec : specs) {
    const auto w = make_weight(validate(spec));
    const auto& p = w.potential();
    for (int i = 0; i <= 120; ++i) {
      const double y = -3.0 + 0.05 * i;
      const double lhs = w.dg_centered(y) * w.dg_centered(y);
      const double rhs = p.virial_term(y);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
  }
}

TEST_CASE("g is odd-signed, vanishes at xi and integrates g'") {
  const auto w = make_weight(validate(PotentialSpec::quartic_anharmonic(1.0, 0.7)));
  CHECK(w.g_centered(0.0) == 0.0);
  for (double y : {0.3, 1.1, 2.5}) {
    CHECK(w.g_centered(-y) == doctest::Approx(w.g_centered(y)).epsilon(1e-14));
    const double simpson = oracle::simpson([&](double t) { return w.dg_centered(t); }, 0.0, y, 2000);
    CHECK(w.g_centered(y) == doctest::Approx(simpson).epsilon(1e-11));
  }
  // numeric g against the closed form of the same potential
  const auto numeric = make_weight(validate(PotentialSpec::even_polynomial({0.5, 0.7})));
  for (double y : {0.01, 0.4, 1.7, 4.0})
    CHECK(numeric.g_centered(y) == doctest::Approx(w.g_centered(y)).epsilon(1e-11));
}

TEST_CASE("normalisation") {
  for (int kappa = 1; kappa <= 5; ++kappa) {
    const auto w = make_weight(validate(PotentialSpec::monomial(kappa, 0.7)));
    CHECK(w.normalized());
    CHECK(w.moment(0) == doctest::Approx(1.0).epsilon(1e-12));
    const double direct = oracle::simpson([&](double x) { return w.sigma(x); }, -12.0, 12.0, 60000);
    CHECK(direct == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("moments") {
  for (double omega : {0.5, 1.0, 2.0}) {
    const auto w = make_weight(validate(PotentialSpec::monomial(1, omega * omega / 2)));
    for (int order = 0; order <= 12; ++order)
      CHECK(w.moment(order) == doctest::Approx(oracle::gaussian_moment(order, omega)).epsilon(1e-12));
  }
  const auto quartic = make_weight(validate(PotentialSpec::monomial(2, 1.0)));
  const double mu4 = std::pow(0.75, 4.0 / 3.0) * oracle::gamma(5.0 / 3.0) / oracle::gamma(1.0 / 3.0);
  CHECK(quartic.moment(4) == doctest::Approx(mu4).epsilon(1e-12));
  CHECK(quartic.moment(4) == doctest::Approx(0.22962412).epsilon(1e-7));
  CHECK(3.0 * quartic.moment(4) == doctest::Approx(0.68887235).epsilon(1e-8));
  CHECK(quartic.moment(3) == 0.0);
  CHECK(make_weight(validate(PotentialSpec::even_polynomial({1.0, 1.0}))).moment(7) == 0.0);
}

TEST_CASE("closed-form moments match quadrature") {
  for (int kappa = 1; kappa <= 5; ++kappa) {
    const auto w = make_weight(validate(PotentialSpec::monomial(kappa, 1.3)));
    for (int order = 0; order <= 30; order += 2) {
      const double quad = w.expectation([order](double y) { return std::pow(y, order); },
                                        Parity::Even, order);
      CHECK(oracle::rel_diff(w.moment(order), quad) <= 1e-10);
    }
  }
}

TEST_CASE("moment order out of range") {
  const auto w = make_weight(validate(PotentialSpec::monomial(2, 1.0)));
  CHECK_THROWS_AS(w.moment(-1), Error);
}
