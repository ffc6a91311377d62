#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shapeapprox/generator.hpp"

using namespace shapeapprox;

TEST_CASE("moment examples") {
  CHECK(moment(Polynomial<Rational>::constant(1), 2) == Rational(1, 3));
  CHECK(moment(Polynomial<Rational>::monomial({0, 2}), 2) == Rational(1, 2));
  CHECK(moment(Polynomial<Rational>::bernstein({0, 2}), 2) == Rational(1, 2));
}

TEST_CASE("regime") {
  CHECK_THROWS_AS(build_generator(8, 1), RegimeError);
  CHECK_THROWS_AS(build_generator(24, 3), RegimeError);
  CHECK_NOTHROW(build_generator(9, 1));
}

TEST_CASE("n=64, r=1") {
  const auto g = build_generator(64, 1);
  CHECK(g.m == 8);
  CHECK(degree(g.P) <= 64);
  CHECK(abs_value(BigFloat(integrate_01(g.P) - BigFloat(1))) <= BigFloat(1e-20));
  CHECK(abs_value(BigFloat(moment(g.P, 0) - BigFloat(1))) <= BigFloat(1e-20));
  const double d2 = to_double(g.moment_deficiency.at(2));
  CHECK(d2 > 0);
  CHECK(d2 <= 1);
  for (int mu = 1; mu <= 4; ++mu) {
    CHECK(g.moment_deficiency.at(mu) > 0);
  }
}

TEST_CASE("n=40, r=3 derivatives nonnegative") {
  const auto g = build_generator(40, 3);
  REQUIRE(g.derivative_margin.size() == 4);
  for (double m : g.derivative_margin) {
    CHECK(m >= -1e-15);
  }
  for (int nu = 0; nu <= 3; ++nu) {
    const auto d = polynomial_cast<double>(differentiate(g.P, nu));
    double lo = 1e300;
    for (int i = 0; i <= 400; ++i) lo = std::min(lo, eval(d, i / 400.0));
    CHECK(lo >= -1e-9);
  }
}

TEST_CASE("deficiency decreasing and slope") {
  for (int r : {1, 2}) {
    const std::vector<int> ns{32, 64, 128, 256};
    const auto fit = deficiency_slope(r, ns);
    for (std::size_t i = 1; i < fit.delta2.size(); ++i) {
      CHECK(fit.delta2[i] <= fit.delta2[i - 1] * 1.05);
    }
    CHECK(fit.slope >= -2.4);
    CHECK(fit.slope <= -1.6);
    const auto [lo, hi] = std::minmax_element(fit.scaled.begin(), fit.scaled.end());
    CHECK(*hi / *lo <= 4);
  }
}

TEST_CASE("loglog slope") {
  CHECK(loglog_slope({1, 2, 4, 8}, {1, 0.25, 0.0625, 0.015625}) == doctest::Approx(-2));
}
