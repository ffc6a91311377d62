#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <boost/math/constants/constants.hpp>

#include "shapeapprox/special.hpp"

using namespace shapeapprox;

TEST_CASE("chebyshev examples") {
  CHECK(chebyshev_T<Rational>(2).coeffs() == std::vector<Rational>{-1, 0, 2});
  CHECK(chebyshev_T<Rational>(3).coeffs() == std::vector<Rational>{0, -3, 0, 4});
  const double z = std::cos(boost::math::constants::pi<double>() / 8);
  CHECK(std::abs(eval(chebyshev_T<double>(4), z)) <= 1e-12);
}

TEST_CASE("chebyshev bounded by one") {
  PrecisionScope scope(256);
  for (int m = 0; m <= 64; ++m) {
    const auto T = chebyshev_T<BigFloat>(m);
    for (int i = 0; i < 500; ++i) {
      const BigFloat x = BigFloat(-1) + BigFloat(2 * i) / BigFloat(499);
      REQUIRE(abs_value(eval(T, x)) <= BigFloat(1) + BigFloat(1e-30));
    }
  }
}

TEST_CASE("tau examples") {
  PrecisionScope scope(256);
  auto t4 = tau(4);
  CHECK(t4(1.0) > 4.0 / 3);
  CHECK(t4(1.0) < 4.0);
  auto t8 = tau(8);
  double mx = 0;
  for (int i = 0; i < 200; ++i) {
    mx = std::max(mx, t8(to_double(t8.x_1) + (1 - to_double(t8.x_1)) * i / 199.0));
  }
  CHECK(mx < 4);
  auto t6 = tau(6);
  CHECK(std::abs(t6(-0.5)) < 2 * to_double(t6.len_I1) / 1.5);
  CHECK_THROWS_AS(tau(1), DomainError);
}

TEST_CASE("tau bounds on dense grids") {
  PrecisionScope scope(256);
  for (int m = 2; m <= 64; ++m) {
    const auto t = tau(m);
    REQUIRE(degree(t.poly) == m - 1);
    const double x1 = to_double(t.x_1);
    const double len = to_double(t.len_I1);
    for (int i = 0; i <= 100; ++i) {
      const double x = x1 + (1 - x1) * i / 100.0;
      const double v = t(x);
      REQUIRE(v > 4.0 / 3);
      REQUIRE(v < 4.0);
    }
    for (int i = 0; i < 300; ++i) {
      const double x = -1 + (x1 + 1) * i / 300.0;
      REQUIRE(std::abs(t(x)) < 2 * len / (1 - x));
    }
  }
}

TEST_CASE("ultraspherical examples") {
  const auto p2 = ultraspherical_phi<Rational>(2, Rational(0));
  CHECK(eval(p2, Rational(1, 2)) == Rational(-1, 2));
  CHECK(to_monomial(p2).coeffs() == std::vector<Rational>{1, -6, 6});
  CHECK(ultraspherical_leading_coefficient<Rational>(2, Rational(0)) == 6);
  for (int n = 0; n <= 10; ++n) {
    for (Rational a : {Rational(-2, 5), Rational(0), Rational(1, 2), Rational(2)}) {
      REQUIRE(eval(ultraspherical_phi<Rational>(n, a), Rational(1)) == 1);
    }
  }
  CHECK_THROWS_AS(ultraspherical_phi<double>(3, -1.0), DomainError);
}

TEST_CASE("leading coefficient") {
  for (int n = 1; n <= 20; ++n) {
    for (double a : {-0.4, 0.0, 0.5, 1.0, 2.0}) {
      const auto mono = to_monomial(ultraspherical_phi<double>(n, a));
      const double lead = mono[static_cast<std::size_t>(n)];
      const double want = ultraspherical_leading_coefficient<double>(n, a);
      REQUIRE(std::abs(lead - want) <= 1e-9 * std::abs(want));
    }
  }
}

TEST_CASE("bernstein expansion of phi") {
  CHECK(phi_bernstein_expansion<Rational>(1, Rational(0)).coeffs() == std::vector<Rational>{-1, 1});
  CHECK(phi_bernstein_expansion<Rational>(0, Rational(0)).coeffs() == std::vector<Rational>{1});
  PrecisionScope scope(128);
  for (int n = 0; n <= 12; ++n) {
    for (double a : {-0.4, 0.0, 0.5, 2.0}) {
      const auto rec = ultraspherical_phi<BigFloat>(n, BigFloat(a));
      const auto ber = phi_bernstein_expansion<BigFloat>(n, BigFloat(a));
      for (int i = 0; i < 50; ++i) {
        const BigFloat x = BigFloat(i) / BigFloat(49);
        REQUIRE(to_double(abs_value(BigFloat(eval(rec, x) - eval(ber, x)))) <= 1e-9);
      }
    }
  }
  // exact agreement on the rational backend
  for (int n = 0; n <= 8; ++n) {
    const auto rec = to_monomial(ultraspherical_phi<Rational>(n, Rational(1, 2)));
    const auto ber = to_monomial(phi_bernstein_expansion<Rational>(n, Rational(1, 2)));
    REQUIRE(rec.coeffs() == ber.coeffs());
  }
}

TEST_CASE("product identity") {
  CHECK(lupas_product_identity_residual<double>(3, 0.0, 0.3, 0.6) <= 1e-10);
  CHECK(lupas_product_identity_residual<double>(5, 0.5, 0.25, 0.5) <= 1e-10);
  CHECK(lupas_product_identity_residual<Rational>(0, Rational(1, 2), Rational(1, 3), Rational(1, 5)) == 0);
  CHECK(lupas_product_identity_residual<Rational>(6, Rational(1, 2), Rational(1, 3), Rational(1, 5)) == 0);
  CHECK_THROWS_AS(lupas_product_identity_residual<double>(3, 0.0, 0.25, 0.75), DomainError);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 20; ++i) {
    const double x = u(rng), t = u(rng);
    if (std::abs(x + t - 1) < 1e-3) continue;
    REQUIRE(lupas_product_identity_residual<double>(6, 0.5, x, t) <= 1e-10);
  }
}

TEST_CASE("pochhammer") {
  Rational fact(1);
  for (int k = 0; k <= 15; ++k) {
    if (k > 0) fact *= k;
    REQUIRE(pochhammer(Rational(1), k) == fact);
  }
  CHECK(pochhammer(Rational(1, 2), 0) == 1);
  CHECK(pochhammer(Rational(1, 2), 3) == Rational(15, 8));
}
