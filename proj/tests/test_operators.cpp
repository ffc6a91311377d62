#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shapeapprox/operators.hpp"

using namespace shapeapprox;

namespace {

FunctionHandle mono(int i) { return FunctionHandle::from_polynomial(Polynomial<Rational>::power(i)); }

// p_{n,k}(x) straight from the definition, in double
double pnk(int n, int k, double x) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) *
         std::pow(x, k) * std::pow(1 - x, n - k);
}

}  // namespace

TEST_CASE("bernstein operator values") {
  CHECK(eval(bernstein_image<Rational>(2, mono(2)), Rational(1, 2)) == Rational(3, 8));
  for (int n : {1, 7, 64}) {
    CHECK(apply_bernstein<double>(n, mono(1), 0.3) == doctest::Approx(0.3));
    CHECK(apply_bernstein<double>(n, mono(0), 0.7) == doctest::Approx(1.0));
  }
}

TEST_CASE("genuine durrmeyer") {
  CHECK(eval(genuine_durrmeyer_image<Rational>(2, mono(2)), Rational(1, 2)) == Rational(5, 12));
  CHECK(genuine_durrmeyer_moment(3, 1).coeffs() == std::vector<Rational>{0, 1});
  auto e2 = genuine_durrmeyer_moment(3, 2);
  CHECK(e2.coeffs() == std::vector<Rational>{0, Rational(1, 2), Rational(1, 2)});
  CHECK(to_monomial(genuine_durrmeyer_moment_recurrence(4, 3)).coeffs() ==
        to_monomial(genuine_durrmeyer_moment(4, 3)).coeffs());
  for (int n = 2; n <= 12; ++n) {
    for (int i = 0; i <= 4; ++i) {
      auto img = to_monomial(genuine_durrmeyer_image<Rational>(n, mono(i)));
      auto ref = genuine_durrmeyer_moment(n, i);
      auto diff = subtract(img, ref);
      for (const auto& c : diff.coeffs()) CHECK(c == 0);
    }
  }
  auto ex = FunctionHandle::catalog("exp");
  auto u = genuine_durrmeyer_image<double>(9, ex);
  CHECK(eval(u, 0.0) == doctest::Approx(1.0));
  CHECK(eval(u, 1.0) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("genuine durrmeyer against the defining sum with brute quadrature") {
  // midpoint rule oracle for the inner integrals
  auto f = FunctionHandle::catalog("exp", {2.0});
  const int n = 6;
  const double x = 0.37;
  double ref = std::exp(0.0) * std::pow(1 - x, n) + std::exp(2.0) * std::pow(x, n);
  const int M = 200000;
  for (int k = 1; k < n; ++k) {
    double I = 0;
    for (int i = 0; i < M; ++i) {
      const double t = (i + 0.5) / M;
      I += pnk(n - 2, k - 1, t) * std::exp(2 * t);
    }
    ref += (n - 1) * pnk(n, k, x) * I / M;
  }
  CHECK(apply_genuine_durrmeyer<double>(n, f, x) == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("quadrature order flag") {
  QuadratureOptions q;
  q.force = true;
  q.order = 3;
  CHECK_THROWS_AS(genuine_durrmeyer_image<double>(10, mono(4), q), DomainError);
  q.order = 8;
  auto a = genuine_durrmeyer_image<double>(10, mono(4), q);
  auto b = genuine_durrmeyer_image<double>(10, mono(4));
  for (int k = 0; k <= 10; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-13));
}

TEST_CASE("lupas closed forms") {
  CHECK(eval(lupas_image<Rational>(1, Rational(0), mono(1)), Rational(0)) == Rational(1, 3));
  for (double a : {-0.4, 0.0, 1.0}) {
    for (int n : {1, 5, 20}) {
      auto img = lupas_image<double>(n, a, mono(2));
      auto ref = lupas_moment<double>(n, a, 2);
      for (double x : {0.0, 0.3, 1.0}) CHECK(eval(img, x) == doctest::Approx(eval(ref, x)).epsilon(1e-12));
    }
  }
  // quadrature path agrees with the exact path
  QuadratureOptions q;
  q.force = true;
  auto a = lupas_image<double>(8, 0.5, mono(5), q);
  auto b = lupas_image<double>(8, 0.5, mono(5));
  for (int k = 0; k <= 8; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
}

TEST_CASE("alpha=0 lupas equals durrmeyer") {
  auto f = FunctionHandle::catalog("exp", {1.5});
  auto a = lupas_image<double>(7, 0.0, f);
  auto b = durrmeyer_image<double>(7, f);
  for (int k = 0; k <= 7; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-12));
}

TEST_CASE("lupas derivative identity") {
  auto f = Polynomial<Rational>::power(3);
  CHECK(lupas_derivative_identity_residual<double>(6, 0.0, 1, f) < 1e-9);
  CHECK(lupas_derivative_identity_residual<double>(8, 0.5, 2, Polynomial<Rational>::power(4)) < 1e-9);
  CHECK(lupas_derivative_identity_residual<Rational>(5, Rational(1, 2), 5, Polynomial<Rational>::power(5)) == 0);
}

TEST_CASE("gavrea with P = 2t") {
  auto P = Polynomial<Rational>::monomial({0, 2});
  auto h2 = to_monomial(gavrea_image<Rational>(P, mono(2)));
  // x^2 + x(1-x)/2
  CHECK(h2.coeffs() == std::vector<Rational>{0, Rational(1, 2), Rational(1, 2), 0});
  CHECK(to_monomial(gavrea_image<Rational>(P, mono(0))).coeffs()[0] == 1);
}

TEST_CASE("gavrea cascade equals direct sum of U_{k+2}") {
  auto P = Polynomial<double>::monomial({0.2, 0.5, 1.1, 0.3});
  auto f = FunctionHandle::catalog("trunc", {0.4, 2});
  auto h = gavrea_image<double>(P, f);
  for (double x : {0.1, 0.5, 0.9}) {
    double ref = 0;
    for (int k = 0; k <= 3; ++k) ref += P[k] / (k + 1) * apply_genuine_durrmeyer<double>(k + 2, f, x);
    CHECK(eval(h, x) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("moment profiles") {
  CHECK(moment_profile(OperatorSpec::parse("bernstein:n=7")).alpha_n == Rational(1, 7));
  CHECK(moment_profile(OperatorSpec::parse("genuine:n=9")).alpha_n == Rational(2, 10));
  auto s = OperatorSpec::parse("mn:n=10,q=2");
  s.prepare();
  CHECK(to_double(moment_profile(s).alpha_n) == doctest::Approx(1.0).epsilon(1e-30));
  CHECK_THROWS_AS(moment_profile(OperatorSpec::parse("lupas:n=4,alpha=1")), DomainError);
}

TEST_CASE("M_n on linear and e_2") {
  MnOperator m(2, 100);
  CHECK(m.uses_generator());
  auto lin = FunctionHandle::catalog("linear", {0.3, -2});
  for (double x : {0.0, 0.25, 0.8, 1.0}) CHECK(m(lin, x) == doctest::Approx(0.3 - 2 * x).epsilon(1e-13));
  const double a = to_double(m.alpha_n());
  CHECK(a <= 0.25);
  for (double x : {0.1, 0.5, 0.77}) CHECK(m(mono(2), x) - x * x == doctest::Approx(a * x * (1 - x)).epsilon(1e-10));
  MnOperator small(3, 12);
  CHECK(!small.uses_generator());
  CHECK(small(mono(2), 0.5) == doctest::Approx(0.5));
}

TEST_CASE("M_n on non-polynomial input agrees between exact and quadrature paths") {
  MnOperator m(3, 60);
  auto p = Polynomial<Rational>::monomial({1, 1, Rational(1, 2), Rational(1, 6), Rational(1, 24)});
  QuadratureOptions q;
  q.force = true;
  auto a = m.image(FunctionHandle::from_polynomial(p), q);
  auto b = m.image(FunctionHandle::from_polynomial(p));
  for (int k = 0; k <= 60; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-14));
}
