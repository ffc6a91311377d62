#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shapeapprox/operators.hpp"
#include "shapeapprox/shape.hpp"

using namespace shapeapprox;

TEST_CASE("function checks") {
  CHECK(check_k_monotone_fn(FunctionHandle::catalog("pow", {3}), 3).pass);
  const RealFunction neg = [](double x) { return -x; };
  const auto rep = check_k_monotone_fn(neg, 1);
  CHECK_FALSE(rep.pass);
  CHECK(rep.witness_value < -rep.tol);
  CHECK(sym_diff(neg, 1, rep.witness_delta, rep.witness_x) == doctest::Approx(rep.witness_value));
  for (int k = 0; k <= 6; ++k) {
    CHECK(check_k_monotone_fn(FunctionHandle::catalog("exp"), k).pass);
  }
}

TEST_CASE("polynomial checks") {
  CHECK(check_k_monotone_poly(Polynomial<Rational>::power(2), 2).pass);
  CHECK(check_k_monotone_poly(Polynomial<Rational>::power(2), 2).certificate);
  const auto bad = check_k_monotone_poly(Polynomial<Rational>::monomial({0, 1, -1}), 2);
  CHECK_FALSE(bad.pass);
  CHECK(bad.witness_value == doctest::Approx(-2));
  const auto mn = MnOperator(3, 20).image(FunctionHandle::catalog("exp"));
  for (int k = 0; k <= 3; ++k) {
    CHECK(check_k_monotone_poly(mn, k).pass);
  }
}

TEST_CASE("fn and poly checks agree on random polynomials") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> deg(0, 10);
  std::uniform_real_distribution<double> c(-1, 1);
  int agreed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : a) v = c(rng);
    // bias towards monotone cases so both verdicts occur
    if (trial % 2 == 0) {
      for (auto& v : a) v = std::abs(v);
    }
    const auto p = Polynomial<double>::monomial(a);
    const RealFunction f = [&p](double x) { return eval(p, x); };
    const int k = trial % 4;
    const bool fp = check_k_monotone_fn(f, k, 513, 32, 1e-9).pass;
    const bool pp = check_k_monotone_poly(p, k, 1e-9).pass;
    if (fp == pp) ++agreed;
  }
  CHECK(agreed == 50);
}

TEST_CASE("report json") {
  const auto j = check_k_monotone_poly(Polynomial<Rational>::power(2), 1).to_json();
  CHECK(j["k"] == 1);
  CHECK(j["verdict"] == "pass");
  CHECK(j["bernstein_certificate"] == true);
}
