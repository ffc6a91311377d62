#pragma once

#include <map>
#include <vector>

#include "shapeapprox/special.hpp"

namespace shapeapprox {

/// P = lambda (r-1)! I^r Q with Q = tau_m^{4r} restricted to [0,1] and I the
/// antiderivative from 0. Unit integral, P^(nu) >= 0 for nu <= r, and
/// 1 - int x^2 P = O(n^-2).
struct GeneratorPoly {
  int n = 0;
  int r = 0;
  int m = 0;
  Polynomial<BigFloat> Q;
  BigFloat lambda_n;
  Polynomial<BigFloat> P;  // monomial
  std::map<int, BigFloat> moment_deficiency;  // mu -> 1 - int x^mu P
  BigFloat integral;
  // min over the check grid of P^(nu) / max|P^(nu)|, nu = 0..r
  std::vector<double> derivative_margin;
  unsigned precision_bits = 0;
};

struct GeneratorOptions {
  unsigned start_bits = 256;
  unsigned max_bits = 1024;
  int check_grid = 2048;
  double integral_tol = 1e-20;
  double derivative_tol = 1e-15;
};

/// Throws RegimeError for n <= 8r and PrecisionError when the invariants
/// still fail at max_bits.
GeneratorPoly build_generator(int n, int r, const GeneratorOptions& opt = {});

/// int_0^1 x^mu p(x) dx.
template <class T>
T moment(const Polynomial<T>& p, int mu) {
  const auto mono = to_monomial(p);
  T sum(0);
  for (std::size_t i = 0; i < mono.coeffs().size(); ++i) {
    sum += mono[i] / T(static_cast<long>(i) + mu + 1);
  }
  return sum;
}

struct DeficiencyFit {
  int r = 0;
  std::vector<int> n;
  std::vector<double> delta2;
  std::vector<double> scaled;  // n^2 delta_2
  double slope = 0;            // least squares, log delta_2 vs log n
};

DeficiencyFit deficiency_slope(int r, const std::vector<int>& n_list,
                               const GeneratorOptions& opt = {});

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace shapeapprox
