#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shapeapprox/polynomial.hpp"

namespace shapeapprox {

enum class FunctionKind { polynomial, catalog, callback };

/// A continuous function on [0,1], evaluable at double and BigFloat
/// arguments. Polynomials also evaluate exactly at rationals.
///
/// Catalog entries (spec syntax in parentheses):
///   exp(c x)                 "exp" or "exp:c"           (c >= 0: k-monotone for all k)
///   x^p, integer p >= 0      "pow:p"                    (all k)
///   (x-a)_+^p                "trunc:a:p"                (k <= p+1)
///   x^eps, 0 < eps < 1       "xeps:eps"                 (k in {0,1})
///   ln(x+eps)                "log:eps"                  (k = 1)
///   a + b x                  "linear:a:b"
///   piecewise linear         "pwl:x0:y0:x1:y1:..."      (breakpoints increasing, x0=0, last=1)
class FunctionHandle {
 public:
  static FunctionHandle from_polynomial(const Polynomial<Rational>& p, std::string name = "poly");
  static FunctionHandle from_callback(std::function<double(double)> f, std::string name = "callback");
  static FunctionHandle catalog(std::string_view name, const std::vector<double>& params = {});
  /// Parses a catalog spec ("trunc:0.5:3") or a polynomial JSON file path.
  static FunctionHandle parse(std::string_view spec);

  FunctionKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  double operator()(double x) const;
  BigFloat operator()(const BigFloat& x) const;
  /// Exact evaluation; only polynomial handles support it.
  Rational operator()(const Rational& x) const;

  bool is_polynomial() const { return poly_.has_value(); }
  /// Monomial coefficients of a polynomial handle.
  const Polynomial<Rational>& polynomial() const;

  /// Interior points where the function is not smooth; quadrature splits there.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  /// Derivative blows up at x = 0 (x^eps, ln(x+eps) for tiny eps).
  bool singular_at_zero() const { return singular_at_zero_; }

  /// Whether the catalog declares the function k-monotone. Callbacks and
  /// user polynomials declare nothing.
  bool known_k_monotone(int k) const;
  std::vector<int> known_monotone_orders(int up_to) const;

 private:
  FunctionKind kind_ = FunctionKind::callback;
  std::string name_;
  std::function<double(double)> f_double_;
  std::function<BigFloat(const BigFloat&)> f_big_;
  std::optional<Polynomial<Rational>> poly_;
  std::vector<double> breakpoints_;
  bool singular_at_zero_ = false;
  std::function<bool(int)> monotone_;
};

}  // namespace shapeapprox
