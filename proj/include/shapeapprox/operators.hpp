#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "shapeapprox/function.hpp"
#include "shapeapprox/generator.hpp"

namespace shapeapprox {

/// order = 0 picks max(64, N + 2) for the top Bernstein degree N. With
/// force = true polynomial inputs also go through quadrature, and an order
/// too low for exactness raises DomainError.
struct QuadratureOptions {
  int order = 0;
  bool force = false;
};

/// v_j = int_0^1 p_{N,j}(t) f(t) dt for j = 0..N.
template <class T>
std::vector<T> bernstein_moments(int N, const FunctionHandle& f, const QuadratureOptions& q = {});

/// All images are returned in the Bernstein basis of the operator's degree.
template <class T>
Polynomial<T> bernstein_image(int n, const FunctionHandle& f);

/// U_n: endpoint interpolating, preserves linear functions.
template <class T>
Polynomial<T> genuine_durrmeyer_image(int n, const FunctionHandle& f, const QuadratureOptions& q = {});

/// D_n(f) = (n+1) sum p_{n,k} int p_{n,k} f.
template <class T>
Polynomial<T> durrmeyer_image(int n, const FunctionHandle& f, const QuadratureOptions& q = {});

/// D_n^<alpha> with weight t^alpha (1-t)^alpha.
template <class T>
Polynomial<T> lupas_image(int n, const T& alpha, const FunctionHandle& f, const QuadratureOptions& q = {});

/// H_{d+2}(P; f) = sum_k a_k/(k+1) U_{k+2}(f) for P = sum a_k t^k of degree d.
/// Computed from the top row int p_{d,j} f by the degree-elevation cascade.
template <class T>
Polynomial<T> gavrea_image(const Polynomial<T>& P, const FunctionHandle& f, const QuadratureOptions& q = {});

/// B_n(f, x) by direct summation (O(n), usable for large n).
template <class T>
T apply_bernstein(int n, const FunctionHandle& f, const T& x);

template <class T>
T apply_genuine_durrmeyer(int n, const FunctionHandle& f, const T& x) {
  return eval(genuine_durrmeyer_image<T>(n, f), x);
}

template <class T>
T apply_durrmeyer_lupas(int n, const T& alpha, const FunctionHandle& f, const T& x) {
  return eval(lupas_image<T>(n, alpha, f), x);
}

template <class T>
T apply_gavrea(const Polynomial<T>& P, const FunctionHandle& f, const T& x) {
  return eval(gavrea_image<T>(P, f), x);
}

/// U_n(e_i) in closed form, monomial basis.
Polynomial<Rational> genuine_durrmeyer_moment(int n, int i);
/// U_n(e_i) from the three-term recurrence in i.
Polynomial<Rational> genuine_durrmeyer_moment_recurrence(int n, int i);

/// <p_{n,k}, 1> = C(n,k) (a+1)_k (a+1)_{n-k} / (2a+2)_n for the normalized weight.
template <class T>
T lupas_norm(int n, int k, const T& alpha) {
  return binomial<T>(n, k) * pochhammer(T(alpha + T(1)), k) * pochhammer(T(alpha + T(1)), n - k) /
         pochhammer(T(T(2) * alpha + T(2)), n);
}

/// D_n^<a>(e_i) for i <= 2 from the closed forms, monomial basis.
template <class T>
Polynomial<T> lupas_moment(int n, const T& alpha, int i);

/// D_n^<a>(e_i, 0) = (a+1)_i / (n+2a+2)_i.
template <class T>
T lupas_endpoint_moment(int n, const T& alpha, int i) {
  return pochhammer(T(alpha + T(1)), i) / pochhammer(T(T(n) + T(2) * alpha + T(2)), i);
}

/// max over 50 grid points of |(D_n^<a> f)^(nu) - n!/((n-nu)!(n+2a+2)_nu) D_{n-nu}^<a+nu>(f^(nu))|.
template <class T>
T lupas_derivative_identity_residual(int n, const T& alpha, int nu, const Polynomial<Rational>& f);

/// The composite operator: Gavrea with the generator of degree n-2 and
/// r = max(q-1, 1) when n-2 > 8r and alpha_n <= 1/4, otherwise linear
/// interpolation of the endpoint values.
class MnOperator {
 public:
  MnOperator(int q, int n, const GeneratorOptions& opt = {});

  int q() const { return q_; }
  int n() const { return n_; }
  int r() const { return r_; }
  bool uses_generator() const { return use_gen_; }
  /// "gavrea", "fallback:small-n" or "fallback:alpha"
  const std::string& regime() const { return regime_; }
  /// M_n(e_2, x) - x^2 = alpha_n x(1-x); 1 on the fallback.
  const BigFloat& alpha_n() const { return alpha_n_; }
  const std::optional<GeneratorPoly>& generator() const { return gen_; }
  unsigned precision_bits() const { return bits_; }

  /// Bernstein(n) image at the generator precision.
  Polynomial<BigFloat> image_big(const FunctionHandle& f, const QuadratureOptions& qo = {}) const;
  Polynomial<double> image(const FunctionHandle& f, const QuadratureOptions& qo = {}) const;
  double operator()(const FunctionHandle& f, double x) const;

 private:
  int q_, n_, r_;
  bool use_gen_ = false;
  std::string regime_;
  BigFloat alpha_n_;
  std::optional<GeneratorPoly> gen_;
  unsigned bits_;
};

double apply_Mn(int q, int n, const FunctionHandle& f, double x);

enum class OperatorKind { bernstein, genuine_durrmeyer, durrmeyer, lupas, gavrea, mn };

/// Parsed from "kind:key=value,...", e.g. "bernstein:n=20", "genuine:n=10",
/// "durrmeyer:n=8", "lupas:n=10,alpha=0.5", "gavrea:n=40,r=2", "mn:n=60,q=3".
/// An optional "order=K" sets the quadrature order.
struct OperatorSpec {
  OperatorKind kind = OperatorKind::bernstein;
  int n = 1;
  Rational alpha = 0;
  int q = 0;
  int r = 1;
  QuadratureOptions quadrature;
  std::shared_ptr<const GeneratorPoly> generator;  // gavrea
  std::shared_ptr<const MnOperator> mn;            // mn

  static OperatorSpec parse(std::string_view text);
  std::string to_string() const;
  /// Builds the generator or M_n operator if the kind needs one.
  void prepare(const GeneratorOptions& opt = {});
};

/// Image of f under the operator, Bernstein basis. Gavrea and M_n are
/// computed at generator precision and cast to T.
template <class T>
Polynomial<T> operator_image(const OperatorSpec& spec, const FunctionHandle& f);

struct MomentProfile {
  int n = 0;
  Polynomial<Rational> e0, e1, e2;  // monomial
  Rational alpha_n = 0;
  double residual = 0;  // of L(e_2) - x^2 - alpha_n x(1-x)
  bool conforming = false;
};

/// Images of e_0, e_1, e_2 and the factor alpha_n. Exact for the classical
/// operators; Gavrea and M_n go through the float path and are rounded back.
/// Throws DomainError when L(e_2) - x^2 is not proportional to x(1-x).
MomentProfile moment_profile(const OperatorSpec& spec);

}  // namespace shapeapprox
