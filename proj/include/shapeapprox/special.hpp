#pragma once

#include <vector>

#include "shapeapprox/polynomial.hpp"

namespace shapeapprox {

/// (beta)_k = beta (beta+1) ... (beta+k-1), with (beta)_0 = 1.
template <class T>
T pochhammer(const T& beta, int k) {
  T out(1);
  for (int i = 0; i < k; ++i) {
    out *= beta + T(i);
  }
  return out;
}

template <class T>
T binomial(int n, int k) {
  if (k < 0 || k > n) {
    return T(0);
  }
  k = std::min(k, n - k);
  T out(1);
  for (int i = 0; i < k; ++i) {
    out = out * T(n - i) / T(i + 1);
  }
  return out;
}

/// Chebyshev T_m in the monomial basis (native variable on [-1,1]).
template <class T>
Polynomial<T> chebyshev_T(int m) {
  std::vector<T> prev{T(1)};
  if (m == 0) {
    return Polynomial<T>::monomial(prev);
  }
  std::vector<T> cur{T(0), T(1)};
  for (int k = 2; k <= m; ++k) {
    std::vector<T> next(static_cast<std::size_t>(k) + 1, T(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += T(2) * cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i] -= prev[i];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial<T>::monomial(std::move(cur));
}

/// tau_m(x) = |I_1| T_m(x) / (x - x_tilde), where x_tilde = cos(pi/2m) is the
/// rightmost zero of T_m and I_1 = [cos(pi/m), 1].
struct TauPoly {
  int m = 0;
  Polynomial<BigFloat> poly;  // monomial, degree m-1
  BigFloat x_tilde;
  BigFloat x_1;
  BigFloat len_I1;
  BigFloat remainder;  // T_m(x_tilde) left over by the synthetic division

  BigFloat operator()(const BigFloat& x) const { return eval(poly, x); }
  double operator()(double x) const { return to_double(eval(poly, BigFloat(x))); }
};

/// Builds tau_m at the current BigFloat precision. Throws PrecisionError if
/// the division remainder exceeds 1e-20 times the largest T_m coefficient.
TauPoly tau(int m);

/// Shifted ultraspherical polynomial phi_n^(alpha) on [0,1], normalized by
/// phi_n(1) = 1, built by the three-term recurrence in the variable 2x-1.
template <class T>
Polynomial<T> ultraspherical_phi(int n, const T& alpha) {
  if (!(alpha > T(-1))) {
    throw DomainError("ultraspherical_phi requires alpha > -1");
  }
  const auto u = Polynomial<T>::monomial({T(-1), T(2)});
  Polynomial<T> prev = Polynomial<T>::constant(T(1));
  if (n == 0) {
    return prev;
  }
  Polynomial<T> cur = u;
  for (int k = 2; k <= n; ++k) {
    // (k+2a) phi_k = (2k+2a-1)(2x-1) phi_{k-1} - (k-1) phi_{k-2}
    auto lead = scale(multiply(u, cur), T(2 * k - 1) + T(2) * alpha);
    auto next = subtract(lead, scale(prev, T(k - 1)));
    next = scale(next, T(1) / (T(k) + T(2) * alpha));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// (2a+n+1)_n / (a+1)_n, the x^n coefficient of phi_n^(a).
template <class T>
T ultraspherical_leading_coefficient(int n, const T& alpha) {
  return pochhammer(T(2) * alpha + T(n + 1), n) / pochhammer(alpha + T(1), n);
}

/// phi_n^(a) = (a+1)_n sum_k (-1)^{n-k} / ((a+1)_k (a+1)_{n-k}) p_{n,k}.
template <class T>
Polynomial<T> phi_bernstein_expansion(int n, const T& alpha) {
  if (!(alpha > T(-1))) {
    throw DomainError("phi_bernstein_expansion requires alpha > -1");
  }
  const T a1 = alpha + T(1);
  const T top = pochhammer(a1, n);
  std::vector<T> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    T v = top / (pochhammer(a1, k) * pochhammer(a1, n - k));
    c[static_cast<std::size_t>(k)] = (n - k) % 2 == 0 ? v : T(-v);
  }
  return Polynomial<T>::bernstein(std::move(c));
}

/// |LHS - RHS| of the product identity
///   (x+t-1)^n phi_n((xt)/(x+t-1)) = (a+1)_n sum_k p_{n,k}(x) p_{n,k}(t) / (C(n,k)(a+1)_k(a+1)_{n-k}).
/// The phi argument may lie outside [0,1], so phi is evaluated in monomial form.
template <class T>
T lupas_product_identity_residual(int n, const T& alpha, const T& x, const T& t) {
  const T s = x + t - T(1);
  if (s == T(0)) {
    throw DomainError("product identity requires t != 1 - x");
  }
  const auto phi = to_monomial(ultraspherical_phi(n, alpha));
  T sn(1);
  for (int i = 0; i < n; ++i) {
    sn *= s;
  }
  const T lhs = sn * eval(phi, T(x * t / s));
  const T a1 = alpha + T(1);
  T rhs(0);
  for (int k = 0; k <= n; ++k) {
    const auto pk = Polynomial<T>::bernstein_fundamental(n, k);
    rhs += eval(pk, x) * eval(pk, t) /
           (binomial<T>(n, k) * pochhammer(a1, k) * pochhammer(a1, n - k));
  }
  rhs *= pochhammer(a1, n);
  return abs_value(T(lhs - rhs));
}

}  // namespace shapeapprox
