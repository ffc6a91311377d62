#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "shapeapprox/scalar.hpp"

namespace shapeapprox {

enum class Basis { monomial, bernstein };

inline constexpr int kDefaultDegreeCap = 4096;

/// A real polynomial on [0,1] stored either by monomial coefficients or by
/// coefficients on the Bernstein basis p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k).
///
/// For the Bernstein basis the coefficient count fixes n; for the monomial
/// basis it is the formal degree (trailing zeros are allowed).
template <class T>
class Polynomial {
 public:
  Polynomial() : basis_(Basis::monomial), coeffs_{T(0)} {}
  Polynomial(Basis basis, std::vector<T> coeffs) : basis_(basis), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      coeffs_.push_back(T(0));
    }
  }

  static Polynomial monomial(std::vector<T> coeffs) { return {Basis::monomial, std::move(coeffs)}; }
  static Polynomial bernstein(std::vector<T> coeffs) {
    return {Basis::bernstein, std::move(coeffs)};
  }
  static Polynomial constant(const T& c) { return monomial({c}); }

  /// e_i(x) = x^i.
  static Polynomial power(int i) {
    std::vector<T> c(static_cast<std::size_t>(i) + 1, T(0));
    c.back() = T(1);
    return monomial(std::move(c));
  }

  /// The Bernstein fundamental polynomial p_{n,k}.
  static Polynomial bernstein_fundamental(int n, int k) {
    std::vector<T> c(static_cast<std::size_t>(n) + 1, T(0));
    c.at(static_cast<std::size_t>(k)) = T(1);
    return bernstein(std::move(c));
  }

  Basis basis() const { return basis_; }
  /// Formal degree: coefficient count minus one.
  int n() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }

 private:
  Basis basis_;
  std::vector<T> coeffs_;
};

namespace detail {

template <class T>
void check_cap(int degree, int cap) {
  if (degree > cap) {
    throw DegreeError("polynomial degree " + std::to_string(degree) + " exceeds cap " +
                      std::to_string(cap));
  }
}

// C(k,i)/C(n,i) for k = i..n, via the ratio recurrence.
template <class T>
std::vector<T> binomial_ratio_column(int n, int i) {
  std::vector<T> out(static_cast<std::size_t>(n - i) + 1);
  T inv_cni(1);
  for (int j = 0; j < i; ++j) {
    inv_cni = inv_cni * T(j + 1) / T(n - j);
  }
  out[0] = inv_cni;
  for (int k = i; k < n; ++k) {
    out[static_cast<std::size_t>(k - i + 1)] =
        out[static_cast<std::size_t>(k - i)] * T(k + 1) / T(k + 1 - i);
  }
  return out;
}

}  // namespace detail

/// Actual degree: highest nonzero monomial coefficient (0 for the zero
/// polynomial). Bernstein inputs are converted first.
template <class T>
int degree(const Polynomial<T>& p);

template <class T>
Polynomial<T> to_monomial(const Polynomial<T>& p) {
  if (p.basis() == Basis::monomial) {
    return p;
  }
  const int n = p.n();
  const auto& b = p.coeffs();
  std::vector<T> a(b.size(), T(0));
  // a_i = C(n,i) * sum_{k<=i} (-1)^{i-k} C(i,k) b_k
  T cni(1);
  for (int i = 0; i <= n; ++i) {
    if (i > 0) {
      cni = cni * T(n - i + 1) / T(i);
    }
    T sum(0);
    T cik(1);
    for (int k = 0; k <= i; ++k) {
      if (k > 0) {
        cik = cik * T(i - k + 1) / T(k);
      }
      const T term = cik * b[static_cast<std::size_t>(k)];
      if ((i - k) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    a[static_cast<std::size_t>(i)] = cni * sum;
  }
  return Polynomial<T>::monomial(std::move(a));
}

/// Degree elevation of a Bernstein form to bernstein(target_n).
template <class T>
Polynomial<T> elevate(const Polynomial<T>& p, int target_n) {
  if (p.basis() != Basis::bernstein) {
    throw DomainError("elevate expects a Bernstein-basis polynomial");
  }
  if (target_n < p.n()) {
    throw DegreeError("cannot elevate bernstein(" + std::to_string(p.n()) + ") to bernstein(" +
                      std::to_string(target_n) + ")");
  }
  std::vector<T> c = p.coeffs();
  for (int m = p.n(); m < target_n; ++m) {
    std::vector<T> next(static_cast<std::size_t>(m) + 2);
    next[0] = c[0];
    next[static_cast<std::size_t>(m) + 1] = c[static_cast<std::size_t>(m)];
    for (int i = 1; i <= m; ++i) {
      next[static_cast<std::size_t>(i)] =
          (T(i) * c[static_cast<std::size_t>(i) - 1] + T(m + 1 - i) * c[static_cast<std::size_t>(i)]) /
          T(m + 1);
    }
    c = std::move(next);
  }
  return Polynomial<T>::bernstein(std::move(c));
}

template <class T>
Polynomial<T> to_bernstein(const Polynomial<T>& p, int target_n) {
  if (p.basis() == Basis::bernstein) {
    return elevate(p, target_n);
  }
  const int d = degree(p);
  if (target_n < d) {
    throw DegreeError("bernstein(" + std::to_string(target_n) + ") cannot hold degree " +
                      std::to_string(d));
  }
  std::vector<T> b(static_cast<std::size_t>(target_n) + 1, T(0));
  // b_k = sum_{i<=k} C(k,i)/C(n,i) a_i
  for (int i = 0; i <= d; ++i) {
    const T& ai = p[static_cast<std::size_t>(i)];
    if (ai == T(0)) {
      continue;
    }
    auto col = detail::binomial_ratio_column<T>(target_n, i);
    for (int k = i; k <= target_n; ++k) {
      b[static_cast<std::size_t>(k)] += col[static_cast<std::size_t>(k - i)] * ai;
    }
  }
  return Polynomial<T>::bernstein(std::move(b));
}

/// Basis conversion. For a Bernstein target, target_n < 0 selects the
/// minimal n (the actual degree).
template <class T>
Polynomial<T> convert_basis(const Polynomial<T>& p, Basis target, int target_n = -1) {
  if (target == Basis::monomial) {
    return to_monomial(p);
  }
  if (target_n < 0) {
    target_n = p.basis() == Basis::bernstein ? p.n() : degree(p);
  }
  return to_bernstein(p, target_n);
}

template <class T>
int degree(const Polynomial<T>& p) {
  if (p.basis() == Basis::bernstein) {
    return degree(to_monomial(p));
  }
  for (int i = p.n(); i > 0; --i) {
    if (p[static_cast<std::size_t>(i)] != T(0)) {
      return i;
    }
  }
  return 0;
}

/// Horner for monomial, de Casteljau for Bernstein (which requires x in [0,1]).
template <class T>
T eval(const Polynomial<T>& p, const T& x) {
  const auto& c = p.coeffs();
  if (p.basis() == Basis::monomial) {
    T acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      acc = acc * x + c[i];
    }
    return acc;
  }
  if (x < T(0) || x > T(1)) {
    throw DomainError("Bernstein-basis evaluation outside [0,1]");
  }
  std::vector<T> work = c;
  const T y = T(1) - x;
  for (std::size_t level = work.size() - 1; level > 0; --level) {
    for (std::size_t i = 0; i < level; ++i) {
      work[i] = y * work[i] + x * work[i + 1];
    }
  }
  return work[0];
}

template <class T>
Polynomial<T> scale(const Polynomial<T>& p, const T& s) {
  std::vector<T> c = p.coeffs();
  for (auto& v : c) {
    v *= s;
  }
  return {p.basis(), std::move(c)};
}

template <class T>
Polynomial<T> add(const Polynomial<T>& p, const Polynomial<T>& q) {
  if (p.basis() == Basis::bernstein && q.basis() == Basis::bernstein) {
    const int n = std::max(p.n(), q.n());
    auto a = elevate(p, n);
    auto b = elevate(q, n);
    std::vector<T> c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] += b[i];
    }
    return Polynomial<T>::bernstein(std::move(c));
  }
  auto a = to_monomial(p);
  auto b = to_monomial(q);
  std::vector<T> c(static_cast<std::size_t>(std::max(a.n(), b.n())) + 1, T(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    c[i] += a[i];
  }
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) {
    c[i] += b[i];
  }
  return Polynomial<T>::monomial(std::move(c));
}

template <class T>
Polynomial<T> subtract(const Polynomial<T>& p, const Polynomial<T>& q) {
  return add(p, scale(q, T(-1)));
}

/// Product by monomial convolution. Two Bernstein operands yield
/// bernstein(n1+n2); anything else yields a monomial result.
template <class T>
Polynomial<T> multiply(const Polynomial<T>& p, const Polynomial<T>& q,
                       int degree_cap = kDefaultDegreeCap) {
  auto a = to_monomial(p);
  auto b = to_monomial(q);
  detail::check_cap<T>(a.n() + b.n(), degree_cap);
  std::vector<T> c(static_cast<std::size_t>(a.n() + b.n()) + 1, T(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a[i] == T(0)) {
      continue;
    }
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      c[i + j] += a[i] * b[j];
    }
  }
  auto out = Polynomial<T>::monomial(std::move(c));
  if (p.basis() == Basis::bernstein && q.basis() == Basis::bernstein) {
    return to_bernstein(out, p.n() + q.n());
  }
  return out;
}

template <class T>
Polynomial<T> power(const Polynomial<T>& p, int exponent, int degree_cap = kDefaultDegreeCap) {
  auto result = Polynomial<T>::constant(T(1));
  auto base = to_monomial(p);
  detail::check_cap<T>(exponent * degree(base), degree_cap);
  while (exponent > 0) {
    if (exponent & 1) {
      result = multiply(result, base, degree_cap);
    }
    exponent >>= 1;
    if (exponent > 0) {
      base = multiply(base, base, degree_cap);
    }
  }
  return result;
}

/// nu-th derivative, kept in the input basis.
template <class T>
Polynomial<T> differentiate(const Polynomial<T>& p, int nu = 1) {
  Polynomial<T> cur = p;
  for (int step = 0; step < nu; ++step) {
    const auto& c = cur.coeffs();
    const int n = cur.n();
    if (n == 0) {
      return {cur.basis(), {T(0)}};
    }
    std::vector<T> d(static_cast<std::size_t>(n));
    if (cur.basis() == Basis::monomial) {
      for (int i = 1; i <= n; ++i) {
        d[static_cast<std::size_t>(i) - 1] = T(i) * c[static_cast<std::size_t>(i)];
      }
    } else {
      for (int i = 0; i < n; ++i) {
        d[static_cast<std::size_t>(i)] =
            T(n) * (c[static_cast<std::size_t>(i) + 1] - c[static_cast<std::size_t>(i)]);
      }
    }
    cur = Polynomial<T>(cur.basis(), std::move(d));
  }
  return cur;
}

/// The antiderivative vanishing at 0.
template <class T>
Polynomial<T> antidifferentiate_from_zero(const Polynomial<T>& p) {
  const auto& c = p.coeffs();
  const int n = p.n();
  std::vector<T> out(static_cast<std::size_t>(n) + 2, T(0));
  if (p.basis() == Basis::monomial) {
    for (int i = 0; i <= n; ++i) {
      out[static_cast<std::size_t>(i) + 1] = c[static_cast<std::size_t>(i)] / T(i + 1);
    }
  } else {
    for (int i = 0; i <= n; ++i) {
      out[static_cast<std::size_t>(i) + 1] =
          out[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(i)] / T(n + 1);
    }
  }
  return {p.basis(), std::move(out)};
}

template <class T>
T integrate_01(const Polynomial<T>& p) {
  const auto& c = p.coeffs();
  T sum(0);
  if (p.basis() == Basis::monomial) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      sum += c[i] / T(static_cast<long>(i) + 1);
    }
    return sum;
  }
  for (const auto& v : c) {
    sum += v;
  }
  return sum / T(p.n() + 1);
}

template <class U, class T>
Polynomial<U> polynomial_cast(const Polynomial<T>& p) {
  std::vector<U> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) {
    c.push_back(scalar_cast<U>(v));
  }
  return {p.basis(), std::move(c)};
}

/// {"basis":"monomial"|"bernstein","n":int,"coeffs":[strings]}.
template <class T>
nlohmann::json to_json(const Polynomial<T>& p) {
  nlohmann::json j;
  j["basis"] = p.basis() == Basis::monomial ? "monomial" : "bernstein";
  j["n"] = p.n();
  auto arr = nlohmann::json::array();
  for (const auto& v : p.coeffs()) {
    arr.push_back(format_scalar(v));
  }
  j["coeffs"] = std::move(arr);
  return j;
}

template <class T>
Polynomial<T> polynomial_from_json(const nlohmann::json& j) {
  const std::string basis = j.at("basis").get<std::string>();
  std::vector<T> c;
  for (const auto& v : j.at("coeffs")) {
    c.push_back(v.is_string() ? parse_scalar<T>(v.get<std::string>())
                              : parse_scalar<T>(v.dump()));
  }
  if (j.contains("n") && j.at("n").get<int>() + 1 != static_cast<int>(c.size())) {
    throw DegreeError("polynomial JSON: n does not match coefficient count");
  }
  if (basis == "monomial") {
    return Polynomial<T>::monomial(std::move(c));
  }
  if (basis == "bernstein") {
    return Polynomial<T>::bernstein(std::move(c));
  }
  throw DomainError("polynomial JSON: unknown basis '" + basis + "'");
}

}  // namespace shapeapprox
