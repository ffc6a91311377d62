#include "shapeapprox/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <boost/math/constants/constants.hpp>

namespace shapeapprox {

namespace {

// Jacobi P_n^(a,a)(u) and its derivative by the three-term recurrence.
template <class T>
std::pair<T, T> jacobi_value_and_derivative(int n, const T& a, const T& u) {
  T p0(1);
  T p1 = (T(2) * a + T(2)) * u / T(2);
  if (n == 0) {
    return {p0, T(0)};
  }
  for (int k = 2; k <= n; ++k) {
    const T two_k_ab = T(2 * k) + T(2) * a;
    const T c1 = T(2 * k) * (T(k) + T(2) * a) * (two_k_ab - T(2));
    const T c2 = (two_k_ab - T(1)) * two_k_ab * (two_k_ab - T(2));
    const T c3 = T(2) * (T(k - 1) + a) * (T(k - 1) + a) * two_k_ab;
    T p2 = (c2 * u * p1 - c3 * p0) / c1;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  // (2n+2a)(1-u^2) P_n' = n[-(2n+2a)u] P_n + 2(n+a)^2 P_{n-1}
  const T two_n_ab = T(2 * n) + T(2) * a;
  const T deriv = (T(-n) * two_n_ab * u * p1 + T(2) * (T(n) + a) * (T(n) + a) * p0) /
                  (two_n_ab * (T(1) - u * u));
  return {p1, deriv};
}

// Roots of P_n^(a,a) on (-1,1) in double, descending, Newton with deflation.
std::vector<double> jacobi_roots_double(int n, double a) {
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(n));
  const double pi = boost::math::constants::pi<double>();
  for (int k = 0; k < n; ++k) {
    double z = std::cos(pi * (k + 0.75 + 0.5 * a) / (n + 0.5 + a));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = jacobi_value_and_derivative<double>(n, a, z);
      double defl = 0;
      for (double r : roots) {
        defl += 1.0 / (z - r);
      }
      const double step = p / (dp - p * defl);
      z -= step;
      if (std::abs(step) < 1e-15) {
        break;
      }
    }
    roots.push_back(z);
  }
  return roots;
}

template <class T>
T weight_constant(int n, double alpha);

template <>
double weight_constant<double>(int n, double a) {
  return std::exp(2 * std::lgamma(n + a + 1) - std::lgamma(n + 2 * a + 1) - std::lgamma(n + 1.0));
}

template <>
BigFloat weight_constant<BigFloat>(int n, double a) {
  using boost::multiprecision::tgamma;
  const BigFloat ab(a);
  const BigFloat g1 = tgamma(BigFloat(BigFloat(n + 1) + ab));
  return BigFloat(g1 * g1 / (tgamma(BigFloat(BigFloat(n + 1) + BigFloat(2) * ab)) *
                             tgamma(BigFloat(n + 1))));
}

template <class T>
QuadratureRule<T> build_rule(int order, double alpha) {
  const auto guesses = jacobi_roots_double(order, alpha);
  const T a(alpha);
  // 2^(2a+1) of the [-1,1] rule cancels under t = (1+u)/2.
  const T scale = weight_constant<T>(order, alpha);
  QuadratureRule<T> rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int polish = std::is_same_v<T, double> ? 2 : 8;
  for (int k = 0; k < order; ++k) {
    T u(guesses[static_cast<std::size_t>(k)]);
    for (int it = 0; it < polish; ++it) {
      auto [p, dp] = jacobi_value_and_derivative<T>(order, a, u);
      u -= p / dp;
    }
    auto [p, dp] = jacobi_value_and_derivative<T>(order, a, u);
    (void)p;
    const std::size_t idx = static_cast<std::size_t>(order - 1 - k);
    rule.nodes[idx] = (T(1) + u) / T(2);
    rule.weights[idx] = scale / ((T(1) - u * u) * dp * dp);
  }
  return rule;
}

template <class T>
struct RuleCache {
  std::mutex mutex;
  std::map<std::tuple<int, double, unsigned>, QuadratureRule<T>> rules;
};

template <class T>
RuleCache<T>& cache() {
  static RuleCache<T> c;
  return c;
}

template <class T>
unsigned precision_key() {
  if constexpr (std::is_same_v<T, BigFloat>) {
    return current_precision_bits();
  } else {
    return 53;
  }
}

}  // namespace

template <class T>
const QuadratureRule<T>& gauss_jacobi01(int order, double alpha) {
  if (order < 1) {
    throw DomainError("quadrature order must be positive");
  }
  if (!(alpha > -1)) {
    throw DomainError("Gauss-Jacobi requires alpha > -1");
  }
  auto& c = cache<T>();
  const auto key = std::make_tuple(order, alpha, precision_key<T>());
  std::lock_guard<std::mutex> lock(c.mutex);
  auto it = c.rules.find(key);
  if (it == c.rules.end()) {
    it = c.rules.emplace(key, build_rule<T>(order, alpha)).first;
  }
  return it->second;
}

template <class T>
QuadratureRule<T> adapted_rule(const FunctionHandle& f, int order) {
  std::vector<double> edges{0.0};
  for (double b : f.breakpoints()) {
    if (b > edges.back() && b < 1.0) {
      edges.push_back(b);
    }
  }
  edges.push_back(1.0);

  std::vector<std::pair<T, T>> panels;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const T lo(edges[i]);
    const T hi(edges[i + 1]);
    if (i == 0 && f.singular_at_zero()) {
      constexpr int kLevels = 48;
      T right = hi;
      for (int level = 0; level < kLevels; ++level) {
        T left = right / T(2);
        panels.emplace_back(left, right);
        right = left;
      }
      panels.emplace_back(T(0), right);
    } else {
      panels.emplace_back(lo, hi);
    }
  }

  const auto& base = gauss_jacobi01<T>(order, 0.0);
  QuadratureRule<T> out;
  out.nodes.reserve(panels.size() * base.nodes.size());
  out.weights.reserve(panels.size() * base.nodes.size());
  for (const auto& [lo, hi] : panels) {
    const T width = hi - lo;
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
      out.nodes.push_back(lo + width * base.nodes[i]);
      out.weights.push_back(width * base.weights[i]);
    }
  }
  return out;
}

template <class T>
std::vector<T> bernstein_basis_values(int n, const T& t) {
  std::vector<T> out(static_cast<std::size_t>(n) + 1, T(0));
  if (t <= T(0)) {
    out.front() = T(1);
    return out;
  }
  if (t >= T(1)) {
    out.back() = T(1);
    return out;
  }
  if constexpr (std::is_same_v<T, double>) {
    const double lt = std::log(t);
    const double l1t = std::log1p(-t);
    const double lgn = std::lgamma(n + 1.0);
    for (int k = 0; k <= n; ++k) {
      const double lc = lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      out[static_cast<std::size_t>(k)] = std::exp(lc + k * lt + (n - k) * l1t);
    }
  } else {
    const T s = T(1) - t;
    std::vector<T> tp(static_cast<std::size_t>(n) + 1), sp(static_cast<std::size_t>(n) + 1);
    tp[0] = T(1);
    sp[0] = T(1);
    for (int k = 1; k <= n; ++k) {
      tp[static_cast<std::size_t>(k)] = tp[static_cast<std::size_t>(k) - 1] * t;
      sp[static_cast<std::size_t>(k)] = sp[static_cast<std::size_t>(k) - 1] * s;
    }
    T c(1);
    for (int k = 0; k <= n; ++k) {
      if (k > 0) {
        c = c * T(n - k + 1) / T(k);
      }
      out[static_cast<std::size_t>(k)] =
          c * tp[static_cast<std::size_t>(k)] * sp[static_cast<std::size_t>(n - k)];
    }
  }
  return out;
}

template const QuadratureRule<double>& gauss_jacobi01<double>(int, double);
template const QuadratureRule<BigFloat>& gauss_jacobi01<BigFloat>(int, double);
template QuadratureRule<double> adapted_rule<double>(const FunctionHandle&, int);
template QuadratureRule<BigFloat> adapted_rule<BigFloat>(const FunctionHandle&, int);
template std::vector<double> bernstein_basis_values<double>(int, const double&);
template std::vector<BigFloat> bernstein_basis_values<BigFloat>(int, const BigFloat&);
template std::vector<Rational> bernstein_basis_values<Rational>(int, const Rational&);

}  // namespace shapeapprox
