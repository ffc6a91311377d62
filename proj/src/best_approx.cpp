#include "shapeapprox/best_approx.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "shapeapprox/shape.hpp"
#include "shapeapprox/simplex.hpp"
#include "shapeapprox/special.hpp"

namespace shapeapprox {

namespace {

// Rows s = 0..q of d^s/dx^s T_j(2x-1), j = 0..n.
template <class T = double>
std::vector<std::vector<T>> chebyshev_derivatives(int n, int q, double x) {
  const T u = T(2) * T(x) - T(1);
  std::vector<std::vector<T>> D(static_cast<std::size_t>(q) + 1,
                                std::vector<T>(static_cast<std::size_t>(n) + 1, T(0)));
  for (int s = 0; s <= q; ++s) {
    auto& row = D[static_cast<std::size_t>(s)];
    for (int j = 0; j <= n; ++j) {
      T v;
      if (j == 0) {
        v = T(s == 0 ? 1 : 0);
      } else if (j == 1) {
        v = s == 0 ? u : T(s == 1 ? 1 : 0);
      } else {
        // T_j^(s) = 2s T_{j-1}^(s-1) + 2u T_{j-1}^(s) - T_{j-2}^(s), in the variable u
        v = T(2) * u * row[static_cast<std::size_t>(j) - 1] - row[static_cast<std::size_t>(j) - 2];
        if (s > 0) {
          v += T(2 * s) * D[static_cast<std::size_t>(s) - 1][static_cast<std::size_t>(j) - 1];
        }
      }
      row[static_cast<std::size_t>(j)] = v;
    }
  }
  // chain rule du/dx = 2
  for (int s = 1; s <= q; ++s) {
    const T f(std::ldexp(1.0, s));
    for (auto& v : D[static_cast<std::size_t>(s)]) {
      v *= f;
    }
  }
  return D;
}

// Exact Bernstein(n) coefficients of p = sum c_j T_j(2x-1).
Polynomial<BigFloat> chebyshev_to_bernstein(const std::vector<BigFloat>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<BigFloat> acc(static_cast<std::size_t>(n) + 1, BigFloat(0));
  for (int j = 0; j <= n; ++j) {
    if (c[static_cast<std::size_t>(j)] == 0) {
      continue;
    }
    std::vector<Rational> b(static_cast<std::size_t>(j) + 1);
    for (int k = 0; k <= j; ++k) {
      Rational v = binomial<Rational>(2 * j, 2 * k) / binomial<Rational>(j, k);
      b[static_cast<std::size_t>(k)] = (j - k) % 2 == 0 ? v : Rational(-v);
    }
    const auto e = elevate(Polynomial<Rational>::bernstein(std::move(b)), n);
    const BigFloat& cj = c[static_cast<std::size_t>(j)];
    for (int k = 0; k <= n; ++k) {
      acc[static_cast<std::size_t>(k)] += cj * BigFloat(e[static_cast<std::size_t>(k)]);
    }
  }
  return Polynomial<BigFloat>::bernstein(std::move(acc));
}

// Re-solves the active rows (node rows 0..2N-1, then shape rows) at 256 bits.
// Returns the Chebyshev coefficients followed by the level t.
std::vector<BigFloat> refine_active(const Eigen::VectorXi& active, const std::vector<double>& xs,
                                    const std::vector<double>& fx, const std::vector<double>& ys, int n, int q,
                                    int N) {
  using Mat = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<BigFloat, Eigen::Dynamic, 1>;
  PrecisionScope scope(256);
  const int vars = n + 2;
  Mat A(vars, vars);
  Vec b(vars);
  for (int i = 0; i < vars; ++i) {
    const int row = active(i);
    if (row < 2 * N) {
      const auto node = static_cast<std::size_t>(row / 2);
      const BigFloat sign(row % 2 == 0 ? 1 : -1);
      const auto D = chebyshev_derivatives<BigFloat>(n, 0, xs[node]);
      for (int j = 0; j <= n; ++j) {
        A(i, j) = sign * D[0][static_cast<std::size_t>(j)];
      }
      A(i, n + 1) = BigFloat(-1);
      b(i) = sign * BigFloat(fx[node]);
    } else {
      const auto D = chebyshev_derivatives<BigFloat>(n, q, ys[static_cast<std::size_t>(row - 2 * N)]);
      for (int j = 0; j <= n; ++j) {
        A(i, j) = -D[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
      }
      A(i, n + 1) = BigFloat(0);
      b(i) = BigFloat(0);
    }
  }
  const Vec z = A.fullPivLu().solve(b);
  return std::vector<BigFloat>(z.data(), z.data() + vars);
}

struct Solved {
  ApproxResult res;
  Polynomial<BigFloat> big = Polynomial<BigFloat>::bernstein({BigFloat(0)});
};

// Shape rows are divided by their own max entry when shape_scale is 0, else by
// shape_scale (an estimate of max |p^(q)|).
Solved solve(const RealFunction& f, int q, int n, int N, const std::vector<double>& ys,
             double shape_scale = 0) {
  if (n < 0) {
    throw DomainError("best approximation requires n >= 0");
  }
  if (N < 4 * (n + 1)) {
    throw DomainError("discretization N must be at least 4(n+1)");
  }
  const auto xs = chebyshev_nodes01(N);
  std::vector<double> fx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fx[i] = f(xs[i]);
    if (!std::isfinite(fx[i])) {
      throw DomainError("function value not finite at x = " + std::to_string(xs[i]));
    }
  }
  const int vars = n + 2;
  std::vector<std::vector<double>> shape_rows;
  std::vector<double> shape_ys;
  if (q >= 0 && (q == 0 || q <= n)) {
    for (double y : ys) {
      auto D = chebyshev_derivatives(n, q, y);
      auto& row = D[static_cast<std::size_t>(q)];
      double mx = 0;
      for (double v : row) mx = std::max(mx, std::abs(v));
      if (mx == 0) continue;
      const double div = shape_scale > 0 ? shape_scale : mx;
      for (auto& v : row) v /= div;
      shape_rows.push_back(row);
      shape_ys.push_back(y);
    }
  }
  const int rows = 2 * N + static_cast<int>(shape_rows.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(rows, vars);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(rows);
  for (int i = 0; i < N; ++i) {
    const auto D = chebyshev_derivatives(n, 0, xs[static_cast<std::size_t>(i)]);
    for (int j = 0; j <= n; ++j) {
      G(2 * i, j) = D[0][static_cast<std::size_t>(j)];
      G(2 * i + 1, j) = -D[0][static_cast<std::size_t>(j)];
    }
    G(2 * i, n + 1) = -1;
    G(2 * i + 1, n + 1) = -1;
    h(2 * i) = fx[static_cast<std::size_t>(i)];
    h(2 * i + 1) = -fx[static_cast<std::size_t>(i)];
  }
  for (std::size_t r = 0; r < shape_rows.size(); ++r) {
    for (int j = 0; j <= n; ++j) {
      G(2 * N + static_cast<int>(r), j) = -shape_rows[r][static_cast<std::size_t>(j)];
    }
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(vars);
  c(n + 1) = -1;
  const auto sol = simplex_free_inequality(G, h, c);

  ApproxResult res;
  res.n = n;
  res.q = q;
  res.discretization = N;
  res.constraint_grid = q >= 0 ? static_cast<int>(ys.size()) : 0;
  res.iterations = sol.iterations;
  const auto cheb = refine_active(sol.basis, xs, fx, shape_ys, n, q, N);
  res.lp_value = static_cast<double>(cheb.back());
  for (int j = 0; j <= n; ++j) {
    res.chebyshev.push_back(static_cast<double>(cheb[static_cast<std::size_t>(j)]));
  }
  double err = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    err = std::max(err, std::abs(fx[i] - chebyshev_eval01(res.chebyshev, xs[i])));
  }
  res.error = err;
  Solved out{res, chebyshev_to_bernstein({cheb.begin(), cheb.begin() + n + 1})};
  out.res.p = polynomial_cast<double>(out.big);
  out.res.p_big = out.big;
  return out;
}

// Local minima of p^(q) below -tol on a uniform grid, tol = 1e-9 max |p^(q)|.
std::vector<double> shape_violations(const Polynomial<BigFloat>& p, int q, int grid, double& mx) {
  const auto d = polynomial_cast<double>(differentiate(p, q));
  std::vector<double> v(static_cast<std::size_t>(grid));
  mx = 0;
  for (int i = 0; i < grid; ++i) {
    v[static_cast<std::size_t>(i)] = eval(d, static_cast<double>(i) / (grid - 1));
    mx = std::max(mx, std::abs(v[static_cast<std::size_t>(i)]));
  }
  std::vector<double> out;
  for (int i = 0; i < grid; ++i) {
    const double here = v[static_cast<std::size_t>(i)];
    const bool left = i == 0 || here <= v[static_cast<std::size_t>(i) - 1];
    const bool right = i == grid - 1 || here <= v[static_cast<std::size_t>(i) + 1];
    if (here < -1e-9 * mx && left && right) {
      out.push_back(static_cast<double>(i) / (grid - 1));
    }
  }
  return out;
}

}  // namespace

std::vector<double> chebyshev_nodes01(int N) {
  if (N < 2) {
    throw DomainError("need at least two Chebyshev nodes");
  }
  const double pi = boost::math::constants::pi<double>();
  std::vector<double> x(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    x[static_cast<std::size_t>(i)] = 0.5 * (1 - std::cos(pi * i / (N - 1)));
  }
  x.front() = 0.0;
  x.back() = 1.0;
  return x;
}

double chebyshev_eval01(const std::vector<double>& c, double x) {
  const double u = 2 * x - 1;
  double b1 = 0, b2 = 0;
  for (std::size_t j = c.size(); j-- > 1;) {
    const double b0 = 2 * u * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + (c.empty() ? 0.0 : c[0]);
}

ApproxResult best_uniform(const RealFunction& f, int n, int N) { return solve(f, -1, n, N, {}).res; }

ApproxResult best_uniform(const FunctionHandle& f, int n, int N) {
  return best_uniform(RealFunction([&f](double x) { return f(x); }), n, N);
}

ApproxResult best_qmonotone(const RealFunction& f, int q, int n, int N, int M) {
  if (q < 0) {
    throw DomainError("best_qmonotone requires q >= 0");
  }
  const bool input_ok = check_k_monotone_fn(f, q).pass;
  auto ys = chebyshev_nodes01(M);
  constexpr int kRounds = 12;
  constexpr int kGrid = 4096;
  Solved s = solve(f, q, n, N, ys);
  bool ok = q > n && q > 0;
  for (int round = 0; !ok; ++round) {
    double scale = 0;
    const auto bad = shape_violations(s.big, q, kGrid, scale);
    if (bad.empty()) {
      ok = true;
    } else if (round == kRounds) {
      break;
    } else {
      ys.insert(ys.end(), bad.begin(), bad.end());
      s = solve(f, q, n, N, ys, scale);
    }
  }
  s.res.validated = ok;
  s.res.input_shape_ok = input_ok;
  return s.res;
}

ApproxResult best_qmonotone(const FunctionHandle& f, int q, int n, int N, int M) {
  return best_qmonotone(RealFunction([&f](double x) { return f(x); }), q, n, N, M);
}

int equioscillation_count(const RealFunction& f, const ApproxResult& r, double rel) {
  const auto xs = chebyshev_nodes01(r.discretization);
  int count = 0;
  int last = 0;
  for (double x : xs) {
    const double e = f(x) - chebyshev_eval01(r.chebyshev, x);
    if (std::abs(e) >= (1 - rel) * r.error && r.error > 0) {
      const int s = e > 0 ? 1 : -1;
      if (s != last) {
        ++count;
        last = s;
      }
    }
  }
  return count;
}

int equioscillation_count(const FunctionHandle& f, const ApproxResult& r, double rel) {
  return equioscillation_count(RealFunction([&f](double x) { return f(x); }), r, rel);
}

JacksonResult jackson_ratio(const FunctionHandle& f, int q, int n, int N, int M) {
  if (n < 1) {
    throw DomainError("jackson_ratio requires n >= 1");
  }
  JacksonResult jr;
  jr.n = n;
  jr.q = q;
  const auto best = best_qmonotone(f, q, n, N, M);
  jr.error = best.error;
  jr.validated = best.validated;
  jr.omega = omega_dt(f, 2, 1.0, 1.0 / n).value;
  if (jr.omega <= 1e-14) {
    if (jr.error <= 1e-12) {
      jr.ratio = 0;
      return jr;
    }
    throw DomainError("jackson_ratio: modulus vanishes but error does not");
  }
  jr.ratio = jr.error / jr.omega;
  return jr;
}

}  // namespace shapeapprox
