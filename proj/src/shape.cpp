#include "shapeapprox/shape.hpp"

#include <cmath>

namespace shapeapprox {

nlohmann::json ShapeReport::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["verdict"] = pass ? "pass" : "fail";
  if (!pass) {
    j["witness"] = {{"x", witness_x}, {"delta", witness_delta}, {"value", witness_value}};
  }
  j["min_value"] = min_value;
  j["x_grid_size"] = x_grid_size;
  j["delta_grid_size"] = delta_grid_size;
  j["tol"] = tol;
  j["bernstein_certificate"] = certificate;
  return j;
}

ShapeReport check_k_monotone_fn(const RealFunction& f, int k, int x_grid, int delta_grid,
                                std::optional<double> tol) {
  if (k < 0) {
    throw DomainError("shape check requires k >= 0");
  }
  if (x_grid < 2 || delta_grid < 1) {
    throw DomainError("shape check grids too small");
  }
  ShapeReport rep;
  rep.k = k;
  rep.x_grid_size = x_grid;
  rep.delta_grid_size = k == 0 ? 0 : delta_grid;
  std::vector<double> xs(static_cast<std::size_t>(x_grid));
  double norm = 0;
  for (int i = 0; i < x_grid; ++i) {
    xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (x_grid - 1);
    norm = std::max(norm, std::abs(f(xs[static_cast<std::size_t>(i)])));
  }
  rep.tol = tol ? *tol : 1e-9 * norm;
  rep.min_value = std::numeric_limits<double>::infinity();
  auto record = [&](double x, double delta, double v) {
    if (v < rep.min_value) {
      rep.min_value = v;
      if (v < -rep.tol) {
        rep.pass = false;
        rep.witness_x = x;
        rep.witness_delta = delta;
        rep.witness_value = v;
      }
    }
  };
  if (k == 0) {
    for (double x : xs) {
      record(x, 0.0, f(x));
    }
    return rep;
  }
  for (int j = 0; j < delta_grid; ++j) {
    const double delta = std::exp2(-0.5 * j) / k;
    for (double x : xs) {
      const double half = 0.5 * k * delta;
      if (x - half < 0 || x + half > 1) {
        continue;
      }
      record(x, delta, sym_diff(f, k, delta, x));
    }
  }
  return rep;
}

ShapeReport check_k_monotone_fn(const FunctionHandle& f, int k, int x_grid, int delta_grid,
                                std::optional<double> tol) {
  return check_k_monotone_fn(RealFunction([&f](double y) { return f(y); }), k, x_grid, delta_grid, tol);
}

template <class T>
ShapeReport check_k_monotone_poly(const Polynomial<T>& p, int k, std::optional<double> tol, int grid) {
  if (k < 0) {
    throw DomainError("shape check requires k >= 0");
  }
  if (grid < 2) {
    throw DomainError("shape check grid too small");
  }
  const auto bern = p.basis() == Basis::bernstein ? p : to_bernstein(p, std::max(p.n(), 0));
  const auto d = differentiate(bern, k);
  ShapeReport rep;
  rep.k = k;
  rep.x_grid_size = grid;
  rep.certificate = true;
  for (const auto& c : d.coeffs()) {
    if (c < T(0)) {
      rep.certificate = false;
      break;
    }
  }
  const auto pd = polynomial_cast<double>(bern);
  const auto dd = polynomial_cast<double>(d);
  double norm = 0;
  std::vector<double> xs(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (grid - 1);
    norm = std::max(norm, std::abs(eval(pd, xs[static_cast<std::size_t>(i)])));
  }
  rep.tol = tol ? *tol : 1e-9 * norm;
  rep.min_value = std::numeric_limits<double>::infinity();
  bool sampled_ok = true;
  for (double x : xs) {
    const double v = eval(dd, x);
    if (v < rep.min_value) {
      rep.min_value = v;
      if (v < -rep.tol) {
        sampled_ok = false;
        rep.witness_x = x;
        rep.witness_value = v;
      }
    }
  }
  rep.pass = rep.certificate || sampled_ok;
  return rep;
}

template ShapeReport check_k_monotone_poly<double>(const Polynomial<double>&, int, std::optional<double>, int);
template ShapeReport check_k_monotone_poly<BigFloat>(const Polynomial<BigFloat>&, int, std::optional<double>, int);
template ShapeReport check_k_monotone_poly<Rational>(const Polynomial<Rational>&, int, std::optional<double>, int);

}  // namespace shapeapprox
