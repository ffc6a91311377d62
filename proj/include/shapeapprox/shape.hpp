#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "shapeapprox/moduli.hpp"

namespace shapeapprox {

/// Verdict of a numerical k-monotonicity test. A failure carries a witness
/// (x, delta) with value < -tol; for polynomial checks delta is 0 and value
/// is p^(k)(x).
struct ShapeReport {
  int k = 0;
  bool pass = true;
  double witness_x = 0;
  double witness_delta = 0;
  double witness_value = 0;
  double min_value = 0;  // smallest tested value
  int x_grid_size = 0;
  int delta_grid_size = 0;
  double tol = 0;
  bool certificate = false;  // all Bernstein coefficients of p^(k) >= 0

  nlohmann::json to_json() const;
};

/// Samples Delta^k_delta(f, x) over x_grid uniform points and delta_grid
/// steps (1/k) 2^(-j/2), keeping only stencils inside [0,1]. Default tol is
/// 1e-9 times the grid sup norm of f.
ShapeReport check_k_monotone_fn(const RealFunction& f, int k, int x_grid = 513, int delta_grid = 32,
                                std::optional<double> tol = std::nullopt);
ShapeReport check_k_monotone_fn(const FunctionHandle& f, int k, int x_grid = 513, int delta_grid = 32,
                                std::optional<double> tol = std::nullopt);

/// Sign of p^(k) on a uniform grid (p itself for k = 0), plus the Bernstein
/// coefficient certificate, which passes without sampling caveats.
template <class T>
ShapeReport check_k_monotone_poly(const Polynomial<T>& p, int k, std::optional<double> tol = std::nullopt,
                                  int grid = 4096);

}  // namespace shapeapprox
