#pragma once

#include <vector>

#include "shapeapprox/moduli.hpp"

namespace shapeapprox {

/// Discrete minimax approximant of degree n. p is kept both as Chebyshev
/// coefficients in T_j(2x-1) (what the LP solves for) and in Bernstein form.
/// The LP picks the active rows in double; the point itself is re-solved from
/// those rows at 256 bits.
struct ApproxResult {
  int n = 0;
  int q = -1;  // -1: unconstrained
  std::vector<double> chebyshev;
  Polynomial<double> p = Polynomial<double>::bernstein({0.0});
  Polynomial<BigFloat> p_big = Polynomial<BigFloat>::bernstein({BigFloat(0)});  // 256-bit
  double error = 0;     // max |f - p| over the discretization nodes
  double lp_value = 0;  // the LP's own t
  int discretization = 0;
  int constraint_grid = 0;
  int iterations = 0;
  bool validated = true;       // shape post-validation of p passed
  bool input_shape_ok = true;  // f passed check_k_monotone_fn at order q
};

/// Chebyshev-Lobatto nodes (1 - cos(pi i/(N-1)))/2, endpoints included.
std::vector<double> chebyshev_nodes01(int N);

/// p(x) = sum c_j T_j(2x-1) by Clenshaw.
double chebyshev_eval01(const std::vector<double>& c, double x);

/// Requires N >= 4(n+1). Throws SolverError on solver failure.
ApproxResult best_uniform(const RealFunction& f, int n, int N = 257);
ApproxResult best_uniform(const FunctionHandle& f, int n, int N = 257);

/// Adds p^(q)(y_j) >= 0 (p(y_j) >= 0 for q = 0) on M Chebyshev nodes. Local
/// minima of p^(q) below -1e-9 max|p^(q)| on a 4096-point grid are added as
/// further constraints and the LP re-solved, for at most 12 rounds;
/// validated reports whether the last solution was clean.
ApproxResult best_qmonotone(const RealFunction& f, int q, int n, int N = 257, int M = 257);
ApproxResult best_qmonotone(const FunctionHandle& f, int q, int n, int N = 257, int M = 257);

/// Number of alternating near-extrema of f - p on the discretization nodes:
/// points with |f - p| >= (1 - rel) error, consecutive equal signs merged.
int equioscillation_count(const RealFunction& f, const ApproxResult& r, double rel = 0.01);
int equioscillation_count(const FunctionHandle& f, const ApproxResult& r, double rel = 0.01);

struct JacksonResult {
  int n = 0;
  int q = 0;
  double error = 0;  // E_n^(q)(f)
  double omega = 0;  // omega_2^phi(f, 1/n)
  double ratio = 0;
  bool validated = true;
};

/// E_n^(q)(f) / omega_2^phi(f, 1/n); 0 when both vanish, DomainError when
/// only the modulus does.
JacksonResult jackson_ratio(const FunctionHandle& f, int q, int n, int N = 257, int M = 257);

}  // namespace shapeapprox
