#pragma once

#include <vector>

#include "shapeapprox/function.hpp"

namespace shapeapprox {

/// Nodes and weights on [0,1] for the weight t^alpha (1-t)^alpha.
template <class T>
struct QuadratureRule {
  std::vector<T> nodes;
  std::vector<T> weights;
};

/// Gauss-Jacobi rule of the given order with symmetric exponent alpha > -1
/// (alpha = 0 gives Gauss-Legendre). Exact for polynomials of degree
/// 2*order-1 against the weight. Rules are cached per (order, alpha, precision)
/// behind a mutex.
template <class T>
const QuadratureRule<T>& gauss_jacobi01(int order, double alpha);

/// Unweighted composite rule adapted to f: Gauss-Legendre panels split at the
/// breakpoints of f, plus dyadic grading towards 0 when f is singular there.
/// Exact for piecewise polynomials of degree < 2*order between breakpoints.
template <class T>
QuadratureRule<T> adapted_rule(const FunctionHandle& f, int order);

/// Values p_{n,k}(t) for k = 0..n.
template <class T>
std::vector<T> bernstein_basis_values(int n, const T& t);

}  // namespace shapeapprox
