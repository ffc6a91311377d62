#pragma once

#include <functional>
#include <limits>

#include "shapeapprox/function.hpp"

namespace shapeapprox {

using RealFunction = std::function<double(double)>;

/// phi^lambda(x) = (x(1-x))^(lambda/2).
struct StepWeight {
  double lambda = 1.0;
  double operator()(double x) const;
};

/// k-th symmetric difference sum_i (-1)^(k-i) C(k,i) f(x - k delta/2 + i delta);
/// 0 when the stencil leaves [0,1].
double sym_diff(const RealFunction& f, int k, double delta, double x);
double sym_diff(const FunctionHandle& f, int k, double delta, double x);

struct ModulusGrid {
  int h_points = 64;     // t 2^(-j/4), j = 0..h_points-1
  int x_points = 1025;   // Chebyshev-Lobatto on [0,1]
  bool anchored = true;  // add, per h, the x where the stencil touches 0 (and its mirror)
};

/// A lower approximation of omega_k^{phi^lambda}(f, t): the max of
/// |Delta^k_{h phi^lambda(x)}(f, x)| over the h and x grids.
struct ModulusEstimate {
  int k = 2;
  double lambda = 0;
  double t = 0;
  double value = 0;
  int h_grid_size = 0;
  int x_grid_size = 0;
  double argmax_h = 0;
  double argmax_x = 0;
};

ModulusEstimate omega_dt(const RealFunction& f, int k, double lambda, double t, const ModulusGrid& g = {});
ModulusEstimate omega_dt(const FunctionHandle& f, int k, double lambda, double t, const ModulusGrid& g = {});
/// Classical modulus, the lambda = 0 case on identical grids.
ModulusEstimate omega(const RealFunction& f, int k, double t, const ModulusGrid& g = {});
ModulusEstimate omega(const FunctionHandle& f, int k, double t, const ModulusGrid& g = {});

enum class EnvelopeKind { theorem_1_1, cor_1_3, delta_n_lambda, bernstein_gamma };

EnvelopeKind parse_envelope_kind(std::string_view s);

/// Right-hand sides without the unknown constant:
///   theorem_1_1:     1 + phi^(2-l) / (h^2 n^2 (phi + 1/n)^l)
///   cor_1_3:         n^-1 phi^(1-l/2) (phi + 1/n)^(-l/2)
///   delta_n_lambda:  (phi/n)^(1-l/2) near the ends (x or 1-x <= n^-2), else phi^(1-l)/n
///   bernstein_gamma: n^-1/2 phi^(1-l/2) (phi + n^-1/2)^(-l/2)
/// Throws DomainError for lambda outside [0,2).
double bound_envelope(EnvelopeKind kind, int n, double lambda, double x,
                      double h = std::numeric_limits<double>::infinity());

}  // namespace shapeapprox
