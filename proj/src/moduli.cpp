#include "shapeapprox/moduli.hpp"

#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "shapeapprox/special.hpp"

namespace shapeapprox {

namespace {

constexpr double kEdgeSlack = 1e-13;

std::vector<double> lobatto_grid(int m) {
  const double pi = boost::math::constants::pi<double>();
  std::vector<double> x(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    x[static_cast<std::size_t>(i)] = m == 1 ? 0.5 : 0.5 * (1 - std::cos(pi * i / (m - 1)));
  }
  return x;
}

std::vector<double> binomial_row(int k) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) {
    c[static_cast<std::size_t>(i)] = binomial<double>(k, i);
  }
  return c;
}

// Delta^k with an explicit step, using a precomputed binomial row.
double difference(const RealFunction& f, const std::vector<double>& c, double step, double x) {
  const int k = static_cast<int>(c.size()) - 1;
  double left = x - 0.5 * k * step;
  double right = x + 0.5 * k * step;
  if (left < -kEdgeSlack || right > 1 + kEdgeSlack) {
    return 0.0;
  }
  double sum = 0;
  for (int i = 0; i <= k; ++i) {
    double y = left + i * step;
    y = std::min(1.0, std::max(0.0, y));
    const double term = c[static_cast<std::size_t>(i)] * f(y);
    sum += (k - i) % 2 == 0 ? term : -term;
  }
  return sum;
}

// Smallest x in (0, 1/2] with x - (k/2) h phi^lambda(x) >= 0, if the
// equation changes sign there.
double anchor(int k, double h, double lambda) {
  const StepWeight w{lambda};
  auto g = [&](double x) { return x - 0.5 * k * h * w(x); };
  if (lambda == 0) {
    const double x = 0.5 * k * h;
    return x <= 0.5 ? x : -1;
  }
  double lo = 1e-300, hi = 0.5;
  if (g(hi) < 0 || g(lo) >= 0) {
    return -1;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
    if (hi - lo <= 1e-17 * hi) {
      break;
    }
  }
  return hi;
}

}  // namespace

double StepWeight::operator()(double x) const {
  if (lambda == 0) {
    return 1.0;
  }
  const double v = x * (1 - x);
  return v <= 0 ? 0.0 : std::pow(v, 0.5 * lambda);
}

double sym_diff(const RealFunction& f, int k, double delta, double x) {
  if (!(delta > 0)) {
    throw DomainError("sym_diff requires delta > 0");
  }
  if (k < 0) {
    throw DomainError("sym_diff requires k >= 0");
  }
  return difference(f, binomial_row(k), delta, x);
}

double sym_diff(const FunctionHandle& f, int k, double delta, double x) {
  return sym_diff(RealFunction([&f](double y) { return f(y); }), k, delta, x);
}

ModulusEstimate omega_dt(const RealFunction& f, int k, double lambda, double t, const ModulusGrid& g) {
  if (!(t > 0)) {
    throw DomainError("modulus requires t > 0");
  }
  if (lambda < 0 || lambda > 2) {
    throw DomainError("modulus requires lambda in [0,2]");
  }
  if (k < 1) {
    throw DomainError("modulus requires k >= 1");
  }
  ModulusEstimate est;
  est.k = k;
  est.lambda = lambda;
  est.t = t;
  est.h_grid_size = g.h_points;
  est.x_grid_size = g.x_points;
  const auto c = binomial_row(k);
  const StepWeight w{lambda};
  const auto xs = lobatto_grid(g.x_points);
  std::vector<double> wx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    wx[i] = w(xs[i]);
  }
  auto consider = [&](double h, double x, double wxv) {
    const double step = h * wxv;
    if (step <= 0) {
      return;
    }
    const double v = std::abs(difference(f, c, step, x));
    if (v > est.value) {
      est.value = v;
      est.argmax_h = h;
      est.argmax_x = x;
    }
  };
  for (int j = 0; j < g.h_points; ++j) {
    const double h = t * std::exp2(-0.25 * j);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      consider(h, xs[i], wx[i]);
    }
    if (g.anchored) {
      const double a = anchor(k, h, lambda);
      if (a > 0) {
        consider(h, a, w(a));
        consider(h, 1 - a, w(1 - a));
      }
    }
  }
  return est;
}

ModulusEstimate omega_dt(const FunctionHandle& f, int k, double lambda, double t, const ModulusGrid& g) {
  return omega_dt(RealFunction([&f](double y) { return f(y); }), k, lambda, t, g);
}

ModulusEstimate omega(const RealFunction& f, int k, double t, const ModulusGrid& g) {
  return omega_dt(f, k, 0.0, t, g);
}

ModulusEstimate omega(const FunctionHandle& f, int k, double t, const ModulusGrid& g) {
  return omega_dt(f, k, 0.0, t, g);
}

EnvelopeKind parse_envelope_kind(std::string_view s) {
  if (s == "theorem_1_1") return EnvelopeKind::theorem_1_1;
  if (s == "cor_1_3") return EnvelopeKind::cor_1_3;
  if (s == "delta_n_lambda") return EnvelopeKind::delta_n_lambda;
  if (s == "bernstein_gamma") return EnvelopeKind::bernstein_gamma;
  throw DomainError("unknown envelope kind '" + std::string(s) + "'");
}

double bound_envelope(EnvelopeKind kind, int n, double lambda, double x, double h) {
  if (!(lambda >= 0 && lambda < 2)) {
    throw DomainError("envelope requires 0 <= lambda < 2");
  }
  if (n < 1) {
    throw DomainError("envelope requires n >= 1");
  }
  if (x < 0 || x > 1) {
    throw DomainError("envelope requires x in [0,1]");
  }
  const double phi = std::sqrt(x * (1 - x));
  const double nn = n;
  switch (kind) {
    case EnvelopeKind::theorem_1_1: {
      if (!(h > 0)) {
        throw DomainError("theorem_1_1 envelope requires h > 0");
      }
      if (std::isinf(h)) {
        return 1.0;
      }
      return 1 + std::pow(phi, 2 - lambda) / (h * h * nn * nn * std::pow(phi + 1 / nn, lambda));
    }
    case EnvelopeKind::cor_1_3:
      return std::pow(phi, 1 - lambda / 2) * std::pow(phi + 1 / nn, -lambda / 2) / nn;
    case EnvelopeKind::delta_n_lambda: {
      const double edge = 1 / (nn * nn);
      if (x <= edge || x >= 1 - edge) {
        return std::pow(phi / nn, 1 - lambda / 2);
      }
      return std::pow(phi, 1 - lambda) / nn;
    }
    case EnvelopeKind::bernstein_gamma: {
      const double s = 1 / std::sqrt(nn);
      return s * std::pow(phi, 1 - lambda / 2) * std::pow(phi + s, -lambda / 2);
    }
  }
  throw DomainError("unreachable envelope kind");
}

}  // namespace shapeapprox
