#include "shapeapprox/generator.hpp"

#include <cmath>
#include <optional>

namespace shapeapprox {

namespace {

std::optional<GeneratorPoly> try_build(int n, int r, const GeneratorOptions& opt, unsigned bits,
                                       std::string& why) {
  PrecisionScope scope(bits);
  GeneratorPoly g;
  g.n = n;
  g.r = r;
  g.m = (n + 8 * r - 1) / (8 * r);
  g.precision_bits = bits;

  TauPoly t;
  try {
    t = tau(g.m);
  } catch (const PrecisionError& e) {
    why = e.what();
    return std::nullopt;
  }
  g.Q = power(t.poly, 4 * r);

  std::vector<BigFloat> one_minus_t{BigFloat(1), BigFloat(-1)};
  const auto weight = power(Polynomial<BigFloat>::monomial(one_minus_t), r);
  const BigFloat denom = integrate_01(multiply(weight, g.Q));
  g.lambda_n = BigFloat(r) / denom;

  Polynomial<BigFloat> acc = g.Q;
  for (int i = 0; i < r; ++i) {
    acc = antidifferentiate_from_zero(acc);
  }
  BigFloat fact(1);
  for (int i = 2; i < r; ++i) {
    fact *= BigFloat(i);
  }
  g.P = scale(acc, BigFloat(g.lambda_n * fact));

  g.integral = integrate_01(g.P);
  if (abs_value(BigFloat(g.integral - BigFloat(1))) > BigFloat(opt.integral_tol)) {
    why = "integral of P deviates from 1 by " + format_scalar(BigFloat(g.integral - 1), 6);
    return std::nullopt;
  }

  std::vector<BigFloat> grid(static_cast<std::size_t>(opt.check_grid));
  for (int i = 0; i < opt.check_grid; ++i) {
    grid[static_cast<std::size_t>(i)] = BigFloat(i) / BigFloat(opt.check_grid - 1);
  }
  for (int nu = 0; nu <= r; ++nu) {
    const auto d = differentiate(g.P, nu);
    BigFloat lo(0), hi(0);
    for (const auto& x : grid) {
      const BigFloat v = eval(d, x);
      lo = std::min(lo, v);
      hi = std::max(hi, abs_value(v));
    }
    const double margin = hi > 0 ? to_double(BigFloat(lo / hi)) : 0.0;
    g.derivative_margin.push_back(margin);
    if (margin < -opt.derivative_tol) {
      why = "P^(" + std::to_string(nu) + ") negative on grid, relative " + std::to_string(margin);
      return std::nullopt;
    }
  }

  for (int mu = 1; mu <= 4; ++mu) {
    BigFloat d = BigFloat(1) - moment(g.P, mu);
    if (!(d > 0)) {
      why = "moment deficiency not positive for mu=" + std::to_string(mu);
      return std::nullopt;
    }
    g.moment_deficiency[mu] = d;
  }
  return g;
}

}  // namespace

GeneratorPoly build_generator(int n, int r, const GeneratorOptions& opt) {
  if (r < 1) {
    throw DomainError("generator requires r >= 1");
  }
  if (n <= 8 * r) {
    throw RegimeError("generator requires n > 8r (n=" + std::to_string(n) +
                      ", r=" + std::to_string(r) + ")");
  }
  std::string why;
  for (unsigned bits = opt.start_bits; bits <= opt.max_bits; bits *= 2) {
    if (auto g = try_build(n, r, opt, bits, why)) {
      return std::move(*g);
    }
  }
  throw PrecisionError("generator (n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                       ") failed at " + std::to_string(opt.max_bits) + " bits: " + why);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = x.size();
  if (k < 2 || y.size() != k) {
    throw DomainError("slope fit needs at least two points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double kk = static_cast<double>(k);
  return (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
}

DeficiencyFit deficiency_slope(int r, const std::vector<int>& n_list, const GeneratorOptions& opt) {
  DeficiencyFit fit;
  fit.r = r;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw DomainError("n_list must be strictly increasing");
    }
    const auto g = build_generator(n_list[i], r, opt);
    const double d2 = to_double(g.moment_deficiency.at(2));
    fit.n.push_back(n_list[i]);
    fit.delta2.push_back(d2);
    fit.scaled.push_back(d2 * n_list[i] * n_list[i]);
  }
  std::vector<double> xs(fit.n.begin(), fit.n.end());
  fit.slope = loglog_slope(xs, fit.delta2);
  return fit;
}

}  // namespace shapeapprox
