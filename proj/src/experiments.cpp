#include "shapeapprox/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include <boost/math/constants/constants.hpp>

#include "shapeapprox/best_approx.hpp"
#include "shapeapprox/operators.hpp"
#include "shapeapprox/shape.hpp"

namespace shapeapprox {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double median(std::vector<double> v) {
  if (v.empty()) {
    return 0;
  }
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// max <= 10 * median, the stability test used for empirical constants.
Check bounded_by_median(const std::string& name, const std::vector<double>& v) {
  Check c{name, true, ""};
  if (v.empty()) {
    c.detail = "no data";
    return c;
  }
  const double mx = *std::max_element(v.begin(), v.end());
  const double md = median(v);
  c.pass = all_finite(v) && mx <= 10 * md;
  c.detail = "max " + fmt(mx) + ", median " + fmt(md);
  return c;
}

void require_increasing(const std::vector<int>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) {
      throw DomainError(std::string(what) + " must be strictly increasing");
    }
  }
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class F>
void parallel_for(int count, int threads, F body) {
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([=, &body] {
      for (int i = w; i < count; i += threads) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

nlohmann::json grid_json(const ModulusGrid& g) {
  return {{"h_points", g.h_points}, {"x_points", g.x_points}, {"anchored", g.anchored}};
}

ModulusGrid grid_from(const nlohmann::json& j, ModulusGrid d) {
  d.h_points = j.value("h_points", d.h_points);
  d.x_points = j.value("x_points", d.x_points);
  d.anchored = j.value("anchored", d.anchored);
  return d;
}

}  // namespace

bool ExperimentResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json ExperimentResult::to_json() const {
  nlohmann::json j;
  j["experiment"] = name;
  j["config"] = config;
  j["summary"] = summary;
  auto cs = nlohmann::json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["checks"] = std::move(cs);
  j["table"] = table_to_json(table);
  return j;
}

// ---- configs ----

nlohmann::json BernXepsConfig::to_json() const {
  return {{"eps", eps}, {"lambda", lambda}, {"n_list", n_list}, {"precision_bits", precision_bits}};
}

BernXepsConfig BernXepsConfig::from_json(const nlohmann::json& j) {
  BernXepsConfig c;
  c.eps = j.value("eps", c.eps);
  c.lambda = j.value("lambda", c.lambda);
  c.n_list = j.value("n_list", c.n_list);
  c.precision_bits = j.value("precision_bits", c.precision_bits);
  return c;
}

nlohmann::json MnStudyConfig::to_json() const {
  return {{"f", f},          {"q", q},           {"lambda", lambda},
          {"n_list", n_list}, {"x_grid", x_grid}, {"modulus_grid", grid_json(grid)},
          {"precision_bits", precision_bits}};
}

MnStudyConfig MnStudyConfig::from_json(const nlohmann::json& j) {
  MnStudyConfig c;
  c.f = j.value("f", c.f);
  c.q = j.value("q", c.q);
  c.lambda = j.value("lambda", c.lambda);
  c.n_list = j.value("n_list", c.n_list);
  c.x_grid = j.value("x_grid", c.x_grid);
  if (j.contains("modulus_grid")) {
    c.grid = grid_from(j["modulus_grid"], c.grid);
  }
  c.precision_bits = j.value("precision_bits", c.precision_bits);
  c.threads = j.value("threads", c.threads);
  return c;
}

nlohmann::json Lambda2Config::to_json() const {
  return {{"eps_list", eps_list}, {"n", n}, {"discretization", discretization}};
}

Lambda2Config Lambda2Config::from_json(const nlohmann::json& j) {
  Lambda2Config c;
  c.eps_list = j.value("eps_list", c.eps_list);
  c.n = j.value("n", c.n);
  c.discretization = j.value("discretization", c.discretization);
  return c;
}

nlohmann::json GenReportConfig::to_json() const {
  return {{"r", r}, {"n_list", n_list}, {"precision_bits", precision_bits}};
}

GenReportConfig GenReportConfig::from_json(const nlohmann::json& j) {
  GenReportConfig c;
  c.r = j.value("r", c.r);
  c.n_list = j.value("n_list", c.n_list);
  c.precision_bits = j.value("precision_bits", c.precision_bits);
  return c;
}

nlohmann::json JacksonConfig::to_json() const {
  return {{"f", f},
          {"q", q},
          {"n_list", n_list},
          {"discretization", discretization},
          {"constraint_grid", constraint_grid}};
}

JacksonConfig JacksonConfig::from_json(const nlohmann::json& j) {
  JacksonConfig c;
  c.f = j.value("f", c.f);
  c.q = j.value("q", c.q);
  c.n_list = j.value("n_list", c.n_list);
  c.discretization = j.value("discretization", c.discretization);
  c.constraint_grid = j.value("constraint_grid", c.constraint_grid);
  return c;
}

// ---- experiments ----

ExperimentResult run_bernstein_xeps(const BernXepsConfig& c) {
  if (!(c.eps > 0 && c.eps < 1)) {
    throw DomainError("bern-xeps: need 0 < eps < 1");
  }
  if (!(c.lambda >= 0 && c.lambda < 2)) {
    throw DomainError("bern-xeps: need 0 <= lambda < 2");
  }
  require_increasing(c.n_list, "n_list");
  ExperimentResult res;
  res.name = "bern-xeps";
  res.config = c.to_json();
  res.table.columns = {"n",         "x",   "error",          "voronovskaya",   "classics",
                       "tmpp",      "lambda_envelope", "ratio_classics", "ratio_tmpp", "ratio_lambda"};
  const auto f = FunctionHandle::catalog("xeps", {c.eps});
  const double eps = c.eps;
  const double s = std::min(2.0, eps / (1 - c.lambda / 2));
  const StepWeight phi{1};

  std::vector<double> mid_tmpp, edge_classics, mid_lambda;
  double last_voron = 0;
  int last_n = 0;
  for (int n : c.n_list) {
    if (n < 1) {
      throw DomainError("bern-xeps: n must be positive");
    }
    PrecisionScope scope(c.precision_bits);
    for (double x : {0.5, 1.0 / (static_cast<double>(n) * n)}) {
      const BigFloat xb = x == 0.5 ? BigFloat(1) / BigFloat(2) : BigFloat(1) / (BigFloat(n) * BigFloat(n));
      const BigFloat diff = f(xb) - apply_bernstein<BigFloat>(n, f, xb);
      const double err = std::abs(to_double(diff));
      const double voron = n * to_double(diff);
      const double ph = phi(x);
      const double classics = std::pow(ph / std::sqrt(static_cast<double>(n)), eps);
      const double tmpp = (x >= 1.0 / n && x <= 1 - 1.0 / n) ? std::pow(ph, 2 * eps - 2) / n : classics;
      const double lam = std::pow(bound_envelope(EnvelopeKind::bernstein_gamma, n, c.lambda, x), s);
      res.table.add({static_cast<long long>(n), x, err, voron, classics, tmpp, lam, err / classics, err / tmpp,
                     err / lam});
      if (x == 0.5) {
        mid_tmpp.push_back(err / tmpp);
        mid_lambda.push_back(err / lam);
        last_voron = voron;
        last_n = n;
      } else {
        edge_classics.push_back(err / classics);
      }
    }
  }
  // eps(1-eps)/2 x^(eps-2) phi^2(x) at x = 1/2
  const double target = eps * (1 - eps) / 2 * std::pow(0.5, eps - 2) * 0.25;
  res.summary["voronovskaya_target"] = target;
  res.summary["voronovskaya_last"] = last_voron;
  res.summary["voronovskaya_n"] = last_n;
  res.summary["lambda_exponent"] = s;
  if (last_n >= 16384) {
    const double rel = std::abs(last_voron - target) / target;
    res.checks.push_back({"voronovskaya_5pct", rel <= 0.05,
                          "n*(f-B_n f)(1/2) = " + fmt(last_voron) + " vs " + fmt(target) + " (rel " + fmt(rel) + ")"});
  }
  res.checks.push_back(bounded_by_median("tmpp_constant_midpoint", mid_tmpp));
  res.checks.push_back(bounded_by_median("classics_constant_edge", edge_classics));
  res.checks.push_back(bounded_by_median("lambda_constant_midpoint", mid_lambda));
  return res;
}

ExperimentResult run_mn_error_study(const MnStudyConfig& c) {
  if (!(c.lambda >= 0 && c.lambda < 2)) {
    throw DomainError("mn-study: need 0 <= lambda < 2");
  }
  if (c.q < 0 || c.x_grid < 1) {
    throw DomainError("mn-study: need q >= 0 and x_grid >= 1");
  }
  require_increasing(c.n_list, "n_list");
  const auto f = FunctionHandle::parse(c.f);
  if (f.kind() == FunctionKind::polynomial) {
    if (!check_k_monotone_poly(f.polynomial(), c.q).pass) {
      throw DomainError("mn-study: polynomial input is not " + std::to_string(c.q) + "-monotone");
    }
  } else if (!f.known_k_monotone(c.q)) {
    throw DomainError("mn-study: '" + c.f + "' is not known to be " + std::to_string(c.q) + "-monotone");
  }

  ExperimentResult res;
  res.name = "mn-study";
  res.config = c.to_json();
  res.table.columns = {"n", "x", "error", "t", "omega", "ratio", "regime"};
  const double pi = boost::math::constants::pi<double>();
  std::vector<double> xs;
  for (int i = 1; i <= c.x_grid; ++i) {
    xs.push_back(0.5 * (1 - std::cos(pi * i / (c.x_grid + 1))));
  }
  // degree <= 2 polynomials: M_n p - p = c2 alpha_n phi^2
  std::optional<double> c2;
  if (f.is_polynomial() && degree(f.polynomial()) <= 2) {
    const auto m = to_monomial(f.polynomial());
    c2 = m.n() >= 2 ? to_double(m[2]) : 0.0;
  }

  GeneratorOptions gopt;
  gopt.start_bits = c.precision_bits;
  gopt.max_bits = std::max(gopt.max_bits, c.precision_bits);
  std::vector<double> per_n_max;
  double worst_identity = 0;
  auto summary = nlohmann::json::array();
  for (int n : c.n_list) {
    const MnOperator op(c.q, n, gopt);
    const auto image = op.image(f);
    const double alpha = to_double(op.alpha_n());
    std::vector<double> err(xs.size()), t(xs.size()), om(xs.size()), ratio(xs.size());
    parallel_for(static_cast<int>(xs.size()), c.threads, [&](int i) {
      const double x = xs[static_cast<std::size_t>(i)];
      const std::size_t k = static_cast<std::size_t>(i);
      err[k] = std::abs(f(x) - eval(image, x));
      t[k] = bound_envelope(EnvelopeKind::cor_1_3, n, c.lambda, x);
      om[k] = omega_dt(f, 2, c.lambda, t[k], c.grid).value;
      if (err[k] <= 1e-12) {
        ratio[k] = 0;
      } else {
        ratio[k] = om[k] > 0 ? err[k] / om[k] : std::numeric_limits<double>::infinity();
      }
    });
    double mx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      res.table.add({static_cast<long long>(n), xs[i], err[i], t[i], om[i], ratio[i], op.regime()});
      mx = std::max(mx, ratio[i]);
      if (c2) {
        const double ph2 = xs[i] * (1 - xs[i]);
        worst_identity = std::max(worst_identity, std::abs(err[i] - std::abs(*c2) * alpha * ph2));
      }
    }
    per_n_max.push_back(mx);
    summary.push_back({{"n", n},
                       {"max_ratio", mx},
                       {"max_error", *std::max_element(err.begin(), err.end())},
                       {"alpha_n", alpha},
                       {"regime", op.regime()}});
  }
  res.summary["per_n"] = summary;
  res.checks.push_back({"ratios_finite", all_finite(per_n_max), ""});
  if (c2 && *c2 == 0) {
    double mx = 0;
    for (std::size_t r = 0; r < res.table.rows.size(); ++r) mx = std::max(mx, res.table.number(r, "error"));
    res.checks.push_back({"linear_exact", mx <= 1e-12, "max error " + fmt(mx)});
  } else if (c2) {
    res.checks.push_back({"e2_identity", worst_identity <= 1e-12, "max deviation " + fmt(worst_identity)});
  } else {
    res.checks.push_back(bounded_by_median("max_ratio_bounded", per_n_max));
  }
  return res;
}

ExperimentResult run_lambda2_counterexample(const Lambda2Config& c) {
  for (std::size_t i = 1; i < c.eps_list.size(); ++i) {
    if (!(c.eps_list[i] < c.eps_list[i - 1])) {
      throw DomainError("lambda2: eps_list must be decreasing");
    }
  }
  if (c.eps_list.empty()) {
    throw DomainError("lambda2: eps_list is empty");
  }
  ExperimentResult res;
  res.name = "lambda2";
  res.config = c.to_json();
  res.table.columns = {"eps", "omega", "error", "argmax_h", "argmax_x"};
  std::vector<double> om, er;
  for (double e : c.eps_list) {
    const auto g = FunctionHandle::catalog("log", {e});
    const auto m = omega_dt(g, 2, 2.0, 1.0);
    const auto b = best_uniform(g, c.n, c.discretization);
    res.table.add({e, m.value, b.error, m.argmax_h, m.argmax_x});
    om.push_back(m.value);
    er.push_back(b.error);
  }
  const double omax = *std::max_element(om.begin(), om.end());
  const double omin = *std::min_element(om.begin(), om.end());
  res.checks.push_back({"modulus_bounded", omax <= 2 * omin, "max/min " + fmt(omax / omin)});
  bool increasing = true;
  for (std::size_t i = 1; i < er.size(); ++i) increasing = increasing && er[i] > er[i - 1];
  res.checks.push_back({"error_increasing", increasing, ""});
  if (er.size() >= 2) {
    res.checks.push_back({"error_growth", er.back() / er.front() > 3, "last/first " + fmt(er.back() / er.front())});
  }
  res.summary["modulus_max_over_min"] = omax / omin;
  res.summary["error_last_over_first"] = er.back() / er.front();
  return res;
}

ExperimentResult run_generator_report(const GenReportConfig& c) {
  require_increasing(c.n_list, "n_list");
  ExperimentResult res;
  res.name = "gen-report";
  res.config = c.to_json();
  res.table.columns = {"n",       "r",       "m",       "precision_bits", "integral_error", "delta_1",
                       "delta_2", "delta_3", "delta_4", "n2_delta_2",     "min_margin",     "shape"};
  GeneratorOptions opt;
  opt.start_bits = c.precision_bits;
  opt.max_bits = std::max(opt.max_bits, c.precision_bits);
  std::vector<double> ns, d2, scaled;
  bool integral_ok = true, margins_ok = true, positive = true, decreasing = true;
  for (int n : c.n_list) {
    const auto g = build_generator(n, c.r, opt);
    const double ierr = std::abs(to_double(BigFloat(g.integral - BigFloat(1))));
    const double mm = *std::min_element(g.derivative_margin.begin(), g.derivative_margin.end());
    std::vector<double> d(5);
    for (int mu = 1; mu <= 4; ++mu) {
      d[static_cast<std::size_t>(mu)] = to_double(g.moment_deficiency.at(mu));
      positive = positive && d[static_cast<std::size_t>(mu)] > 0;
    }
    if (!d2.empty() && d[2] > d2.back() * 1.05) decreasing = false;
    ns.push_back(n);
    d2.push_back(d[2]);
    scaled.push_back(static_cast<double>(n) * n * d[2]);
    integral_ok = integral_ok && ierr <= 1e-20;
    margins_ok = margins_ok && mm >= -1e-15;
    res.table.add({static_cast<long long>(n), static_cast<long long>(c.r), static_cast<long long>(g.m),
                   static_cast<long long>(g.precision_bits), ierr, d[1], d[2], d[3], d[4], scaled.back(), mm,
                   std::string(mm >= -1e-15 ? "pass" : "fail")});
  }
  res.checks.push_back({"integral_1e-20", integral_ok, ""});
  res.checks.push_back({"derivatives_nonnegative", margins_ok, ""});
  res.checks.push_back({"deficiency_positive", positive, ""});
  res.checks.push_back({"delta2_nonincreasing", decreasing, ""});
  if (ns.size() >= 2) {
    const double slope = loglog_slope(ns, d2);
    const double lo = *std::min_element(scaled.begin(), scaled.end());
    const double hi = *std::max_element(scaled.begin(), scaled.end());
    res.summary["slope"] = slope;
    res.summary["n2_delta2_max_over_min"] = hi / lo;
    res.checks.push_back({"slope_in_[-2.4,-1.6]", slope >= -2.4 && slope <= -1.6, "slope " + fmt(slope)});
    res.checks.push_back({"n2_delta2_factor_4", hi <= 4 * lo, "max/min " + fmt(hi / lo)});
  }
  return res;
}

ExperimentResult run_jackson(const JacksonConfig& c) {
  require_increasing(c.n_list, "n_list");
  const auto f = FunctionHandle::parse(c.f);
  ExperimentResult res;
  res.name = "jackson";
  res.config = c.to_json();
  res.table.columns = {"n", "error", "omega", "ratio", "validated"};
  std::vector<double> ratios;
  bool validated = true;
  for (int n : c.n_list) {
    const auto j = jackson_ratio(f, c.q, n, c.discretization, c.constraint_grid);
    res.table.add({static_cast<long long>(n), j.error, j.omega, j.ratio, static_cast<long long>(j.validated)});
    ratios.push_back(j.ratio);
    validated = validated && j.validated;
  }
  res.checks.push_back({"ratios_finite", all_finite(ratios), ""});
  res.checks.push_back(bounded_by_median("max_le_10x_median", ratios));
  res.checks.push_back({"shape_validated", validated, ""});
  return res;
}

ExperimentResult run_apply(const std::string& op, const std::string& fspec, int grid, unsigned precision_bits) {
  if (grid < 2) {
    throw DomainError("apply: grid must be >= 2");
  }
  auto spec = OperatorSpec::parse(op);
  GeneratorOptions gopt;
  gopt.start_bits = precision_bits;
  gopt.max_bits = std::max(gopt.max_bits, precision_bits);
  spec.prepare(gopt);
  const auto f = FunctionHandle::parse(fspec);
  Polynomial<double> image;
  {
    PrecisionScope scope(precision_bits);
    image = operator_image<double>(spec, f);
  }
  ExperimentResult res;
  res.name = "apply";
  res.config = {{"op", spec.to_string()}, {"f", fspec}, {"grid", grid}, {"precision_bits", precision_bits}};
  res.table.columns = {"x", "f", "Lf", "error"};
  for (int i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / (grid - 1);
    const double fx = f(x);
    const double lx = eval(image, x);
    res.table.add({x, fx, lx, std::abs(fx - lx)});
  }
  return res;
}

ExperimentResult run_moduli(const std::string& fspec, int k, double lambda, const std::vector<double>& t_grid,
                            const ModulusGrid& grid) {
  const auto f = FunctionHandle::parse(fspec);
  ExperimentResult res;
  res.name = "moduli";
  res.config = {{"f", fspec}, {"k", k}, {"lambda", lambda}, {"t_grid", t_grid}, {"modulus_grid", grid_json(grid)}};
  res.table.columns = {"t", "value", "argmax_h", "argmax_x"};
  for (double t : t_grid) {
    const auto m = omega_dt(f, k, lambda, t, grid);
    res.table.add({t, m.value, m.argmax_h, m.argmax_x});
  }
  return res;
}

nlohmann::json generator_to_json(const GeneratorPoly& g) {
  nlohmann::json j;
  j["n"] = g.n;
  j["r"] = g.r;
  j["m"] = g.m;
  j["precision_bits"] = g.precision_bits;
  j["lambda_n"] = format_scalar(g.lambda_n);
  j["integral"] = format_scalar(g.integral);
  nlohmann::json d;
  for (const auto& [mu, v] : g.moment_deficiency) {
    d[std::to_string(mu)] = format_scalar(v);
  }
  j["moment_deficiency"] = d;
  j["derivative_margin"] = g.derivative_margin;
  j["P"] = to_json(g.P);
  j["Q"] = to_json(g.Q);
  return j;
}

nlohmann::json shape_report(const std::string& fspec, int k) {
  const auto f = FunctionHandle::parse(fspec);
  nlohmann::json j;
  if (f.kind() == FunctionKind::polynomial) {
    j = check_k_monotone_poly(f.polynomial(), k).to_json();
    j["method"] = "polynomial";
  } else {
    j = check_k_monotone_fn(f, k).to_json();
    j["method"] = "differences";
  }
  j["f"] = fspec;
  return j;
}

}  // namespace shapeapprox
