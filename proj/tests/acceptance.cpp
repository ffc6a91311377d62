// Acceptance criteria 1-11. One line per criterion:
//   criterion N: PASS|FAIL <detail> [<seconds>s of <budget>s]
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "shapeapprox/best_approx.hpp"
#include "shapeapprox/experiments.hpp"
#include "shapeapprox/operators.hpp"
#include "shapeapprox/shape.hpp"
#include "shapeapprox/special.hpp"

using namespace shapeapprox;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

FunctionHandle mono(int i) { return FunctionHandle::from_polynomial(Polynomial<Rational>::power(i)); }

Rational binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  return binomial<Rational>(n, k);
}

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// U_n(e_i) = (n-1)! i! / (n+i-1)! sum_j C(i-1,j) C(n,i-j) x^(i-j), written out directly
Polynomial<Rational> mainun(int n, int i) {
  if (i == 0) return Polynomial<Rational>::constant(Rational(1));
  std::vector<Rational> c(static_cast<std::size_t>(i) + 1, Rational(0));
  const Rational lead = factorial(n - 1) * factorial(i) / factorial(n + i - 1);
  for (int j = std::max(0, i - n); j <= i - 1; ++j) {
    c[static_cast<std::size_t>(i - j)] += lead * binom(i - 1, j) * binom(n, i - j);
  }
  return Polynomial<Rational>::monomial(c);
}

bool same(const Polynomial<Rational>& a, const Polynomial<Rational>& b) {
  const auto d = to_monomial(subtract(a, b));
  for (const auto& c : d.coeffs()) {
    if (c != 0) return false;
  }
  return true;
}

Polynomial<Rational> random_poly(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(num(rng), den(rng));
  return Polynomial<Rational>::monomial(c);
}

// ---- 1 ----
void criterion1(Outcome& o) {
  int checked = 0;
  for (int n = 2; n <= 30; ++n) {
    for (int i = 0; i <= 4; ++i) {
      const auto img = genuine_durrmeyer_image<Rational>(n, mono(i));
      if (!same(img, mainun(n, i)) || !same(genuine_durrmeyer_moment(n, i), mainun(n, i))) {
        o.fail("U_" + std::to_string(n) + "(e_" + std::to_string(i) + ") differs from the closed form");
      }
      ++checked;
    }
    // e0 -> 1, e1 -> x, e2 -> x^2 + 2x(1-x)/(n+1)
    const Rational a(2, n + 1);
    const auto e2 = Polynomial<Rational>::monomial(std::vector<Rational>{Rational(0), a, Rational(1 - a)});
    if (!same(genuine_durrmeyer_image<Rational>(n, mono(0)), Polynomial<Rational>::constant(Rational(1))) ||
        !same(genuine_durrmeyer_image<Rational>(n, mono(1)), Polynomial<Rational>::power(1)) ||
        !same(genuine_durrmeyer_image<Rational>(n, mono(2)), e2)) {
      o.fail("low moments wrong at n=" + std::to_string(n));
    }
  }
  o.detail << (o.pass ? "" : "; ") << checked << " exact moment images";
}

// ---- 2 ----
void criterion2(Outcome& o) {
  double worst = 0, worst_end = 0;
  for (double a : {-0.4, 0.0, 0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 20; ++n) {
      const double d = n + 2 * a + 2;
      const std::function<double(int, double)> closed[] = {
          [](int, double) { return 1.0; },
          [&](int nn, double x) { return (nn * x + a + 1) / d; },
          [&](int nn, double x) {
            return (nn * (nn - 1.0) * x * x + 2 * nn * (a + 2) * x + (a + 1) * (a + 2)) / (d * (d + 1));
          }};
      for (int i = 0; i <= 2; ++i) {
        const auto img = lupas_image<double>(n, a, mono(i));
        for (int s = 0; s <= 20; ++s) {
          const double x = s / 20.0;
          worst = std::max(worst, std::abs(eval(img, x) - closed[i](n, x)));
        }
        double endpoint = 1;
        for (int j = 0; j < i; ++j) endpoint *= (a + 1 + j) / (d + j);
        worst_end = std::max(worst_end, std::abs(eval(img, 0.0) - endpoint));
      }
      for (int i = 3; i <= 5; ++i) {
        double endpoint = 1;
        for (int j = 0; j < i; ++j) endpoint *= (a + 1 + j) / (d + j);
        worst_end = std::max(worst_end, std::abs(eval(lupas_image<double>(n, a, mono(i)), 0.0) - endpoint));
      }
    }
  }
  if (worst > 1e-10) o.fail("closed form residual too large");
  if (worst_end > 1e-10) o.fail("endpoint moment residual too large");
  o.detail << (o.pass ? "" : "; ") << "closed forms " << worst << ", endpoint " << worst_end;
}

// ---- 3 ----
void criterion3(Outcome& o) {
  std::mt19937_64 rng(3);
  double deriv = 0;
  std::uniform_int_distribution<int> degd(0, 8);
  for (int n = 1; n <= 10; ++n) {
    for (int nu = 1; nu <= std::min(3, n); ++nu) {
      for (double a : {-0.4, 0.0, 0.5, 2.0}) {
        deriv = std::max(deriv, lupas_derivative_identity_residual<double>(n, a, nu, random_poly(rng, degd(rng))));
      }
    }
  }
  double phiber = 0;
  {
    PrecisionScope scope(128);
    for (int n = 0; n <= 12; ++n) {
      for (double a : {-0.4, 0.0, 0.5, 1.0, 2.0}) {
        const auto rec = ultraspherical_phi<BigFloat>(n, BigFloat(a));
        const auto ber = phi_bernstein_expansion<BigFloat>(n, BigFloat(a));
        for (int i = 0; i <= 50; ++i) {
          const BigFloat x = BigFloat(i) / BigFloat(50);
          phiber = std::max(phiber, to_double(abs_value(BigFloat(eval(rec, x) - eval(ber, x)))));
        }
      }
    }
  }
  double lup2 = 0;
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 20;) {
    const double x = u(rng), t = u(rng);
    if (std::abs(x + t - 1) < 1e-3) continue;
    lup2 = std::max(lup2, lupas_product_identity_residual<double>(6, 0.5, x, t));
    ++i;
  }
  double durr = 0;
  for (int n = 1; n <= 12; ++n) {
    const auto f = random_poly(rng, degd(rng));
    const auto du = differentiate(genuine_durrmeyer_image<double>(n + 1, FunctionHandle::from_polynomial(f)), 1);
    const auto dn = durrmeyer_image<double>(n, FunctionHandle::from_polynomial(differentiate(f, 1)));
    for (int s = 0; s <= 40; ++s) {
      const double x = s / 40.0;
      durr = std::max(durr, std::abs(eval(du, x) - eval(dn, x)));
    }
  }
  if (deriv > 1e-9) o.fail("derivative identity");
  if (phiber > 1e-9) o.fail("bernstein expansion of phi");
  if (lup2 > 1e-10) o.fail("product identity");
  if (durr > 1e-9) o.fail("d/dx U_{n+1} = D_n(f')");
  o.detail << (o.pass ? "" : "; ") << "deriv " << deriv << ", phiber " << phiber << ", lup2 " << lup2 << ", U' "
           << durr;
}

// ---- 4 ----
void criterion4(Outcome& o) {
  const std::vector<int> all{32, 64, 128, 256, 512};
  for (int r = 1; r <= 3; ++r) {
    std::vector<double> ns, d2, scaled;
    for (int n : all) {
      if (n <= 8 * r) continue;
      const auto g = build_generator(n, r);
      const double ierr = to_double(abs_value(BigFloat(g.integral - BigFloat(1))));
      if (ierr > 1e-20) o.fail("integral r=" + std::to_string(r) + " n=" + std::to_string(n));
      for (double m : g.derivative_margin) {
        if (m < -1e-15) o.fail("negative derivative r=" + std::to_string(r) + " n=" + std::to_string(n));
      }
      ns.push_back(n);
      d2.push_back(to_double(g.moment_deficiency.at(2)));
      scaled.push_back(static_cast<double>(n) * n * d2.back());
    }
    const double slope = loglog_slope(ns, d2);
    const double hi = *std::max_element(scaled.begin(), scaled.end());
    const double lo = *std::min_element(scaled.begin(), scaled.end());
    if (slope < -2.4 || slope > -1.6) o.fail("slope r=" + std::to_string(r));
    if (hi > 4 * lo) o.fail("n^2 delta_2 spread r=" + std::to_string(r));
    o.detail << (o.pass && r == 1 ? "" : "; ") << "r=" << r << " slope " << slope << " spread " << hi / lo;
  }
}

// ---- 5 ----
void criterion5(Outcome& o) {
  int runs = 0;
  for (int q = 1; q <= 4; ++q) {
    const std::vector<std::string> fs{"exp", "exp:3", "pow:" + std::to_string(q + 1),
                                      "trunc:0.3:" + std::to_string(q), "trunc:0.6:" + std::to_string(q)};
    for (int n : {30, 60, 120}) {
      const MnOperator m(q, n);
      for (const auto& spec : fs) {
        const auto f = FunctionHandle::parse(spec);
        double norm = 0;
        for (int i = 0; i <= 1024; ++i) norm = std::max(norm, std::abs(f(i / 1024.0)));
        PrecisionScope scope(m.precision_bits());
        const auto img = m.image_big(f);
        for (int k = 0; k <= q; ++k) {
          if (!f.known_k_monotone(k)) continue;
          const auto rep = check_k_monotone_poly(img, k, 1e-9 * norm);
          if (!rep.pass) {
            o.fail("M_" + std::to_string(n) + " q=" + std::to_string(q) + " " + spec + " k=" + std::to_string(k));
          }
          ++runs;
        }
      }
    }
  }
  // random nonnegative piecewise linear inputs
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  double worst_neg = 0, worst_growth = 0;
  const MnOperator m(3, 60);
  for (int s = 0; s < 50; ++s) {
    std::vector<double> ys(9);
    for (auto& y : ys) y = u(rng) * u(rng) * 4;
    const auto f = FunctionHandle::from_callback(
        [ys](double x) {
          const double p = std::clamp(x, 0.0, 1.0) * 8;
          const int i = std::min(7, static_cast<int>(p));
          return ys[static_cast<std::size_t>(i)] + (p - i) * (ys[static_cast<std::size_t>(i) + 1] - ys[static_cast<std::size_t>(i)]);
        },
        "random_pwl");
    const double norm = *std::max_element(ys.begin(), ys.end());
    const auto img = m.image(f);
    for (int i = 0; i <= 400; ++i) {
      const double v = eval(img, i / 400.0);
      worst_neg = std::max(worst_neg, -v / norm);
      worst_growth = std::max(worst_growth, std::abs(v) / norm - 1);
    }
  }
  if (worst_neg > 1e-12) o.fail("positivity");
  if (worst_growth > 1e-12) o.fail("contraction");
  o.detail << (o.pass ? "" : "; ") << runs << " shape checks, positivity " << -worst_neg << ", |Mf|/|f|-1 "
           << worst_growth;
}

// ---- 6 ----
void criterion6(Outcome& o) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> num(0, 9), deg(0, 6);
  double worst = 0;
  for (int s = 0; s < 10; ++s) {
    std::vector<Rational> c;
    const int d = deg(rng);
    for (int k = 0; k <= d; ++k) c.emplace_back(num(rng) + (k == 0 ? 1 : 0));
    Rational integral(0), second(0);
    for (int k = 0; k <= d; ++k) integral += c[static_cast<std::size_t>(k)] / (k + 1);
    for (auto& x : c) x /= integral;
    for (int k = 0; k <= d; ++k) second += c[static_cast<std::size_t>(k)] / (k + 3);
    const auto P = Polynomial<Rational>::monomial(c);
    if (!same(gavrea_image<Rational>(P, mono(0)), Polynomial<Rational>::constant(Rational(1))) ||
        !same(gavrea_image<Rational>(P, mono(1)), Polynomial<Rational>::power(1))) {
      o.fail("H(e_0), H(e_1) not exact");
    }
    const Rational a = 1 - second;
    if (!same(gavrea_image<Rational>(P, mono(2)), Polynomial<Rational>::monomial(std::vector<Rational>{Rational(0), a, Rational(1 - a)}))) {
      o.fail("H(e_2) not x^2 + (1 - int t^2 P) x(1-x)");
    }
  }
  for (auto [n, r] : {std::pair{32, 1}, {64, 1}, {64, 2}, {128, 3}}) {
    const auto g = build_generator(n, r);
    PrecisionScope scope(g.precision_bits);
    const BigFloat a = g.moment_deficiency.at(2);
    const auto h0 = gavrea_image<BigFloat>(g.P, mono(0));
    const auto h1 = gavrea_image<BigFloat>(g.P, mono(1));
    const auto h2 = gavrea_image<BigFloat>(g.P, mono(2));
    for (int i = 0; i <= 64; ++i) {
      const BigFloat x = BigFloat(i) / BigFloat(64);
      worst = std::max(worst, to_double(abs_value(BigFloat(eval(h0, x) - BigFloat(1)))));
      worst = std::max(worst, to_double(abs_value(BigFloat(eval(h1, x) - x))));
      worst = std::max(worst, to_double(abs_value(BigFloat(eval(h2, x) - x * x - a * x * (1 - x)))));
    }
  }
  if (worst > 1e-10) o.fail("generator moments");
  o.detail << (o.pass ? "" : "; ") << "10 random P exact, generator residual " << worst;
}

// ---- 7 ----
void criterion7(Outcome& o) {
  for (double eps : {0.3, 0.5, 0.7}) {
    for (double lambda : {0.0, 1.0, 1.5}) {
      const auto f = FunctionHandle::catalog("xeps", {eps});
      std::vector<double> ts, vs;
      for (int j = 4; j <= 10; ++j) {
        ts.push_back(std::ldexp(1.0, -j));
        vs.push_back(omega_dt(f, 2, lambda, ts.back()).value);
      }
      const double slope = loglog_slope(ts, vs);
      const double want = std::min(2.0, eps / (1 - lambda / 2));
      if (std::abs(slope - want) > 0.05) {
        o.fail("eps=" + std::to_string(eps) + " lambda=" + std::to_string(lambda) + " slope " + std::to_string(slope));
      }
      o.detail << (o.detail.tellp() > 0 ? " " : "") << slope << "/" << want;
    }
  }
}

// ---- 8 ----
void criterion8(Outcome& o) {
  BernXepsConfig c;
  c.eps = 0.5;
  c.lambda = 0;
  c.n_list = {16384};
  const auto res = run_bernstein_xeps(c);
  const double v = res.summary["voronovskaya_last"].get<double>();
  const double want = std::sqrt(2.0) / 16;
  const double rel = std::abs(v - want) / want;
  if (rel > 0.05) o.fail("outside 5%");
  o.detail << (o.pass ? "" : "; ") << "n(f-B_n f)(1/2) = " << v << ", sqrt(2)/16 = " << want << ", rel " << rel;
}

// ---- 9 ----
void criterion9(Outcome& o) {
  for (const std::string f : {"exp", "trunc:0.5:3"}) {
    JacksonConfig c;
    c.f = f;
    c.q = 4;
    const auto res = run_jackson(c);
    const auto r = res.table.numbers("ratio");
    std::vector<double> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    const double med = 0.5 * (sorted[(sorted.size() - 1) / 2] + sorted[sorted.size() / 2]);
    for (const auto& chk : res.checks) {
      if (!chk.pass) o.fail(f + " " + chk.name + " ");
    }
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << f << " max " << sorted.back() << " median " << med;
  }
}

// ---- 10 ----
void criterion10(Outcome& o) {
  const auto res = run_lambda2_counterexample(Lambda2Config{});
  for (const auto& chk : res.checks) {
    if (!chk.pass) o.fail(chk.name + " (" + chk.detail + ") ");
  }
  o.detail << "omega max/min " << res.summary["modulus_max_over_min"].get<double>() << ", E_5 last/first "
           << res.summary["error_last_over_first"].get<double>();
}

// ---- 11 ----
void criterion11(Outcome& o) {
  const auto r = best_uniform(mono(2), 1, 257);
  if (std::abs(r.error - 0.125) > 1e-3) o.fail("E_1(e_2) = " + std::to_string(r.error));
  o.detail << (o.pass ? "" : "; ") << "E_1(e_2) = " << r.error;
  for (const std::string spec : {"exp", "exp:3", "log:0.5", "xeps:0.5"}) {
    const auto f = FunctionHandle::parse(spec);
    if (f.singular_at_zero()) continue;
    for (int n : {2, 4, 6}) {
      const auto b = best_uniform(f, n, 257);
      const int osc = equioscillation_count(f, b);
      if (osc < n + 2) o.fail(spec + " n=" + std::to_string(n) + " osc " + std::to_string(osc));
    }
  }
  o.detail << ", equioscillation >= n+2 for exp, exp:3, log:0.5 at n=2,4,6";
}

struct Criterion {
  std::function<void(Outcome&)> run;
  double budget;  // seconds
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run only this criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{{criterion1, 10},  {criterion2, 10}, {criterion3, 30}, {criterion4, 300},
                                   {criterion5, 300}, {criterion6, 30}, {criterion7, 120}, {criterion8, 60},
                                   {criterion9, 300}, {criterion10, 120}, {criterion11, 10}};
  bool ok = true;
  for (int i = 1; i <= 11; ++i) {
    if (only && i != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      all[static_cast<std::size_t>(i - 1)].run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double budget = all[static_cast<std::size_t>(i - 1)].budget;
    if (secs > budget) o.fail("over time budget ");
    ok = ok && o.pass;
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS " : "FAIL ") << o.detail.str() << " [" << secs
              << "s of " << budget << "s]" << std::endl;
  }
  return ok ? 0 : 1;
}
