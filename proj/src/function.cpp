#include "shapeapprox/function.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace shapeapprox {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double param(const std::vector<double>& p, std::size_t i, double fallback) {
  return i < p.size() ? p[i] : fallback;
}

}  // namespace

FunctionHandle FunctionHandle::from_polynomial(const Polynomial<Rational>& p, std::string name) {
  FunctionHandle h;
  h.kind_ = FunctionKind::polynomial;
  h.name_ = std::move(name);
  auto mono = to_monomial(p);
  h.poly_ = mono;
  auto as_double = polynomial_cast<double>(mono);
  h.f_double_ = [as_double](double x) { return eval(as_double, x); };
  h.f_big_ = [mono](const BigFloat& x) {
    const auto& c = mono.coeffs();
    BigFloat acc(c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      acc = acc * x + BigFloat(c[i]);
    }
    return acc;
  };
  h.monotone_ = [](int) { return false; };
  return h;
}

FunctionHandle FunctionHandle::from_callback(std::function<double(double)> f, std::string name) {
  FunctionHandle h;
  h.kind_ = FunctionKind::callback;
  h.name_ = std::move(name);
  h.f_double_ = f;
  h.f_big_ = [f](const BigFloat& x) { return BigFloat(f(to_double(x))); };
  h.monotone_ = [](int) { return false; };
  return h;
}

FunctionHandle FunctionHandle::catalog(std::string_view name, const std::vector<double>& p) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  FunctionHandle h;
  h.kind_ = FunctionKind::catalog;
  std::ostringstream label;
  label << name;
  for (double v : p) {
    label << ':' << v;
  }
  h.name_ = label.str();

  if (name == "exp") {
    const double c = param(p, 0, 1.0);
    h.f_double_ = [c](double x) { return std::exp(c * x); };
    h.f_big_ = [c](const BigFloat& x) { return BigFloat(exp(BigFloat(c) * x)); };
    h.monotone_ = [c](int) { return c >= 0; };
  } else if (name == "pow") {
    const int e = static_cast<int>(param(p, 0, 2.0));
    if (e < 0 || e != param(p, 0, 2.0)) {
      throw DomainError("pow: exponent must be a nonnegative integer");
    }
    h.poly_ = Polynomial<Rational>::power(e);
    h.kind_ = FunctionKind::catalog;
    h.f_double_ = [e](double x) { return std::pow(x, e); };
    h.f_big_ = [e](const BigFloat& x) { return BigFloat(pow(x, e)); };
    h.monotone_ = [](int) { return true; };
  } else if (name == "trunc") {
    const double a = param(p, 0, 0.5);
    const int e = static_cast<int>(param(p, 1, 1.0));
    if (e < 1) {
      throw DomainError("trunc: power must be >= 1 for continuity");
    }
    h.f_double_ = [a, e](double x) { return x > a ? std::pow(x - a, e) : 0.0; };
    h.f_big_ = [a, e](const BigFloat& x) {
      return x > BigFloat(a) ? BigFloat(pow(BigFloat(x - BigFloat(a)), e)) : BigFloat(0);
    };
    if (a > 0 && a < 1) {
      h.breakpoints_ = {a};
    }
    h.monotone_ = [e](int k) { return k >= 0 && k <= e + 1; };
  } else if (name == "xeps") {
    const double eps = param(p, 0, 0.5);
    if (!(eps > 0 && eps < 1)) {
      throw DomainError("xeps: need 0 < eps < 1");
    }
    h.f_double_ = [eps](double x) { return std::pow(x, eps); };
    h.f_big_ = [eps](const BigFloat& x) {
      return x == 0 ? BigFloat(0) : BigFloat(pow(x, BigFloat(eps)));
    };
    h.singular_at_zero_ = true;
    h.monotone_ = [](int k) { return k == 0 || k == 1; };
  } else if (name == "log") {
    const double eps = param(p, 0, 1e-2);
    if (!(eps > 0)) {
      throw DomainError("log: need eps > 0");
    }
    h.f_double_ = [eps](double x) { return std::log(x + eps); };
    h.f_big_ = [eps](const BigFloat& x) { return BigFloat(log(BigFloat(x + BigFloat(eps)))); };
    h.singular_at_zero_ = eps < 1e-3;
    h.monotone_ = [eps](int k) { return k == 1 || (k == 0 && eps >= 1); };
  } else if (name == "linear") {
    const double a = param(p, 0, 0.0);
    const double b = param(p, 1, 1.0);
    h.poly_ = Polynomial<Rational>::monomial({Rational(a), Rational(b)});
    h.f_double_ = [a, b](double x) { return a + b * x; };
    h.f_big_ = [a, b](const BigFloat& x) { return BigFloat(BigFloat(a) + BigFloat(b) * x); };
    h.monotone_ = [a, b](int k) {
      if (k >= 2) return true;
      if (k == 1) return b >= 0;
      return k == 0 && a >= 0 && a + b >= 0;
    };
  } else if (name == "pwl") {
    if (p.size() < 4 || p.size() % 2 != 0) {
      throw DomainError("pwl: expects pairs x0:y0:x1:y1:...");
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < p.size(); i += 2) {
      xs.push_back(p[i]);
      ys.push_back(p[i + 1]);
    }
    if (xs.front() != 0.0 || xs.back() != 1.0) {
      throw DomainError("pwl: breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (!(xs[i] > xs[i - 1])) {
        throw DomainError("pwl: breakpoints must increase");
      }
    }
    h.breakpoints_.assign(xs.begin() + 1, xs.end() - 1);
    auto locate = [xs](double x) {
      std::size_t i = 1;
      while (i + 1 < xs.size() && x > xs[i]) ++i;
      return i;
    };
    h.f_double_ = [xs, ys, locate](double x) {
      const std::size_t i = locate(x);
      const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
      return (1 - w) * ys[i - 1] + w * ys[i];
    };
    h.f_big_ = [xs, ys, locate](const BigFloat& x) {
      const std::size_t i = locate(to_double(x));
      const BigFloat w = (x - BigFloat(xs[i - 1])) / (BigFloat(xs[i]) - BigFloat(xs[i - 1]));
      return BigFloat((BigFloat(1) - w) * BigFloat(ys[i - 1]) + w * BigFloat(ys[i]));
    };
    bool nonneg = true;
    for (double y : ys) nonneg = nonneg && y >= 0;
    h.monotone_ = [nonneg](int k) { return k == 0 && nonneg; };
  } else {
    throw DomainError("unknown catalog function '" + std::string(name) + "'");
  }
  return h;
}

FunctionHandle FunctionHandle::parse(std::string_view spec) {
  const std::string s(spec);
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
    std::ifstream in(s);
    if (!in) {
      throw DomainError("cannot open polynomial file '" + s + "'");
    }
    auto j = nlohmann::json::parse(in);
    return from_polynomial(polynomial_from_json<Rational>(j), s);
  }
  auto parts = split(s, ':');
  std::vector<double> params;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    params.push_back(parse_scalar<double>(parts[i]));
  }
  return catalog(parts[0], params);
}

double FunctionHandle::operator()(double x) const { return f_double_(x); }

BigFloat FunctionHandle::operator()(const BigFloat& x) const { return f_big_(x); }

Rational FunctionHandle::operator()(const Rational& x) const {
  if (!poly_) {
    throw DomainError("function '" + name_ + "' has no exact rational evaluation");
  }
  return eval(*poly_, x);
}

const Polynomial<Rational>& FunctionHandle::polynomial() const {
  if (!poly_) {
    throw DomainError("function '" + name_ + "' is not a polynomial");
  }
  return *poly_;
}

bool FunctionHandle::known_k_monotone(int k) const { return monotone_ && monotone_(k); }

std::vector<int> FunctionHandle::known_monotone_orders(int up_to) const {
  std::vector<int> out;
  for (int k = 0; k <= up_to; ++k) {
    if (known_k_monotone(k)) out.push_back(k);
  }
  return out;
}

}  // namespace shapeapprox
