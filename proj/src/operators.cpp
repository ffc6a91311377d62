#include "shapeapprox/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shapeapprox/quadrature.hpp"

namespace shapeapprox {

namespace {

template <class T>
T eval_f(const FunctionHandle& f, const T& x) {
  return f(x);
}

int auto_order(const QuadratureOptions& q, int N) {
  return q.order > 0 ? q.order : std::max(64, N + 2);
}

template <class T>
Polynomial<T> poly_of(const FunctionHandle& f) {
  return polynomial_cast<T>(to_monomial(f.polynomial()));
}

void check_order(const FunctionHandle& f, int order, int N) {
  if (f.is_polynomial()) {
    const int need = (degree(f.polynomial()) + N + 2) / 2;
    if (order < need) {
      throw DomainError("quadrature order " + std::to_string(order) + " below " +
                        std::to_string(need) + " needed for exactness on '" + f.name() + "'");
    }
  }
}

}  // namespace

template <class T>
std::vector<T> bernstein_moments(int N, const FunctionHandle& f, const QuadratureOptions& q) {
  if (N < 0) {
    throw DomainError("bernstein_moments: negative degree");
  }
  std::vector<T> v(static_cast<std::size_t>(N) + 1, T(0));
  if (f.is_polynomial() && !q.force) {
    const auto c = poly_of<T>(f).coeffs();
    for (int j = 0; j <= N; ++j) {
      // int p_{N,j} e_i = (j+1)_i / (N+1)_{i+1}
      T term = T(1) / T(N + 1);
      T sum(0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) {
          term = term * T(j + static_cast<int>(i)) / T(N + 1 + static_cast<int>(i));
        }
        sum += c[i] * term;
      }
      v[static_cast<std::size_t>(j)] = sum;
    }
    return v;
  }
  if constexpr (std::is_same_v<T, Rational>) {
    throw DomainError("exact moments need a polynomial input, got '" + f.name() + "'");
  } else {
    const int order = auto_order(q, N);
    check_order(f, order, N);
    const auto rule = adapted_rule<T>(f, order);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const T wf = rule.weights[i] * eval_f(f, rule.nodes[i]);
      const auto b = bernstein_basis_values<T>(N, rule.nodes[i]);
      for (int j = 0; j <= N; ++j) {
        v[static_cast<std::size_t>(j)] += wf * b[static_cast<std::size_t>(j)];
      }
    }
    return v;
  }
}

template <class T>
Polynomial<T> bernstein_image(int n, const FunctionHandle& f) {
  if (n < 1) {
    throw DomainError("bernstein operator requires n >= 1");
  }
  std::vector<T> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    c[static_cast<std::size_t>(k)] = eval_f(f, T(T(k) / T(n)));
  }
  return Polynomial<T>::bernstein(std::move(c));
}

template <class T>
T apply_bernstein(int n, const FunctionHandle& f, const T& x) {
  if (n < 1) {
    throw DomainError("bernstein operator requires n >= 1");
  }
  if (x < T(0) || x > T(1)) {
    throw DomainError("bernstein operator evaluated outside [0,1]");
  }
  const auto b = bernstein_basis_values<T>(n, x);
  T sum(0);
  for (int k = 0; k <= n; ++k) {
    if (b[static_cast<std::size_t>(k)] != T(0)) {
      sum += eval_f(f, T(T(k) / T(n))) * b[static_cast<std::size_t>(k)];
    }
  }
  return sum;
}

template <class T>
Polynomial<T> genuine_durrmeyer_image(int n, const FunctionHandle& f, const QuadratureOptions& q) {
  if (n < 2) {
    throw DomainError("genuine Bernstein-Durrmeyer requires n >= 2");
  }
  const auto v = bernstein_moments<T>(n - 2, f, q);
  std::vector<T> c(static_cast<std::size_t>(n) + 1);
  c.front() = eval_f(f, T(0));
  c.back() = eval_f(f, T(1));
  for (int k = 1; k < n; ++k) {
    c[static_cast<std::size_t>(k)] = T(n - 1) * v[static_cast<std::size_t>(k) - 1];
  }
  return Polynomial<T>::bernstein(std::move(c));
}

template <class T>
Polynomial<T> durrmeyer_image(int n, const FunctionHandle& f, const QuadratureOptions& q) {
  if (n < 0) {
    throw DomainError("Bernstein-Durrmeyer requires n >= 0");
  }
  auto v = bernstein_moments<T>(n, f, q);
  for (auto& x : v) {
    x *= T(n + 1);
  }
  return Polynomial<T>::bernstein(std::move(v));
}

template <class T>
Polynomial<T> lupas_image(int n, const T& alpha, const FunctionHandle& f, const QuadratureOptions& q) {
  if (!(alpha > T(-1))) {
    throw DomainError("Durrmeyer-Lupas operator requires alpha > -1");
  }
  if (n < 0) {
    throw DomainError("Durrmeyer-Lupas operator requires n >= 0");
  }
  std::vector<T> out(static_cast<std::size_t>(n) + 1, T(0));
  if (f.is_polynomial() && !q.force) {
    // <p_{n,k}, e_i> / <p_{n,k}, 1> = (k+a+1)_i / (n+2a+2)_i
    const auto c = poly_of<T>(f).coeffs();
    for (int k = 0; k <= n; ++k) {
      T term(1);
      T sum(0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) {
          const int ii = static_cast<int>(i) - 1;
          term = term * (T(k + 1 + ii) + alpha) / (T(n + 2 + ii) + T(2) * alpha);
        }
        sum += c[i] * term;
      }
      out[static_cast<std::size_t>(k)] = sum;
    }
    return Polynomial<T>::bernstein(std::move(out));
  }
  if constexpr (std::is_same_v<T, Rational>) {
    throw DomainError("exact Lupas image needs a polynomial input, got '" + f.name() + "'");
  } else {
    const int order = auto_order(q, n);
    check_order(f, order, n);
    const auto& rule = gauss_jacobi01<T>(order, to_double(alpha));
    std::vector<T> den(static_cast<std::size_t>(n) + 1, T(0));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const T fw = eval_f(f, rule.nodes[i]) * rule.weights[i];
      const auto b = bernstein_basis_values<T>(n, rule.nodes[i]);
      for (int k = 0; k <= n; ++k) {
        out[static_cast<std::size_t>(k)] += fw * b[static_cast<std::size_t>(k)];
        den[static_cast<std::size_t>(k)] += rule.weights[i] * b[static_cast<std::size_t>(k)];
      }
    }
    for (int k = 0; k <= n; ++k) {
      out[static_cast<std::size_t>(k)] /= den[static_cast<std::size_t>(k)];
    }
    return Polynomial<T>::bernstein(std::move(out));
  }
}

template <class T>
Polynomial<T> gavrea_image(const Polynomial<T>& P, const FunctionHandle& f, const QuadratureOptions& q) {
  const auto mono = to_monomial(P);
  const auto& a = mono.coeffs();
  const int d = mono.n();
  const T f0 = eval_f(f, T(0));
  const T f1 = eval_f(f, T(1));

  // rows[k][j] = int p_{k,j} f, from the top row down by
  // p_{k,j} = ((k+1-j) p_{k+1,j} + (j+1) p_{k+1,j+1}) / (k+1).
  std::vector<std::vector<T>> rows(static_cast<std::size_t>(d) + 1);
  rows[static_cast<std::size_t>(d)] = bernstein_moments<T>(d, f, q);
  for (int k = d - 1; k >= 0; --k) {
    const auto& up = rows[static_cast<std::size_t>(k) + 1];
    auto& row = rows[static_cast<std::size_t>(k)];
    row.resize(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
      row[static_cast<std::size_t>(j)] =
          (T(k + 1 - j) * up[static_cast<std::size_t>(j)] +
           T(j + 1) * up[static_cast<std::size_t>(j) + 1]) /
          T(k + 1);
    }
  }

  // a_k/(k+1) U_{k+2}(f) has Bernstein coefficients
  // [a_k f0/(k+1), a_k v_{k,0}, ..., a_k v_{k,k}, a_k f1/(k+1)].
  std::vector<T> acc;
  for (int k = 0; k <= d; ++k) {
    const int deg = k + 2;
    if (k > 0) {
      const int m = deg - 1;  // current degree of acc
      std::vector<T> next(static_cast<std::size_t>(deg) + 1);
      next[0] = acc[0];
      next[static_cast<std::size_t>(deg)] = acc[static_cast<std::size_t>(m)];
      for (int i = 1; i < deg; ++i) {
        next[static_cast<std::size_t>(i)] =
            (T(i) * acc[static_cast<std::size_t>(i) - 1] +
             T(m + 1 - i) * acc[static_cast<std::size_t>(i)]) /
            T(m + 1);
      }
      acc = std::move(next);
    } else {
      acc.assign(3, T(0));
    }
    const T& ak = a[static_cast<std::size_t>(k)];
    if (ak == T(0)) {
      continue;
    }
    const auto& row = rows[static_cast<std::size_t>(k)];
    acc[0] += ak * f0 / T(k + 1);
    acc[static_cast<std::size_t>(deg)] += ak * f1 / T(k + 1);
    for (int j = 0; j <= k; ++j) {
      acc[static_cast<std::size_t>(j) + 1] += ak * row[static_cast<std::size_t>(j)];
    }
  }
  return Polynomial<T>::bernstein(std::move(acc));
}

Polynomial<Rational> genuine_durrmeyer_moment(int n, int i) {
  if (n < 2 || i < 0) {
    throw DomainError("genuine_durrmeyer_moment requires n >= 2, i >= 0");
  }
  if (i == 0) {
    return Polynomial<Rational>::constant(Rational(1));
  }
  // (n-1)! i! / (n+i-1)!
  Rational lead(1);
  for (int j = 1; j <= i; ++j) {
    lead = lead * Rational(j) / Rational(n - 1 + j);
  }
  std::vector<Rational> c(static_cast<std::size_t>(i) + 1, Rational(0));
  for (int j = std::max(0, i - n); j <= i - 1; ++j) {
    c[static_cast<std::size_t>(i - j)] += lead * binomial<Rational>(i - 1, j) * binomial<Rational>(n, i - j);
  }
  return Polynomial<Rational>::monomial(std::move(c));
}

Polynomial<Rational> genuine_durrmeyer_moment_recurrence(int n, int i) {
  if (n < 2 || i < 0) {
    throw DomainError("genuine_durrmeyer_moment requires n >= 2, i >= 0");
  }
  auto prev = Polynomial<Rational>::constant(Rational(1));
  if (i == 0) {
    return prev;
  }
  auto cur = Polynomial<Rational>::power(1);
  for (int k = 1; k < i; ++k) {
    const auto lin = Polynomial<Rational>::monomial({Rational(2 * k, n + k), Rational(n - k, n + k)});
    const auto one_minus_x = Polynomial<Rational>::monomial({Rational(1), Rational(-1)});
    auto next = subtract(multiply(lin, cur),
                         scale(multiply(one_minus_x, prev),
                               Rational(Rational(k * (k - 1)) / Rational((n + k) * (n + k - 1)))));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

template <class T>
Polynomial<T> lupas_moment(int n, const T& alpha, int i) {
  const T a1 = alpha + T(1);
  const T den1 = T(n) + T(2) * alpha + T(2);
  switch (i) {
    case 0:
      return Polynomial<T>::constant(T(1));
    case 1:
      return Polynomial<T>::monomial({T(a1 / den1), T(T(n) / den1)});
    case 2: {
      const T den = den1 * (den1 + T(1));
      return Polynomial<T>::monomial({T(a1 * (alpha + T(2)) / den), T(T(2 * n) * (alpha + T(2)) / den),
                                      T(T(n) * T(n - 1) / den)});
    }
    default:
      throw DomainError("lupas_moment closed forms cover i <= 2");
  }
}

template <class T>
T lupas_derivative_identity_residual(int n, const T& alpha, int nu, const Polynomial<Rational>& f) {
  if (nu < 1 || nu > n) {
    throw DomainError("derivative identity requires 1 <= nu <= n");
  }
  const auto fh = FunctionHandle::from_polynomial(f);
  const auto lhs = differentiate(lupas_image<T>(n, alpha, fh), nu);
  const auto fnu = FunctionHandle::from_polynomial(differentiate(to_monomial(f), nu));
  T factor(1);
  for (int j = 0; j < nu; ++j) {
    factor = factor * T(n - j);
  }
  factor /= pochhammer(T(T(n) + T(2) * alpha + T(2)), nu);
  const auto rhs = lupas_image<T>(n - nu, T(alpha + T(nu)), fnu);
  T worst(0);
  for (int i = 0; i < 50; ++i) {
    const T x = T(i) / T(49);
    worst = std::max(worst, abs_value(T(eval(lhs, x) - factor * eval(rhs, x))));
  }
  return worst;
}

MnOperator::MnOperator(int q, int n, const GeneratorOptions& opt)
    : q_(q), n_(n), r_(std::max(q - 1, 1)), bits_(opt.start_bits) {
  if (q < 0 || n < 1) {
    throw DomainError("M_n requires q >= 0 and n >= 1");
  }
  alpha_n_ = BigFloat(1);
  if (n - 2 > 8 * r_) {
    gen_ = build_generator(n - 2, r_, opt);
    bits_ = gen_->precision_bits;
    if (gen_->moment_deficiency.at(2) <= BigFloat(0.25)) {
      use_gen_ = true;
      regime_ = "gavrea";
      alpha_n_ = gen_->moment_deficiency.at(2);
    } else {
      regime_ = "fallback:alpha";
    }
  } else {
    regime_ = "fallback:small-n";
  }
}

Polynomial<BigFloat> MnOperator::image_big(const FunctionHandle& f, const QuadratureOptions& qo) const {
  PrecisionScope scope(bits_);
  if (use_gen_) {
    return elevate(gavrea_image<BigFloat>(gen_->P, f, qo), n_);
  }
  const auto lin = Polynomial<BigFloat>::bernstein({f(BigFloat(0)), f(BigFloat(1))});
  return elevate(lin, n_);
}

Polynomial<double> MnOperator::image(const FunctionHandle& f, const QuadratureOptions& qo) const {
  return polynomial_cast<double>(image_big(f, qo));
}

double MnOperator::operator()(const FunctionHandle& f, double x) const {
  return eval(image(f), x);
}

double apply_Mn(int q, int n, const FunctionHandle& f, double x) {
  return MnOperator(q, n)(f, x);
}

OperatorSpec OperatorSpec::parse(std::string_view text) {
  OperatorSpec s;
  const std::string t(text);
  const auto colon = t.find(':');
  const std::string kind = t.substr(0, colon);
  if (kind == "bernstein") {
    s.kind = OperatorKind::bernstein;
  } else if (kind == "genuine" || kind == "genuine_durrmeyer") {
    s.kind = OperatorKind::genuine_durrmeyer;
  } else if (kind == "durrmeyer") {
    s.kind = OperatorKind::durrmeyer;
  } else if (kind == "lupas") {
    s.kind = OperatorKind::lupas;
  } else if (kind == "gavrea") {
    s.kind = OperatorKind::gavrea;
  } else if (kind == "mn" || kind == "Mn") {
    s.kind = OperatorKind::mn;
  } else {
    throw DomainError("unknown operator kind '" + kind + "'");
  }
  if (colon != std::string::npos) {
    std::stringstream rest(t.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw DomainError("operator parameter '" + item + "' is not key=value");
      }
      const std::string key = item.substr(0, eq);
      const std::string val = item.substr(eq + 1);
      if (key == "n") {
        s.n = std::stoi(val);
      } else if (key == "alpha") {
        s.alpha = parse_scalar<Rational>(val);
      } else if (key == "q") {
        s.q = std::stoi(val);
      } else if (key == "r") {
        s.r = std::stoi(val);
      } else if (key == "order") {
        s.quadrature.order = std::stoi(val);
      } else {
        throw DomainError("unknown operator parameter '" + key + "'");
      }
    }
  }
  if (s.kind == OperatorKind::lupas && !(s.alpha > -1)) {
    throw DomainError("lupas requires alpha > -1");
  }
  return s;
}

std::string OperatorSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case OperatorKind::bernstein: os << "bernstein:n=" << n; break;
    case OperatorKind::genuine_durrmeyer: os << "genuine:n=" << n; break;
    case OperatorKind::durrmeyer: os << "durrmeyer:n=" << n; break;
    case OperatorKind::lupas: os << "lupas:n=" << n << ",alpha=" << format_scalar(alpha); break;
    case OperatorKind::gavrea: os << "gavrea:n=" << n << ",r=" << r; break;
    case OperatorKind::mn: os << "mn:n=" << n << ",q=" << q; break;
  }
  if (quadrature.order > 0) {
    os << ",order=" << quadrature.order;
  }
  return os.str();
}

void OperatorSpec::prepare(const GeneratorOptions& opt) {
  if (kind == OperatorKind::gavrea && !generator) {
    generator = std::make_shared<const GeneratorPoly>(build_generator(n, r, opt));
  }
  if (kind == OperatorKind::mn && !mn) {
    mn = std::make_shared<const MnOperator>(q, n, opt);
  }
}

template <class T>
Polynomial<T> operator_image(const OperatorSpec& spec, const FunctionHandle& f) {
  switch (spec.kind) {
    case OperatorKind::bernstein:
      return bernstein_image<T>(spec.n, f);
    case OperatorKind::genuine_durrmeyer:
      return genuine_durrmeyer_image<T>(spec.n, f, spec.quadrature);
    case OperatorKind::durrmeyer:
      return durrmeyer_image<T>(spec.n, f, spec.quadrature);
    case OperatorKind::lupas:
      return lupas_image<T>(spec.n, scalar_cast<T>(spec.alpha), f, spec.quadrature);
    case OperatorKind::gavrea: {
      if (!spec.generator) {
        throw DomainError("gavrea spec has no generator; call prepare()");
      }
      PrecisionScope scope(spec.generator->precision_bits);
      return polynomial_cast<T>(gavrea_image<BigFloat>(spec.generator->P, f, spec.quadrature));
    }
    case OperatorKind::mn: {
      if (!spec.mn) {
        throw DomainError("mn spec has no operator; call prepare()");
      }
      return polynomial_cast<T>(spec.mn->image_big(f, spec.quadrature));
    }
  }
  throw DomainError("unreachable operator kind");
}

MomentProfile moment_profile(const OperatorSpec& spec) {
  MomentProfile mp;
  mp.n = spec.n;
  const bool exact = spec.kind != OperatorKind::gavrea && spec.kind != OperatorKind::mn;
  auto image_of = [&](int i) {
    const auto e = FunctionHandle::from_polynomial(Polynomial<Rational>::power(i), "e" + std::to_string(i));
    return to_monomial(operator_image<Rational>(spec, e));
  };
  mp.e0 = image_of(0);
  mp.e1 = image_of(1);
  mp.e2 = image_of(2);

  const double tol = exact ? 0.0 : 1e-10;
  auto coeff = [](const Polynomial<Rational>& p, int i) {
    return i < static_cast<int>(p.coeffs().size()) ? p[static_cast<std::size_t>(i)] : Rational(0);
  };
  double lin_err = 0;
  for (int i = 0; i < 3; ++i) {
    lin_err = std::max(lin_err, std::abs(to_double(Rational(coeff(mp.e0, i) - (i == 0 ? 1 : 0)))));
    lin_err = std::max(lin_err, std::abs(to_double(Rational(coeff(mp.e1, i) - (i == 1 ? 1 : 0)))));
  }
  for (int i = 3; i < static_cast<int>(std::max(mp.e0.coeffs().size(), mp.e1.coeffs().size())); ++i) {
    lin_err = std::max(lin_err, std::abs(to_double(coeff(mp.e0, i))));
    lin_err = std::max(lin_err, std::abs(to_double(coeff(mp.e1, i))));
  }
  if (lin_err > tol) {
    throw DomainError("operator '" + spec.to_string() + "' does not preserve linear functions");
  }

  const auto d = subtract(mp.e2, Polynomial<Rational>::power(2));
  mp.alpha_n = coeff(d, 1);
  const auto model = Polynomial<Rational>::monomial({Rational(0), mp.alpha_n, Rational(-mp.alpha_n)});
  const auto res = subtract(d, model);
  double worst = 0;
  for (const auto& c : res.coeffs()) {
    worst = std::max(worst, std::abs(to_double(c)));
  }
  mp.residual = worst;
  mp.conforming = worst <= std::max(tol, 1e-10) && mp.alpha_n >= 0;
  if (!mp.conforming) {
    throw DomainError("operator '" + spec.to_string() + "': L(e_2) - x^2 is not alpha_n x(1-x), residual " +
                      std::to_string(worst));
  }
  return mp;
}

#define SHAPEAPPROX_OPS(T)                                                                          \
  template std::vector<T> bernstein_moments<T>(int, const FunctionHandle&, const QuadratureOptions&); \
  template Polynomial<T> bernstein_image<T>(int, const FunctionHandle&);                            \
  template T apply_bernstein<T>(int, const FunctionHandle&, const T&);                              \
  template Polynomial<T> genuine_durrmeyer_image<T>(int, const FunctionHandle&,                     \
                                                    const QuadratureOptions&);                      \
  template Polynomial<T> durrmeyer_image<T>(int, const FunctionHandle&, const QuadratureOptions&);  \
  template Polynomial<T> lupas_image<T>(int, const T&, const FunctionHandle&,                       \
                                        const QuadratureOptions&);                                  \
  template Polynomial<T> gavrea_image<T>(const Polynomial<T>&, const FunctionHandle&,               \
                                         const QuadratureOptions&);                                 \
  template Polynomial<T> lupas_moment<T>(int, const T&, int);                                       \
  template T lupas_derivative_identity_residual<T>(int, const T&, int, const Polynomial<Rational>&); \
  template Polynomial<T> operator_image<T>(const OperatorSpec&, const FunctionHandle&);

SHAPEAPPROX_OPS(double)
SHAPEAPPROX_OPS(BigFloat)
SHAPEAPPROX_OPS(Rational)

#undef SHAPEAPPROX_OPS

}  // namespace shapeapprox
