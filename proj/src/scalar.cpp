#include "shapeapprox/scalar.hpp"

#include <cmath>
#include <sstream>

#include <gmp.h>
#include <mpfr.h>

namespace shapeapprox {

namespace {

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

unsigned current_precision_bits() {
  BigFloat probe(0);
  return precision_bits_of(probe);
}

unsigned precision_bits_of(const BigFloat& x) {
  return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_digits10_(BigFloat::default_precision()), bits_(bits) {
  if (bits < 53) {
    throw DomainError("BigFloat precision must be at least 53 bits");
  }
  BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_digits10_); }

Rational to_rational(const BigFloat& x) {
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, x.backend().data());
  Rational out(q);
  mpq_clear(q);
  return out;
}

template <>
double parse_scalar<double>(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
  }
  return std::stod(s);
}

template <>
BigFloat parse_scalar<BigFloat>(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    return BigFloat(s.substr(0, slash)) / BigFloat(s.substr(slash + 1));
  }
  return BigFloat(s);
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    return parse_scalar<Rational>(s.substr(0, slash)) / parse_scalar<Rational>(s.substr(slash + 1));
  }
  // Decimal notation: the rational is the exact decimal value.
  std::string mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mantissa = s.substr(0, e);
    exponent = std::stol(s.substr(e + 1));
  }
  bool negative = !mantissa.empty() && mantissa[0] == '-';
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    mantissa.erase(0, 1);
  }
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  if (mantissa.empty()) {
    throw DomainError("cannot parse scalar '" + s + "'");
  }
  mantissa.erase(0, std::min(mantissa.find_first_not_of('0'), mantissa.size() - 1));
  Rational value{boost::multiprecision::mpz_int(mantissa)};
  boost::multiprecision::mpz_int ten_pow = boost::multiprecision::pow(
      boost::multiprecision::mpz_int(10), static_cast<unsigned>(std::labs(exponent)));
  value = exponent >= 0 ? Rational(value * Rational(ten_pow)) : Rational(value / Rational(ten_pow));
  return negative ? Rational(-value) : value;
}

template <>
std::string format_scalar<double>(const double& x, int significant_digits) {
  std::ostringstream os;
  os.precision(significant_digits > 0 ? significant_digits : 17);
  os << x;
  return os.str();
}

template <>
std::string format_scalar<BigFloat>(const BigFloat& x, int significant_digits) {
  int digits = significant_digits > 0
                   ? significant_digits
                   : static_cast<int>(precision_bits_of(x) * 0.30102999566398120) + 1;
  return x.str(digits, std::ios_base::scientific);
}

template <>
std::string format_scalar<Rational>(const Rational& x, int /*significant_digits*/) {
  return x.str();
}

}  // namespace shapeapprox
