#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace shapeapprox {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

// Error hierarchy shared by all modules.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct DegreeError : std::length_error {
  using std::length_error::length_error;
};
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RegimeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Binary precision that newly created BigFloat values receive.
unsigned current_precision_bits();

/// Sets the BigFloat working precision for the lifetime of the object.
/// Values created before the scope keep their own precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned bits() const { return bits_; }

 private:
  unsigned saved_digits10_;
  unsigned bits_;
};

unsigned precision_bits_of(const BigFloat& x);

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "double";
};
template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
};
template <>
struct scalar_traits<BigFloat> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
};

template <class T>
double to_double(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

/// Exact conversion of a binary float to a rational.
Rational to_rational(const BigFloat& x);

/// Converts between scalar backends. Rational targets receive the exact
/// binary value of floating inputs.
template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return to_double(x);
  } else if constexpr (std::is_same_v<To, Rational> && std::is_same_v<From, BigFloat>) {
    return to_rational(x);
  } else {
    return To(x);
  }
}

/// Parses a decimal ("0.25", "1e-8") or fraction ("3/7") string.
template <class T>
T parse_scalar(std::string_view text);

/// Decimal rendering. Rationals are rendered exactly as "p/q" (or "p").
template <class T>
std::string format_scalar(const T& x, int significant_digits = 0);

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

}  // namespace shapeapprox
