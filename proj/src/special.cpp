#include "shapeapprox/special.hpp"

#include <boost/math/constants/constants.hpp>

namespace shapeapprox {

TauPoly tau(int m) {
  if (m < 2) {
    throw DomainError("tau requires m >= 2");
  }
  using boost::multiprecision::cos;
  using boost::multiprecision::sin;
  const BigFloat pi = boost::math::constants::pi<BigFloat>();

  TauPoly out;
  out.m = m;
  out.x_tilde = cos(pi / BigFloat(2 * m));
  out.x_1 = cos(pi / BigFloat(m));
  const BigFloat s = sin(pi / BigFloat(2 * m));
  out.len_I1 = BigFloat(2) * s * s;

  const auto T = chebyshev_T<BigFloat>(m);
  const auto& c = T.coeffs();
  BigFloat scale_ref(0);
  for (const auto& v : c) {
    scale_ref = std::max(scale_ref, abs_value(v));
  }

  // Synthetic division by (x - x_tilde).
  std::vector<BigFloat> quotient(static_cast<std::size_t>(m));
  BigFloat acc(0);
  for (int k = m; k >= 1; --k) {
    acc = acc * out.x_tilde + c[static_cast<std::size_t>(k)];
    quotient[static_cast<std::size_t>(k) - 1] = acc;
  }
  out.remainder = acc * out.x_tilde + c[0];
  if (abs_value(out.remainder) > BigFloat("1e-20") * scale_ref) {
    throw PrecisionError("tau: synthetic division remainder too large for m=" + std::to_string(m));
  }
  for (auto& q : quotient) {
    q *= out.len_I1;
  }
  out.poly = Polynomial<BigFloat>::monomial(std::move(quotient));
  return out;
}

}  // namespace shapeapprox
