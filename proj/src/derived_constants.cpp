#include "adamlab/derived_constants.hpp"

#include <stdexcept>

namespace adamlab {

namespace {

Rational square(const Rational& q) { return q * q; }

/// floor(-log 2 / log beta1) with an exact fallback when the ratio is an
/// integer (beta1^n = 1/2), where a last-digit rounding of the logs could
/// otherwise push the floor one off.
std::int64_t tau_of(const Rational& beta1) {
  const BigFloat ratio = -log(BigFloat(2)) / log(to_bigfloat(beta1));
  const BigFloat rounded = boost::multiprecision::round(ratio);
  if (abs(ratio - rounded) < BigFloat("1e-40")) {
    const auto n = rounded.convert_to<std::int64_t>();
    if (n >= 1 && n <= 1024 && rational_pow(beta1, n) == Rational(1, 2)) return n;
  }
  return boost::multiprecision::floor(ratio).convert_to<std::int64_t>();
}

}  // namespace

DerivedConstants derived_constants(const Rational& beta1, const Rational& beta2) {
  if (beta1 < 0 || beta1 >= 1 || beta2 < 0 || beta2 >= 1)
    throw std::invalid_argument("derived_constants: beta1, beta2 must be in [0, 1)");

  DerivedConstants c;
  c.beta1_exact = beta1;
  c.beta2_exact = beta2;
  c.beta1 = to_double(beta1);
  c.beta2 = to_double(beta2);
  c.x1 = to_double(Rational(1) - beta1);
  c.x2 = to_double(Rational(1) - beta2);

  if (beta1 == 0) {
    c.gamma = OptionalConstant<double>::available(0.0);
  } else if (beta2 == 0) {
    c.gamma = OptionalConstant<double>::undefined("beta2 = 0 with beta1 > 0");
  } else {
    const BigFloat g = to_bigfloat(square(beta1)) / sqrt(to_bigfloat(beta2));
    c.gamma = OptionalConstant<double>::available(to_double(g));
  }

  if (beta1 == 0) {
    c.rho = OptionalConstant<double>::undefined("beta1 = 0");
    c.K = OptionalConstant<double>::undefined("beta1 = 0");
    c.ratio_bound = OptionalConstant<double>::undefined("beta1 = 0");
  } else {
    const Rational b1sq = square(beta1);
    c.rho = OptionalConstant<double>::available(to_double(beta2 / b1sq));
    if (beta2 <= b1sq) {
      const char* why = "beta2 <= beta1^2 (requires beta2 > beta1^2)";
      c.K = OptionalConstant<double>::undefined(why);
      c.ratio_bound = OptionalConstant<double>::undefined(why);
    } else {
      const Rational k = beta2 / (beta2 - b1sq);
      c.K = OptionalConstant<double>::available(to_double(k));
      const Rational rb = k * square(Rational(1) - beta1) / (Rational(1) - beta2);
      c.ratio_bound = OptionalConstant<double>::available(to_double(rb));
    }
  }

  if (beta1 == 0) {
    c.tau = OptionalConstant<std::int64_t>::undefined("beta1 = 0");
  } else {
    c.tau = OptionalConstant<std::int64_t>::available(tau_of(beta1));
  }

  if (beta1 == 0 || beta2 == 0) {
    c.r = OptionalConstant<double>::undefined("requires beta1, beta2 in (0, 1)");
  } else {
    const BigFloat rr = 2 * log(to_bigfloat(beta1)) / log(to_bigfloat(beta2));
    c.r = OptionalConstant<double>::available(to_double(rr));
  }
  return c;
}

DerivedConstants derived_constants(double beta1, double beta2) {
  return derived_constants(Rational(beta1), Rational(beta2));
}

DerivedConstants derived_constants_decimal(std::string_view beta1,
                                           std::string_view beta2) {
  return derived_constants(parse_decimal(beta1), parse_decimal(beta2));
}

}  // namespace adamlab
