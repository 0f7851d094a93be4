#include "adamlab/exact.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace adamlab {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(std::int64_t n) {
  cpp_int r = 1;
  for (std::int64_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  const auto fail = [&] {
    throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  cpp_int mantissa = 0;
  std::int64_t frac_digits = 0;
  std::int64_t digits = 0;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    mantissa = mantissa * 10 + (text[i] - '0');
    ++digits;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++digits;
      ++frac_digits;
    }
  }
  if (digits == 0) fail();
  std::int64_t exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    if (i == text.size()) fail();
    std::int64_t e = 0;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      e = e * 10 + (text[i] - '0');
      if (e > 100000) fail();
    }
    exponent = exp_negative ? -e : e;
  }
  if (i != text.size()) fail();

  Rational value(mantissa, 1);
  const std::int64_t net = exponent - frac_digits;
  if (net > 0)
    value *= Rational(pow10(net), 1);
  else if (net < 0)
    value /= Rational(pow10(-net), 1);
  if (negative) value = -value;
  return value;
}

double to_double(const Rational& q) {
  // Route through the 50-digit float so the final double is the correctly
  // rounded value of the rational in all practical cases.
  return to_double(to_bigfloat(q));
}

double to_double(const BigFloat& x) { return x.convert_to<double>(); }

BigFloat to_bigfloat(const Rational& q) {
  return BigFloat(boost::multiprecision::numerator(q)) /
         BigFloat(boost::multiprecision::denominator(q));
}

Rational rational_pow(Rational base, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("rational_pow: negative exponent");
  Rational result(1);
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace adamlab
