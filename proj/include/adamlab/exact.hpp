#pragma once

#include <cstdint>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace adamlab {

/// Exact rational arithmetic. Every binary64 value converts losslessly, and
/// decimal strings (CLI flags, config files) convert losslessly too, so
/// worked constants like K(0.9, 0.99) = 5.5 come out exact instead of
/// carrying the rounding of 0.9 and 0.99 through a chain of double ops.
using Rational = boost::multiprecision::cpp_rational;

/// 50-significant-digit binary float, used where a constant involves
/// logs or roots and we still want a correctly rounded double out.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// Parses a plain decimal literal ("0.99", "-1.5e-3") into an exact rational.
/// Throws std::invalid_argument on anything else.
Rational parse_decimal(std::string_view text);

double to_double(const Rational& q);
double to_double(const BigFloat& x);

BigFloat to_bigfloat(const Rational& q);

/// base^n for n >= 0, by repeated squaring.
Rational rational_pow(Rational base, std::int64_t n);

}  // namespace adamlab
