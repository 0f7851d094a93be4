#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "adamlab/errors.hpp"
#include "adamlab/exact.hpp"

namespace adamlab {

/// A constant that is undefined for some (beta1, beta2). Absence carries the
/// reason; there is never a NaN standing in for "not applicable".
template <typename T>
class OptionalConstant {
 public:
  OptionalConstant() : reason_("uninitialized") {}

  static OptionalConstant available(T v) {
    OptionalConstant c;
    c.value_ = v;
    c.reason_.clear();
    return c;
  }
  static OptionalConstant undefined(std::string reason) {
    OptionalConstant c;
    c.reason_ = std::move(reason);
    return c;
  }

  bool has_value() const { return value_.has_value(); }
  explicit operator bool() const { return has_value(); }

  /// Value, or ScopeError naming the constant and why it is undefined.
  T value_or_throw(std::string_view name) const {
    if (!value_)
      throw ScopeError(std::string(name) + " undefined: " + reason_);
    return *value_;
  }

  T value() const { return value_or_throw("constant"); }
  const std::string& reason() const { return reason_; }

 private:
  std::optional<T> value_;
  std::string reason_;
};

/// Constants derived from (beta1, beta2).
///
///   x1 = 1 - beta1                 x2 = 1 - beta2
///   gamma = beta1^2 / sqrt(beta2)  (0 by convention when beta1 = 0)
///   rho = beta2 / beta1^2          K = rho/(rho-1) = beta2/(beta2 - beta1^2)
///   ratio_bound = K * x1^2 / x2    (the per-step cap on m_t^2/v_t)
///   tau = floor(-log 2 / log beta1)
///   r = 2 log beta1 / log beta2
///
/// Rational-valued constants are computed in exact rational arithmetic and
/// rounded once, so decimal inputs give decimal-faithful results
/// (K(0.9, 0.99) is exactly 5.5). The exact inputs are kept for downstream
/// scope decisions with inclusive-boundary semantics.
struct DerivedConstants {
  Rational beta1_exact;
  Rational beta2_exact;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double x1 = 1.0;
  double x2 = 1.0;
  OptionalConstant<double> gamma;
  OptionalConstant<double> rho;
  OptionalConstant<double> K;
  OptionalConstant<double> ratio_bound;
  OptionalConstant<double> r;
  OptionalConstant<std::int64_t> tau;
};

/// Throws std::invalid_argument unless 0 <= beta1 < 1 and 0 <= beta2 < 1.
DerivedConstants derived_constants(const Rational& beta1, const Rational& beta2);

/// Doubles convert losslessly to rationals, so this is exact on its inputs.
DerivedConstants derived_constants(double beta1, double beta2);

/// Decimal-faithful entry point ("0.9", "0.99").
DerivedConstants derived_constants_decimal(std::string_view beta1,
                                           std::string_view beta2);

}  // namespace adamlab
