#pragma once

namespace adamlab {

/// Compensated (Kahan) accumulator. Tracks the rounding error of each
/// addition and reintroduces it in the next, so long sums do not depend on
/// accumulation order at the 1-ulp-per-term level.
struct KahanAccumulator {
  double sum = 0.0;
  double carry = 0.0;

  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace adamlab
