#pragma once

#include <span>

#include "adamlab/exact.hpp"
#include "adamlab/hyperparams.hpp"

namespace adamlab::testing {

/// Recomputes the scalar recurrence at 50 significant digits, with exact
/// integer powers for the lambda factors and the bias-correction divisors.
/// Independent of the double-precision implementation path (no compensated
/// summation, no running products).
BigFloat oracle_s(const HyperParams& hyper, std::span<const double> gradients);

/// |s_double - s_oracle| / s_oracle for the same inputs.
double oracle_relative_error(const HyperParams& hyper,
                             std::span<const double> gradients);

}  // namespace adamlab::testing
