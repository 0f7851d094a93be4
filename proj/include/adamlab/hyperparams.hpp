#pragma once

#include <cstdint>

namespace adamlab {

/// Optimizer knobs. beta1 = beta2 = 0 is allowed and runs with exact limit
/// semantics: m_t = g_t, v_t = g_t^2, bias-correction divisor 1 - 0^t = 1.
struct HyperParams {
  double eta = 0.1;
  double beta1 = 0.1;
  double beta2 = 0.1;
  double lambda_m = 1.0;
  double lambda_g = 1.0;
  std::int64_t T = 200;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const HyperParams& hyper);

}  // namespace adamlab
