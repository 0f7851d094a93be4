#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adamlab/gradient_source.hpp"
#include "adamlab/hyperparams.hpp"

namespace adamlab {

/// Full per-step state of the scalar recurrence. Carries everything needed
/// to recompute the next step bit-for-bit: the compensated-summation carries
/// and the running lambda powers are part of the state, not hidden loop
/// variables.
struct TrajectoryState {
  std::int64_t t = 0;
  double g = 0.0;
  double m = 0.0;
  double v = 0.0;
  double m_hat = 0.0;
  double v_hat = 0.0;
  double s_running = 0.0;
  double s_carry = 0.0;
  double g_norm_sq_running = 0.0;
  double g_norm_sq_carry = 0.0;
  // lambda_{m,g}^(t-1) as used at this step, maintained as running products.
  double lambda_m_pow = 1.0;
  double lambda_g_pow = 1.0;

  /// m_hat_t / sqrt(t * v_hat_t); the t-th element of the mu vector.
  double mu() const { return m_hat / std::sqrt(static_cast<double>(t) * v_hat); }

  /// m_hat_t^2 / sqrt(t * v_hat_t); the t-th term of the running sum s.
  double s_term() const {
    return (m_hat * m_hat) / std::sqrt(static_cast<double>(t) * v_hat);
  }
};

struct Trace {
  HyperParams hyper;
  std::vector<TrajectoryState> steps;

  std::int64_t length() const { return std::ssize(steps); }
  const TrajectoryState& back() const { return steps.back(); }
  double s_final() const { return steps.back().s_running; }
  double g_norm() const { return std::sqrt(steps.back().g_norm_sq_running); }
};

struct StepOptions {
  /// When false, the running sum s (and its g_1 != 0 requirement) is
  /// disabled; moment updates still run. Used by the vector OCO harness
  /// where zero gradient components are legal.
  bool accumulate_s = true;
};

/// One step of the scalar recurrence. Pass std::nullopt for t = 1.
/// Throws UndefinedSeriesError when t = 1, g = 0 and s is accumulated;
/// std::invalid_argument on non-finite g.
TrajectoryState step(const std::optional<TrajectoryState>& prev, double g_t,
                     const HyperParams& hyper, const StepOptions& options = {});

/// Runs T steps from the source. Step errors are rethrown with the
/// offending step index prepended.
Trace run_trace(const HyperParams& hyper, const GradientSource& source,
                std::int64_t T, const StepOptions& options = {});
inline Trace run_trace(const HyperParams& hyper, const GradientSource& source) {
  return run_trace(hyper, source, hyper.T);
}

/// Same, from an already materialized gradient vector.
Trace run_trace_values(const HyperParams& hyper, std::span<const double> gradients,
                       const StepOptions& options = {});

/// The parameter move of one step: (eta/sqrt(t)) * m_hat/(sqrt(v_hat)+eps).
/// Shared by theta_update and the OCO optimizers so the two paths agree
/// bit-for-bit.
inline double adam_parameter_delta(double m_hat, double v_hat, std::int64_t t,
                                   double eta, double epsilon) {
  return (eta / std::sqrt(static_cast<double>(t))) *
         (m_hat / (std::sqrt(v_hat) + epsilon));
}

/// Element-wise parameter update. The default epsilon = 0 reproduces the
/// update rule exactly; in that case any v_hat element equal to 0 raises
/// std::domain_error instead of producing a non-finite value.
std::vector<double> theta_update(std::span<const double> theta_prev,
                                 std::span<const double> m_hat,
                                 std::span<const double> v_hat, std::int64_t t,
                                 const HyperParams& hyper, double epsilon = 0.0);

}  // namespace adamlab
