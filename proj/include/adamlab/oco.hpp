#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "adamlab/hyperparams.hpp"
#include "adamlab/trajectory.hpp"

namespace adamlab {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// f_t(theta) = sum_i (1/2) curvature_i (theta_i - center_i)^2, every step.
struct FixedQuadratic {
  std::vector<double> center;
  std::vector<double> curvature;
};

/// f_t(theta) = sign_t * slope . theta, where sign_t flips every `period`
/// steps (+1 for t = 1..period, -1 for the next period, ...). Requires a
/// feasible box for the batch minimizer.
struct AlternatingLinear {
  std::vector<double> slope;
  std::int64_t period = 1;
};

/// f_t(theta) = sum_i (1/2) kappa_t,i (theta_i - c_t,i)^2 with c_t,i uniform
/// on (center_lo, center_hi], drawn per (t, i) from a seed-derived engine.
/// kappa is 1 by default; a curvature range turns the batch minimizer into a
/// genuine curvature-weighted mean.
struct RandomQuadratic {
  std::uint64_t seed = 0;
  double center_lo = -1.0;
  double center_hi = 1.0;
  double curvature_lo = 1.0;
  double curvature_hi = 1.0;
};

using LossFamily = std::variant<FixedQuadratic, AlternatingLinear, RandomQuadratic>;

struct LossScenario {
  int dim = 1;
  LossFamily family;
  std::int64_t horizon = 1;
  std::optional<Box> box;  // reference minimizer only; required for linear
};

void validate(const LossScenario& scenario);

/// Per-step coefficients of f_t(theta) =
///   sum_i [ (1/2) kappa_i (theta_i - center_i)^2 + slope_i theta_i ].
struct StepLossCoefficients {
  std::vector<double> kappa;
  std::vector<double> center;
  std::vector<double> slope;
};

class LossStream {
 public:
  explicit LossStream(const LossScenario& scenario);

  /// Coefficients for step t (1-based). Deterministic random access.
  StepLossCoefficients coefficients(std::int64_t t) const;
  double loss(std::int64_t t, std::span<const double> theta) const;
  std::vector<double> gradient(std::int64_t t, std::span<const double> theta) const;

  const LossScenario& scenario() const { return scenario_; }

 private:
  LossScenario scenario_;
};

enum class OptimizerKind { adam, amsgrad, gradient_descent };

struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::adam;
  HyperParams hyper;
  /// Added to sqrt(v_hat) in the denominator. The scalar recurrence has no
  /// epsilon; the vector harness defaults to 1e-8 because coordinates may
  /// have an all-zero gradient history. Set to 0 to match theta_update
  /// exactly (then a zero v_hat raises std::domain_error).
  double epsilon = 1e-8;
  /// When false the raw moments m_t, v_t feed the update (the
  /// bias-correction lines are skipped).
  bool bias_correction = true;
  /// When true the step factor is eta instead of eta/sqrt(t). Off by
  /// default; no guarantee in this project depends on it.
  bool constant_rate = false;
};

std::string optimizer_id(const OptimizerSpec& spec);

/// Per-coordinate moment states (empty before the first step) plus the
/// amsgrad max accumulator, which applies to whatever second-moment value
/// feeds the denominator (bias-corrected v_hat by default).
struct OptimizerState {
  std::int64_t t = 0;
  std::vector<TrajectoryState> coords;
  std::vector<double> v_hat_max;
};

/// Advances the state one step and returns the parameter deltas (subtract
/// from theta). Gradient-descent ignores the moment machinery.
std::vector<double> optimizer_step(OptimizerState& state,
                                   std::span<const double> gradient,
                                   const OptimizerSpec& spec);

/// amsgrad with default epsilon and bias correction; value-in, value-out.
OptimizerState amsgrad_step(OptimizerState state, std::span<const double> gradient,
                            const HyperParams& hyper);

struct RegretTrace {
  std::string optimizer;
  std::string notes;
  std::vector<double> step_loss;   // f_t(theta_{t-1})
  std::vector<double> cum_regret;  // sum of losses minus best-fixed-theta loss
  std::vector<double> avg_regret;  // cum_regret / t
  std::optional<std::vector<std::vector<double>>> theta_history;

  double final_avg_regret() const { return avg_regret.back(); }
};

/// Plays the loss stream against the optimizer. Regret at horizon t is
/// measured against the batch minimizer of the first t losses (closed form
/// for every supported family). Non-finite losses, gradients or parameters
/// abort with the step index.
RegretTrace run_oco(const LossScenario& scenario, const OptimizerSpec& spec,
                    std::span<const double> theta0, bool keep_theta = false);

/// Closed-form minimizer of the summed losses over the whole horizon
/// (box-constrained only for the linear family).
std::vector<double> batch_minimizer(const LossScenario& scenario);

}  // namespace adamlab
