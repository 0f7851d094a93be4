#include "adamlab/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "adamlab/errors.hpp"

namespace adamlab {

TrajectoryState step(const std::optional<TrajectoryState>& prev, double g_t,
                     const HyperParams& hyper, const StepOptions& options) {
  validate(hyper);
  if (!std::isfinite(g_t))
    throw std::invalid_argument("non-finite gradient value");

  TrajectoryState next;
  if (prev.has_value()) {
    next = *prev;
    next.t = prev->t + 1;
    next.lambda_m_pow = prev->lambda_m_pow * hyper.lambda_m;
    next.lambda_g_pow = prev->lambda_g_pow * hyper.lambda_g;
  } else {
    next.t = 1;
    next.lambda_m_pow = 1.0;
    next.lambda_g_pow = 1.0;
    if (options.accumulate_s && g_t == 0.0)
      throw UndefinedSeriesError("s_T undefined: g_1 = 0");
  }

  const double m_prev = prev ? prev->m : 0.0;
  const double v_prev = prev ? prev->v : 0.0;
  const double t_real = static_cast<double>(next.t);

  next.g = g_t;
  next.m = hyper.beta1 * next.lambda_m_pow * m_prev +
           (1.0 - hyper.beta1 * next.lambda_g_pow) * g_t;
  next.v = hyper.beta2 * v_prev + (1.0 - hyper.beta2) * g_t * g_t;
  // For beta = 0 the divisor is 1 - 0^t = 1, so the limit form m_hat = g,
  // v_hat = g^2 falls out of the same expression.
  next.m_hat = next.m / (1.0 - std::pow(hyper.beta1, t_real));
  next.v_hat = next.v / (1.0 - std::pow(hyper.beta2, t_real));

  if (options.accumulate_s) {
    {
      const double term = next.s_term();
      const double y = term - next.s_carry;
      const double sum = next.s_running + y;
      next.s_carry = (sum - next.s_running) - y;
      next.s_running = sum;
    }
    {
      const double term = g_t * g_t;
      const double y = term - next.g_norm_sq_carry;
      const double sum = next.g_norm_sq_running + y;
      next.g_norm_sq_carry = (sum - next.g_norm_sq_running) - y;
      next.g_norm_sq_running = sum;
    }
  }
  return next;
}

Trace run_trace_values(const HyperParams& hyper, std::span<const double> gradients,
                       const StepOptions& options) {
  if (gradients.empty()) throw std::invalid_argument("empty gradient sequence");
  Trace trace;
  trace.hyper = hyper;
  trace.steps.reserve(gradients.size());
  std::optional<TrajectoryState> prev;
  for (std::size_t i = 0; i < gradients.size(); ++i) {
    try {
      prev = step(prev, gradients[i], hyper, options);
    } catch (const UndefinedSeriesError&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument("step " + std::to_string(i + 1) + ": " + e.what());
    }
    trace.steps.push_back(*prev);
  }
  return trace;
}

Trace run_trace(const HyperParams& hyper, const GradientSource& source,
                std::int64_t T, const StepOptions& options) {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  const std::vector<double> g = materialize(source, T);
  return run_trace_values(hyper, g, options);
}

std::vector<double> theta_update(std::span<const double> theta_prev,
                                 std::span<const double> m_hat,
                                 std::span<const double> v_hat, std::int64_t t,
                                 const HyperParams& hyper, double epsilon) {
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (epsilon < 0.0 || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be finite and >= 0");
  if (theta_prev.size() != m_hat.size() || theta_prev.size() != v_hat.size())
    throw std::invalid_argument("theta_update: element counts differ");
  std::vector<double> theta(theta_prev.begin(), theta_prev.end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (epsilon == 0.0 && v_hat[i] == 0.0)
      throw std::domain_error("theta_update: division by zero (v_hat[" +
                              std::to_string(i) + "] = 0 with epsilon = 0)");
    theta[i] -= adam_parameter_delta(m_hat[i], v_hat[i], t, hyper.eta, epsilon);
  }
  return theta;
}

}  // namespace adamlab
