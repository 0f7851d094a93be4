#include "adamlab/oco.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "adamlab/errors.hpp"
#include "adamlab/kahan.hpp"
#include "adamlab/rng.hpp"

namespace adamlab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid scenario: " + what);
}

void check_finite(std::span<const double> values, std::int64_t t, const char* what) {
  for (double v : values)
    if (!std::isfinite(v))
      throw std::runtime_error("step " + std::to_string(t) + ": non-finite " + what);
}

/// Per-coordinate running sums of the quadratic/linear coefficients seen so
/// far; enough to evaluate the prefix batch minimizer and its total loss in
/// closed form.
struct PrefixSums {
  std::vector<double> kappa, kappa_center, kappa_center_sq, slope;

  explicit PrefixSums(int dim)
      : kappa(dim, 0.0), kappa_center(dim, 0.0), kappa_center_sq(dim, 0.0),
        slope(dim, 0.0) {}

  void absorb(const StepLossCoefficients& c) {
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      kappa[i] += c.kappa[i];
      kappa_center[i] += c.kappa[i] * c.center[i];
      kappa_center_sq[i] += c.kappa[i] * c.center[i] * c.center[i];
      slope[i] += c.slope[i];
    }
  }

  double minimizer_coord(std::size_t i, const std::optional<Box>& box) const {
    if (kappa[i] > 0.0) return (kappa_center[i] - slope[i]) / kappa[i];
    if (!box)
      throw std::invalid_argument(
          "batch minimizer needs a feasible box for purely linear coordinates");
    if (slope[i] > 0.0) return box->lo[i];
    if (slope[i] < 0.0) return box->hi[i];
    return 0.5 * (box->lo[i] + box->hi[i]);
  }

  /// Total prefix loss at the prefix minimizer.
  double best_fixed_loss(const std::optional<Box>& box) const {
    double total = 0.0;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      const double theta = minimizer_coord(i, box);
      total += 0.5 * kappa[i] * theta * theta - kappa_center[i] * theta +
               0.5 * kappa_center_sq[i] + slope[i] * theta;
    }
    return total;
  }
};

}  // namespace

void validate(const LossScenario& scenario) {
  require(scenario.dim >= 1, "dimension must be >= 1");
  require(scenario.horizon >= 1, "horizon must be >= 1");
  const auto dim = static_cast<std::size_t>(scenario.dim);
  if (scenario.box) {
    require(scenario.box->lo.size() == dim && scenario.box->hi.size() == dim,
            "box extents must match the dimension");
    for (std::size_t i = 0; i < dim; ++i)
      require(scenario.box->lo[i] <= scenario.box->hi[i], "box needs lo <= hi");
  }
  if (const auto* q = std::get_if<FixedQuadratic>(&scenario.family)) {
    require(q->center.size() == dim && q->curvature.size() == dim,
            "center/curvature must match the dimension");
    for (double k : q->curvature) {
      require(std::isfinite(k) && k >= 0.0, "curvature must be >= 0");
      if (k == 0.0)
        require(scenario.box.has_value(),
                "zero-curvature coordinates need a feasible box");
    }
  } else if (const auto* l = std::get_if<AlternatingLinear>(&scenario.family)) {
    require(l->slope.size() == dim, "slope must match the dimension");
    require(l->period >= 1, "period must be >= 1");
    require(scenario.box.has_value(), "linear scenarios need a feasible box");
  } else {
    const auto& rq = std::get<RandomQuadratic>(scenario.family);
    require(rq.center_lo < rq.center_hi, "center distribution needs lo < hi");
    require(rq.curvature_lo > 0.0 && rq.curvature_lo <= rq.curvature_hi,
            "curvature range needs 0 < lo <= hi");
  }
}

LossStream::LossStream(const LossScenario& scenario) : scenario_(scenario) {
  validate(scenario_);
}

StepLossCoefficients LossStream::coefficients(std::int64_t t) const {
  if (t < 1 || t > scenario_.horizon)
    throw std::invalid_argument("loss step out of range");
  const auto dim = static_cast<std::size_t>(scenario_.dim);
  StepLossCoefficients c;
  c.kappa.assign(dim, 0.0);
  c.center.assign(dim, 0.0);
  c.slope.assign(dim, 0.0);
  if (const auto* q = std::get_if<FixedQuadratic>(&scenario_.family)) {
    c.kappa = q->curvature;
    c.center = q->center;
  } else if (const auto* l = std::get_if<AlternatingLinear>(&scenario_.family)) {
    const double sign = ((t - 1) / l->period) % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < dim; ++i) c.slope[i] = sign * l->slope[i];
  } else {
    const auto& rq = std::get<RandomQuadratic>(scenario_.family);
    CellRng rng(rq.seed, static_cast<std::uint64_t>(t));
    for (std::size_t i = 0; i < dim; ++i) {
      c.center[i] = rng.uniform(rq.center_lo, rq.center_hi);
      c.kappa[i] = rq.curvature_lo == rq.curvature_hi
                       ? rq.curvature_lo
                       : rng.uniform(rq.curvature_lo, rq.curvature_hi);
    }
  }
  return c;
}

double LossStream::loss(std::int64_t t, std::span<const double> theta) const {
  const StepLossCoefficients c = coefficients(t);
  double total = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double d = theta[i] - c.center[i];
    total += 0.5 * c.kappa[i] * d * d + c.slope[i] * theta[i];
  }
  return total;
}

std::vector<double> LossStream::gradient(std::int64_t t,
                                         std::span<const double> theta) const {
  const StepLossCoefficients c = coefficients(t);
  std::vector<double> g(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i)
    g[i] = c.kappa[i] * (theta[i] - c.center[i]) + c.slope[i];
  return g;
}

std::string optimizer_id(const OptimizerSpec& spec) {
  std::string id;
  switch (spec.kind) {
    case OptimizerKind::adam: id = "adam"; break;
    case OptimizerKind::amsgrad: id = "amsgrad"; break;
    case OptimizerKind::gradient_descent: id = "gd"; break;
  }
  if (!spec.bias_correction && spec.kind != OptimizerKind::gradient_descent)
    id += "-nobc";
  if (spec.constant_rate) id += "-constrate";
  return id;
}

std::vector<double> optimizer_step(OptimizerState& state,
                                   std::span<const double> gradient,
                                   const OptimizerSpec& spec) {
  validate(spec.hyper);
  if (spec.epsilon < 0.0 || !std::isfinite(spec.epsilon))
    throw std::invalid_argument("epsilon must be finite and >= 0");
  const std::size_t dim = gradient.size();
  if (state.t == 0) {
    state.coords.clear();
    state.v_hat_max.assign(dim, 0.0);
  } else if (state.coords.size() != dim && spec.kind != OptimizerKind::gradient_descent) {
    throw std::invalid_argument("gradient dimension changed mid-run");
  }
  const std::int64_t t = state.t + 1;
  std::vector<double> delta(dim);

  if (spec.kind == OptimizerKind::gradient_descent) {
    for (std::size_t i = 0; i < dim; ++i)
      delta[i] = spec.constant_rate
                     ? spec.hyper.eta * gradient[i]
                     : (spec.hyper.eta / std::sqrt(static_cast<double>(t))) *
                           gradient[i];
    state.t = t;
    return delta;
  }

  const bool first = state.coords.empty();
  if (first) state.coords.resize(dim);
  const StepOptions options{.accumulate_s = false};
  for (std::size_t i = 0; i < dim; ++i) {
    const std::optional<TrajectoryState> prev =
        first ? std::nullopt : std::make_optional(state.coords[i]);
    state.coords[i] = step(prev, gradient[i], spec.hyper, options);
    const TrajectoryState& st = state.coords[i];
    const double m_used = spec.bias_correction ? st.m_hat : st.m;
    double v_used = spec.bias_correction ? st.v_hat : st.v;
    if (spec.kind == OptimizerKind::amsgrad) {
      state.v_hat_max[i] = std::max(state.v_hat_max[i], v_used);
      v_used = state.v_hat_max[i];
    }
    if (spec.epsilon == 0.0 && v_used == 0.0)
      throw std::domain_error("optimizer step: division by zero (v_hat = 0 with "
                              "epsilon = 0 at coordinate " + std::to_string(i) + ")");
    delta[i] = spec.constant_rate
                   ? spec.hyper.eta * (m_used / (std::sqrt(v_used) + spec.epsilon))
                   : adam_parameter_delta(m_used, v_used, t, spec.hyper.eta,
                                          spec.epsilon);
  }
  state.t = t;
  return delta;
}

OptimizerState amsgrad_step(OptimizerState state, std::span<const double> gradient,
                            const HyperParams& hyper) {
  OptimizerSpec spec;
  spec.kind = OptimizerKind::amsgrad;
  spec.hyper = hyper;
  (void)optimizer_step(state, gradient, spec);
  return state;
}

RegretTrace run_oco(const LossScenario& scenario, const OptimizerSpec& spec,
                    std::span<const double> theta0, bool keep_theta) {
  validate(scenario);
  validate(spec.hyper);
  if (std::ssize(theta0) != scenario.dim)
    throw std::invalid_argument("theta0 dimension does not match the scenario");

  const LossStream stream(scenario);
  RegretTrace trace;
  trace.optimizer = optimizer_id(spec);
  if (spec.kind == OptimizerKind::amsgrad)
    trace.notes = spec.bias_correction
                      ? "amsgrad max accumulator applied to bias-corrected v_hat"
                      : "amsgrad max accumulator applied to raw v";
  const auto horizon = static_cast<std::size_t>(scenario.horizon);
  trace.step_loss.reserve(horizon);
  trace.cum_regret.reserve(horizon);
  trace.avg_regret.reserve(horizon);
  if (keep_theta) trace.theta_history.emplace();

  std::vector<double> theta(theta0.begin(), theta0.end());
  OptimizerState state;
  PrefixSums prefix(scenario.dim);
  KahanAccumulator cum_loss;

  for (std::int64_t t = 1; t <= scenario.horizon; ++t) {
    const double loss = stream.loss(t, theta);
    if (!std::isfinite(loss))
      throw std::runtime_error("step " + std::to_string(t) + ": non-finite loss");
    const std::vector<double> grad = stream.gradient(t, theta);
    check_finite(grad, t, "gradient");

    cum_loss.add(loss);
    prefix.absorb(stream.coefficients(t));
    const double regret = cum_loss.value() - prefix.best_fixed_loss(scenario.box);

    trace.step_loss.push_back(loss);
    trace.cum_regret.push_back(regret);
    trace.avg_regret.push_back(regret / static_cast<double>(t));

    const std::vector<double> delta = optimizer_step(state, grad, spec);
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= delta[i];
    check_finite(theta, t, "parameter");
    if (keep_theta) trace.theta_history->push_back(theta);
  }
  return trace;
}

std::vector<double> batch_minimizer(const LossScenario& scenario) {
  validate(scenario);
  const LossStream stream(scenario);
  PrefixSums prefix(scenario.dim);
  for (std::int64_t t = 1; t <= scenario.horizon; ++t)
    prefix.absorb(stream.coefficients(t));
  std::vector<double> theta(static_cast<std::size_t>(scenario.dim));
  for (std::size_t i = 0; i < theta.size(); ++i)
    theta[i] = prefix.minimizer_coord(i, scenario.box);
  return theta;
}

}  // namespace adamlab
