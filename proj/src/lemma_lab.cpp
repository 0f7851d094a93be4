#include "adamlab/lemma_lab.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "adamlab/kahan.hpp"

namespace adamlab {

namespace {

/// Streams relative slacks into a LemmaReport.
class SlackTracker {
 public:
  SlackTracker(LemmaId id, double tol) {
    report_.lemma_id = id;
    report_.tolerance_used = tol;
  }

  void observe(double slack) {
    ++report_.checked_steps;
    if (slack < 0.0 && slack < report_.max_slack_violation)
      report_.max_slack_violation = slack;
    if (slack < -report_.tolerance_used && !report_.first_violation_t)
      report_.first_violation_t = report_.checked_steps;
  }

  LemmaReport finish() const { return report_; }

 private:
  LemmaReport report_;
};

void require_consistent(const Trace& trace, const DerivedConstants& constants) {
  if (constants.beta1 != trace.hyper.beta1 || constants.beta2 != trace.hyper.beta2)
    throw std::invalid_argument(
        "derived constants do not match the trace's hyperparameters");
}

}  // namespace

std::string_view to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L31: return "L31";
    case LemmaId::L32: return "L32";
    case LemmaId::NormMhat: return "NormMhat";
    case LemmaId::NormMu: return "NormMu";
    case LemmaId::AppendixY: return "AppendixY";
    case LemmaId::AppendixP: return "AppendixP";
  }
  return "?";
}

ProofScalars proof_scalars(double beta1, double beta2, const TrajectoryState& state,
                           double zeta) {
  const double t = static_cast<double>(state.t);
  ProofScalars p;
  p.c_t = correction_factor(beta1, beta2, t);
  p.h_t = h_function(beta1, beta2, t);
  p.alpha = 1.0 - std::pow(beta1, t);
  p.mu_t = state.mu();
  p.zeta = zeta;
  return p;
}

LemmaReport check_ratio_bound(const Trace& trace, const DerivedConstants& constants,
                              double tol) {
  require_consistent(trace, constants);
  if (trace.hyper.lambda_m != 1.0 || trace.hyper.lambda_g != 1.0)
    throw ScopeError("ratio bound requires lambda_m = lambda_g = 1");
  if (!classify_region(constants.beta1_exact, constants.beta2_exact).lemma31_ok)
    throw ScopeError("ratio bound requires rho = beta2/beta1^2 in (1, 2)");

  const double bound = constants.ratio_bound.value_or_throw("K*x1^2/x2");
  SlackTracker tracker(LemmaId::L31, tol);
  for (const TrajectoryState& st : trace.steps) {
    const double ratio = (st.m * st.m) / st.v;
    tracker.observe((bound - ratio) / bound);
  }
  return tracker.finish();
}

LemmaReport check_ratio_bound(const Trace& trace, double tol) {
  return check_ratio_bound(
      trace, derived_constants(trace.hyper.beta1, trace.hyper.beta2), tol);
}

LemmaReport check_bias_correction_shrinks(const Trace& trace, double tol) {
  SlackTracker tracker(LemmaId::L32, tol);
  for (const TrajectoryState& st : trace.steps) {
    const double raw = (st.m * st.m) / st.v;
    const double corrected = (st.m_hat * st.m_hat) / st.v_hat;
    tracker.observe((raw - corrected) / raw);
  }
  return tracker.finish();
}

double correction_factor(double beta1, double beta2, double t) {
  const double a = 1.0 - std::pow(beta1, t);
  return (1.0 - std::pow(beta2, t)) / (a * a);
}

Rational correction_factor_exact(const Rational& beta1, const Rational& beta2,
                                 std::int64_t t) {
  if (t < 1) throw std::invalid_argument("correction_factor_exact: t must be >= 1");
  const Rational a = Rational(1) - rational_pow(beta1, t);
  return (Rational(1) - rational_pow(beta2, t)) / (a * a);
}

double h_function(double beta1, double beta2, double t) {
  const double a = 1.0 - std::pow(beta1, t);
  return (1.0 - std::pow(beta2, t)) - a * a;
}

Rational h_function_exact(const Rational& beta1, const Rational& beta2,
                          std::int64_t t) {
  if (t < 1) throw std::invalid_argument("h_function_exact: t must be >= 1");
  const Rational a = Rational(1) - rational_pow(beta1, t);
  return (Rational(1) - rational_pow(beta2, t)) - a * a;
}

double polynomial_P(double alpha, double r) {
  return (1.0 - r) * alpha * alpha + r * alpha - 1.0;
}

double appendix_y(double beta1) {
  return std::pow(beta1, beta1 / (beta1 - 2.0)) + beta1 - 2.0;
}

double appendix_y_derivative(double beta1) {
  const double power = std::pow(beta1, beta1 / (beta1 - 2.0));
  const double inner =
      (-2.0 * std::log(beta1) + beta1 - 2.0) / ((2.0 - beta1) * (2.0 - beta1));
  return power * inner + 1.0;
}

std::vector<double> log_spaced_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw std::invalid_argument("log_spaced_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (int i = 0; i < n; ++i)
    grid[static_cast<std::size_t>(i)] =
        std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

LemmaReport check_correction_factor_grid(double beta1, double beta2,
                                         std::span<const double> t_grid, double tol) {
  SlackTracker tracker(LemmaId::L32, tol);
  for (double t : t_grid) tracker.observe(1.0 - correction_factor(beta1, beta2, t));
  return tracker.finish();
}

LemmaReport check_h_grid(double beta1, double beta2, std::span<const double> t_grid,
                         double tol) {
  SlackTracker tracker(LemmaId::L32, tol);
  for (double t : t_grid) tracker.observe(-h_function(beta1, beta2, t));
  return tracker.finish();
}

LemmaReport check_appendix_y_grid(int points, double tol) {
  if (points < 1) throw std::invalid_argument("check_appendix_y_grid: points >= 1");
  SlackTracker tracker(LemmaId::AppendixY, tol);
  for (int k = 1; k <= points; ++k) {
    const double b = static_cast<double>(k) / (points + 1);
    tracker.observe(-appendix_y(b));
  }
  return tracker.finish();
}

LemmaReport check_polynomial_at_x1(double beta1, double beta2, double tol) {
  if (!(beta1 > 0.0 && beta1 < 1.0 && beta2 > 0.0 && beta2 < 1.0))
    throw ScopeError("P(x1) check requires beta1, beta2 in (0, 1)");
  const double r = 2.0 * std::log(beta1) / std::log(beta2);
  SlackTracker tracker(LemmaId::AppendixP, tol);
  tracker.observe(polynomial_P(1.0 - beta1, r));
  return tracker.finish();
}

NormBoundsReport check_norm_bounds(const Trace& trace,
                                   const DerivedConstants& constants, double tol) {
  require_consistent(trace, constants);
  if (!classify_region(constants.beta1_exact, constants.beta2_exact).result33_scope)
    throw ScopeError("norm bounds require (beta1, beta2) in the proven region");
  if (trace.hyper.lambda_g != 1.0)
    throw ScopeError("norm bounds require lambda_g = 1");
  for (const TrajectoryState& st : trace.steps)
    if (st.g < 0.0)
      throw ScopeError("norm bounds require nonnegative gradients");
  const double norm_sq = trace.back().g_norm_sq_running;
  if (std::abs(norm_sq - 1.0) > 1e-8)
    throw ScopeError("norm bounds require ||g|| = 1 (got ||g||^2 = " +
                     std::to_string(norm_sq) + ")");

  KahanAccumulator m_hat_sq;
  KahanAccumulator mu_sq;
  for (const TrajectoryState& st : trace.steps) {
    m_hat_sq.add(st.m_hat * st.m_hat);
    const double mu = st.mu();
    mu_sq.add(mu * mu);
  }
  const double m_hat_norm = std::sqrt(m_hat_sq.value());
  const double mu_norm = std::sqrt(mu_sq.value());

  const double tau = static_cast<double>(constants.tau.value_or_throw("tau"));
  const double kx = constants.ratio_bound.value_or_throw("K*x1^2/x2");
  const double m_hat_bound = 2.0 + std::sqrt(tau);
  const double mu_bound = std::sqrt(
      1.0 + kx * std::log(static_cast<double>(trace.length())));

  NormBoundsReport report;
  report.m_hat_norm_value = m_hat_norm;
  report.mu_norm_value = mu_norm;
  {
    SlackTracker tracker(LemmaId::NormMhat, tol);
    tracker.observe((m_hat_bound - m_hat_norm) / m_hat_bound);
    report.m_hat_norm = tracker.finish();
  }
  {
    SlackTracker tracker(LemmaId::NormMu, tol);
    tracker.observe((mu_bound - mu_norm) / mu_bound);
    report.mu_norm = tracker.finish();
  }
  const double s = trace.s_final();
  report.cauchy_schwarz_slack = (m_hat_norm * mu_norm - s) / s;
  return report;
}

NormBoundsReport check_norm_bounds(const Trace& trace, double tol) {
  return check_norm_bounds(
      trace, derived_constants(trace.hyper.beta1, trace.hyper.beta2), tol);
}

double homogeneity_check(const GradientSource& source, double zeta,
                         const HyperParams& hyper) {
  if (!(zeta > 0.0) || !std::isfinite(zeta))
    throw std::invalid_argument("homogeneity_check: zeta must be finite and > 0");
  std::vector<double> g = materialize(source, hyper.T);
  const double s_base = run_trace_values(hyper, g).s_final();
  for (double& value : g) value *= zeta;
  const double s_scaled = run_trace_values(hyper, g).s_final();
  return std::abs(s_scaled - zeta * s_base) / (zeta * s_base);
}

}  // namespace adamlab
