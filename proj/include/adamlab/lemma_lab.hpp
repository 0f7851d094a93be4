#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "adamlab/bounds.hpp"
#include "adamlab/derived_constants.hpp"
#include "adamlab/gradient_source.hpp"
#include "adamlab/trajectory.hpp"

namespace adamlab {

enum class LemmaId { L31, L32, NormMhat, NormMu, AppendixY, AppendixP };

std::string_view to_string(LemmaId id);

inline constexpr double kDefaultTolerance = 1e-12;

/// Outcome of one inequality check over a sequence of evaluation points.
/// Slack is relative: (bound - value)/scale, positive when the inequality
/// holds. max_slack_violation records the most negative slack seen (0 when
/// none was negative); a check fails when some slack drops below
/// -tolerance_used, and first_violation_t is the 1-based index of the first
/// point where that happened (trace step for trace checks, grid index for
/// grid checks).
struct LemmaReport {
  LemmaId lemma_id = LemmaId::L31;
  std::int64_t checked_steps = 0;
  double max_slack_violation = 0.0;
  std::optional<std::int64_t> first_violation_t;
  double tolerance_used = kDefaultTolerance;

  bool ok() const { return !first_violation_t.has_value(); }
};

/// Proof-internal per-step quantities.
struct ProofScalars {
  double c_t = 0.0;   // (1-beta2^t)/(1-beta1^t)^2
  double h_t = 0.0;   // (1-beta2^t) - (1-beta1^t)^2
  double alpha = 0.0; // 1 - beta1^t
  double mu_t = 0.0;  // m_hat/sqrt(t*v_hat)
  double zeta = 1.0;  // scaling factor carried through homogeneity tests
};

ProofScalars proof_scalars(double beta1, double beta2, const TrajectoryState& state,
                           double zeta = 1.0);

/// Verifies m_t^2/v_t < K*x1^2/x2 (relative tolerance) at every step.
/// The trace must have lambda_m = lambda_g = 1 and rho in (1, 2); anything
/// else is rejected with ScopeError before checking. The overload taking
/// DerivedConstants lets decimal-faithful callers supply the exact betas
/// (the doubles must round-trip to the trace's hyperparameters).
LemmaReport check_ratio_bound(const Trace& trace, const DerivedConstants& constants,
                              double tol = kDefaultTolerance);
LemmaReport check_ratio_bound(const Trace& trace, double tol = kDefaultTolerance);

/// Verifies m_hat_t^2/v_hat_t <= m_t^2/v_t * (1 + tol) at every step (the
/// per-step consequence of c_t <= 1; same scope as the c_t grid check).
LemmaReport check_bias_correction_shrinks(const Trace& trace,
                                          double tol = kDefaultTolerance);

/// c_t = (1-beta2^t)/(1-beta1^t)^2 for real t >= 1 (continuous-time form).
double correction_factor(double beta1, double beta2, double t);
/// Exact rational value at integer t; boundary identities like
/// c_1(0.9, 0.99) = 1 hold exactly here.
Rational correction_factor_exact(const Rational& beta1, const Rational& beta2,
                                 std::int64_t t);

/// h(t) = (1-beta2^t) - (1-beta1^t)^2.
double h_function(double beta1, double beta2, double t);
Rational h_function_exact(const Rational& beta1, const Rational& beta2,
                          std::int64_t t);

/// P(alpha) = (1-r)*alpha^2 + r*alpha - 1.
double polynomial_P(double alpha, double r);

/// y(b) = b^(b/(b-2)) + b - 2 (nonpositive on (0,1]).
double appendix_y(double beta1);
/// Closed-form derivative of y.
double appendix_y_derivative(double beta1);

/// n log-spaced points covering [lo, hi], first point exactly lo, last
/// exactly hi.
std::vector<double> log_spaced_grid(double lo, double hi, int n);

/// c_t <= 1 + tol over the t grid. Total function: out-of-scope
/// (beta1, beta2) simply fail, which is how the falsifiability witness
/// (0.5, 0.5) is exercised.
LemmaReport check_correction_factor_grid(double beta1, double beta2,
                                         std::span<const double> t_grid,
                                         double tol = kDefaultTolerance);

/// Equivalent statement via h: h(t) <= tol at every grid point.
LemmaReport check_h_grid(double beta1, double beta2, std::span<const double> t_grid,
                         double tol = kDefaultTolerance);

/// y(k/(points+1)) <= tol for k = 1..points.
LemmaReport check_appendix_y_grid(int points = 999, double tol = kDefaultTolerance);

/// P(x1) >= -tol with r = 2 log beta1 / log beta2.
LemmaReport check_polynomial_at_x1(double beta1, double beta2,
                                   double tol = kDefaultTolerance);

struct NormBoundsReport {
  LemmaReport m_hat_norm;          // ||m_hat_{1:T}|| < 2 + sqrt(tau)
  LemmaReport mu_norm;             // ||mu_{1:T}|| <= sqrt(1 + K*(x1^2/x2)*ln T)
  double cauchy_schwarz_slack = 0; // (||m_hat||*||mu|| - s_T) / s_T
  double m_hat_norm_value = 0.0;
  double mu_norm_value = 0.0;

  bool ok(double tol = kDefaultTolerance) const {
    return m_hat_norm.ok() && mu_norm.ok() && cauchy_schwarz_slack >= -tol;
  }
};

/// The proof-internal norm inequalities plus the Cauchy-Schwarz step
/// s_T <= ||m_hat|| * ||mu||. Preconditions (rejected with ScopeError):
/// (beta1, beta2) in the proven region, lambda_g = 1, all g_t >= 0, and
/// ||g_{1:T}|| = 1 within 1e-8.
NormBoundsReport check_norm_bounds(const Trace& trace,
                                   const DerivedConstants& constants,
                                   double tol = kDefaultTolerance);
NormBoundsReport check_norm_bounds(const Trace& trace,
                                   double tol = kDefaultTolerance);

/// |s_T(zeta*g) - zeta*s_T(g)| / (zeta*s_T(g)).
double homogeneity_check(const GradientSource& source, double zeta,
                         const HyperParams& hyper);

}  // namespace adamlab
