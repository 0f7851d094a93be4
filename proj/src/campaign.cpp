#include "adamlab/campaign.hpp"

#include <cmath>

#include "adamlab/kahan.hpp"
#include "adamlab/rng.hpp"

namespace adamlab {

namespace {

std::vector<double> draw_gradients(CellRng& rng, std::int64_t count, bool mixed_sign) {
  std::vector<double> g(static_cast<std::size_t>(count));
  for (double& value : g) {
    value = rng.positive_unit();
    if (mixed_sign && rng.coin()) value = -value;
  }
  return g;
}

void normalize(std::vector<double>& g) {
  KahanAccumulator sq;
  for (double value : g) sq.add(value * value);
  const double norm = std::sqrt(sq.value());
  for (double& value : g) value /= norm;
}

}  // namespace

CampaignSummary summarize(const std::vector<LemmaCellResult>& results) {
  CampaignSummary summary;
  summary.cells = std::ssize(results);
  for (std::int64_t i = 0; i < summary.cells; ++i) {
    const LemmaCellResult& cell = results[static_cast<std::size_t>(i)];
    if (!cell.ok() && !summary.first_bad_cell) summary.first_bad_cell = i;
    if (!cell.ok()) ++summary.violations;
    if (cell.report.max_slack_violation < summary.worst_slack)
      summary.worst_slack = cell.report.max_slack_violation;
  }
  return summary;
}

std::vector<LemmaCellResult> run_ratio_fuzz(const RatioFuzzConfig& config,
                                            ExecutionPolicy policy) {
  std::vector<LemmaCellResult> results(static_cast<std::size_t>(config.traces));
  for_each_cell(config.traces, policy, [&](std::int64_t i) {
    LemmaCellResult& cell = results[static_cast<std::size_t>(i)];
    CellRng rng(config.seed, static_cast<std::uint64_t>(i));
    // beta1 below 1/sqrt(2) keeps beta2 = rho*beta1^2 < 1 for every rho < 2.
    const double beta1 = rng.uniform(0.05, 0.70);
    const double rho = rng.uniform(1.0 + 1e-6, 2.0 - 1e-6);
    const double beta2 = rho * beta1 * beta1;
    const bool mixed = i % 2 == 1;
    cell.beta1 = beta1;
    cell.beta2 = beta2;
    cell.seed = static_cast<std::uint64_t>(i);
    cell.T = config.T;
    try {
      HyperParams hyper;
      hyper.beta1 = beta1;
      hyper.beta2 = beta2;
      hyper.lambda_m = 1.0;
      hyper.lambda_g = 1.0;
      hyper.T = config.T;
      const std::vector<double> g = draw_gradients(rng, config.T, mixed);
      const Trace trace = run_trace_values(hyper, g);
      cell.report = check_ratio_bound(trace, config.tol);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });
  return results;
}

std::vector<LemmaCellResult> run_correction_grid(const CorrectionGridConfig& config,
                                                 ExecutionPolicy policy) {
  const std::vector<double> t_grid = log_spaced_grid(1.0, config.t_max, config.t_points);
  const std::int64_t n =
      static_cast<std::int64_t>(config.resolution) * config.resolution;
  std::vector<std::optional<LemmaCellResult>> cells(static_cast<std::size_t>(n));
  for_each_cell(n, policy, [&](std::int64_t flat) {
    const std::int64_t i = flat / config.resolution;
    const std::int64_t j = flat % config.resolution;
    const Rational b1(2 * i + 1, 2 * static_cast<std::int64_t>(config.resolution));
    const Rational b2(2 * j + 1, 2 * static_cast<std::int64_t>(config.resolution));
    if (!classify_region(b1, b2).lemma32_ok) return;
    LemmaCellResult cell;
    cell.beta1 = to_double(b1);
    cell.beta2 = to_double(b2);
    cell.T = config.t_points;
    cell.report =
        check_correction_factor_grid(cell.beta1, cell.beta2, t_grid, config.tol);
    cells[static_cast<std::size_t>(flat)] = std::move(cell);
  });
  std::vector<LemmaCellResult> results;
  for (auto& cell : cells)
    if (cell) results.push_back(std::move(*cell));
  return results;
}

std::vector<SBoundCellResult> run_s_bound_fuzz(const SBoundFuzzConfig& config,
                                               ExecutionPolicy policy) {
  std::vector<SBoundCellResult> results(static_cast<std::size_t>(config.traces));
  for_each_cell(config.traces, policy, [&](std::int64_t i) {
    SBoundCellResult& cell = results[static_cast<std::size_t>(i)];
    CellRng rng(config.seed, static_cast<std::uint64_t>(i));
    cell.seed = static_cast<std::uint64_t>(i);
    try {
      // Sample inside the proven region: beta1 in (2/3, 1), then beta2
      // strictly between 2*beta1 - beta1^2 and min(2*beta1^2, 1). The 0.998
      // shrink keeps the draw off both boundaries even after rounding; the
      // classification re-check below makes in-scope membership exact.
      double beta1 = 0.0, beta2 = 0.0;
      do {
        beta1 = rng.uniform(0.668, 0.995);
        const double lo = 2.0 * beta1 - beta1 * beta1;
        const double hi = std::min(2.0 * beta1 * beta1, 1.0 - 1e-12);
        beta2 = lo + (hi - lo) * (0.001 + 0.998 * rng.positive_unit());
      } while (!classify_region(beta1, beta2).result33_scope);
      cell.beta1 = beta1;
      cell.beta2 = beta2;
      cell.T = rng.index1(config.t_max);
      const bool nonneg = i % 2 == 0;
      cell.lambda_m = i % 4 == 3 ? 0.95 : 1.0;

      HyperParams hyper;
      hyper.beta1 = beta1;
      hyper.beta2 = beta2;
      hyper.lambda_m = cell.lambda_m;
      hyper.lambda_g = 1.0;
      hyper.T = cell.T;

      std::vector<double> g = draw_gradients(rng, cell.T, !nonneg);
      if (nonneg) normalize(g);
      const Trace trace = run_trace_values(hyper, g);
      const DerivedConstants constants = derived_constants(beta1, beta2);
      const double bound = new_bound(constants, cell.T, trace.g_norm());
      cell.bound_ok = trace.s_final() < bound;
      cell.bound_slack = (bound - trace.s_final()) / bound;
      if (nonneg && cell.lambda_m == 1.0)
        cell.norms = check_norm_bounds(trace, constants, config.tol);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });
  return results;
}

SBoundSummary summarize(const std::vector<SBoundCellResult>& results, double tol) {
  SBoundSummary summary;
  summary.cells = std::ssize(results);
  for (const SBoundCellResult& cell : results) {
    if (!cell.ok(tol)) ++summary.violations;
    if (cell.norms) ++summary.norm_checked;
    if (cell.error.empty() && cell.bound_slack < summary.worst_bound_slack)
      summary.worst_bound_slack = cell.bound_slack;
  }
  return summary;
}

}  // namespace adamlab
