#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adamlab/lemma_lab.hpp"
#include "adamlab/parallel.hpp"

namespace adamlab {

/// One fuzz/grid cell outcome, with enough context to replay it.
struct LemmaCellResult {
  double beta1 = 0.0;
  double beta2 = 0.0;
  std::uint64_t seed = 0;
  std::int64_t T = 0;
  LemmaReport report;
  std::string error;  // non-empty when the cell aborted (counts as violation)

  bool ok() const { return error.empty() && report.ok(); }
};

struct CampaignSummary {
  std::int64_t cells = 0;
  std::int64_t violations = 0;
  double worst_slack = 0.0;
  std::optional<std::int64_t> first_bad_cell;
};

CampaignSummary summarize(const std::vector<LemmaCellResult>& results);

/// Ratio-bound fuzz: cells draw (beta1, beta2) with rho = beta2/beta1^2
/// uniform in (1, 2), lambda_m = lambda_g = 1, and a T-step gradient
/// sequence that alternates between nonnegative and mixed-sign cells.
struct RatioFuzzConfig {
  std::int64_t traces = 10000;
  std::int64_t T = 500;
  std::uint64_t seed = 0x5eed'0001;
  double tol = kDefaultTolerance;
};

std::vector<LemmaCellResult> run_ratio_fuzz(
    const RatioFuzzConfig& config, ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Correction-factor grid: cell centers of (0,1)^2 at the given resolution,
/// filtered to beta2 >= 2*beta1 - beta1^2 (exact), each checked over a
/// log-spaced t grid in [1, t_max].
struct CorrectionGridConfig {
  int resolution = 200;
  int t_points = 1000;
  double t_max = 1e4;
  double tol = kDefaultTolerance;
};

std::vector<LemmaCellResult> run_correction_grid(
    const CorrectionGridConfig& config,
    ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Outcome of one s-vs-bound fuzz cell. Nonnegative-gradient cells are
/// normalized to ||g|| = 1 and additionally carry the norm-bound reports.
struct SBoundCellResult {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double lambda_m = 1.0;
  std::uint64_t seed = 0;
  std::int64_t T = 0;
  bool bound_ok = false;
  double bound_slack = 0.0;  // (bound - s_T)/bound
  std::optional<NormBoundsReport> norms;
  std::string error;

  bool ok(double tol = kDefaultTolerance) const {
    return error.empty() && bound_ok && (!norms || norms->ok(tol));
  }
};

/// s_T-below-bound fuzz over the proven region (lambda_g = 1; lambda_m = 1
/// on most cells, < 1 on every fourth).
struct SBoundFuzzConfig {
  std::int64_t traces = 10000;
  std::int64_t t_max = 400;  // per-cell T drawn from [1, t_max]
  std::uint64_t seed = 0x5eed'0002;
  double tol = kDefaultTolerance;
};

std::vector<SBoundCellResult> run_s_bound_fuzz(
    const SBoundFuzzConfig& config, ExecutionPolicy policy = ExecutionPolicy::parallel);

struct SBoundSummary {
  std::int64_t cells = 0;
  std::int64_t violations = 0;
  std::int64_t norm_checked = 0;
  double worst_bound_slack = 1.0;
};

SBoundSummary summarize(const std::vector<SBoundCellResult>& results,
                        double tol = kDefaultTolerance);

}  // namespace adamlab
