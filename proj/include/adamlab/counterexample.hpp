#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "adamlab/bounds.hpp"
#include "adamlab/parallel.hpp"
#include "adamlab/trajectory.hpp"

namespace adamlab {

enum class BoundKind { kb, result33 };

std::string_view to_string(BoundKind kind);

/// Outcome of a per-step scan of s_t against bound(||g_{1:t}||, t). The
/// bound is re-evaluated at each horizon t with the gradient prefix norm,
/// and a crossing is the first t with s_t strictly above it.
struct CrossingResult {
  HyperParams hyper;
  GradientSource source;
  BoundKind bound_kind = BoundKind::kb;
  std::optional<std::int64_t> first_crossing_t;
  /// s - bound at the crossing step; when no crossing was found this is the
  /// largest s - bound observed (a negative number).
  double margin = 0.0;
  std::shared_ptr<const Trace> trace;  // per-step data, kept on request
};

/// Smallest T <= t_max with 1 + 1/2 + ... + 1/T > 4, by compensated
/// summation. Empty when no such T exists in range.
std::optional<std::int64_t> analytic_limit_violation(std::int64_t t_max);

/// Scans t = 1..t_max. Scope is enforced up front: the kb bound requires
/// gamma < 1; the result33 bound requires (beta1, beta2) inside the proven
/// region. A non-null `constants` supplies decimal-faithful betas (checked
/// against hyper).
CrossingResult find_first_crossing(const HyperParams& hyper,
                                   const GradientSource& source, std::int64_t t_max,
                                   BoundKind kind, bool keep_trace = true,
                                   const DerivedConstants* constants = nullptr);

struct FuzzSearchConfig {
  std::vector<double> beta1s;
  std::vector<double> beta2s;
  /// kb mode: lambda_m = lambda_g = lambda (the conjecture's setting, each
  /// value must be < 1). result33 mode: lambda_m = lambda, lambda_g = 1.
  std::vector<double> lambdas;
  std::vector<GradientSource> sources;
  std::int64_t t_max = 200;
  BoundKind bound = BoundKind::kb;
  /// Cap on evaluated cells (cells beyond it are not run).
  std::int64_t budget = 1'000'000;
  double eta = 0.1;
};

struct FuzzSearchOutcome {
  /// Every violation found, in deterministic cell order
  /// (beta1 x beta2 x lambda x source, row-major).
  std::vector<CrossingResult> violations;
  std::int64_t cells_evaluated = 0;
  std::int64_t cells_skipped = 0;  // out of the bound's scope
};

FuzzSearchOutcome fuzz_search(const FuzzSearchConfig& config,
                              ExecutionPolicy policy = ExecutionPolicy::parallel);

}  // namespace adamlab
