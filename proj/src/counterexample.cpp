#include "adamlab/counterexample.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "adamlab/kahan.hpp"

namespace adamlab {

namespace {

void require_scope(const DerivedConstants& constants, BoundKind kind) {
  if (kind == BoundKind::kb) {
    const double gamma = constants.gamma.value_or_throw("gamma");
    if (gamma >= 1.0)
      throw ScopeError("kb bound out of scope: gamma >= 1");
  } else {
    const RegionClass cls =
        classify_region(constants.beta1_exact, constants.beta2_exact);
    if (!cls.result33_scope) {
      if (!cls.lemma32_ok)
        throw ScopeError(
            "new bound out of scope: beta2 >= 2*beta1 - beta1^2 violated");
      throw ScopeError("new bound out of scope: beta2 < 2*beta1^2 violated");
    }
  }
}

double bound_at(const DerivedConstants& constants, BoundKind kind, std::int64_t t,
                double g_norm) {
  return kind == BoundKind::kb ? kb_bound(constants, g_norm)
                               : new_bound(constants, t, g_norm);
}

}  // namespace

std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::kb ? "kb" : "result33";
}

std::optional<std::int64_t> analytic_limit_violation(std::int64_t t_max) {
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  KahanAccumulator harmonic;
  for (std::int64_t t = 1; t <= t_max; ++t) {
    harmonic.add(1.0 / static_cast<double>(t));
    if (harmonic.value() > 4.0) return t;
  }
  return std::nullopt;
}

CrossingResult find_first_crossing(const HyperParams& hyper,
                                   const GradientSource& source, std::int64_t t_max,
                                   BoundKind kind, bool keep_trace,
                                   const DerivedConstants* constants) {
  validate(hyper);
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  DerivedConstants local;
  if (constants != nullptr) {
    if (constants->beta1 != hyper.beta1 || constants->beta2 != hyper.beta2)
      throw std::invalid_argument(
          "derived constants do not match the hyperparameters");
    local = *constants;
  } else {
    local = derived_constants(hyper.beta1, hyper.beta2);
  }
  require_scope(local, kind);

  Trace trace = run_trace(hyper, source, t_max);
  CrossingResult result;
  result.hyper = hyper;
  result.source = source;
  result.bound_kind = kind;
  double best_margin = -std::numeric_limits<double>::infinity();
  for (const TrajectoryState& st : trace.steps) {
    const double g_norm = std::sqrt(st.g_norm_sq_running);
    const double margin = st.s_running - bound_at(local, kind, st.t, g_norm);
    if (margin > best_margin) best_margin = margin;
    if (margin > 0.0) {
      result.first_crossing_t = st.t;
      result.margin = margin;
      break;
    }
  }
  if (!result.first_crossing_t) result.margin = best_margin;
  if (keep_trace) result.trace = std::make_shared<Trace>(std::move(trace));
  return result;
}

FuzzSearchOutcome fuzz_search(const FuzzSearchConfig& config, ExecutionPolicy policy) {
  if (config.beta1s.empty() || config.beta2s.empty() || config.lambdas.empty() ||
      config.sources.empty())
    throw std::invalid_argument("fuzz_search: empty parameter range");
  const std::int64_t n_b1 = std::ssize(config.beta1s);
  const std::int64_t n_b2 = std::ssize(config.beta2s);
  const std::int64_t n_l = std::ssize(config.lambdas);
  const std::int64_t n_src = std::ssize(config.sources);
  const std::int64_t total = n_b1 * n_b2 * n_l * n_src;
  const std::int64_t cells = std::min(total, config.budget);

  struct Cell {
    std::optional<CrossingResult> violation;
    bool skipped = false;
  };
  std::vector<Cell> grid(static_cast<std::size_t>(cells));

  for_each_cell(cells, policy, [&](std::int64_t flat) {
    Cell& cell = grid[static_cast<std::size_t>(flat)];
    std::int64_t rest = flat;
    const std::int64_t src_i = rest % n_src; rest /= n_src;
    const std::int64_t l_i = rest % n_l; rest /= n_l;
    const std::int64_t b2_i = rest % n_b2; rest /= n_b2;
    const std::int64_t b1_i = rest;

    HyperParams hyper;
    hyper.eta = config.eta;
    hyper.beta1 = config.beta1s[static_cast<std::size_t>(b1_i)];
    hyper.beta2 = config.beta2s[static_cast<std::size_t>(b2_i)];
    const double lambda = config.lambdas[static_cast<std::size_t>(l_i)];
    if (config.bound == BoundKind::kb) {
      if (!(lambda < 1.0)) {  // the conjecture's setting is lambda in (0,1)
        cell.skipped = true;
        return;
      }
      hyper.lambda_m = lambda;
      hyper.lambda_g = lambda;
    } else {
      hyper.lambda_m = lambda;
      hyper.lambda_g = 1.0;
    }
    hyper.T = config.t_max;

    try {
      CrossingResult r =
          find_first_crossing(hyper, config.sources[static_cast<std::size_t>(src_i)],
                              config.t_max, config.bound, /*keep_trace=*/false);
      if (r.first_crossing_t) cell.violation = std::move(r);
    } catch (const ScopeError&) {
      cell.skipped = true;
    }
  });

  FuzzSearchOutcome outcome;
  for (Cell& cell : grid) {
    if (cell.skipped) {
      ++outcome.cells_skipped;
    } else {
      ++outcome.cells_evaluated;
      if (cell.violation) outcome.violations.push_back(std::move(*cell.violation));
    }
  }
  return outcome;
}

}  // namespace adamlab
