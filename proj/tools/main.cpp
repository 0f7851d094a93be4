#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adamlab/campaign.hpp"
#include "adamlab/counterexample.hpp"
#include "adamlab/csv.hpp"
#include "adamlab/kahan.hpp"
#include "adamlab/report_io.hpp"
#include "adamlab/rng.hpp"

namespace {

using namespace adamlab;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

/// A hyperparameter flag value: the double used by the trajectory code plus
/// the exact rational used for scope decisions and derived constants.
struct ParamValue {
  Rational exact;
  double value = 0.0;
};

/// Accepts plain decimals and the convenience form "1-<decimal>"
/// (e.g. "1-1e-8"), evaluated exactly.
ParamValue parse_param(const std::string& text) {
  ParamValue p;
  p.exact = text.rfind("1-", 0) == 0 ? Rational(1) - parse_decimal(text.substr(2))
                                     : parse_decimal(text);
  p.value = to_double(p.exact);
  return p;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    values.push_back(parse_param(token).value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path path(out);
  if (path.is_absolute()) return path;
  if (const char* dir = std::getenv("ADAMLAB_OUTDIR")) return std::filesystem::path(dir) / path;
  return path;
}

struct HyperFlags {
  std::string beta1 = "0.1";
  std::string beta2 = "0.1";
  std::string lambda_m = "1-1e-8";
  std::string lambda_g = "1-1e-8";
  std::string eta = "0.1";
  std::int64_t T = 200;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--beta1", beta1, "First-moment decay")->capture_default_str();
    cmd->add_option("--beta2", beta2, "Second-moment decay")->capture_default_str();
    cmd->add_option("--lambda-m", lambda_m, "History decay schedule base")
        ->capture_default_str();
    cmd->add_option("--lambda-g", lambda_g, "Gradient-weight schedule base")
        ->capture_default_str();
    cmd->add_option("--eta", eta, "Learning-rate scale")->capture_default_str();
    cmd->add_option("--T", T, "Number of steps")->capture_default_str();
  }

  HyperParams hyper() const {
    HyperParams h;
    h.beta1 = parse_param(beta1).value;
    h.beta2 = parse_param(beta2).value;
    h.lambda_m = parse_param(lambda_m).value;
    h.lambda_g = parse_param(lambda_g).value;
    h.eta = parse_param(eta).value;
    h.T = T;
    return h;
  }

  DerivedConstants constants() const {
    return derived_constants(parse_param(beta1).exact, parse_param(beta2).exact);
  }
};

// ---------------------------------------------------------------- trace ----

struct TraceOptions {
  HyperFlags hyper;
  std::string source = "invsqrt";
  std::string out = "trace.csv";
};

int cmd_trace(const TraceOptions& options) {
  const HyperParams hyper = options.hyper.hyper();
  const Trace trace =
      run_trace(hyper, parse_source_spec(options.source), hyper.T);
  atomic_write_file(resolve_out(options.out),
                    trace_csv(trace, options.hyper.constants()));
  std::cout << "wrote " << resolve_out(options.out).string() << " (" << hyper.T
            << " steps, s_T = " << format_double(trace.s_final()) << ")\n";
  return kExitOk;
}

// --------------------------------------------------------------- verify ----

struct VerifyOptions {
  std::string check = "all";
  std::string beta1;
  std::string beta2;
  int grid = 200;
  std::int64_t traces = 1000;
  std::int64_t T = 500;
  int t_points = 1000;
  std::uint64_t seed = 1;
  double tol = kDefaultTolerance;
  bool serial = false;
  std::string out = "verify.csv";
};

void note_skip(const std::string& what, const std::exception& e) {
  std::cerr << "skipped (out of scope): " << what << ": " << e.what() << "\n";
}

int cmd_verify(const VerifyOptions& options) {
  const bool explicit_cell = !options.beta1.empty() || !options.beta2.empty();
  if (explicit_cell && (options.beta1.empty() || options.beta2.empty()))
    throw std::invalid_argument("verify: --beta1 and --beta2 must be given together");
  const auto wants = [&](std::string_view id) {
    return options.check == "all" || options.check == id;
  };
  const ExecutionPolicy policy =
      options.serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel;

  std::vector<LemmaCellResult> rows;
  bool any_violation = false;
  const auto absorb = [&](std::vector<LemmaCellResult> cells) {
    for (LemmaCellResult& cell : cells) {
      any_violation = any_violation || !cell.ok();
      rows.push_back(std::move(cell));
    }
  };

  if (explicit_cell) {
    const ParamValue b1 = parse_param(options.beta1);
    const ParamValue b2 = parse_param(options.beta2);
    const DerivedConstants constants = derived_constants(b1.exact, b2.exact);

    if (wants("l31")) {
      try {
        for (std::int64_t k = 0; k < options.traces; ++k) {
          HyperParams h;
          h.beta1 = b1.value;
          h.beta2 = b2.value;
          h.lambda_m = 1.0;
          h.lambda_g = 1.0;
          h.T = options.T;
          CellRng rng(options.seed, static_cast<std::uint64_t>(k));
          std::vector<double> g(static_cast<std::size_t>(options.T));
          for (double& v : g) {
            v = rng.positive_unit();
            if (k % 2 == 1 && rng.coin()) v = -v;
          }
          LemmaCellResult cell;
          cell.beta1 = b1.value;
          cell.beta2 = b2.value;
          cell.seed = static_cast<std::uint64_t>(k);
          cell.T = options.T;
          cell.report =
              check_ratio_bound(run_trace_values(h, g), constants, options.tol);
          absorb({std::move(cell)});
        }
      } catch (const ScopeError& e) {
        note_skip("l31", e);
      }
    }
    if (wants("l32")) {
      LemmaCellResult cell;
      cell.beta1 = b1.value;
      cell.beta2 = b2.value;
      cell.T = options.t_points;
      cell.report = check_correction_factor_grid(
          b1.value, b2.value, log_spaced_grid(1.0, 1e4, options.t_points),
          options.tol);
      absorb({std::move(cell)});
    }
    if (wants("norms")) {
      try {
        for (std::int64_t k = 0; k < std::min<std::int64_t>(options.traces, 200);
             ++k) {
          HyperParams h;
          h.beta1 = b1.value;
          h.beta2 = b2.value;
          h.lambda_m = 1.0;
          h.lambda_g = 1.0;
          h.T = options.T;
          CellRng rng(options.seed ^ 0xabcd, static_cast<std::uint64_t>(k));
          std::vector<double> g(static_cast<std::size_t>(options.T));
          KahanAccumulator sq;
          for (double& v : g) {
            v = rng.positive_unit();
            sq.add(v * v);
          }
          const double norm = std::sqrt(sq.value());
          for (double& v : g) v /= norm;
          const NormBoundsReport norms =
              check_norm_bounds(run_trace_values(h, g), constants, options.tol);
          LemmaCellResult m_cell, mu_cell;
          m_cell.beta1 = mu_cell.beta1 = b1.value;
          m_cell.beta2 = mu_cell.beta2 = b2.value;
          m_cell.seed = mu_cell.seed = static_cast<std::uint64_t>(k);
          m_cell.T = mu_cell.T = options.T;
          m_cell.report = norms.m_hat_norm;
          mu_cell.report = norms.mu_norm;
          any_violation = any_violation || norms.cauchy_schwarz_slack < -options.tol;
          absorb({std::move(m_cell), std::move(mu_cell)});
        }
      } catch (const ScopeError& e) {
        note_skip("norms", e);
      }
    }
    if (wants("appendix")) {
      LemmaCellResult y_cell;
      y_cell.report = check_appendix_y_grid(999, options.tol);
      absorb({std::move(y_cell)});
      try {
        LemmaCellResult p_cell;
        p_cell.beta1 = b1.value;
        p_cell.beta2 = b2.value;
        p_cell.report = check_polynomial_at_x1(b1.value, b2.value, options.tol);
        absorb({std::move(p_cell)});
      } catch (const ScopeError& e) {
        note_skip("appendix P(x1)", e);
      }
    }
  } else {
    if (wants("l31")) {
      RatioFuzzConfig config;
      config.traces = options.traces;
      config.T = options.T;
      config.seed = options.seed;
      config.tol = options.tol;
      absorb(run_ratio_fuzz(config, policy));
    }
    if (wants("l32")) {
      CorrectionGridConfig config;
      config.resolution = options.grid;
      config.t_points = options.t_points;
      config.tol = options.tol;
      absorb(run_correction_grid(config, policy));
    }
    if (wants("norms")) {
      SBoundFuzzConfig config;
      config.traces = options.traces;
      config.t_max = options.T;
      config.seed = options.seed;
      config.tol = options.tol;
      const std::vector<SBoundCellResult> cells = run_s_bound_fuzz(config, policy);
      for (const SBoundCellResult& cell : cells) {
        if (!cell.error.empty() || !cell.bound_ok) {
          any_violation = true;
          std::cerr << "s-bound violation at beta1=" << cell.beta1
                    << " beta2=" << cell.beta2 << " seed=" << cell.seed << "\n";
        }
        if (cell.norms) {
          LemmaCellResult m_cell, mu_cell;
          m_cell.beta1 = mu_cell.beta1 = cell.beta1;
          m_cell.beta2 = mu_cell.beta2 = cell.beta2;
          m_cell.seed = mu_cell.seed = cell.seed;
          m_cell.T = mu_cell.T = cell.T;
          m_cell.report = cell.norms->m_hat_norm;
          mu_cell.report = cell.norms->mu_norm;
          any_violation =
              any_violation || cell.norms->cauchy_schwarz_slack < -options.tol;
          absorb({std::move(m_cell), std::move(mu_cell)});
        }
      }
    }
    if (wants("appendix")) {
      LemmaCellResult y_cell;
      y_cell.report = check_appendix_y_grid(999, options.tol);
      absorb({std::move(y_cell)});
      for (const RegionCell& cell :
           region_grid(std::min(options.grid, 100), policy)) {
        if (!cell.cls.lemma32_ok) continue;
        LemmaCellResult p_cell;
        p_cell.beta1 = cell.beta1;
        p_cell.beta2 = cell.beta2;
        p_cell.report = check_polynomial_at_x1(cell.beta1, cell.beta2, options.tol);
        absorb({std::move(p_cell)});
      }
    }
  }

  atomic_write_file(resolve_out(options.out), lemma_report_csv(rows));
  std::cout << "wrote " << resolve_out(options.out).string() << " (" << rows.size()
            << " rows)\n";
  if (any_violation) {
    std::cerr << "verification FAILED\n";
    return kExitVerificationFailed;
  }
  std::cout << "all checks passed\n";
  return kExitOk;
}

// ------------------------------------------------------- counterexample ----

struct CounterexampleOptions {
  std::int64_t t_max = 200;
  std::string out = "fig1.csv";
  // search mode
  std::string beta1_list = "0.1";
  std::string beta2_list = "0.1";
  std::string lambda_list = "1-1e-8";
  std::string family = "invsqrt";
  std::string seeds = "1";
  std::string bound = "kb";
  std::int64_t budget = 1'000'000;
  std::string search_out = "search.csv";
};

int cmd_counterexample_fig1(const CounterexampleOptions& options) {
  HyperParams hyper;
  hyper.beta1 = 0.1;
  hyper.beta2 = 0.1;
  hyper.lambda_m = parse_param("1-1e-8").value;
  hyper.lambda_g = hyper.lambda_m;
  hyper.T = options.t_max;
  const DerivedConstants constants = derived_constants_decimal("0.1", "0.1");
  const CrossingResult result = find_first_crossing(
      hyper, InvSqrtSource{}, options.t_max, BoundKind::kb, true, &constants);
  atomic_write_file(resolve_out(options.out), crossing_csv(result));
  if (result.first_crossing_t) {
    std::cout << "first crossing: t=" << *result.first_crossing_t
              << " (margin " << format_double(result.margin) << ")\n";
  } else {
    std::cout << "no crossing up to t=" << options.t_max << "\n";
  }
  std::cout << "wrote " << resolve_out(options.out).string() << "\n";
  return kExitOk;
}

int cmd_counterexample_analytic(const CounterexampleOptions& options) {
  const std::optional<std::int64_t> first =
      analytic_limit_violation(std::max<std::int64_t>(options.t_max, 100));
  if (first)
    std::cout << "first violation: T=" << *first << "\n";
  else
    std::cout << "no violation up to T=" << options.t_max << "\n";
  return kExitOk;
}

int cmd_counterexample_search(const CounterexampleOptions& options) {
  FuzzSearchConfig config;
  config.beta1s = parse_double_list(options.beta1_list);
  config.beta2s = parse_double_list(options.beta2_list);
  config.lambdas = parse_double_list(options.lambda_list);
  config.t_max = options.t_max;
  config.budget = options.budget;
  if (options.bound == "kb")
    config.bound = BoundKind::kb;
  else if (options.bound == "new")
    config.bound = BoundKind::result33;
  else
    throw std::invalid_argument("--bound must be kb or new");
  if (options.family == "invsqrt") {
    config.sources = {InvSqrtSource{}};
  } else if (options.family == "uniform") {
    for (double seed : parse_double_list(options.seeds))
      config.sources.push_back(
          UniformRandomSource{0.0, 1.0, static_cast<std::uint64_t>(seed)});
  } else {
    throw std::invalid_argument("--family must be invsqrt or uniform");
  }

  const FuzzSearchOutcome outcome = fuzz_search(config);
  atomic_write_file(resolve_out(options.search_out),
                    fuzz_search_csv(outcome.violations));
  std::cout << "evaluated " << outcome.cells_evaluated << " cells ("
            << outcome.cells_skipped << " out of scope), found "
            << outcome.violations.size() << " violations\n"
            << "wrote " << resolve_out(options.search_out).string() << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- region ----

struct RegionOptions {
  int resolution = 400;
  bool serial = false;
  std::string out = "region.csv";
};

int cmd_region(const RegionOptions& options) {
  const std::vector<RegionCell> cells = region_grid(
      options.resolution,
      options.serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel);
  atomic_write_file(resolve_out(options.out), region_csv(cells));
  std::cout << "wrote " << resolve_out(options.out).string() << " (" << cells.size()
            << " cells)\n";
  return kExitOk;
}

// ------------------------------------------------------------------ oco ----

struct OcoOptions {
  std::string scenario_file;
  std::string family = "fixed-quadratic";
  int dim = 1;
  std::int64_t horizon = 1000;
  std::string center = "1";
  std::string curvature = "1";
  std::string slope = "1";
  std::int64_t period = 1;
  std::string center_range = "-1,1";
  std::uint64_t seed = 0;
  std::string optimizer = "adam";
  HyperFlags hyper;
  std::string epsilon = "1e-8";
  bool no_bias_correction = false;
  bool constant_rate = false;
  std::string theta0 = "0";
  std::string out = "oco.csv";
};

std::vector<double> broadcast(const std::string& text, int dim, const char* what) {
  std::vector<double> values = parse_double_list(text);
  if (std::ssize(values) == 1) values.assign(static_cast<std::size_t>(dim), values[0]);
  if (std::ssize(values) != dim)
    throw std::invalid_argument(std::string(what) +
                                ": expected 1 or dim values, got " +
                                std::to_string(values.size()));
  return values;
}

/// Applies the key=value scenario file, skipping keys the user pinned on the
/// command line (flags override the file).
void apply_scenario_file(OcoOptions& options, const CLI::App& cmd) {
  std::ifstream in(options.scenario_file);
  if (!in) throw IoError("cannot open scenario file: " + options.scenario_file);
  const auto flag_given = [&](const char* name) { return cmd.count(name) > 0; };
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(options.scenario_file + ":" +
                                  std::to_string(line_no) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "dim") {
      if (!flag_given("--dim")) options.dim = std::stoi(value);
    } else if (key == "family") {
      if (!flag_given("--family")) options.family = value;
    } else if (key == "center") {
      if (!flag_given("--center")) options.center = value;
    } else if (key == "curvature") {
      if (!flag_given("--curvature")) options.curvature = value;
    } else if (key == "horizon") {
      if (!flag_given("--horizon")) options.horizon = std::stoll(value);
    } else if (key == "seed") {
      if (!flag_given("--seed")) options.seed = std::stoull(value);
    } else if (key == "slope") {
      if (!flag_given("--slope")) options.slope = value;
    } else if (key == "period") {
      if (!flag_given("--period")) options.period = std::stoll(value);
    } else if (key == "center_range") {
      if (!flag_given("--center-range")) options.center_range = value;
    } else if (key == "theta0") {
      if (!flag_given("--theta0")) options.theta0 = value;
    } else {
      throw std::invalid_argument(options.scenario_file + ":" +
                                  std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    }
  }
}

int cmd_oco(OcoOptions options, const CLI::App& cmd) {
  if (!options.scenario_file.empty()) apply_scenario_file(options, cmd);

  LossScenario scenario;
  scenario.dim = options.dim;
  scenario.horizon = options.horizon;
  if (options.family == "fixed-quadratic") {
    scenario.family = FixedQuadratic{
        broadcast(options.center, options.dim, "center"),
        broadcast(options.curvature, options.dim, "curvature")};
  } else if (options.family == "alternating-linear") {
    scenario.family =
        AlternatingLinear{broadcast(options.slope, options.dim, "slope"),
                          options.period};
    Box box;
    box.lo.assign(static_cast<std::size_t>(options.dim), -1.0);
    box.hi.assign(static_cast<std::size_t>(options.dim), 1.0);
    scenario.box = std::move(box);
  } else if (options.family == "random-quadratic") {
    const std::vector<double> range = parse_double_list(options.center_range);
    if (range.size() != 2)
      throw std::invalid_argument("--center-range expects lo,hi");
    scenario.family = RandomQuadratic{options.seed, range[0], range[1]};
  } else {
    throw std::invalid_argument("unknown family: " + options.family);
  }

  OptimizerSpec spec;
  if (options.optimizer == "adam") spec.kind = OptimizerKind::adam;
  else if (options.optimizer == "amsgrad") spec.kind = OptimizerKind::amsgrad;
  else if (options.optimizer == "gd") spec.kind = OptimizerKind::gradient_descent;
  else throw std::invalid_argument("--optimizer must be adam, amsgrad or gd");
  spec.hyper = options.hyper.hyper();
  spec.hyper.T = options.horizon;
  spec.epsilon = parse_param(options.epsilon).value;
  spec.bias_correction = !options.no_bias_correction;
  spec.constant_rate = options.constant_rate;

  const std::vector<double> theta0 =
      broadcast(options.theta0, options.dim, "theta0");
  const RegretTrace trace = run_oco(scenario, spec, theta0);
  atomic_write_file(resolve_out(options.out), regret_csv(trace));
  std::cout << "wrote " << resolve_out(options.out).string() << " ("
            << trace.optimizer << ", final average regret "
            << format_double(trace.final_avg_regret()) << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification lab for an adaptive-moment optimizer: trajectory "
               "traces, bound checks, counterexample reproduction/search, "
               "feasible-region maps and online-convex-optimization regret"};
  app.require_subcommand(1);

  TraceOptions trace_options;
  CLI::App* trace_cmd =
      app.add_subcommand("trace", "Run the scalar recurrence and export a CSV");
  trace_options.hyper.add_to(trace_cmd);
  trace_cmd->add_option("--source", trace_options.source,
                        "invsqrt|constant:v|uniform:lo,hi,seed|file:path")
      ->capture_default_str();
  trace_cmd->add_option("--out", trace_options.out, "Output CSV path")
      ->capture_default_str();

  VerifyOptions verify_options;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check the per-step inequalities");
  verify_cmd->add_option("--check", verify_options.check, "all|l31|l32|norms|appendix")
      ->capture_default_str();
  verify_cmd->add_option("--beta1", verify_options.beta1, "Explicit cell beta1");
  verify_cmd->add_option("--beta2", verify_options.beta2, "Explicit cell beta2");
  verify_cmd->add_option("--grid", verify_options.grid, "Grid resolution")
      ->capture_default_str();
  verify_cmd->add_option("--traces", verify_options.traces, "Fuzz traces per check")
      ->capture_default_str();
  verify_cmd->add_option("--T", verify_options.T, "Steps per fuzz trace")
      ->capture_default_str();
  verify_cmd->add_option("--t-points", verify_options.t_points,
                         "Log-spaced t grid points")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_options.seed, "Campaign seed")
      ->capture_default_str();
  verify_cmd->add_option("--tol", verify_options.tol, "Relative tolerance")
      ->capture_default_str();
  verify_cmd->add_flag("--serial", verify_options.serial,
                       "Use the serial reference path");
  verify_cmd->add_option("--out", verify_options.out, "Output CSV path")
      ->capture_default_str();

  CounterexampleOptions ce_options;
  CLI::App* ce_cmd = app.add_subcommand(
      "counterexample", "Reproduce or search for bound violations");
  ce_cmd->require_subcommand(1);
  CLI::App* fig1_cmd = ce_cmd->add_subcommand(
      "fig1", "Preset run: beta1=beta2=0.1, lambda=1-1e-8, g_t=1/sqrt(t)");
  fig1_cmd->add_option("--t-max", ce_options.t_max, "Scan horizon")
      ->capture_default_str();
  fig1_cmd->add_option("--out", ce_options.out, "Per-step CSV path")
      ->capture_default_str();
  CLI::App* analytic_cmd = ce_cmd->add_subcommand(
      "analytic", "Smallest T whose harmonic sum exceeds 4");
  analytic_cmd->add_option("--t-max", ce_options.t_max, "Scan horizon")
      ->capture_default_str();
  CLI::App* search_cmd =
      ce_cmd->add_subcommand("search", "Grid-scan hyperparameters for crossings");
  search_cmd->add_option("--beta1", ce_options.beta1_list, "Comma list")
      ->capture_default_str();
  search_cmd->add_option("--beta2", ce_options.beta2_list, "Comma list")
      ->capture_default_str();
  search_cmd->add_option("--lambda", ce_options.lambda_list, "Comma list")
      ->capture_default_str();
  search_cmd->add_option("--family", ce_options.family, "invsqrt|uniform")
      ->capture_default_str();
  search_cmd->add_option("--seeds", ce_options.seeds, "Comma list (uniform family)")
      ->capture_default_str();
  search_cmd->add_option("--bound", ce_options.bound, "kb|new")
      ->capture_default_str();
  search_cmd->add_option("--t-max", ce_options.t_max, "Scan horizon")
      ->capture_default_str();
  search_cmd->add_option("--budget", ce_options.budget, "Max cells")
      ->capture_default_str();
  search_cmd->add_option("--out", ce_options.search_out, "Results CSV path")
      ->capture_default_str();

  RegionOptions region_options;
  CLI::App* region_cmd =
      app.add_subcommand("region", "Map (beta1, beta2) scope membership");
  region_cmd->add_option("--resolution", region_options.resolution, "Cells per axis")
      ->capture_default_str();
  region_cmd->add_flag("--serial", region_options.serial,
                       "Use the serial reference path");
  region_cmd->add_option("--out", region_options.out, "Output CSV path")
      ->capture_default_str();

  OcoOptions oco_options;
  CLI::App* oco_cmd =
      app.add_subcommand("oco", "Online-convex-optimization regret run");
  oco_cmd->add_option("--scenario", oco_options.scenario_file,
                      "Key=value scenario file (flags override)");
  oco_cmd->add_option("--family", oco_options.family,
                      "fixed-quadratic|alternating-linear|random-quadratic")
      ->capture_default_str();
  oco_cmd->add_option("--dim", oco_options.dim, "Dimension")->capture_default_str();
  oco_cmd->add_option("--horizon", oco_options.horizon, "Steps")
      ->capture_default_str();
  oco_cmd->add_option("--center", oco_options.center, "Scalar or comma list")
      ->capture_default_str();
  oco_cmd->add_option("--curvature", oco_options.curvature, "Scalar or comma list")
      ->capture_default_str();
  oco_cmd->add_option("--slope", oco_options.slope, "Scalar or comma list")
      ->capture_default_str();
  oco_cmd->add_option("--period", oco_options.period, "Linear flip period")
      ->capture_default_str();
  oco_cmd->add_option("--center-range", oco_options.center_range,
                      "lo,hi for random centers")
      ->capture_default_str();
  oco_cmd->add_option("--seed", oco_options.seed, "Random-quadratic seed")
      ->capture_default_str();
  oco_cmd->add_option("--optimizer", oco_options.optimizer, "adam|amsgrad|gd")
      ->capture_default_str();
  oco_options.hyper.add_to(oco_cmd);
  oco_cmd->add_option("--epsilon", oco_options.epsilon, "Denominator offset")
      ->capture_default_str();
  oco_cmd->add_flag("--no-bias-correction", oco_options.no_bias_correction,
                    "Use raw moment estimates");
  oco_cmd->add_flag("--constant-rate", oco_options.constant_rate,
                    "Disable the 1/sqrt(t) rate decay");
  oco_cmd->add_option("--theta0", oco_options.theta0, "Scalar or comma list")
      ->capture_default_str();
  oco_cmd->add_option("--out", oco_options.out, "Output CSV path")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    (void)app.exit(e);
    return kExitConfigError;
  }

  try {
    if (*trace_cmd) return cmd_trace(trace_options);
    if (*verify_cmd) return cmd_verify(verify_options);
    if (*fig1_cmd) return cmd_counterexample_fig1(ce_options);
    if (*analytic_cmd) return cmd_counterexample_analytic(ce_options);
    if (*search_cmd) return cmd_counterexample_search(ce_options);
    if (*region_cmd) return cmd_region(region_options);
    if (*oco_cmd) return cmd_oco(oco_options, *oco_cmd);
    std::cerr << "no subcommand\n";
    return kExitConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
