#include "adamlab/report_io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "adamlab/csv.hpp"

namespace adamlab {

namespace {

/// Bound column values for one step, empty when out of scope.
struct BoundColumns {
  bool kb_in_scope = false;
  bool new_in_scope = false;
};

BoundColumns bound_scopes(const DerivedConstants& constants) {
  BoundColumns cols;
  cols.kb_in_scope = constants.gamma.has_value() && constants.gamma.value() < 1.0;
  cols.new_in_scope =
      classify_region(constants.beta1_exact, constants.beta2_exact).result33_scope;
  return cols;
}

}  // namespace

std::string trace_csv(const Trace& trace, const DerivedConstants& constants) {
  const BoundColumns cols = bound_scopes(constants);
  std::ostringstream out;
  out << "t,g,m,v,m_hat,v_hat,s,kb_bound,new_bound\n";
  for (const TrajectoryState& st : trace.steps) {
    const double g_norm = std::sqrt(st.g_norm_sq_running);
    out << st.t << ',' << format_double(st.g) << ',' << format_double(st.m) << ','
        << format_double(st.v) << ',' << format_double(st.m_hat) << ','
        << format_double(st.v_hat) << ',' << format_double(st.s_running) << ',';
    if (cols.kb_in_scope) out << format_double(kb_bound(constants, g_norm));
    out << ',';
    if (cols.new_in_scope) out << format_double(new_bound(constants, st.t, g_norm));
    out << '\n';
  }
  return out.str();
}

std::string trace_csv(const Trace& trace) {
  return trace_csv(trace, derived_constants(trace.hyper.beta1, trace.hyper.beta2));
}

std::string region_csv(const std::vector<RegionCell>& cells) {
  std::ostringstream out;
  out << "beta1,beta2,bock_scope,result33_scope,lemma31,lemma32\n";
  for (const RegionCell& cell : cells) {
    out << format_double(cell.beta1) << ',' << format_double(cell.beta2) << ','
        << format_bool(cell.cls.bock_scope) << ','
        << format_bool(cell.cls.result33_scope) << ','
        << format_bool(cell.cls.lemma31_ok) << ','
        << format_bool(cell.cls.lemma32_ok) << '\n';
  }
  return out.str();
}

std::string lemma_report_csv(const std::vector<LemmaCellResult>& results) {
  std::ostringstream out;
  out << "lemma_id,beta1,beta2,seed,T,first_violation_t,max_slack_violation\n";
  for (const LemmaCellResult& cell : results) {
    out << to_string(cell.report.lemma_id) << ',';
    // The y-grid check sweeps beta1 itself; it has no single cell.
    if (cell.report.lemma_id != LemmaId::AppendixY)
      out << format_double(cell.beta1) << ',' << format_double(cell.beta2);
    else
      out << ',';
    out << ',' << cell.seed << ',' << cell.T << ','
        << format_optional(cell.report.first_violation_t) << ','
        << format_double(cell.report.max_slack_violation) << '\n';
  }
  return out.str();
}

std::string crossing_csv(const CrossingResult& result) {
  if (!result.trace)
    throw std::invalid_argument("crossing_csv: result carries no trace");
  const DerivedConstants constants =
      derived_constants(result.hyper.beta1, result.hyper.beta2);
  std::ostringstream out;
  out << "t,s,bound,margin\n";
  for (const TrajectoryState& st : result.trace->steps) {
    const double g_norm = std::sqrt(st.g_norm_sq_running);
    const double bound = result.bound_kind == BoundKind::kb
                             ? kb_bound(constants, g_norm)
                             : new_bound(constants, st.t, g_norm);
    out << st.t << ',' << format_double(st.s_running) << ',' << format_double(bound)
        << ',' << format_double(st.s_running - bound) << '\n';
  }
  return out.str();
}

std::string fuzz_search_csv(const std::vector<CrossingResult>& violations) {
  std::ostringstream out;
  out << "beta1,beta2,lambda,seed,crossing_t,margin\n";
  for (const CrossingResult& v : violations) {
    out << format_double(v.hyper.beta1) << ',' << format_double(v.hyper.beta2) << ','
        << format_double(v.hyper.lambda_m) << ',';
    if (const auto* u = std::get_if<UniformRandomSource>(&v.source)) out << u->seed;
    out << ',' << format_optional(v.first_crossing_t) << ','
        << format_double(v.margin) << '\n';
  }
  return out.str();
}

std::string regret_csv(const RegretTrace& trace) {
  std::ostringstream out;
  out << "t,loss,cum_regret,avg_regret\n";
  for (std::size_t i = 0; i < trace.step_loss.size(); ++i) {
    out << (i + 1) << ',' << format_double(trace.step_loss[i]) << ','
        << format_double(trace.cum_regret[i]) << ','
        << format_double(trace.avg_regret[i]) << '\n';
  }
  return out.str();
}

}  // namespace adamlab
