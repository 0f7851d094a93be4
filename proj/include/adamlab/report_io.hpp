#pragma once

#include <string>
#include <vector>

#include "adamlab/bounds.hpp"
#include "adamlab/campaign.hpp"
#include "adamlab/counterexample.hpp"
#include "adamlab/oco.hpp"
#include "adamlab/trajectory.hpp"

namespace adamlab {

/// t,g,m,v,m_hat,v_hat,s,kb_bound,new_bound — bound cells are empty where
/// the (beta1, beta2) pair is outside the bound's scope.
std::string trace_csv(const Trace& trace, const DerivedConstants& constants);
std::string trace_csv(const Trace& trace);

/// beta1,beta2,bock_scope,result33_scope,lemma31,lemma32 with 0/1 booleans.
std::string region_csv(const std::vector<RegionCell>& cells);

/// lemma_id,beta1,beta2,seed,T,first_violation_t,max_slack_violation
std::string lemma_report_csv(const std::vector<LemmaCellResult>& results);

/// t,s,bound,margin for a kept crossing-scan trace.
std::string crossing_csv(const CrossingResult& result);

/// beta1,beta2,lambda,seed,crossing_t,margin
std::string fuzz_search_csv(const std::vector<CrossingResult>& violations);

/// t,loss,cum_regret,avg_regret
std::string regret_csv(const RegretTrace& trace);

}  // namespace adamlab
