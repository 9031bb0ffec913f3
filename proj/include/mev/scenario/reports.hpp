#pragma once

#include "mev/scenario/scenario.hpp"

namespace mev::scenario {

// One simulated stage per row, in run order.
struct RunBatch {
    std::vector<PlayerId> players;
    OpportunityId focal = 0;
    std::vector<engine::StageResult> results;
    std::vector<std::uint64_t> run_seeds;
};

RunBatch simulate_batch(const engine::StageGameSpec& spec,
                        const std::vector<engine::Strategy>& profile, int runs,
                        std::uint64_t seed);

// CSV uses RFC-style quoting and \n line endings; column orders are fixed:
//   run batch:  run,seed,seal_time,beacon,gas_used,proposer_revenue,
//               focal_winner,utility_<player>...
//   equilibrium: profile,strategy_<player>...,utility_<player>...,
//               expected_gas,epsilon_ne,sybil_resistant,note
std::string csv_field(const std::string& raw);
std::string run_batch_csv(const RunBatch& batch);
json run_batch_json(const RunBatch& batch);

std::string equilibrium_report_csv(const metrics::EquilibriumReport& rep,
                                   const std::vector<PlayerId>& players);
json equilibrium_report_json(const metrics::EquilibriumReport& rep,
                             const std::vector<PlayerId>& players);

} // namespace mev::scenario
