#pragma once

#include <nlohmann/json.hpp>

#include "mev/domain/serde.hpp"
#include "mev/metrics/equilibrium.hpp"

namespace mev::scenario {

using json = nlohmann::json;
using namespace mev::domain;

// A complete experiment description: one stage game, a strategy grid, an
// optional concrete profile for plain simulation, and analysis parameters.
// Serialized as a single JSON document with a schema-version field.
struct Scenario {
    int schema_version = 1;
    std::string name;
    std::string description;
    engine::StageGameSpec spec;
    metrics::StrategyGrid grid;
    std::vector<engine::Strategy> profile; // empty unless the file sets one

    Rat epsilon;
    int runs = 100;
    std::uint64_t seed = 0;
    int sybil_n_max = 0; // 0 → the game's player count (no clone checks)
    std::size_t profile_cap = 100000;

    void validate() const;
    int effective_sybil_n_max() const;
};

json strategy_to_json(const engine::Strategy& s);
engine::Strategy strategy_from_json(const json& j);

json scenario_to_json(const Scenario& sc);
// Full structural and referential validation; throws validation_error naming
// the offending field. Never returns a partially-loaded scenario.
Scenario scenario_from_json(const json& j);

// File I/O failures throw error; schema problems throw validation_error.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);

// Collected schema violations (empty = valid). I/O failures still throw.
std::vector<std::string> validate_scenario_file(const std::string& path);

} // namespace mev::scenario
