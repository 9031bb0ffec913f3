#include "mev/scenario/reports.hpp"

#include "mev/util/parallel.hpp"

namespace mev::scenario {

RunBatch simulate_batch(const engine::StageGameSpec& spec,
                        const std::vector<engine::Strategy>& profile, int runs,
                        std::uint64_t seed)
{
    if (runs < 1) throw validation_error("run count must be positive");
    spec.validate();
    if (profile.size() != spec.players.size())
        throw validation_error("profile size does not match player count");
    RunBatch batch;
    batch.players = spec.player_ids();
    batch.focal = spec.focal_opportunity;
    batch.results.resize(static_cast<std::size_t>(runs));
    batch.run_seeds.resize(static_cast<std::size_t>(runs));
    for (int r = 0; r < runs; ++r)
        batch.run_seeds[static_cast<std::size_t>(r)] = engine::run_seed(seed, r);
    parallel_for(static_cast<std::size_t>(runs), [&](std::size_t r) {
        batch.results[r] = engine::run_stage(spec, profile, batch.run_seeds[r]);
    });
    return batch;
}

std::string csv_field(const std::string& raw)
{
    if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

namespace {

std::string row(const std::vector<std::string>& fields)
{
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    line += '\n';
    return line;
}

std::string opt_player(const std::optional<PlayerId>& p)
{
    return p ? std::to_string(*p) : std::string{};
}

Rat map_at(const std::map<PlayerId, Rat>& m, PlayerId p)
{
    auto it = m.find(p);
    return it == m.end() ? Rat(0) : it->second;
}

} // namespace

std::string run_batch_csv(const RunBatch& batch)
{
    std::vector<std::string> header = {"run",      "seed",         "seal_time",
                                       "beacon",   "gas_used",     "proposer_revenue",
                                       "focal_winner"};
    for (PlayerId p : batch.players) header.push_back("utility_" + std::to_string(p));
    std::string out = row(header);
    for (std::size_t r = 0; r < batch.results.size(); ++r) {
        const auto& res = batch.results[r];
        std::vector<std::string> fields = {
            std::to_string(r),
            std::to_string(batch.run_seeds[r]),
            rat_to_human(res.seal_time),
            std::to_string(res.beacon),
            std::to_string(res.outcome.block.gas_used),
            rat_to_human(res.outcome.block.proposer_revenue),
            opt_player(res.outcome.winner_of(batch.focal)),
        };
        for (PlayerId p : batch.players) fields.push_back(rat_to_human(map_at(res.utility, p)));
        out += row(fields);
    }
    return out;
}

json run_batch_json(const RunBatch& batch)
{
    json runs = json::array();
    for (std::size_t r = 0; r < batch.results.size(); ++r) {
        const auto& res = batch.results[r];
        json utilities = json::object();
        json winners = json::object();
        for (PlayerId p : batch.players)
            utilities[std::to_string(p)] = rat_to_json(map_at(res.utility, p));
        for (const auto& [opp, player] : res.outcome.winners)
            winners[std::to_string(opp)] = player;
        runs.push_back({{"run", r},
                        {"seed", batch.run_seeds[r]},
                        {"seal_time", rat_to_json(res.seal_time)},
                        {"beacon", res.beacon},
                        {"gas_used", res.outcome.block.gas_used},
                        {"proposer_revenue", rat_to_json(res.outcome.block.proposer_revenue)},
                        {"winners", winners},
                        {"utilities", utilities}});
    }
    json players = json::array();
    for (PlayerId p : batch.players) players.push_back(p);
    return {{"players", players}, {"runs", runs}};
}

std::string equilibrium_report_csv(const metrics::EquilibriumReport& rep,
                                   const std::vector<PlayerId>& players)
{
    std::vector<std::string> header = {"profile"};
    for (PlayerId p : players) header.push_back("strategy_" + std::to_string(p));
    for (PlayerId p : players) header.push_back("utility_" + std::to_string(p));
    header.insert(header.end(), {"expected_gas", "epsilon_ne", "sybil_resistant", "note"});
    std::string out = row(header);
    for (std::size_t k = 0; k < rep.profiles.size(); ++k) {
        const auto& pe = rep.profiles[k];
        std::vector<std::string> fields = {std::to_string(k)};
        for (const auto& s : pe.strategies) fields.push_back(engine::strategy_brief(s));
        for (const auto& u : pe.utilities) fields.push_back(rat_to_human(u));
        fields.push_back(rat_to_human(pe.expected_gas));
        fields.push_back(pe.epsilon_ne ? "true" : "false");
        fields.push_back(pe.sybil_resistant ? "true" : "false");
        fields.push_back(pe.note);
        out += row(fields);
    }
    return out;
}

json equilibrium_report_json(const metrics::EquilibriumReport& rep,
                             const std::vector<PlayerId>& players)
{
    json profs = json::array();
    for (std::size_t k = 0; k < rep.profiles.size(); ++k) {
        const auto& pe = rep.profiles[k];
        json strategies = json::array();
        for (const auto& s : pe.strategies) strategies.push_back(strategy_to_json(s));
        json utilities = json::object();
        for (std::size_t i = 0; i < players.size() && i < pe.utilities.size(); ++i)
            utilities[std::to_string(players[i])] = rat_to_json(pe.utilities[i]);
        profs.push_back({{"profile", k},
                         {"strategies", strategies},
                         {"utilities", utilities},
                         {"expected_gas", rat_to_json(pe.expected_gas)},
                         {"symmetric", pe.symmetric},
                         {"epsilon_ne", pe.epsilon_ne},
                         {"sybil_resistant", pe.sybil_resistant},
                         {"note", pe.note}});
    }
    json out = {{"epsilon", rat_to_json(rep.epsilon)},
                {"runs", rep.runs},
                {"seed", rep.seed},
                {"base_players", rep.base_players},
                {"sybil_n_max", rep.sybil_n_max},
                {"null_cost_gas", rep.null_cost_gas},
                {"profiles", profs},
                {"poa_degenerate", rep.poa_degenerate},
                {"notes", rep.notes}};
    out["price_of_mev"] = rep.pomev ? rat_to_json(*rep.pomev) : json(nullptr);
    out["price_of_anarchy"] = rep.poa ? rat_to_json(*rep.poa) : json(nullptr);
    return out;
}

} // namespace mev::scenario
