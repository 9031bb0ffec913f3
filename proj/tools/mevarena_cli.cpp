// mevarena: block building, MEV search, stage-game simulation and
// equilibrium analysis from scenario files or built-in presets.
#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mev/builder/fbca.hpp"
#include "mev/domain/serde.hpp"
#include "mev/scenario/presets.hpp"
#include "mev/scenario/reports.hpp"

namespace {

using namespace mev;
using namespace mev::domain;
namespace fs = std::filesystem;
using scenario::Scenario;

int g_exit = 0;

struct CommonOpts {
    std::string scenario_path;
    std::string preset;
    std::string out_dir;
    std::string format = "csv";
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;

    bool seed_given() const { return seed_opt != nullptr && seed_opt->count() > 0; }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool uses_scenario, bool uses_seed,
                const std::string& default_out = "")
{
    const char* unused = " (accepted for interface uniformity; unused here)";
    o.seed_opt = cmd->add_option("--seed", o.seed,
                                 uses_seed ? "Seed overriding the scenario's"
                                           : "Seed" + std::string(unused));
    cmd->add_option("--scenario", o.scenario_path,
                    uses_scenario ? "Scenario JSON file"
                                  : "Scenario file" + std::string(unused));
    if (uses_scenario)
        cmd->add_option("--preset", o.preset, "Built-in preset name instead of --scenario");
    o.out_dir = default_out;
    cmd->add_option("--out", o.out_dir,
                    default_out.empty() ? "Directory for report files (default: stdout)"
                                        : "Directory for report files (default: " +
                                              default_out + ")");
    cmd->add_option("--format", o.format, "Report format (default: csv)")
        ->check(CLI::IsMember({"csv", "json"}));
}

void write_file(const fs::path& p, const std::string& content)
{
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << content;
    f.flush();
    if (!f) throw error("cannot write " + p.generic_string());
}

// Reports go to stdout, or to <out>/<stem>.<format> when --out is given.
void emit(const CommonOpts& o, const std::string& stem, const std::string& csv, const json& j)
{
    const std::string body = o.format == "json" ? canonical_dump(j) : csv;
    if (o.out_dir.empty()) {
        std::cout << body;
        return;
    }
    fs::path p = fs::path(o.out_dir) / (stem + "." + o.format);
    write_file(p, body);
    std::cout << "wrote " << p.generic_string() << "\n";
}

Scenario resolve_scenario(const CommonOpts& o, const std::string& fallback_preset)
{
    if (!o.scenario_path.empty() && !o.preset.empty())
        throw validation_error("--scenario and --preset are mutually exclusive");
    if (!o.scenario_path.empty()) return scenario::load_scenario(o.scenario_path);
    return scenario::make_preset(o.preset.empty() ? fallback_preset : o.preset);
}

std::string join_indices(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

std::string csv_row(const std::vector<std::string>& fields)
{
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += scenario::csv_field(fields[i]);
    }
    line += '\n';
    return line;
}

json built_json(const builder::BuiltBlock& b)
{
    json sel = json::array();
    for (std::size_t i : b.selected) sel.push_back(i);
    return {{"revenue", rat_to_json(b.revenue)}, {"gas_used", b.gas_used}, {"selected", sel}};
}

// ---------------------------------------------------------------- solve-kev

void cmd_solve_kev(const CommonOpts& o, const std::string& items_arg, Gas gas_limit)
{
    builder::KevInstance inst;
    inst.gas_limit = gas_limit;
    std::stringstream ss(items_arg);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw validation_error("invalid --items entry '" + entry +
                                   "' (expected gas:price)");
        try {
            inst.items.push_back({static_cast<Gas>(std::stoll(entry.substr(0, colon))),
                                  rat_from_string(entry.substr(colon + 1))});
        } catch (const std::invalid_argument&) {
            throw validation_error("invalid --items entry '" + entry + "'");
        } catch (const std::out_of_range&) {
            throw validation_error("invalid --items entry '" + entry + "'");
        }
    }
    inst.validate();
    auto exact = builder::kev_exact(inst);
    auto greedy = builder::kev_greedy_by_price(inst);

    std::cout << "kev instance: items=" << inst.items.size() << " gas_limit=" << inst.gas_limit
              << "\n";
    for (std::size_t i = 0; i < inst.items.size(); ++i)
        std::cout << "item " << i << ": gas=" << inst.items[i].gas
                  << " price=" << rat_to_string(inst.items[i].gas_price) << "\n";
    std::cout << "exact: revenue=" << rat_to_human(exact.revenue) << " gas_used=" << exact.gas_used
              << " selected=" << join_indices(exact.selected) << "\n";
    std::cout << "greedy: revenue=" << rat_to_human(greedy.revenue)
              << " gas_used=" << greedy.gas_used << " selected=" << join_indices(greedy.selected)
              << "\n";

    std::string csv = csv_row({"solver", "revenue", "gas_used", "selected"});
    csv += csv_row({"exact", rat_to_human(exact.revenue), std::to_string(exact.gas_used),
                    join_indices(exact.selected)});
    csv += csv_row({"greedy", rat_to_human(greedy.revenue), std::to_string(greedy.gas_used),
                    join_indices(greedy.selected)});
    json items = json::array();
    for (const auto& it : inst.items)
        items.push_back({{"gas", it.gas}, {"gas_price", rat_to_json(it.gas_price)}});
    json j = {{"gas_limit", inst.gas_limit},
              {"items", items},
              {"exact", built_json(exact)},
              {"greedy", built_json(greedy)}};
    emit(o, "solve-kev", csv, j);
}

// --------------------------------------------------------------- build-block

struct StarOpts {
    Gas L = 100;
    Gas gmin = 10;
    std::string m = "1";
    std::string eps = "1/100";
};

void add_star(CLI::App* cmd, StarOpts& s)
{
    cmd->add_option("--L", s.L, "Block gas limit (default: 100)");
    cmd->add_option("--gmin", s.gmin, "Minimum bundle gas (default: 10)");
    cmd->add_option("--m", s.m, "Payment-per-gas scale of the spoke bundles (default: 1)");
    cmd->add_option("--eps", s.eps, "Hub score premium per gas unit (default: 0.01)");
}

void cmd_build_block(const CommonOpts& o, const StarOpts& s)
{
    auto inst = builder::adversarial_star_instance(s.L, s.gmin, rat_from_string(s.eps),
                                                   rat_from_string(s.m));
    auto greedy = builder::fbca_greedy(inst);
    auto exact = builder::fbca_exact(inst);
    Rat ratio = builder::approximation_ratio(inst);

    std::cout << "bundle auction: bundles=" << inst.bundles.size()
              << " gas_limit=" << inst.gas_limit << " conflict_edges=" << inst.conflict_graph.size()
              << "\n";
    for (std::size_t i = 0; i < inst.bundles.size(); ++i)
        std::cout << "bundle " << i << ": gas=" << inst.bundles[i].total_gas()
                  << " score=" << rat_to_string(builder::bundle_score(inst.bundles[i])) << "\n";
    std::cout << "greedy: revenue=" << rat_to_human(greedy.revenue)
              << " gas_used=" << greedy.gas_used << " selected=" << join_indices(greedy.selected)
              << "\n";
    std::cout << "exact: revenue=" << rat_to_human(exact.revenue) << " gas_used=" << exact.gas_used
              << " selected=" << join_indices(exact.selected) << "\n";
    std::cout << "ratio=" << rat_to_string(ratio) << "\n";

    std::string csv = csv_row({"solver", "revenue", "gas_used", "selected"});
    csv += csv_row({"greedy", rat_to_human(greedy.revenue), std::to_string(greedy.gas_used),
                    join_indices(greedy.selected)});
    csv += csv_row({"exact", rat_to_human(exact.revenue), std::to_string(exact.gas_used),
                    join_indices(exact.selected)});
    json bundles = json::array();
    for (const auto& b : inst.bundles)
        bundles.push_back({{"total_gas", b.total_gas()},
                           {"score", rat_to_json(builder::bundle_score(b))}});
    json j = {{"gas_limit", inst.gas_limit},
              {"bundles", bundles},
              {"greedy", built_json(greedy)},
              {"exact", built_json(exact)},
              {"ratio", rat_to_json(ratio)}};
    emit(o, "build-block", csv, j);
}

// ------------------------------------------------------------ counterexample

void cmd_counterexample(const CommonOpts& o, const StarOpts& s)
{
    const Rat eps = rat_from_string(s.eps);
    const Rat m = rat_from_string(s.m);
    auto inst = builder::adversarial_star_instance(s.L, s.gmin, eps, m);
    auto greedy = builder::fbca_greedy(inst);
    auto exact = builder::fbca_exact(inst);
    Rat ratio = builder::approximation_ratio(inst);
    const Gas k = s.L / s.gmin;
    const Rat bound = Rat(1, k - 1);

    std::cout << "FBR=" << rat_to_human(greedy.revenue) << "\n";
    std::cout << "OPT=" << rat_to_human(exact.revenue) << "\n";
    std::cout << "ratio=" << rat_to_string(ratio) << "\n";
    std::cout << "bound=" << rat_to_string(bound) << "\n";

    struct Row {
        Gas k;
        Rat eps, m, greedy, opt, ratio, limit, gap;
    };
    std::vector<Row> sweep;
    const Rat sweep_eps(1, 1'000'000);
    for (Gas kk = 3; kk <= 10; ++kk) {
        auto si = builder::adversarial_star_instance(kk * 10, 10, sweep_eps, Rat(1));
        Row r;
        r.k = kk;
        r.eps = sweep_eps;
        r.m = Rat(1);
        r.greedy = builder::fbca_greedy(si).revenue;
        r.opt = builder::fbca_exact(si).revenue;
        r.ratio = builder::approximation_ratio(si);
        r.limit = Rat(1, kk - 1);
        r.gap = abs(r.ratio - r.limit);
        sweep.push_back(r);
    }
    std::cout << "sweep: epsilon=" << rat_to_string(sweep_eps) << " m=1\n";
    for (const auto& r : sweep)
        std::cout << "k=" << r.k << " ratio=" << rat_to_string(r.ratio)
                  << " limit=" << rat_to_string(r.limit) << " gap=" << rat_to_string(r.gap)
                  << "\n";

    std::string csv =
        csv_row({"case", "k", "epsilon", "m", "greedy_revenue", "optimal_revenue", "ratio",
                 "limit"});
    csv += csv_row({"base", std::to_string(k), rat_to_string(eps), rat_to_string(m),
                    rat_to_human(greedy.revenue), rat_to_human(exact.revenue),
                    rat_to_string(ratio), rat_to_string(bound)});
    for (const auto& r : sweep)
        csv += csv_row({"sweep", std::to_string(r.k), rat_to_string(r.eps), rat_to_string(r.m),
                        rat_to_human(r.greedy), rat_to_human(r.opt), rat_to_string(r.ratio),
                        rat_to_string(r.limit)});
    json jsweep = json::array();
    for (const auto& r : sweep)
        jsweep.push_back({{"k", r.k},
                          {"epsilon", rat_to_json(r.eps)},
                          {"ratio", rat_to_json(r.ratio)},
                          {"limit", rat_to_json(r.limit)},
                          {"gap", rat_to_json(r.gap)}});
    json j = {{"L", s.L},
              {"g_min", s.gmin},
              {"m", rat_to_json(m)},
              {"epsilon", rat_to_json(eps)},
              {"greedy_revenue", rat_to_json(greedy.revenue)},
              {"optimal_revenue", rat_to_json(exact.revenue)},
              {"ratio", rat_to_json(ratio)},
              {"bound", rat_to_json(bound)},
              {"sweep", jsweep}};
    emit(o, "counterexample", csv, j);
}

// ----------------------------------------------------------------- local-mev

void cmd_local_mev(const CommonOpts& o, PlayerId player)
{
    Scenario sc = resolve_scenario(o, "pga-uniagent");
    const search::PlayerCapabilities* caps = nullptr;
    for (const auto& ps : sc.spec.players)
        if (ps.id == player) caps = &ps.caps;
    if (caps == nullptr)
        throw validation_error("scenario has no player " + std::to_string(player));
    auto res = search::local_mev(sc.spec.state, *caps);

    std::cout << "scenario=" << sc.name << " player=" << player << "\n";
    std::cout << "local_mev=" << rat_to_human(res.value) << "\n";
    std::cout << "argmev_bundles=" << res.argmev.size() << "\n";
    for (std::size_t i = 0; i < res.argmev.size(); ++i) {
        const auto& b = res.argmev[i];
        std::cout << "bundle " << i << ": txs=" << b.txs.size() << " gas=" << b.total_gas()
                  << " coinbase=" << rat_to_human(b.coinbase_payment) << " hash=" << b.hash()
                  << "\n";
    }

    std::string csv = csv_row({"bundle", "txs", "total_gas", "coinbase_payment", "hash"});
    for (std::size_t i = 0; i < res.argmev.size(); ++i) {
        const auto& b = res.argmev[i];
        csv += csv_row({std::to_string(i), std::to_string(b.txs.size()),
                        std::to_string(b.total_gas()), rat_to_human(b.coinbase_payment),
                        std::to_string(b.hash())});
    }
    json jb = json::array();
    for (const auto& b : res.argmev) jb.push_back(domain::to_json(b));
    json j = {{"scenario", sc.name},
              {"player", player},
              {"value", rat_to_json(res.value)},
              {"argmev", jb}};
    emit(o, "local-mev", csv, j);
}

// ------------------------------------------------------------------ simulate

void cmd_simulate(const CommonOpts& o, int runs_override)
{
    Scenario sc = resolve_scenario(o, "pga-war");
    if (sc.profile.empty())
        throw validation_error("scenario has no strategy profile to simulate");
    const std::uint64_t seed = o.seed_given() ? o.seed : sc.seed;
    const int runs = runs_override > 0 ? runs_override : sc.runs;
    auto batch = scenario::simulate_batch(sc.spec, sc.profile, runs, seed);

    Rat gas_sum;
    std::map<PlayerId, Rat> util_sum;
    for (const auto& res : batch.results) {
        gas_sum += Rat(res.outcome.block.gas_used);
        for (const auto& [p, u] : res.utility) util_sum[p] += u;
    }
    std::cout << "scenario=" << sc.name << " mechanism=" << sc.spec.mechanism.name
              << " players=" << batch.players.size() << " runs=" << runs << " seed=" << seed
              << "\n";
    std::cout << "mean_gas=" << rat_to_human(gas_sum / runs) << "\n";
    for (PlayerId p : batch.players)
        std::cout << "mean_utility_" << p << "=" << rat_to_human(util_sum[p] / runs) << "\n";

    emit(o, "runs", scenario::run_batch_csv(batch), scenario::run_batch_json(batch));
}

// --------------------------------------------------------------- equilibrium

std::string profiles_csv(const std::vector<metrics::ProfileEval>& pes,
                         const std::vector<PlayerId>& players)
{
    std::vector<std::string> header = {"profile"};
    for (PlayerId p : players) header.push_back("strategy_" + std::to_string(p));
    for (PlayerId p : players) header.push_back("utility_" + std::to_string(p));
    header.insert(header.end(), {"expected_gas", "symmetric", "epsilon_ne", "note"});
    std::string out = csv_row(header);
    for (std::size_t k = 0; k < pes.size(); ++k) {
        std::vector<std::string> fields = {std::to_string(k)};
        for (const auto& s : pes[k].strategies) fields.push_back(engine::strategy_brief(s));
        for (const auto& u : pes[k].utilities) fields.push_back(rat_to_human(u));
        fields.push_back(rat_to_human(pes[k].expected_gas));
        fields.push_back(pes[k].symmetric ? "true" : "false");
        fields.push_back(pes[k].epsilon_ne ? "true" : "false");
        fields.push_back(pes[k].note);
        out += csv_row(fields);
    }
    return out;
}

json profiles_json(const std::vector<metrics::ProfileEval>& pes,
                   const std::vector<PlayerId>& players)
{
    json arr = json::array();
    for (std::size_t k = 0; k < pes.size(); ++k) {
        json strategies = json::array();
        for (const auto& s : pes[k].strategies)
            strategies.push_back(scenario::strategy_to_json(s));
        json utilities = json::object();
        for (std::size_t i = 0; i < players.size() && i < pes[k].utilities.size(); ++i)
            utilities[std::to_string(players[i])] = rat_to_json(pes[k].utilities[i]);
        arr.push_back({{"profile", k},
                       {"strategies", strategies},
                       {"utilities", utilities},
                       {"expected_gas", rat_to_json(pes[k].expected_gas)},
                       {"symmetric", pes[k].symmetric},
                       {"epsilon_ne", pes[k].epsilon_ne},
                       {"note", pes[k].note}});
    }
    return arr;
}

void cmd_equilibrium(const CommonOpts& o, int runs_override)
{
    Scenario sc = resolve_scenario(o, "pga-war");
    const std::uint64_t seed = o.seed_given() ? o.seed : sc.seed;
    const int runs = runs_override > 0 ? runs_override : sc.runs;
    auto pes = metrics::evaluate_profiles(sc.spec, sc.grid, sc.epsilon, runs, seed,
                                          sc.profile_cap);
    std::size_t ne = 0;
    for (const auto& pe : pes) ne += pe.epsilon_ne ? 1 : 0;

    std::cout << "scenario=" << sc.name << " players=" << sc.spec.players.size()
              << " profiles=" << pes.size() << " epsilon=" << rat_to_human(sc.epsilon)
              << " runs=" << runs << " seed=" << seed << "\n";
    std::cout << "epsilon_ne_profiles=" << ne << "\n";

    auto players = sc.spec.player_ids();
    emit(o, "profiles", profiles_csv(pes, players),
         json{{"scenario", sc.name},
              {"epsilon", rat_to_json(sc.epsilon)},
              {"runs", runs},
              {"seed", seed},
              {"profiles", profiles_json(pes, players)}});
}

// --------------------------------------------------------------------- pomev

void cmd_pomev(const CommonOpts& o, int runs_override)
{
    Scenario sc = resolve_scenario(o, "pga-uniagent");
    const std::uint64_t seed = o.seed_given() ? o.seed : sc.seed;
    const int runs = runs_override > 0 ? runs_override : sc.runs;
    auto rep = metrics::price_of_mev(sc.spec, sc.grid, sc.epsilon, runs, seed,
                                     sc.effective_sybil_n_max(), sc.profile_cap);

    std::cout << "scenario=" << sc.name << " players=" << rep.base_players
              << " profiles=" << rep.profiles.size() << " epsilon=" << rat_to_human(rep.epsilon)
              << " runs=" << rep.runs << " seed=" << rep.seed
              << " sybil_n_max=" << rep.sybil_n_max << "\n";
    std::cout << "null_cost_gas=" << rep.null_cost_gas << "\n";
    std::cout << "PoMEV=" << (rep.pomev ? rat_to_human(*rep.pomev) : std::string("undefined"))
              << "\n";
    if (rep.poa_degenerate)
        std::cout << "PoA=degenerate\n";
    else
        std::cout << "PoA=" << (rep.poa ? rat_to_human(*rep.poa) : std::string("undefined"))
                  << "\n";
    if (!rep.notes.empty()) std::cout << "notes=" << rep.notes << "\n";

    auto players = sc.spec.player_ids();
    emit(o, "pomev", scenario::equilibrium_report_csv(rep, players),
         scenario::equilibrium_report_json(rep, players));
}

// ------------------------------------------------------------------- presets

void cmd_presets(const CommonOpts& o)
{
    const std::string dir = o.out_dir.empty() ? "presets" : o.out_dir;
    for (const auto& name : scenario::preset_names()) {
        fs::path p = fs::path(dir) / (name + ".json");
        write_file(p, canonical_dump(scenario::scenario_to_json(scenario::make_preset(name))));
        std::cout << "wrote " << p.generic_string() << "\n";
    }
}

// ------------------------------------------------------------------ validate

void cmd_validate(const CommonOpts& o)
{
    if (o.scenario_path.empty() && o.preset.empty()) {
        for (const auto& name : scenario::preset_names()) {
            auto sc = scenario::make_preset(name);
            scenario::scenario_from_json(scenario::scenario_to_json(sc)).validate();
            std::cout << name << ": ok\n";
        }
        return;
    }
    if (!o.preset.empty()) {
        scenario::make_preset(o.preset).validate();
        std::cout << o.preset << ": ok\n";
        return;
    }
    auto violations = scenario::validate_scenario_file(o.scenario_path);
    if (violations.empty()) {
        std::cout << o.scenario_path << ": ok\n";
        return;
    }
    for (const auto& v : violations) std::cout << "violation: " << v << "\n";
    g_exit = 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MEV laboratory: block building, search, ordering auctions and "
                 "equilibrium analysis"};
    app.require_subcommand(1);

    CommonOpts o_kev, o_block, o_cx, o_local, o_sim, o_eq, o_pomev, o_presets, o_validate;
    std::string items = "6:5,5:4,5:4";
    mev::domain::Gas kev_limit = 10;
    StarOpts star_block, star_cx;
    mev::domain::PlayerId local_player = 0;
    int sim_runs = 0, eq_runs = 0, pomev_runs = 0;

    auto* c_kev = app.add_subcommand(
        "solve-kev", "Fee-maximizing transaction selection under a gas limit, exact vs greedy");
    c_kev->add_option("--items", items, "Comma-separated gas:price items (default: 6:5,5:4,5:4)");
    c_kev->add_option("--gas-limit", kev_limit, "Block gas limit (default: 10)");
    add_common(c_kev, o_kev, false, false);
    c_kev->callback([&] { cmd_solve_kev(o_kev, items, kev_limit); });

    auto* c_block = app.add_subcommand(
        "build-block", "Conflict-aware bundle selection on the star family, greedy vs exact");
    add_star(c_block, star_block);
    add_common(c_block, o_block, false, false);
    c_block->callback([&] { cmd_build_block(o_block, star_block); });

    auto* c_cx = app.add_subcommand(
        "counterexample",
        "Star instance where greedy building underperforms, with the matching ratio bound");
    add_star(c_cx, star_cx);
    add_common(c_cx, o_cx, false, false);
    c_cx->callback([&] { cmd_counterexample(o_cx, star_cx); });

    auto* c_local = app.add_subcommand("local-mev",
                                       "A player's maximum extractable profit and its bundles");
    c_local->add_option("--player", local_player, "Player id (default: 0)");
    add_common(c_local, o_local, true, false);
    c_local->callback([&] { cmd_local_mev(o_local, local_player); });

    auto* c_sim = app.add_subcommand("simulate", "Monte-Carlo stage simulations for a scenario");
    c_sim->add_option("--runs", sim_runs, "Override the scenario's run count");
    add_common(c_sim, o_sim, true, true);
    c_sim->callback([&] { cmd_simulate(o_sim, sim_runs); });

    auto* c_eq = app.add_subcommand("equilibrium",
                                    "Evaluate the strategy grid and flag epsilon-Nash profiles");
    c_eq->add_option("--runs", eq_runs, "Override the scenario's run count");
    add_common(c_eq, o_eq, true, true);
    c_eq->callback([&] { cmd_equilibrium(o_eq, eq_runs); });

    auto* c_pomev = app.add_subcommand("pomev", "Price-of-MEV report for a scenario");
    c_pomev->add_option("--runs", pomev_runs, "Override the scenario's run count");
    add_common(c_pomev, o_pomev, true, true);
    c_pomev->callback([&] { cmd_pomev(o_pomev, pomev_runs); });

    auto* c_presets = app.add_subcommand("presets", "Write the built-in scenario presets to disk");
    add_common(c_presets, o_presets, false, false, "presets");
    c_presets->callback([&] { cmd_presets(o_presets); });

    auto* c_validate = app.add_subcommand("validate",
                                          "Check a scenario file and list schema violations");
    add_common(c_validate, o_validate, true, false);
    c_validate->callback([&] { cmd_validate(o_validate); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_exit;
}
