#include "mev/scenario/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mev::scenario {

namespace {

[[noreturn]] void bad(const std::string& what) { throw validation_error(what); }

const json& need(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) bad(where + " must be an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where + ": missing field '" + std::string(key) + "'");
    return *it;
}

std::int64_t need_int(const json& j, const char* key, const std::string& where)
{
    const json& v = need(j, key, where);
    if (!v.is_number_integer()) bad(where + "." + key + " must be an integer");
    return v.get<std::int64_t>();
}

std::string need_str(const json& j, const char* key, const std::string& where)
{
    const json& v = need(j, key, where);
    if (!v.is_string()) bad(where + "." + key + " must be a string");
    return v.get<std::string>();
}

Rat need_rat(const json& j, const char* key, const std::string& where)
{
    try {
        return rat_from_json(need(j, key, where));
    } catch (const validation_error&) {
        throw;
    } catch (const error& e) {
        bad(where + "." + key + ": " + e.what());
    }
}

json timer_to_json(const engine::BlockTimer& t)
{
    switch (t.kind) {
    case engine::BlockTimer::Kind::fixed:
        return {{"kind", "fixed"}, {"interval", rat_to_json(t.a)}};
    case engine::BlockTimer::Kind::exponential:
        return {{"kind", "exponential"}, {"mean", rat_to_json(t.a)}};
    case engine::BlockTimer::Kind::uniform:
    default:
        return {{"kind", "uniform"}, {"lo", rat_to_json(t.a)}, {"hi", rat_to_json(t.b)}};
    }
}

engine::BlockTimer timer_from_json(const json& j)
{
    engine::BlockTimer t;
    const std::string kind = need_str(j, "kind", "timer");
    if (kind == "fixed") {
        t.kind = engine::BlockTimer::Kind::fixed;
        t.a = need_rat(j, "interval", "timer");
    } else if (kind == "exponential") {
        t.kind = engine::BlockTimer::Kind::exponential;
        t.a = need_rat(j, "mean", "timer");
    } else if (kind == "uniform") {
        t.kind = engine::BlockTimer::Kind::uniform;
        t.a = need_rat(j, "lo", "timer");
        t.b = need_rat(j, "hi", "timer");
    } else {
        bad("timer.kind must be fixed, exponential or uniform (got '" + kind + "')");
    }
    t.validate();
    return t;
}

json latency_to_json(const engine::LatencyGraph& g)
{
    json nodes = json::array();
    for (const auto& n : g.nodes) nodes.push_back(n);
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"ms", rat_to_json(e.ms)}});
    json owners = json::object();
    for (const auto& [node, p] : g.node_owner) owners[node] = p;
    return {{"nodes", nodes},
            {"edges", edges},
            {"sequencer_node", g.sequencer_node},
            {"owners", owners}};
}

engine::LatencyGraph latency_from_json(const json& j)
{
    engine::LatencyGraph g;
    const json& nodes = need(j, "nodes", "latency");
    if (!nodes.is_array()) bad("latency.nodes must be an array");
    for (const auto& n : nodes) {
        if (!n.is_string()) bad("latency.nodes entries must be strings");
        g.nodes.push_back(n.get<std::string>());
    }
    const json& edges = need(j, "edges", "latency");
    if (!edges.is_array()) bad("latency.edges must be an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "latency.edges[" + std::to_string(i) + "]";
        g.edges.push_back({need_str(edges[i], "from", where), need_str(edges[i], "to", where),
                           need_rat(edges[i], "ms", where)});
    }
    g.sequencer_node = need_str(j, "sequencer_node", "latency");
    const json& owners = need(j, "owners", "latency");
    if (!owners.is_object()) bad("latency.owners must be an object");
    for (const auto& [node, p] : owners.items()) {
        if (!p.is_number_integer()) bad("latency.owners." + node + " must be a player id");
        g.node_owner[node] = p.get<PlayerId>();
    }
    return g;
}

json path_to_json(const engine::StepPath& p)
{
    json steps = json::array();
    for (const auto& [t, v] : p.steps) steps.push_back(json::array({rat_to_json(t), v}));
    return steps;
}

engine::StepPath path_from_json(const json& j, const std::string& where)
{
    if (!j.is_array()) bad(where + " must be an array of [time, value] pairs");
    engine::StepPath p;
    for (const auto& s : j) {
        if (!s.is_array() || s.size() != 2) bad(where + " entries must be [time, value] pairs");
        if (!s[1].is_number_integer()) bad(where + " values must be integers");
        p.steps.emplace_back(rat_from_json(s[0]), s[1].get<std::int64_t>());
    }
    p.validate();
    return p;
}

json caps_to_json(const search::PlayerCapabilities& c)
{
    json out;
    out["claimable"] = c.claimable;
    json grid = json::array();
    for (const auto& m : c.gas_price_grid) grid.push_back(rat_to_json(m));
    out["gas_price_grid"] = grid;
    json tpls = json::array();
    for (const auto& t : c.swap_templates)
        tpls.push_back({{"pool", t.pool}, {"token_in", t.token_in}, {"amounts", t.amounts}});
    out["swap_templates"] = tpls;
    out["max_bundle_len"] = c.max_bundle_len;
    out["search_cap"] = c.search_cap;
    if (!c.mempool_view.empty()) {
        json mv = json::array();
        for (const auto& tx : c.mempool_view) mv.push_back(to_json(tx));
        out["mempool_view"] = mv;
    }
    return out;
}

search::PlayerCapabilities caps_from_json(const json& j, const std::string& where)
{
    search::PlayerCapabilities c;
    if (!j.is_object()) bad(where + " must be an object");
    if (j.contains("claimable")) {
        if (!j["claimable"].is_array()) bad(where + ".claimable must be an array");
        for (const auto& id : j["claimable"]) {
            if (!id.is_number_integer()) bad(where + ".claimable entries must be integers");
            c.claimable.push_back(id.get<OpportunityId>());
        }
    }
    const json& grid = need(j, "gas_price_grid", where);
    if (!grid.is_array()) bad(where + ".gas_price_grid must be an array");
    for (const auto& m : grid) c.gas_price_grid.push_back(rat_from_json(m));
    if (j.contains("swap_templates")) {
        if (!j["swap_templates"].is_array()) bad(where + ".swap_templates must be an array");
        for (const auto& t : j["swap_templates"]) {
            search::SwapTemplate tpl;
            tpl.pool = static_cast<PoolId>(need_int(t, "pool", where + ".swap_templates"));
            tpl.token_in =
                static_cast<TokenId>(need_int(t, "token_in", where + ".swap_templates"));
            const json& amounts = need(t, "amounts", where + ".swap_templates");
            if (!amounts.is_array()) bad(where + ".swap_templates.amounts must be an array");
            for (const auto& a : amounts) {
                if (!a.is_number_integer())
                    bad(where + ".swap_templates.amounts entries must be integers");
                tpl.amounts.push_back(a.get<std::int64_t>());
            }
            c.swap_templates.push_back(std::move(tpl));
        }
    }
    if (j.contains("max_bundle_len"))
        c.max_bundle_len = static_cast<int>(need_int(j, "max_bundle_len", where));
    if (j.contains("search_cap"))
        c.search_cap = static_cast<std::size_t>(need_int(j, "search_cap", where));
    if (j.contains("mempool_view")) {
        if (!j["mempool_view"].is_array()) bad(where + ".mempool_view must be an array");
        for (const auto& tx : j["mempool_view"]) c.mempool_view.push_back(transaction_from_json(tx));
    }
    return c;
}

json mechanism_to_json(const auction::MechanismConfig& m)
{
    return {{"name", m.name},
            {"whitelist", m.whitelist},
            {"censor", m.censor},
            {"private_mempool", m.private_mempool}};
}

auction::MechanismConfig mechanism_from_json(const json& j)
{
    auction::MechanismConfig m;
    m.name = need_str(j, "name", "mechanism");
    if (j.contains("whitelist")) {
        if (!j["whitelist"].is_array()) bad("mechanism.whitelist must be an array");
        for (const auto& p : j["whitelist"]) {
            if (!p.is_number_integer()) bad("mechanism.whitelist entries must be player ids");
            m.whitelist.push_back(p.get<PlayerId>());
        }
    }
    if (j.contains("censor")) {
        if (!j["censor"].is_boolean()) bad("mechanism.censor must be a boolean");
        m.censor = j["censor"].get<bool>();
    }
    if (j.contains("private_mempool")) {
        if (!j["private_mempool"].is_boolean()) bad("mechanism.private_mempool must be a boolean");
        m.private_mempool = j["private_mempool"].get<bool>();
    } else {
        m.private_mempool = auction::default_private_mempool(m.name);
    }
    return m;
}

} // namespace

json strategy_to_json(const engine::Strategy& s)
{
    using namespace engine;
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NoOpStrategy>) {
                return {{"family", "noop"}};
            } else if constexpr (std::is_same_v<T, FixedBid>) {
                return {{"family", "fixed_bid"}, {"m", rat_to_json(p.m)}};
            } else if constexpr (std::is_same_v<T, ReactiveCounterBid>) {
                return {{"family", "reactive_counter_bid"},
                        {"m0", rat_to_json(p.m0)},
                        {"raise", rat_to_json(p.raise)},
                        {"budget", rat_to_json(p.budget)}};
            } else if constexpr (std::is_same_v<T, LastSecondSnipe>) {
                return {{"family", "last_second_snipe"},
                        {"delta", rat_to_json(p.delta)},
                        {"m", rat_to_json(p.m)}};
            } else if constexpr (std::is_same_v<T, Spam>) {
                return {{"family", "spam"}, {"replicas", p.replicas}, {"m", rat_to_json(p.m)}};
            } else if constexpr (std::is_same_v<T, SealedShade>) {
                return {{"family", "sealed_shade"},
                        {"alpha", rat_to_json(p.alpha)},
                        {"base_price", rat_to_json(p.base_price)}};
            } else {
                static_assert(std::is_same_v<T, QuantitySell>);
                return {{"family", "quantity_sell"},
                        {"pool", p.pool},
                        {"token_in", p.token_in},
                        {"amount", p.amount},
                        {"m", rat_to_json(p.m)}};
            }
        },
        s);
}

engine::Strategy strategy_from_json(const json& j)
{
    using namespace engine;
    const std::string family = need_str(j, "family", "strategy");
    const std::string where = "strategy(" + family + ")";
    if (family == "noop") return NoOpStrategy{};
    if (family == "fixed_bid") return FixedBid{need_rat(j, "m", where)};
    if (family == "reactive_counter_bid")
        return ReactiveCounterBid{need_rat(j, "m0", where), need_rat(j, "raise", where),
                                  need_rat(j, "budget", where)};
    if (family == "last_second_snipe")
        return LastSecondSnipe{need_rat(j, "delta", where), need_rat(j, "m", where)};
    if (family == "spam")
        return Spam{static_cast<int>(need_int(j, "replicas", where)), need_rat(j, "m", where)};
    if (family == "sealed_shade") {
        SealedShade s{need_rat(j, "alpha", where), Rat(1)};
        if (j.contains("base_price")) s.base_price = need_rat(j, "base_price", where);
        return s;
    }
    if (family == "quantity_sell")
        return QuantitySell{static_cast<PoolId>(need_int(j, "pool", where)),
                            static_cast<TokenId>(need_int(j, "token_in", where)),
                            need_int(j, "amount", where), need_rat(j, "m", where)};
    bad("unknown strategy family '" + family + "'");
}

void Scenario::validate() const
{
    if (schema_version != 1)
        throw validation_error("unsupported schema_version " + std::to_string(schema_version));
    if (name.empty()) throw validation_error("scenario name must be non-empty");
    spec.validate();
    grid.validate(spec.player_ids());
    if (!profile.empty() && profile.size() != spec.players.size())
        throw validation_error("profile has " + std::to_string(profile.size()) +
                               " strategies for " + std::to_string(spec.players.size()) +
                               " players");
    if (epsilon < 0) throw validation_error("analysis.epsilon must be non-negative");
    if (runs < 1) throw validation_error("analysis.runs must be positive");
    if (sybil_n_max < 0) throw validation_error("analysis.sybil_n_max must be non-negative");
    if (profile_cap < 1) throw validation_error("analysis.profile_cap must be positive");
}

int Scenario::effective_sybil_n_max() const
{
    const int base = static_cast<int>(spec.players.size());
    return sybil_n_max == 0 ? base : sybil_n_max;
}

json scenario_to_json(const Scenario& sc)
{
    json j;
    j["schema_version"] = sc.schema_version;
    j["name"] = sc.name;
    j["description"] = sc.description;
    j["state"] = to_json(sc.spec.state);
    j["gas_limit"] = sc.spec.gas_limit;
    j["mechanism"] = mechanism_to_json(sc.spec.mechanism);
    j["latency"] = latency_to_json(sc.spec.latency);
    j["timer"] = timer_to_json(sc.spec.timer);
    j["focal_opportunity"] = sc.spec.focal_opportunity;
    j["discovery_time"] = rat_to_json(sc.spec.discovery_time);
    j["value_path"] = path_to_json(sc.spec.value_path);
    if (!sc.spec.value_path_override.empty()) {
        json ov = json::object();
        for (const auto& [p, path] : sc.spec.value_path_override)
            ov[std::to_string(p)] = path_to_json(path);
        j["value_path_override"] = ov;
    }
    if (!sc.spec.costs.costs.empty()) {
        json costs = json::object();
        for (const auto& [kind, c] : sc.spec.costs.costs) costs[kind] = rat_to_json(c);
        j["external_costs"] = costs;
    }
    json players = json::array();
    for (const auto& p : sc.spec.players) {
        json pj;
        pj["id"] = p.id;
        pj["competitor_estimate"] = p.competitor_estimate;
        if (!p.purchases.empty()) pj["purchases"] = p.purchases;
        pj["caps"] = caps_to_json(p.caps);
        players.push_back(pj);
    }
    j["players"] = players;
    json grid;
    json shared = json::array();
    for (const auto& s : sc.grid.shared) shared.push_back(strategy_to_json(s));
    grid["shared"] = shared;
    if (!sc.grid.overrides.empty()) {
        json ov = json::object();
        for (const auto& [p, menu] : sc.grid.overrides) {
            json arr = json::array();
            for (const auto& s : menu) arr.push_back(strategy_to_json(s));
            ov[std::to_string(p)] = arr;
        }
        grid["overrides"] = ov;
    }
    j["grid"] = grid;
    if (!sc.profile.empty()) {
        json prof = json::array();
        for (const auto& s : sc.profile) prof.push_back(strategy_to_json(s));
        j["profile"] = prof;
    }
    j["analysis"] = {{"epsilon", rat_to_json(sc.epsilon)},
                     {"runs", sc.runs},
                     {"seed", sc.seed},
                     {"sybil_n_max", sc.sybil_n_max},
                     {"profile_cap", sc.profile_cap}};
    return j;
}

Scenario scenario_from_json(const json& j)
{
    if (!j.is_object()) bad("scenario must be a JSON object");
    Scenario sc;
    sc.schema_version = static_cast<int>(need_int(j, "schema_version", "scenario"));
    if (sc.schema_version != 1)
        bad("unsupported schema_version " + std::to_string(sc.schema_version));
    sc.name = need_str(j, "name", "scenario");
    if (j.contains("description")) sc.description = j["description"].get<std::string>();
    try {
        sc.spec.state = state_from_json(need(j, "state", "scenario"));
    } catch (const validation_error& e) {
        bad("state: " + std::string(e.what()));
    }
    sc.spec.gas_limit = need_int(j, "gas_limit", "scenario");
    sc.spec.mechanism = mechanism_from_json(need(j, "mechanism", "scenario"));
    sc.spec.latency = latency_from_json(need(j, "latency", "scenario"));
    sc.spec.timer = timer_from_json(need(j, "timer", "scenario"));
    sc.spec.focal_opportunity =
        static_cast<OpportunityId>(need_int(j, "focal_opportunity", "scenario"));
    if (j.contains("discovery_time")) sc.spec.discovery_time = rat_from_json(j["discovery_time"]);
    sc.spec.value_path = path_from_json(need(j, "value_path", "scenario"), "value_path");
    if (j.contains("value_path_override")) {
        const json& ov = j["value_path_override"];
        if (!ov.is_object()) bad("value_path_override must be an object keyed by player id");
        for (const auto& [key, path] : ov.items()) {
            PlayerId p;
            try {
                p = static_cast<PlayerId>(std::stol(key));
            } catch (...) {
                bad("value_path_override key '" + key + "' is not a player id");
            }
            sc.spec.value_path_override[p] =
                path_from_json(path, "value_path_override." + key);
        }
    }
    if (j.contains("external_costs")) {
        const json& costs = j["external_costs"];
        if (!costs.is_object()) bad("external_costs must be an object");
        for (const auto& [kind, c] : costs.items())
            sc.spec.costs.costs[kind] = rat_from_json(c);
    }
    const json& players = need(j, "players", "scenario");
    if (!players.is_array() || players.empty()) bad("players must be a non-empty array");
    for (std::size_t i = 0; i < players.size(); ++i) {
        const std::string where = "players[" + std::to_string(i) + "]";
        engine::PlayerSpec ps;
        ps.id = static_cast<PlayerId>(need_int(players[i], "id", where));
        if (players[i].contains("competitor_estimate"))
            ps.competitor_estimate =
                static_cast<int>(need_int(players[i], "competitor_estimate", where));
        if (players[i].contains("purchases")) {
            if (!players[i]["purchases"].is_array()) bad(where + ".purchases must be an array");
            for (const auto& k : players[i]["purchases"])
                ps.purchases.push_back(k.get<std::string>());
        }
        ps.caps = caps_from_json(need(players[i], "caps", where), where + ".caps");
        ps.caps.player = ps.id;
        sc.spec.players.push_back(std::move(ps));
    }
    const json& grid = need(j, "grid", "scenario");
    const json& shared = need(grid, "shared", "grid");
    if (!shared.is_array()) bad("grid.shared must be an array");
    for (const auto& s : shared) sc.grid.shared.push_back(strategy_from_json(s));
    if (grid.contains("overrides")) {
        if (!grid["overrides"].is_object()) bad("grid.overrides must be an object");
        for (const auto& [key, menu] : grid["overrides"].items()) {
            PlayerId p;
            try {
                p = static_cast<PlayerId>(std::stol(key));
            } catch (...) {
                bad("grid.overrides key '" + key + "' is not a player id");
            }
            if (!menu.is_array()) bad("grid.overrides." + key + " must be an array");
            for (const auto& s : menu) sc.grid.overrides[p].push_back(strategy_from_json(s));
        }
    }
    if (j.contains("profile")) {
        if (!j["profile"].is_array()) bad("profile must be an array");
        for (const auto& s : j["profile"]) sc.profile.push_back(strategy_from_json(s));
    }
    const json& analysis = need(j, "analysis", "scenario");
    sc.epsilon = need_rat(analysis, "epsilon", "analysis");
    sc.runs = static_cast<int>(need_int(analysis, "runs", "analysis"));
    sc.seed = static_cast<std::uint64_t>(need_int(analysis, "seed", "analysis"));
    if (analysis.contains("sybil_n_max"))
        sc.sybil_n_max = static_cast<int>(need_int(analysis, "sybil_n_max", "analysis"));
    if (analysis.contains("profile_cap"))
        sc.profile_cap = static_cast<std::size_t>(need_int(analysis, "profile_cap", "analysis"));
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw error("cannot read scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw validation_error("scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(j);
}

void save_scenario(const Scenario& sc, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write scenario file '" + path + "'");
    out << canonical_dump(scenario_to_json(sc));
    if (!out) throw error("failed writing scenario file '" + path + "'");
}

std::vector<std::string> validate_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw error("cannot read scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<std::string> violations;
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        violations.push_back(std::string("not valid JSON: ") + e.what());
        return violations;
    }

    // Probe sections independently so one broken section does not mask
    // another, then run the full cross-referential load.
    auto probe = [&](const char* key, auto&& fn) {
        if (!j.is_object() || !j.contains(key)) return; // the full load reports absences
        try {
            fn(j[key]);
        } catch (const validation_error& e) {
            violations.push_back(e.what());
        }
    };
    probe("state", [](const json& s) { state_from_json(s); });
    probe("latency", [](const json& s) { latency_from_json(s); });
    probe("timer", [](const json& s) { timer_from_json(s); });
    probe("mechanism", [](const json& s) { mechanism_from_json(s); });
    probe("value_path", [](const json& s) { path_from_json(s, "value_path"); });
    probe("grid", [](const json& s) {
        const json& shared = need(s, "shared", "grid");
        if (!shared.is_array()) bad("grid.shared must be an array");
        for (const auto& st : shared) strategy_from_json(st);
    });
    try {
        scenario_from_json(j);
    } catch (const validation_error& e) {
        if (std::find(violations.begin(), violations.end(), std::string(e.what())) ==
            violations.end())
            violations.push_back(e.what());
    }
    return violations;
}

} // namespace mev::scenario
