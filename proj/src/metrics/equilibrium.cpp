#include "mev/metrics/equilibrium.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace mev::metrics {

namespace {

using engine::UtilitySummary;

std::string profile_key(const std::vector<Strategy>& profile)
{
    std::string k;
    for (const auto& s : profile) {
        k += engine::strategy_brief(s);
        k += '|';
    }
    return k;
}

// Memoized utility estimates for one spec. The seed is shared across every
// profile, so comparisons ride on common random numbers.
class Evaluator {
public:
    Evaluator(const StageGameSpec& spec, int runs, std::uint64_t seed)
        : spec_(&spec), runs_(runs), seed_(seed)
    {
    }

    const UtilitySummary& eval(const std::vector<Strategy>& profile)
    {
        auto key = profile_key(profile);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(key, engine::estimate_utilities(*spec_, profile, runs_, seed_))
            .first->second;
    }

    void prime(const std::vector<Strategy>& profile, UtilitySummary s)
    {
        memo_.emplace(profile_key(profile), std::move(s));
    }

private:
    const StageGameSpec* spec_;
    int runs_;
    std::uint64_t seed_;
    std::map<std::string, UtilitySummary> memo_;
};

// First grid deviation that gains a single player more than ε, if any.
std::optional<std::string> profitable_deviation(Evaluator& ev, const StrategyGrid& grid,
                                                const std::vector<PlayerId>& ids,
                                                const std::vector<Strategy>& profile,
                                                const Rat& epsilon)
{
    const auto base = ev.eval(profile).mean; // copy: the memo may rehash below
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (const auto& alt : grid.for_player(ids[i])) {
            if (engine::strategy_brief(alt) == engine::strategy_brief(profile[i])) continue;
            std::vector<Strategy> dev = profile;
            dev[i] = alt;
            const auto& d = ev.eval(dev);
            if (d.mean[i] > base[i] + epsilon) {
                std::ostringstream os;
                os << "player " << ids[i] << " gains " << rat_to_human(d.mean[i] - base[i])
                   << " by switching to " << engine::strategy_brief(alt);
                return os.str();
            }
        }
    }
    return std::nullopt;
}

std::string fresh_node_name(const std::vector<std::string>& existing, const std::string& base)
{
    std::string name = base;
    while (std::find(existing.begin(), existing.end(), name) != existing.end()) name += "x";
    return name;
}

} // namespace

const std::vector<Strategy>& StrategyGrid::for_player(PlayerId p) const
{
    auto it = overrides.find(p);
    return it == overrides.end() ? shared : it->second;
}

void StrategyGrid::validate(const std::vector<PlayerId>& players) const
{
    for (PlayerId p : players)
        if (for_player(p).empty())
            throw validation_error("empty strategy menu for player " + std::to_string(p));
    for (const auto& [p, menu] : overrides)
        if (menu.empty())
            throw validation_error("empty strategy menu override for player " + std::to_string(p));
}

Rat block_space_cost(const StageGameSpec& spec, const std::vector<Strategy>& profile, int runs,
                     std::uint64_t seed)
{
    return engine::estimate_utilities(spec, profile, runs, seed).mean_gas;
}

std::vector<ProfileEval> evaluate_profiles(const StageGameSpec& spec, const StrategyGrid& grid,
                                           const Rat& epsilon, int runs, std::uint64_t seed,
                                           std::size_t profile_cap)
{
    spec.validate();
    const auto ids = spec.player_ids();
    grid.validate(ids);
    if (epsilon < 0) throw validation_error("epsilon must be non-negative");
    if (profile_cap < 1) throw validation_error("profile cap must be positive");

    const std::size_t np = ids.size();
    std::vector<std::size_t> sizes(np);
    std::size_t total = 1;
    for (std::size_t i = 0; i < np; ++i) {
        sizes[i] = grid.for_player(ids[i]).size();
        if (total > profile_cap / sizes[i])
            throw error("strategy grid spans more than " + std::to_string(profile_cap) +
                        " profiles; use a coarser grid or raise the profile cap");
        total *= sizes[i];
    }

    std::vector<std::size_t> stride(np, 1);
    for (std::size_t i = np; i-- > 1;) stride[i - 1] = stride[i] * sizes[i];

    std::vector<ProfileEval> out(total);
    for (std::size_t k = 0; k < total; ++k) {
        auto& pe = out[k];
        pe.choice.resize(np);
        std::size_t rem = k;
        for (std::size_t i = 0; i < np; ++i) {
            pe.choice[i] = rem / stride[i];
            rem %= stride[i];
            pe.strategies.push_back(grid.for_player(ids[i])[pe.choice[i]]);
        }
        auto s = engine::estimate_utilities(spec, pe.strategies, runs, seed);
        pe.utilities = std::move(s.mean);
        pe.expected_gas = s.mean_gas;
        pe.symmetric = true;
        for (std::size_t i = 1; i < np && pe.symmetric; ++i)
            pe.symmetric = engine::strategy_brief(pe.strategies[i]) ==
                           engine::strategy_brief(pe.strategies[0]);
    }

    // Flag ε-Nash profiles; every single-player deviation is itself a grid
    // profile, so the check is pure table lookup.
    for (std::size_t k = 0; k < total; ++k) {
        auto& pe = out[k];
        pe.epsilon_ne = true;
        for (std::size_t i = 0; i < np && pe.epsilon_ne; ++i) {
            for (std::size_t a = 0; a < sizes[i]; ++a) {
                if (a == pe.choice[i]) continue;
                const std::size_t dev =
                    k + (a - pe.choice[i]) * stride[i]; // unsigned wrap-around is exact here
                if (out[dev].utilities[i] > pe.utilities[i] + epsilon) {
                    pe.epsilon_ne = false;
                    std::ostringstream os;
                    os << "player " << ids[i] << " gains "
                       << rat_to_human(out[dev].utilities[i] - pe.utilities[i])
                       << " by switching to " << engine::strategy_brief(out[dev].strategies[i]);
                    pe.note = os.str();
                    break;
                }
            }
        }
    }
    return out;
}

std::vector<ProfileEval> find_epsilon_ne(const StageGameSpec& spec, const StrategyGrid& grid,
                                         const Rat& epsilon, int runs, std::uint64_t seed,
                                         std::size_t profile_cap)
{
    auto all = evaluate_profiles(spec, grid, epsilon, runs, seed, profile_cap);
    std::vector<ProfileEval> ne;
    for (auto& pe : all)
        if (pe.epsilon_ne) ne.push_back(std::move(pe));
    return ne;
}

StageGameSpec add_clone(const StageGameSpec& base, PlayerId parent)
{
    base.validate();
    const engine::PlayerSpec* parent_spec = nullptr;
    PlayerId max_player = parent;
    for (const auto& p : base.players) {
        if (p.id == parent) parent_spec = &p;
        max_player = std::max(max_player, p.id);
    }
    if (!parent_spec) throw validation_error("clone parent " + std::to_string(parent) +
                                             " is not a player of the stage game");
    const PlayerId clone = max_player + 1;

    StageGameSpec out = base;

    // Duplicate the parent's accounts with fresh ids, balances and nonces.
    AccountId next_acct = 0;
    for (const auto& [id, a] : base.state.accounts) next_acct = std::max(next_acct, id);
    ++next_acct;
    std::map<AccountId, AccountId> acct_map;
    for (const auto& [id, a] : base.state.accounts) {
        if (!a.owner || *a.owner != parent) continue;
        Account copy = a;
        copy.id = next_acct;
        copy.owner = clone;
        out.state.accounts.emplace(next_acct, copy);
        acct_map.emplace(id, next_acct);
        ++next_acct;
    }
    if (acct_map.empty())
        throw validation_error("clone parent " + std::to_string(parent) + " owns no accounts");
    for (const auto& [key, bal] : base.state.balances) {
        auto it = acct_map.find(key.first);
        if (it != acct_map.end()) out.state.balances.emplace(std::make_pair(it->second, key.second), bal);
    }
    for (const auto& [acct, nonce] : base.state.nonces) {
        auto it = acct_map.find(acct);
        if (it != acct_map.end()) out.state.nonces.emplace(it->second, nonce);
    }

    // Clone player spec; capabilities act through the clone's identity.
    engine::PlayerSpec ps = *parent_spec;
    ps.id = clone;
    ps.caps.player = clone;
    out.players.push_back(std::move(ps));

    // Co-locate the clone's latency nodes with the parent's: copy every edge
    // incident to a parent node and link each copy to its original at zero
    // delay.
    std::map<std::string, std::string> node_map;
    for (const auto& [name, owner] : base.latency.node_owner) {
        if (owner != parent) continue;
        std::string copy = fresh_node_name(out.latency.nodes, name + "_c" + std::to_string(clone));
        out.latency.nodes.push_back(copy);
        out.latency.node_owner.emplace(copy, clone);
        node_map.emplace(name, copy);
    }
    if (node_map.empty())
        throw validation_error("clone parent " + std::to_string(parent) + " owns no latency node");
    auto mapped = [&](const std::string& n) {
        auto it = node_map.find(n);
        return it == node_map.end() ? n : it->second;
    };
    for (const auto& e : base.latency.edges) {
        if (!node_map.count(e.from) && !node_map.count(e.to)) continue;
        out.latency.edges.push_back({mapped(e.from), mapped(e.to), e.ms});
    }
    for (const auto& [orig, copy] : node_map) {
        out.latency.edges.push_back({orig, copy, Rat(0)});
        out.latency.edges.push_back({copy, orig, Rat(0)});
    }

    auto ov = base.value_path_override.find(parent);
    if (ov != base.value_path_override.end()) out.value_path_override.emplace(clone, ov->second);

    out.validate();
    return out;
}

SpecFamily symmetric_family(const StageGameSpec& base, PlayerId parent)
{
    base.validate();
    const int base_n = static_cast<int>(base.players.size());
    return [base, parent, base_n](int n) {
        if (n < base_n)
            throw validation_error("player count " + std::to_string(n) +
                                   " is below the base spec's " + std::to_string(base_n));
        StageGameSpec out = base;
        for (int k = base_n; k < n; ++k) out = add_clone(out, parent);
        return out;
    };
}

bool check_sybil_resistance(const SpecFamily& specs, const ProfileFamily& profiles,
                            const StrategyGrid& grid, int n, const Rat& epsilon, int runs,
                            std::uint64_t seed)
{
    if (n < 1) throw validation_error("player count must be positive");
    if (epsilon < 0) throw validation_error("epsilon must be non-negative");
    const StageGameSpec sn = specs(n);
    const StageGameSpec sn1 = specs(n + 1);
    sn.validate();
    sn1.validate();
    const auto pn = profiles(n);
    const auto pn1 = profiles(n + 1);
    if (pn.size() != sn.players.size() || pn1.size() != sn1.players.size())
        throw validation_error("profile size does not match the game's player count");

    Evaluator en(sn, runs, seed);
    Evaluator en1(sn1, runs, seed);
    if (auto why = profitable_deviation(en, grid, sn.player_ids(), pn, epsilon))
        throw error("profile at n=" + std::to_string(n) +
                    " is not an epsilon-Nash equilibrium: " + *why);
    if (auto why = profitable_deviation(en1, grid, sn1.player_ids(), pn1, epsilon))
        throw error("profile at n=" + std::to_string(n + 1) +
                    " is not an epsilon-Nash equilibrium: " + *why);

    const auto un = en.eval(pn).mean;
    const auto un1 = en1.eval(pn1).mean;
    for (std::size_t i = 0; i < un.size(); ++i)
        for (std::size_t j = 0; j < un1.size(); ++j) {
            if (j == i) continue;
            if (un[i] + epsilon < un1[i] + un1[j]) return false;
        }
    return true;
}

NullCost min_null_state_cost(const State& st, const std::vector<search::PlayerCapabilities>& caps)
{
    if (caps.empty()) throw validation_error("at least one capability set is required");
    if (search::is_null_state(st, caps))
        throw error("state is already null: no player has a strictly profitable bundle");

    bool found = false;
    NullCost best;
    std::uint64_t best_hash = 0;
    for (const auto& cap : caps) {
        search::for_each_valid_bundle(st, cap, [&](const Bundle& b, const State& post) {
            if (b.txs.empty()) return;
            const Gas g = b.total_gas();
            if (found && (g > best.gas || (g == best.gas && b.hash() >= best_hash))) return;
            if (!search::is_null_state(post, caps)) return;
            found = true;
            best.gas = g;
            best.witness = b;
            best_hash = b.hash();
        });
    }
    if (!found) throw error("no single valid bundle nulls the state under the given capabilities");
    return best;
}

EquilibriumReport price_of_mev(const StageGameSpec& spec, const StrategyGrid& grid,
                               const Rat& epsilon, int runs, std::uint64_t seed, int sybil_n_max,
                               std::size_t profile_cap)
{
    spec.validate();
    const auto ids = spec.player_ids();
    grid.validate(ids);

    EquilibriumReport rep;
    rep.epsilon = epsilon;
    rep.runs = runs;
    rep.seed = seed;
    rep.base_players = static_cast<int>(ids.size());
    rep.sybil_n_max = sybil_n_max;
    if (sybil_n_max < 1) throw validation_error("sybil_n_max must be positive");

    rep.profiles = evaluate_profiles(spec, grid, epsilon, runs, seed, profile_cap);

    std::vector<search::PlayerCapabilities> caps;
    for (const auto& p : spec.players) caps.push_back(p.caps);
    auto nc = min_null_state_cost(spec.state, caps);
    rep.null_cost_gas = nc.gas;
    rep.null_witness = nc.witness;

    // Clone chain: index k holds the game with base_players + k players, all
    // clones of the first player (stable addresses for the evaluators).
    std::deque<StageGameSpec> chain;
    chain.push_back(spec);
    auto spec_at = [&](int n) -> const StageGameSpec& {
        while (static_cast<int>(chain.size()) <= n - rep.base_players)
            chain.push_back(add_clone(chain.back(), ids[0]));
        return chain[static_cast<std::size_t>(n - rep.base_players)];
    };
    std::map<int, Evaluator> evaluators;
    auto evaluator_at = [&](int n) -> Evaluator& {
        auto it = evaluators.find(n);
        if (it == evaluators.end())
            it = evaluators.emplace(n, Evaluator(spec_at(n), runs, seed)).first;
        return it->second;
    };
    // The base table is already computed; reuse it.
    {
        Evaluator& base_ev = evaluator_at(rep.base_players);
        for (const auto& pe : rep.profiles) {
            UtilitySummary s;
            s.mean = pe.utilities;
            s.ci_half.assign(pe.utilities.size(), 0.0);
            s.mean_gas = pe.expected_gas;
            s.runs = runs;
            base_ev.prime(pe.strategies, std::move(s));
        }
    }

    for (auto& pe : rep.profiles) {
        if (!pe.epsilon_ne) continue;
        if (sybil_n_max <= rep.base_players) {
            pe.sybil_resistant = true;
            continue;
        }
        if (!pe.symmetric) {
            pe.note = "asymmetric profile: clone checks not applied";
            continue;
        }
        const Strategy sigma = pe.strategies[0];
        bool ok = true;
        std::string why;
        for (int n = rep.base_players; n < sybil_n_max && ok; ++n) {
            auto replicate = [&](int count) {
                return std::vector<Strategy>(static_cast<std::size_t>(count), sigma);
            };
            Evaluator& en = evaluator_at(n);
            Evaluator& en1 = evaluator_at(n + 1);
            if (auto d =
                    profitable_deviation(en, grid, spec_at(n).player_ids(), replicate(n), epsilon)) {
                ok = false;
                why = "replicated profile is not an equilibrium at n=" + std::to_string(n) + ": " +
                      *d;
                break;
            }
            if (auto d = profitable_deviation(en1, grid, spec_at(n + 1).player_ids(),
                                              replicate(n + 1), epsilon)) {
                ok = false;
                why = "replicated profile is not an equilibrium at n=" + std::to_string(n + 1) +
                      ": " + *d;
                break;
            }
            const auto un = en.eval(replicate(n)).mean;
            const auto un1 = en1.eval(replicate(n + 1)).mean;
            for (std::size_t i = 0; i < un.size() && ok; ++i)
                for (std::size_t j = 0; j < un1.size(); ++j) {
                    if (j == i) continue;
                    if (un[i] + epsilon < un1[i] + un1[j]) {
                        ok = false;
                        why = "identity-split inequality fails at n=" + std::to_string(n) +
                              ": one player would rather run identities " + std::to_string(i) +
                              " and " + std::to_string(j) + " of the larger game";
                        break;
                    }
                }
        }
        pe.sybil_resistant = ok;
        if (!ok) pe.note = why;
    }

    bool have_sne = false, have_ne = false;
    Rat best_sne, best_ne, min_cost;
    bool have_min = false;
    for (const auto& pe : rep.profiles) {
        if (!have_min || pe.expected_gas < min_cost) {
            min_cost = pe.expected_gas;
            have_min = true;
        }
        if (pe.epsilon_ne && (!have_ne || pe.expected_gas > best_ne)) {
            best_ne = pe.expected_gas;
            have_ne = true;
        }
        if (pe.sybil_resistant && (!have_sne || pe.expected_gas > best_sne)) {
            best_sne = pe.expected_gas;
            have_sne = true;
        }
    }
    if (have_sne) {
        rep.pomev = best_sne / Rat(rep.null_cost_gas);
        if (*rep.pomev < 1)
            rep.notes += "equilibrium block space falls short of the cheapest extraction; "
                         "the strategy grid likely lacks extraction strategies. ";
    } else {
        rep.notes += "no sybil-resistant equilibrium on the grid; price of MEV undefined. ";
    }
    if (!have_ne) rep.notes += "no epsilon-Nash profile on the grid. ";
    if (have_ne) {
        if (min_cost == 0) {
            rep.poa_degenerate = true;
            rep.notes += "cheapest profile uses zero block space; price of anarchy undefined. ";
        } else {
            rep.poa = best_ne / min_cost;
        }
    }
    return rep;
}

} // namespace mev::metrics
