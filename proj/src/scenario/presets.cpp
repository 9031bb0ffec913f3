#include "mev/scenario/presets.hpp"

namespace mev::scenario {

namespace {

using engine::FixedBid;
using engine::LastSecondSnipe;
using engine::NoOpStrategy;
using engine::QuantitySell;
using engine::SealedShade;
using engine::Spam;
using engine::Strategy;

engine::LatencyGraph ring(int players, Rat to_seq, Rat between)
{
    engine::LatencyGraph g;
    g.sequencer_node = "seq";
    g.nodes.push_back("seq");
    for (int i = 0; i < players; ++i) {
        std::string n = "p" + std::to_string(i);
        g.nodes.push_back(n);
        g.node_owner[n] = i;
        g.edges.push_back({n, "seq", to_seq});
        for (int j = 0; j < i; ++j) {
            std::string m = "p" + std::to_string(j);
            g.edges.push_back({n, m, between});
            g.edges.push_back({m, n, between});
        }
    }
    return g;
}

// Claim-race skeleton: one unclaimed opportunity, `players` symmetric players
// with `accounts_each` funded accounts, fixed 100ms seal.
Scenario claim_scenario(const std::string& name, int players, int accounts_each,
                        std::int64_t value, Gas claim_gas, const std::string& mechanism)
{
    Scenario sc;
    sc.name = name;
    sc.spec.state.pricing = {Rat(1)};
    sc.spec.state.proposer = 0;
    sc.spec.state.accounts[0] = {0, std::nullopt};
    AccountId next = 1;
    for (int p = 0; p < players; ++p) {
        engine::PlayerSpec ps;
        ps.id = p;
        ps.competitor_estimate = players - 1;
        ps.caps.player = p;
        ps.caps.gas_price_grid = {Rat(1)};
        sc.spec.players.push_back(ps);
        for (int a = 0; a < accounts_each; ++a) {
            sc.spec.state.accounts[next] = {next, p};
            sc.spec.state.add_balance(next, kNativeToken, Rat(1'000'000));
            ++next;
        }
    }
    sc.spec.state.opportunities[0] = {0, value, claim_gas, false};
    sc.spec.latency = ring(players, Rat(5), Rat(10));
    sc.spec.timer = {engine::BlockTimer::Kind::fixed, Rat(100), Rat(0)};
    sc.spec.mechanism.name = mechanism;
    sc.spec.mechanism.private_mempool = auction::default_private_mempool(mechanism);
    sc.spec.gas_limit = 10'000;
    sc.spec.value_path.steps = {{Rat(0), value}};
    sc.epsilon = Rat(1);
    sc.runs = 8;
    sc.seed = 11;
    return sc;
}

Scenario pga_uniagent()
{
    auto sc = claim_scenario("pga-uniagent", 1, 1, 10'000, 50, "pga");
    sc.description = "One bidder, gas-price ordering: the sole equilibrium claims at the base "
                     "price, so equilibrium block space equals the cheapest extraction.";
    sc.grid.shared = {NoOpStrategy{}, FixedBid{Rat(1)}};
    sc.profile = {FixedBid{Rat(1)}};
    return sc;
}

Scenario dictator_censor()
{
    auto sc = claim_scenario("dictator-censor", 2, 1, 10'000, 50, "dictator");
    sc.description = "Whitelisted player 0 goes first and rivals are censored: their bundles "
                     "never reach the block, so equilibrium space stays at one claim.";
    sc.spec.mechanism.whitelist = {0};
    sc.spec.mechanism.censor = true;
    sc.grid.shared = {NoOpStrategy{}, FixedBid{Rat(1)}};
    sc.profile = {FixedBid{Rat(1)}, FixedBid{Rat(1)}};
    return sc;
}

Scenario pga_war()
{
    auto sc = claim_scenario("pga-war", 2, 1, 100'000, 50, "pga");
    sc.description = "Two fixed-bid levels under gas-price ordering; both final transactions "
                     "land and the loser's revert still burns its gas.";
    sc.grid.shared = {FixedBid{Rat(1840)}, FixedBid{Rat(1920)}};
    sc.profile = {FixedBid{Rat(1920)}, FixedBid{Rat(1920)}};
    sc.epsilon = Rat(5000); // 5% of the opportunity value
    sc.runs = 40;
    sc.sybil_n_max = 2;
    return sc;
}

Scenario fbca_fullbid()
{
    auto sc = claim_scenario("fbca-fullbid", 1, 1, 10'000, 50, "fbca");
    sc.description = "Sealed bundle auction with full-value direct payments: utilities are zero "
                     "at every player count, so the bid profile survives identity splitting.";
    sc.grid.shared = {SealedShade{Rat(1), Rat(1)}};
    sc.profile = {SealedShade{Rat(1), Rat(1)}};
    sc.sybil_n_max = 4;
    return sc;
}

Scenario chain_pga_public()
{
    auto sc = claim_scenario("chain-pga-public", 2, 1, 10'000, 50, "pga");
    sc.description = "Open-mempool gas-price ordering with revert-on-loss, the classic "
                     "public-auction chain profile.";
    sc.grid.shared = {NoOpStrategy{}, FixedBid{Rat(2)}, FixedBid{Rat(3)}};
    sc.profile = {FixedBid{Rat(3)}, FixedBid{Rat(3)}};
    sc.epsilon = Rat(500);
    return sc;
}

Scenario chain_fbca_private()
{
    auto sc = claim_scenario("chain-fbca-private", 2, 1, 10'000, 50, "fbca");
    sc.description = "Private bundle relay with sealed scoring: losing bundles consume no "
                     "block space and pay nothing.";
    sc.grid.shared = {SealedShade{Rat(1, 2), Rat(1)}, SealedShade{Rat(1), Rat(1)}};
    sc.profile = {SealedShade{Rat(1), Rat(1)}, SealedShade{Rat(1), Rat(1)}};
    return sc;
}

Scenario chain_random_public()
{
    auto sc = claim_scenario("chain-random-public", 2, 2, 10'000, 50, "random");
    sc.description = "Uniformly shuffled ordering from a public mempool: spam replicas buy "
                     "win probability and every landed transaction pays.";
    sc.spec.costs.costs["per_spam_tx"] = Rat(100);
    sc.grid.shared = {Spam{1, Rat(1)}, Spam{2, Rat(1)}};
    sc.profile = {Spam{2, Rat(1)}, Spam{2, Rat(1)}};
    sc.epsilon = Rat(500);
    sc.runs = 400;
    return sc;
}

Scenario chain_fifo_private()
{
    auto sc = claim_scenario("chain-fifo-private", 2, 1, 10'000, 50, "fifo");
    sc.description = "Arrival-time ordering over a private channel: latency, not price, "
                     "decides the race, and late sends risk missing the seal.";
    sc.spec.mechanism.private_mempool = true;
    sc.spec.timer = {engine::BlockTimer::Kind::uniform, Rat(80), Rat(120)};
    sc.grid.shared = {FixedBid{Rat(1)}, LastSecondSnipe{Rat(10), Rat(1)}};
    sc.profile = {LastSecondSnipe{Rat(10), Rat(1)}, LastSecondSnipe{Rat(10), Rat(1)}};
    sc.epsilon = Rat(500);
    sc.runs = 400;
    return sc;
}

Scenario chain_metadata_private()
{
    auto sc = claim_scenario("chain-metadata-private", 2, 1, 10'000, 50, "metadata");
    sc.description = "Order decided by bundle metadata nonces over a private channel; "
                     "unmarked submissions are rejected from the view.";
    sc.grid.shared = {NoOpStrategy{}, FixedBid{Rat(1)}};
    sc.profile = {FixedBid{Rat(1)}, FixedBid{Rat(1)}};
    sc.epsilon = Rat(500);
    return sc;
}

Scenario chain_dictator_public()
{
    auto sc = claim_scenario("chain-dictator-public", 2, 1, 10'000, 50, "dictator");
    sc.description = "Whitelist priority without censorship: favored bundles go first, the "
                     "rest compete per gas price behind them.";
    sc.spec.mechanism.whitelist = {0};
    sc.grid.shared = {FixedBid{Rat(2)}, FixedBid{Rat(3)}};
    sc.profile = {FixedBid{Rat(3)}, FixedBid{Rat(3)}};
    sc.epsilon = Rat(500);
    return sc;
}

} // namespace

Scenario make_spam_preset(int players)
{
    if (players < 1) throw validation_error("spam preset needs at least one player");
    auto sc = claim_scenario(players == 2 ? "spam-random" : "spam-random-" + std::to_string(players),
                             players, 3, 12'000, 50, "random");
    sc.description = "Replica spam race under uniformly random ordering: more copies win more "
                     "often, every landed copy burns gas, and extra copies carry an external "
                     "per-transaction cost.";
    sc.spec.costs.costs["per_spam_tx"] = Rat(100);
    sc.spec.gas_limit = 700;
    sc.grid.shared = {Spam{1, Rat(1)}, Spam{2, Rat(1)}, Spam{3, Rat(1)}};
    sc.profile = std::vector<Strategy>(static_cast<std::size_t>(players), Spam{3, Rat(1)});
    sc.epsilon = Rat(500);
    sc.runs = 600;
    return sc;
}

Scenario make_cournot_preset(int players)
{
    if (players < 1) throw validation_error("quantity preset needs at least one player");
    Scenario sc;
    sc.name = players == 2 ? "cournot-pool" : "cournot-pool-" + std::to_string(players);
    sc.description = "Quantity competition: sell token 1 into a constant-product pool against "
                     "a fixed outside price under random ordering. Selling splits across "
                     "identities profitably, so the duopoly equilibrium is not split-proof.";
    sc.spec.state.pricing = {Rat(1), Rat(500)};
    sc.spec.state.proposer = 0;
    sc.spec.state.accounts[0] = {0, std::nullopt};
    for (int p = 0; p < players; ++p) {
        engine::PlayerSpec ps;
        ps.id = p;
        ps.competitor_estimate = players - 1;
        ps.caps.player = p;
        ps.caps.gas_price_grid = {Rat(1)};
        ps.caps.swap_templates = {{0, 1, {200, 330}}};
        sc.spec.players.push_back(ps);
        const AccountId a = p + 1;
        sc.spec.state.accounts[a] = {a, p};
        sc.spec.state.add_balance(a, kNativeToken, Rat(10'000));
        sc.spec.state.add_balance(a, 1, Rat(2'000));
    }
    sc.spec.state.pools[0] = {0, 0, 1, 1'000'000, 1'000};
    sc.spec.state.opportunities[0] = {0, 1, 1, false}; // degenerate focal marker
    sc.spec.latency = ring(players, Rat(5), Rat(10));
    sc.spec.timer = {engine::BlockTimer::Kind::fixed, Rat(100), Rat(0)};
    sc.spec.mechanism.name = "random";
    sc.spec.gas_limit = 10'000;
    sc.spec.value_path.steps = {{Rat(0), 1}};
    sc.grid.shared = {QuantitySell{0, 1, 200, Rat(1)}, QuantitySell{0, 1, 330, Rat(1)}};
    sc.profile = cournot_symmetric_profile(players);
    sc.epsilon = Rat(800);
    sc.runs = 20'000;
    sc.seed = 424242;
    sc.sybil_n_max = 3;
    return sc;
}

std::vector<Strategy> cournot_symmetric_profile(int players)
{
    const std::int64_t q = players <= 2 ? 330 : 200;
    return std::vector<Strategy>(static_cast<std::size_t>(players),
                                 Strategy{QuantitySell{0, 1, q, Rat(1)}});
}

std::vector<std::string> preset_names()
{
    return {"pga-uniagent",      "dictator-censor",      "spam-random",
            "pga-war",           "fbca-fullbid",         "cournot-pool",
            "chain-pga-public",  "chain-fbca-private",   "chain-random-public",
            "chain-fifo-private", "chain-metadata-private", "chain-dictator-public"};
}

Scenario make_preset(const std::string& name)
{
    Scenario sc;
    if (name == "pga-uniagent") sc = pga_uniagent();
    else if (name == "dictator-censor") sc = dictator_censor();
    else if (name == "spam-random") sc = make_spam_preset(2);
    else if (name == "pga-war") sc = pga_war();
    else if (name == "fbca-fullbid") sc = fbca_fullbid();
    else if (name == "cournot-pool") sc = make_cournot_preset(2);
    else if (name == "chain-pga-public") sc = chain_pga_public();
    else if (name == "chain-fbca-private") sc = chain_fbca_private();
    else if (name == "chain-random-public") sc = chain_random_public();
    else if (name == "chain-fifo-private") sc = chain_fifo_private();
    else if (name == "chain-metadata-private") sc = chain_metadata_private();
    else if (name == "chain-dictator-public") sc = chain_dictator_public();
    else throw validation_error("unknown preset '" + name + "'");
    sc.validate();
    return sc;
}

} // namespace mev::scenario
