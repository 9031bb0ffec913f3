#pragma once

#include <variant>

#include "mev/auction/auction.hpp"
#include "mev/engine/latency.hpp"
#include "mev/search/search.hpp"

namespace mev::engine {

// Strategy families. All act on the scenario's focal opportunity (or pool).
struct NoOpStrategy {};

// Claim once at a fixed gas price, immediately on discovery.
struct FixedBid {
    Rat m;
};

// Open with m0; every time a rival bid at or above the current own bid is
// observed, resubmit the same nonce at (rival price × raise), as long as the
// new fee stays within budget. Superseded bids still reach the sequencer.
struct ReactiveCounterBid {
    Rat m0;
    Rat raise;  // multiplicative, > 1
    Rat budget; // cap on the fee m·g of any single bid
};

// Send a single fixed-price claim `delta` before the expected seal time
// (distribution mean; the realized draw is never visible).
struct LastSecondSnipe {
    Rat delta;
    Rat m;
};

// Send `replicas` claims of the focal opportunity from distinct owned
// accounts, all at once on discovery (independent nonces, so every copy
// lands under permissive orderings).
struct Spam {
    int replicas = 1;
    Rat m;
};

// Sealed bid: claim at a base gas price and add a direct proposer payment
// topping the total bid up to alpha × (currently observed value).
struct SealedShade {
    Rat alpha;
    Rat base_price = Rat(1);
};

// Quantity competition: sell `amount` of a token into a pool at a fixed gas
// price, immediately on discovery.
struct QuantitySell {
    PoolId pool = 0;
    TokenId token_in = 1;
    std::int64_t amount = 0;
    Rat m;
};

using Strategy = std::variant<NoOpStrategy, FixedBid, ReactiveCounterBid, LastSecondSnipe, Spam,
                              SealedShade, QuantitySell>;

std::string strategy_name(const Strategy& s);
std::string strategy_brief(const Strategy& s); // name plus parameters, for reports

struct PlayerSpec {
    PlayerId id = kNoPlayer;
    int competitor_estimate = 1;
    std::vector<std::string> purchases; // external-cost kinds charged per stage
    search::PlayerCapabilities caps;    // for MEV-search operations
};

// One stage game: pre-block state, latency graph, seal-time distribution,
// ordering mechanism, per-stage external costs, and the focal opportunity's
// value path as each player sees it.
struct StageGameSpec {
    State state;
    LatencyGraph latency;
    BlockTimer timer;
    auction::MechanismConfig mechanism;
    Gas gas_limit = 1;
    OpportunityId focal_opportunity = 0;
    StepPath value_path;
    std::map<PlayerId, StepPath> value_path_override;
    Rat discovery_time;
    ExternalCostTable costs;
    std::vector<PlayerSpec> players;

    void validate() const;
    std::vector<PlayerId> player_ids() const;
    const StepPath& path_for(PlayerId p) const;
};

struct StageResult {
    auction::AuctionOutcome outcome;
    std::map<PlayerId, Rat> balance_delta; // on-chain gain/loss per player
    std::map<PlayerId, Rat> external_cost;
    std::map<PlayerId, Rat> utility; // balance_delta − external_cost
    Rat seal_time;
    std::uint64_t beacon = 0;
    std::vector<std::string> event_log; // JSON lines, time-ordered
};

// Deterministic discrete-event simulation of one stage: beacon at t=0,
// strategies emit timed bundle sends, bundles reach the sequencer (and, on
// public-mempool mechanisms, rival players) after graph delays, the block
// seals at a drawn time, and the mechanism runs on what arrived.
StageResult run_stage(const StageGameSpec& spec, const std::vector<Strategy>& profile,
                      std::uint64_t seed);

struct UtilitySummary {
    std::vector<Rat> mean;       // per player, exact
    std::vector<double> ci_half; // 95% normal-approximation half-widths
    Rat mean_gas;                // expected block gas use
    int runs = 0;
};

// Monte Carlo over `runs` stages. The per-run seed depends only on (seed,
// run index) — common random numbers across profiles.
UtilitySummary estimate_utilities(const StageGameSpec& spec, const std::vector<Strategy>& profile,
                                  int runs, std::uint64_t seed);

std::uint64_t run_seed(std::uint64_t seed, int run_index);

} // namespace mev::engine
