#pragma once

#include <functional>
#include <vector>

#include "mev/domain/apply.hpp"

namespace mev::search {

using namespace mev::domain;

// A swap the player can author, at any listed input amount.
struct SwapTemplate {
    PoolId pool = 0;
    TokenId token_in = kNativeToken;
    std::vector<std::int64_t> amounts;
};

// Everything a player can put in a bundle: observed mempool transactions plus
// transactions it can author itself (claims of unclaimed opportunities and the
// listed swap templates, each at every grid gas price). Authored transactions
// are sent from the player's lowest-id owned account, with nonces assigned in
// bundle order.
struct PlayerCapabilities {
    PlayerId player = kNoPlayer;
    std::vector<Transaction> mempool_view;
    std::vector<OpportunityId> claimable; // empty = every opportunity
    std::vector<SwapTemplate> swap_templates;
    std::vector<Rat> gas_price_grid; // ascending, non-empty
    int max_bundle_len = 1;
    std::size_t search_cap = 1'000'000; // max candidate bundles enumerated
};

struct LocalMevResult {
    Rat value;                  // max profit over valid bundles; ≥ 0
    std::vector<Bundle> argmev; // all strictly profitable maximizers, hash-sorted
};

// Exhaustive search over ordered sequences of distinct candidate transactions
// up to max_bundle_len. Throws with a cardinality estimate when the space
// exceeds search_cap.
LocalMevResult local_mev(const State& st, const PlayerCapabilities& cap);

// local_mev with the mempool view emptied.
Rat top_of_block_mev(const State& st, const PlayerCapabilities& cap);

// Minimum local MEV over the players whose authored-transaction set covers
// every transaction in `required` (compared by instructions, gas and gas
// price; sender and nonce are the author's own). Throws if no player
// qualifies.
Rat permissionless_mev(const State& st, const std::vector<PlayerCapabilities>& caps,
                       const std::vector<Transaction>& required);

// True iff every player's local MEV is zero.
bool is_null_state(const State& st, const std::vector<PlayerCapabilities>& caps);

// The candidate transactions `cap` can author on `st` (used by qualification
// checks and tests; nonce left at 0).
std::vector<Transaction> constructible_txs(const State& st, const PlayerCapabilities& cap);

// Visits every non-empty valid candidate bundle (same enumeration as
// local_mev, deterministic order) with its post-application state.
void for_each_valid_bundle(const State& st, const PlayerCapabilities& cap,
                           const std::function<void(const Bundle&, const State&)>& fn);

} // namespace mev::search
