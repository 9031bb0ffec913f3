#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mev/domain/apply.hpp"

namespace mev::auction {

using namespace mev::domain;

// What the sequencer has at seal time: bundles with their arrival times
// (already filtered to arrival ≤ seal) and the public randomness beacon.
struct SequencerView {
    struct Submission {
        Bundle bundle;
        Rat arrival;
    };
    std::vector<Submission> submissions;
    std::uint64_t randomness = 0;
};

// Result of running one ordering mechanism: the executed block, the state it
// leaves behind, the claimant of each opportunity won by a player bundle
// (the winner indicator: at most one player per opportunity), and what each
// player actually paid (fees of its own transactions, including reverted
// ones, plus direct proposer payments). Fees from transactions whose sender
// has no owning player are tracked separately so payments always reconcile
// with proposer revenue.
struct AuctionOutcome {
    Block block;
    State post_state;
    std::map<OpportunityId, PlayerId> winners;
    std::map<PlayerId, Rat> payments;
    Rat unattributed_fees;

    std::optional<PlayerId> winner_of(OpportunityId o) const
    {
        auto it = winners.find(o);
        if (it == winners.end()) return std::nullopt;
        return it->second;
    }
};

struct MechanismConfig {
    std::string name = "pga"; // pga | fbca | random | fifo | dictator | metadata
    std::vector<PlayerId> whitelist; // dictator priority order
    bool censor = false;             // dictator: drop non-whitelisted entirely
    // Sealed mechanisms hide submissions from rival players (game-engine uses
    // this; the ordering itself does not).
    bool private_mempool = false;
};

// Priority gas ordering: every submitted transaction (bundles flattened,
// internal order not preserved) sorted by gas price descending (ties:
// arrival, then tx hash), packed first-fit under the gas limit. Reverted
// transactions stay in the block and pay. Direct proposer payments are
// ignored (public mempool has no private payment channel).
AuctionOutcome order_pga(const State& st, const SequencerView& view, Gas gas_limit);

// Sealed-bundle combinatorial auction: greedy score-ordered selection with
// conflicts derived from the pre-block state; selected bundles execute
// atomically and in full (a bundle that fails mid-execution is dropped and
// pays nothing), losers consume no space and pay nothing.
AuctionOutcome order_fbca(const State& st, const SequencerView& view, Gas gas_limit);

// Uniformly random permutation of all submitted transactions, drawn from the
// view's randomness beacon; spam duplicates revert after the first claim but
// stay in the block and pay.
AuctionOutcome order_random(const State& st, const SequencerView& view, Gas gas_limit);

// Arrival-time order (ties: tx hash); bundles flattened.
AuctionOutcome order_fifo(const State& st, const SequencerView& view, Gas gas_limit);

// Whitelisted players' bundles first, in whitelist order (a player's own
// bundles by arrival then hash, internal tx order preserved); everyone else
// follows in priority-gas order, or is dropped entirely when censoring.
// An empty whitelist reduces to order_pga.
AuctionOutcome order_dictator(const State& st, const SequencerView& view, Gas gas_limit,
                              const std::vector<PlayerId>& whitelist, bool censor);

// Bundles ordered by their order_nonce metadata ascending (ties: bundle
// hash); bundles missing the nonce are rejected from the view. Transactions
// land individually (reverts pay); a bundle's direct payment is charged only
// when the whole bundle executes cleanly.
AuctionOutcome order_metadata(const State& st, const SequencerView& view, Gas gas_limit);

// Dispatch by config name.
AuctionOutcome run_auction(const State& st, const SequencerView& view, Gas gas_limit,
                           const MechanismConfig& cfg);

// Whether a mechanism name hides pending submissions from rival players.
bool default_private_mempool(const std::string& name);

} // namespace mev::auction
