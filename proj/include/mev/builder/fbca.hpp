#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mev/builder/kev.hpp"
#include "mev/domain/apply.hpp"

namespace mev::builder {

// Sealed-bid bundle auction input: atomic bundles, a pairwise conflict
// relation, and the block gas limit. The conflict edges may be given
// directly, derived from a reference state, or both (they must then agree).
struct ConflictInstance {
    std::vector<Bundle> bundles;
    std::vector<std::pair<std::size_t, std::size_t>> conflict_graph;
    Gas gas_limit = 1;
    std::optional<State> reference;

    // Normalizes edges (a < b, sorted, deduplicated), derives them from the
    // reference state when absent, and validates consistency.
    void validate_and_complete();
    bool conflicts(std::size_t a, std::size_t b) const;
};

// Effective gas price of a bundle: direct proposer payment plus the fees of
// the bundle's own transactions, divided by the total gas of all its
// transactions. Mempool-sourced transactions count toward gas but their fees
// do not count toward the bid.
Rat bundle_score(const Bundle& b);

// Scan bundles by score descending (ties: lower gas, earlier timestamp,
// lower hash); include each bundle iff it conflicts with nothing already
// included and fits the remaining gas. Revenue counts every included
// transaction's fee plus direct payments.
BuiltBlock fbca_greedy(const ConflictInstance& inst);

// Maximum-revenue conflict-free gas-feasible selection (branch-and-bound,
// at most 25 bundles). Selection reported in ascending index order.
BuiltBlock fbca_exact(const ConflictInstance& inst);

// Star-conflict family: k = L/g_min bundles where bundle 0 outbids everyone
// by epsilon per gas unit but conflicts with all others. Greedy picks only
// bundle 0; the optimum takes the other k-1. Realized concretely: bundle 0's
// transaction claims k-1 opportunities, bundle i's claims just opportunity i.
ConflictInstance adversarial_star_instance(Gas gas_limit, Gas g_min, const Rat& epsilon,
                                           const Rat& m);

// Greedy revenue over optimal revenue, exact; 1 when both are zero.
Rat approximation_ratio(const ConflictInstance& inst);

} // namespace mev::builder
