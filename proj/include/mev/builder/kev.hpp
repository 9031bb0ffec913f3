#pragma once

#include <vector>

#include "mev/domain/types.hpp"

namespace mev::builder {

using namespace mev::domain;

// 0/1 knapsack over (gas, gas_price) items: maximize total fee revenue
// subject to the block gas limit.
struct KevInstance {
    struct Item {
        Gas gas = 1;
        Rat gas_price;
    };
    std::vector<Item> items;
    Gas gas_limit = 1;

    void validate() const; // throws on non-positive gas or limit
};

struct BuiltBlock {
    std::vector<std::size_t> selected; // item/bundle indices in execution order
    Rat revenue;
    Gas gas_used = 0;
};

// True optimum. Uses dynamic programming over gas when items*limit is small
// enough, else branch-and-bound for up to 25 items; beyond both, throws.
// Revenue ties are resolved deterministically (the same instance always
// yields the same block); selection reported in ascending index order.
BuiltBlock kev_exact(const KevInstance& inst);

// First-fit by gas price descending (ties: lower gas, then lower index);
// selection reported in scan order.
BuiltBlock kev_greedy_by_price(const KevInstance& inst);

} // namespace mev::builder
