#include "mev/builder/kev.hpp"

#include <algorithm>
#include <numeric>

#include "mev/util/error.hpp"

namespace mev::builder {

namespace {

constexpr std::size_t kDpWorkCap = 50'000'000; // items * (gas_limit+1) cells
constexpr std::size_t kBranchCap = 25;

Rat item_revenue(const KevInstance::Item& it) { return it.gas_price * Rat(it.gas); }

BuiltBlock finalize(const KevInstance& inst, std::vector<std::size_t> selected)
{
    BuiltBlock out;
    out.selected = std::move(selected);
    for (std::size_t i : out.selected) {
        out.revenue += item_revenue(inst.items[i]);
        out.gas_used += inst.items[i].gas;
    }
    return out;
}

BuiltBlock kev_dp(const KevInstance& inst)
{
    const std::size_t n = inst.items.size();
    const std::size_t width = static_cast<std::size_t>(inst.gas_limit) + 1;
    std::vector<Rat> best(width, Rat(0));
    std::vector<std::vector<bool>> took(n, std::vector<bool>(width, false));
    for (std::size_t i = 0; i < n; ++i) {
        const auto gas = static_cast<std::size_t>(inst.items[i].gas);
        if (gas >= width) continue;
        const Rat rev = item_revenue(inst.items[i]);
        // descending so each item is used at most once; strict improvement
        // keeps the lexicographically smaller (item-skipping) solution on ties
        for (std::size_t w = width; w-- > gas;) {
            Rat cand = best[w - gas] + rev;
            if (cand > best[w]) {
                best[w] = std::move(cand);
                took[i][w] = true;
            }
        }
    }
    std::size_t w = width - 1;
    std::vector<std::size_t> sel;
    for (std::size_t i = n; i-- > 0;) {
        if (took[i][w]) {
            sel.push_back(i);
            w -= static_cast<std::size_t>(inst.items[i].gas);
        }
    }
    std::reverse(sel.begin(), sel.end());
    return finalize(inst, std::move(sel));
}

BuiltBlock kev_branch(const KevInstance& inst)
{
    const std::size_t n = inst.items.size();
    // explore in gas-price-density order for tight fractional bounds
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return inst.items[a].gas_price > inst.items[b].gas_price;
    });

    Rat best_rev = 0;
    std::vector<std::size_t> best_sel;
    std::vector<std::size_t> cur;

    auto bound = [&](std::size_t depth, Gas gas_left, Rat rev) {
        for (std::size_t d = depth; d < n && gas_left > 0; ++d) {
            const auto& it = inst.items[order[d]];
            Gas take = std::min(gas_left, it.gas);
            rev += it.gas_price * Rat(take);
            gas_left -= take;
        }
        return rev;
    };
    auto dfs = [&](auto&& self, std::size_t depth, Gas gas_left, Rat rev) -> void {
        std::vector<std::size_t> sorted = cur;
        std::sort(sorted.begin(), sorted.end());
        // canonical tie-break: smallest sorted index set (empty included)
        if (rev > best_rev || (rev == best_rev && sorted < best_sel)) {
            best_rev = rev;
            best_sel = sorted;
        }
        if (depth == n) return;
        if (bound(depth, gas_left, rev) < best_rev) return;
        const auto& it = inst.items[order[depth]];
        if (it.gas <= gas_left) {
            cur.push_back(order[depth]);
            self(self, depth + 1, gas_left - it.gas, rev + item_revenue(it));
            cur.pop_back();
        }
        self(self, depth + 1, gas_left, rev);
    };
    dfs(dfs, 0, inst.gas_limit, Rat(0));
    return finalize(inst, std::move(best_sel));
}

} // namespace

void KevInstance::validate() const
{
    if (gas_limit < 1) throw validation_error("gas limit must be at least 1");
    for (const auto& it : items) {
        if (it.gas < 1) throw validation_error("item gas must be at least 1");
        if (it.gas_price < 0) throw validation_error("item gas price must be non-negative");
    }
}

BuiltBlock kev_exact(const KevInstance& inst)
{
    inst.validate();
    const std::size_t work =
        inst.items.size() * (static_cast<std::size_t>(inst.gas_limit) + 1);
    if (work <= kDpWorkCap) return kev_dp(inst);
    if (inst.items.size() <= kBranchCap) return kev_branch(inst);
    throw error("knapsack instance too large: " + std::to_string(inst.items.size()) +
                " items with gas limit " + std::to_string(inst.gas_limit) +
                " exceeds both the DP work cap and the 25-item branch-and-bound cap");
}

BuiltBlock kev_greedy_by_price(const KevInstance& inst)
{
    inst.validate();
    std::vector<std::size_t> order(inst.items.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ia = inst.items[a];
        const auto& ib = inst.items[b];
        if (ia.gas_price != ib.gas_price) return ia.gas_price > ib.gas_price;
        if (ia.gas != ib.gas) return ia.gas < ib.gas;
        return a < b;
    });
    std::vector<std::size_t> sel;
    Gas gas_left = inst.gas_limit;
    for (std::size_t i : order) {
        if (inst.items[i].gas <= gas_left) {
            sel.push_back(i);
            gas_left -= inst.items[i].gas;
        }
    }
    return finalize(inst, std::move(sel));
}

} // namespace mev::builder
