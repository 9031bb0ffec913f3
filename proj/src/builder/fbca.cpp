#include "mev/builder/fbca.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mev::builder {

namespace {

Rat bundle_revenue(const Bundle& b)
{
    Rat rev = b.coinbase_payment;
    for (const auto& tx : b.txs) rev += tx.fee();
    return rev;
}

BuiltBlock finalize_bundles(const ConflictInstance& inst, std::vector<std::size_t> selected)
{
    BuiltBlock out;
    out.selected = std::move(selected);
    for (std::size_t i : out.selected) {
        out.revenue += bundle_revenue(inst.bundles[i]);
        out.gas_used += inst.bundles[i].total_gas();
    }
    return out;
}

} // namespace

void ConflictInstance::validate_and_complete()
{
    if (gas_limit < 1) throw validation_error("gas limit must be at least 1");
    for (auto& [a, b] : conflict_graph) {
        if (a == b) throw validation_error("conflict graph has a self-loop");
        if (a >= bundles.size() || b >= bundles.size())
            throw validation_error("conflict edge references a missing bundle");
        if (a > b) std::swap(a, b);
    }
    std::sort(conflict_graph.begin(), conflict_graph.end());
    conflict_graph.erase(std::unique(conflict_graph.begin(), conflict_graph.end()),
                         conflict_graph.end());
    if (reference) {
        std::vector<std::pair<std::size_t, std::size_t>> derived;
        for (std::size_t a = 0; a < bundles.size(); ++a)
            for (std::size_t b = a + 1; b < bundles.size(); ++b)
                if (bundles_compete(*reference, bundles[a], bundles[b])) derived.emplace_back(a, b);
        if (conflict_graph.empty())
            conflict_graph = std::move(derived);
        else if (conflict_graph != derived)
            throw validation_error(
                "supplied conflict graph disagrees with the reference state's competition relation");
    }
}

bool ConflictInstance::conflicts(std::size_t a, std::size_t b) const
{
    if (a > b) std::swap(a, b);
    return std::binary_search(conflict_graph.begin(), conflict_graph.end(), std::make_pair(a, b));
}

Rat bundle_score(const Bundle& b)
{
    const Gas total = b.total_gas();
    if (total <= 0) throw error("bundle score undefined for zero-gas bundle");
    Rat bid = b.coinbase_payment;
    for (const auto& tx : b.txs)
        if (!b.is_mempool_tx(tx.id)) bid += tx.fee();
    return bid / Rat(total);
}

BuiltBlock fbca_greedy(const ConflictInstance& inst_in)
{
    ConflictInstance inst = inst_in;
    inst.validate_and_complete();
    std::vector<std::size_t> order(inst.bundles.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Rat> score(inst.bundles.size());
    std::vector<std::uint64_t> hash(inst.bundles.size());
    for (std::size_t i = 0; i < inst.bundles.size(); ++i) {
        score[i] = bundle_score(inst.bundles[i]);
        hash[i] = inst.bundles[i].hash();
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        const Gas ga = inst.bundles[a].total_gas();
        const Gas gb = inst.bundles[b].total_gas();
        if (ga != gb) return ga < gb;
        const Rat& ta = inst.bundles[a].sequencer_timestamp;
        const Rat& tb = inst.bundles[b].sequencer_timestamp;
        if (ta != tb) return ta < tb;
        return hash[a] < hash[b];
    });
    std::vector<std::size_t> sel;
    Gas gas_left = inst.gas_limit;
    for (std::size_t i : order) {
        if (inst.bundles[i].total_gas() > gas_left) continue;
        bool clash = false;
        for (std::size_t j : sel)
            if (inst.conflicts(i, j)) {
                clash = true;
                break;
            }
        if (clash) continue;
        sel.push_back(i);
        gas_left -= inst.bundles[i].total_gas();
    }
    return finalize_bundles(inst, std::move(sel));
}

BuiltBlock fbca_exact(const ConflictInstance& inst_in)
{
    ConflictInstance inst = inst_in;
    inst.validate_and_complete();
    const std::size_t n = inst.bundles.size();
    if (n > 25)
        throw error("exact bundle auction capped at 25 bundles; got " + std::to_string(n));
    std::vector<Rat> revenue(n);
    std::vector<Gas> gas(n);
    for (std::size_t i = 0; i < n; ++i) {
        revenue[i] = bundle_revenue(inst.bundles[i]);
        gas[i] = inst.bundles[i].total_gas();
    }
    // density order for the fractional bound
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return revenue[a] * Rat(gas[b]) > revenue[b] * Rat(gas[a]);
    });

    Rat best_rev = 0;
    std::vector<std::size_t> best_sel;
    std::vector<std::size_t> cur;
    auto bound = [&](std::size_t depth, Gas gas_left, Rat rev) {
        for (std::size_t d = depth; d < n && gas_left > 0; ++d) {
            std::size_t i = order[d];
            if (gas[i] <= 0) continue;
            Gas take = std::min(gas_left, gas[i]);
            rev += revenue[i] * Rat(take) / Rat(gas[i]);
            gas_left -= take;
        }
        return rev;
    };
    auto dfs = [&](auto&& self, std::size_t depth, Gas gas_left, Rat rev) -> void {
        std::vector<std::size_t> sorted = cur;
        std::sort(sorted.begin(), sorted.end());
        if (rev > best_rev || (rev == best_rev && sorted < best_sel)) {
            best_rev = rev;
            best_sel = sorted;
        }
        if (depth == n) return;
        if (bound(depth, gas_left, rev) < best_rev) return;
        std::size_t i = order[depth];
        bool clash = false;
        for (std::size_t j : cur)
            if (inst.conflicts(i, j)) {
                clash = true;
                break;
            }
        if (!clash && gas[i] <= gas_left) {
            cur.push_back(i);
            self(self, depth + 1, gas_left - gas[i], rev + revenue[i]);
            cur.pop_back();
        }
        self(self, depth + 1, gas_left, rev);
    };
    dfs(dfs, 0, inst.gas_limit, Rat(0));
    return finalize_bundles(inst, std::move(best_sel));
}

ConflictInstance adversarial_star_instance(Gas gas_limit, Gas g_min, const Rat& epsilon,
                                           const Rat& m)
{
    if (g_min < 1 || gas_limit < 1 || gas_limit % g_min != 0)
        throw validation_error("g_min must be positive and divide the gas limit");
    const Gas k = gas_limit / g_min;
    if (k < 3) throw validation_error("star family needs at least 3 bundles (gas_limit/g_min >= 3)");
    if (g_min < k - 1)
        throw validation_error("concrete realization needs g_min >= k-1 claim instructions");
    if (epsilon <= 0 || m <= 0) throw validation_error("epsilon and m must be positive");

    ConflictInstance inst;
    inst.gas_limit = gas_limit;
    State st;
    st.pricing = {Rat(1)};
    st.proposer = 0;
    st.accounts[0] = {0, std::nullopt};
    const Rat funding = (m + epsilon) * Rat(g_min) * Rat(10);
    for (Gas i = 1; i < k; ++i) st.opportunities[static_cast<OpportunityId>(i)] = {
        static_cast<OpportunityId>(i), 1, 1, false};

    for (Gas b = 0; b < k; ++b) {
        const AccountId acct = static_cast<AccountId>(b + 1);
        st.accounts[acct] = {acct, static_cast<PlayerId>(b)};
        st.add_balance(acct, kNativeToken, funding);
        Transaction tx;
        tx.sender = acct;
        if (b == 0) {
            for (Gas i = 1; i < k; ++i)
                tx.instructions.push_back(ClaimIx{static_cast<OpportunityId>(i)});
            tx.gas_price = m + epsilon;
        } else {
            tx.instructions = {ClaimIx{static_cast<OpportunityId>(b)}};
            tx.gas_price = m;
        }
        tx.gas = g_min;
        tx.nonce = 0;
        tx.with_id();
        Bundle bundle;
        bundle.txs = {tx};
        bundle.sender_id = static_cast<PlayerId>(b);
        inst.bundles.push_back(std::move(bundle));
    }
    st.check_invariants();
    inst.reference = std::move(st);
    inst.validate_and_complete();
    return inst;
}

Rat approximation_ratio(const ConflictInstance& inst)
{
    const Rat greedy = fbca_greedy(inst).revenue;
    const Rat opt = fbca_exact(inst).revenue;
    if (opt == 0) return 1;
    return greedy / opt;
}

} // namespace mev::builder
