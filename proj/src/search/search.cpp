#include "mev/search/search.hpp"

#include <algorithm>
#include <mutex>

#include "mev/util/parallel.hpp"

namespace mev::search {

namespace {

AccountId own_account(const State& st, PlayerId player)
{
    for (const auto& [id, a] : st.accounts)
        if (a.owner && *a.owner == player) return id;
    throw error("player " + std::to_string(player) + " owns no account");
}

void validate(const PlayerCapabilities& cap)
{
    if (cap.gas_price_grid.empty()) throw validation_error("gas price grid must be non-empty");
    if (!std::is_sorted(cap.gas_price_grid.begin(), cap.gas_price_grid.end()))
        throw validation_error("gas price grid must be ascending");
    if (cap.max_bundle_len < 1) throw validation_error("max_bundle_len must be at least 1");
}

// Candidate pool: authored txs (nonce filled in later) then mempool txs.
struct Candidates {
    std::vector<Transaction> txs;
    std::size_t authored_count = 0; // txs[0..authored_count) are the player's own
};

Candidates collect_candidates(const State& st, const PlayerCapabilities& cap)
{
    Candidates c;
    c.txs = constructible_txs(st, cap);
    c.authored_count = c.txs.size();
    for (const auto& tx : cap.mempool_view) c.txs.push_back(tx);
    return c;
}

// Number of ordered sequences of distinct candidates with length in [0, len],
// saturating at cap+1.
std::size_t sequence_count(std::size_t n, int len, std::size_t cap)
{
    std::size_t total = 1; // empty sequence
    std::size_t perm = 1;
    for (int l = 1; l <= len && static_cast<std::size_t>(l) <= n; ++l) {
        if (perm > cap / (n - static_cast<std::size_t>(l) + 1)) return cap + 1;
        perm *= n - static_cast<std::size_t>(l) + 1;
        if (total > cap - perm) return cap + 1;
        total += perm;
    }
    return total;
}

Bundle realize(const State& st, const PlayerCapabilities& cap, const Candidates& cands,
               const std::vector<std::size_t>& seq, AccountId own)
{
    Bundle b;
    b.sender_id = cap.player;
    std::int64_t next_nonce = st.nonce(own);
    for (std::size_t idx : seq) {
        Transaction tx = cands.txs[idx];
        if (idx < cands.authored_count) {
            tx.nonce = next_nonce++;
            tx.with_id();
        } else {
            b.mempool_tx_ids.insert(tx.id);
        }
        b.txs.push_back(std::move(tx));
    }
    return b;
}

} // namespace

std::vector<Transaction> constructible_txs(const State& st, const PlayerCapabilities& cap)
{
    validate(cap);
    const AccountId own = own_account(st, cap.player);
    std::vector<Transaction> out;
    auto claimable = [&](OpportunityId id) {
        return cap.claimable.empty() ||
               std::find(cap.claimable.begin(), cap.claimable.end(), id) != cap.claimable.end();
    };
    for (const auto& [id, opp] : st.opportunities) {
        if (opp.claimed || !claimable(id)) continue;
        for (const auto& m : cap.gas_price_grid) {
            Transaction tx;
            tx.sender = own;
            tx.instructions = {ClaimIx{id}};
            tx.gas = opp.claim_gas;
            tx.gas_price = m;
            out.push_back(tx.with_id());
        }
    }
    for (const auto& tpl : cap.swap_templates) {
        for (std::int64_t amount : tpl.amounts) {
            if (amount <= 0) continue;
            for (const auto& m : cap.gas_price_grid) {
                Transaction tx;
                tx.sender = own;
                tx.instructions = {SwapIx{tpl.pool, tpl.token_in, amount, 0}};
                tx.gas = kSwapGas;
                tx.gas_price = m;
                out.push_back(tx.with_id());
            }
        }
    }
    return out;
}

LocalMevResult local_mev(const State& st, const PlayerCapabilities& cap)
{
    validate(cap);
    const AccountId own = own_account(st, cap.player);
    const Candidates cands = collect_candidates(st, cap);
    const std::size_t n = cands.txs.size();
    const std::size_t count = sequence_count(n, cap.max_bundle_len, cap.search_cap);
    if (count > cap.search_cap)
        throw error("local MEV search space exceeds cap of " + std::to_string(cap.search_cap) +
                    " candidate bundles (estimate > " + std::to_string(cap.search_cap) + " from " +
                    std::to_string(n) + " transactions, length " +
                    std::to_string(cap.max_bundle_len) + ")");

    // Materialize every ordered sequence of distinct candidate indices.
    std::vector<std::vector<std::size_t>> seqs;
    seqs.reserve(count);
    std::vector<std::size_t> cur;
    std::vector<bool> used(n, false);
    auto dfs = [&](auto&& self, int depth) -> void {
        if (depth > 0) seqs.push_back(cur);
        if (depth == cap.max_bundle_len) return;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            used[i] = true;
            cur.push_back(i);
            self(self, depth + 1);
            cur.pop_back();
            used[i] = false;
        }
    };
    dfs(dfs, 0);

    struct Eval {
        bool valid = false;
        Rat profit;
    };
    std::vector<Eval> evals(seqs.size());
    mev::parallel_for(seqs.size(), [&](std::size_t i) {
        Bundle b = realize(st, cap, cands, seqs[i], own);
        auto applied = apply_bundle(st, b);
        if (!applied.valid) return;
        evals[i] = {true, delta_balance(cap.player, st, applied.state)};
    });

    LocalMevResult result;
    result.value = 0;
    for (std::size_t i = 0; i < seqs.size(); ++i)
        if (evals[i].valid && evals[i].profit > result.value) result.value = evals[i].profit;
    if (result.value > 0) {
        for (std::size_t i = 0; i < seqs.size(); ++i)
            if (evals[i].valid && evals[i].profit == result.value)
                result.argmev.push_back(realize(st, cap, cands, seqs[i], own));
        std::sort(result.argmev.begin(), result.argmev.end(),
                  [](const Bundle& a, const Bundle& b) { return a.hash() < b.hash(); });
    }
    return result;
}

Rat top_of_block_mev(const State& st, const PlayerCapabilities& cap)
{
    PlayerCapabilities top = cap;
    top.mempool_view.clear();
    return local_mev(st, top).value;
}

Rat permissionless_mev(const State& st, const std::vector<PlayerCapabilities>& caps,
                       const std::vector<Transaction>& required)
{
    auto authors = [&](const PlayerCapabilities& cap, const Transaction& want) {
        for (const auto& tx : constructible_txs(st, cap))
            if (tx.instructions == want.instructions && tx.gas == want.gas &&
                tx.gas_price == want.gas_price)
                return true;
        return false;
    };
    bool any = false;
    Rat best;
    for (const auto& cap : caps) {
        bool ok = true;
        for (const auto& want : required)
            if (!authors(cap, want)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        Rat v = local_mev(st, cap).value;
        if (!any || v < best) best = v;
        any = true;
    }
    if (!any) throw error("no player can author the required transaction set");
    return best;
}

void for_each_valid_bundle(const State& st, const PlayerCapabilities& cap,
                           const std::function<void(const Bundle&, const State&)>& fn)
{
    validate(cap);
    const AccountId own = own_account(st, cap.player);
    const Candidates cands = collect_candidates(st, cap);
    const std::size_t n = cands.txs.size();
    const std::size_t count = sequence_count(n, cap.max_bundle_len, cap.search_cap);
    if (count > cap.search_cap)
        throw error("bundle enumeration exceeds cap of " + std::to_string(cap.search_cap) +
                    " candidate bundles (from " + std::to_string(n) + " transactions, length " +
                    std::to_string(cap.max_bundle_len) + ")");

    std::vector<std::size_t> cur;
    std::vector<bool> used(n, false);
    auto dfs = [&](auto&& self, int depth) -> void {
        if (depth > 0) {
            Bundle b = realize(st, cap, cands, cur, own);
            auto applied = apply_bundle(st, b);
            if (applied.valid) fn(b, applied.state);
        }
        if (depth == cap.max_bundle_len) return;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            used[i] = true;
            cur.push_back(i);
            self(self, depth + 1);
            cur.pop_back();
            used[i] = false;
        }
    };
    dfs(dfs, 0);
}

bool is_null_state(const State& st, const std::vector<PlayerCapabilities>& caps)
{
    for (const auto& cap : caps)
        if (local_mev(st, cap).value != 0) return false;
    return true;
}

} // namespace mev::search
