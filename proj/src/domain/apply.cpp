#include "mev/domain/apply.hpp"

#include <algorithm>
#include <numeric>

#include "mev/util/error.hpp"

namespace mev::domain {

namespace {

bool tx_well_formed(const State& st, const Transaction& tx)
{
    if (tx.gas <= 0 || tx.gas_price < 0 || tx.nonce < 0) return false;
    for (const auto& ix : tx.instructions) {
        bool ok = std::visit(
            [](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, TransferIx>) return v.amount >= 0;
                else if constexpr (std::is_same_v<T, SwapIx>) return v.amount_in >= 0 && v.min_amount_out >= 0;
                else if constexpr (std::is_same_v<T, BurnIx>) return v.gas_units >= 0;
                else return true;
            },
            ix);
        if (!ok) return false;
    }
    return tx.gas >= tx_base_gas(tx, st);
}

// Returns false on any failure; st is mutated freely (caller owns a copy).
bool run_instruction(State& st, AccountId sender, const Instruction& ix)
{
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TransferIx>) {
                if (v.from != sender) return false; // can only move own funds
                if (!st.has_account(v.to) || v.token >= st.pricing.size()) return false;
                if (st.balance(v.from, v.token) < v.amount) return false;
                st.add_balance(v.from, v.token, Rat(-v.amount));
                st.add_balance(v.to, v.token, Rat(v.amount));
                return true;
            } else if constexpr (std::is_same_v<T, ClaimIx>) {
                auto it = st.opportunities.find(v.opportunity);
                if (it == st.opportunities.end() || it->second.claimed) return false;
                it->second.claimed = true;
                st.add_balance(sender, kNativeToken, Rat(it->second.value));
                return true;
            } else if constexpr (std::is_same_v<T, SwapIx>) {
                auto it = st.pools.find(v.pool);
                if (it == st.pools.end()) return false;
                Pool& pool = it->second;
                bool x_in = v.token_in == pool.token_x;
                if (!x_in && v.token_in != pool.token_y) return false;
                TokenId token_out = x_in ? pool.token_y : pool.token_x;
                std::int64_t rin = x_in ? pool.reserve_x : pool.reserve_y;
                std::int64_t rout = x_in ? pool.reserve_y : pool.reserve_x;
                std::int64_t out = swap_output(rin, rout, v.amount_in);
                if (out < v.min_amount_out) return false;
                if (st.balance(sender, v.token_in) < v.amount_in) return false;
                st.add_balance(sender, v.token_in, Rat(-v.amount_in));
                st.add_balance(sender, token_out, Rat(out));
                (x_in ? pool.reserve_x : pool.reserve_y) = rin + v.amount_in;
                (x_in ? pool.reserve_y : pool.reserve_x) = rout - out;
                return true;
            } else {
                return true; // burn: gas only
            }
        },
        ix);
}

} // namespace

std::int64_t swap_output(std::int64_t reserve_in, std::int64_t reserve_out, std::int64_t amount_in)
{
    if (amount_in <= 0) return 0;
    // floor(reserve_out * amount_in / (reserve_in + amount_in))
    unsigned __int128 num =
        static_cast<unsigned __int128>(reserve_out) * static_cast<unsigned __int128>(amount_in);
    unsigned __int128 den =
        static_cast<unsigned __int128>(reserve_in) + static_cast<unsigned __int128>(amount_in);
    return static_cast<std::int64_t>(num / den);
}

Gas instruction_base_gas(const Instruction& ix, const State& st)
{
    return std::visit(
        [&](const auto& v) -> Gas {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TransferIx>) return kTransferGas;
            else if constexpr (std::is_same_v<T, SwapIx>) return kSwapGas;
            else if constexpr (std::is_same_v<T, BurnIx>) return v.gas_units;
            else {
                auto it = st.opportunities.find(v.opportunity);
                return it == st.opportunities.end() ? 0 : it->second.claim_gas;
            }
        },
        ix);
}

Gas tx_base_gas(const Transaction& tx, const State& st)
{
    Gas g = 0;
    for (const auto& ix : tx.instructions) g += instruction_base_gas(ix, st);
    return g;
}

AppliedTx apply_tx(const State& st, const Transaction& tx)
{
    if (!st.has_account(tx.sender) || !tx_well_formed(st, tx))
        return {st, TxStatus::rejected, Rat(0)};

    const Rat fee = tx.fee();
    if (st.balance(tx.sender, kNativeToken) < fee)
        return {st, TxStatus::rejected, Rat(0)};

    State charged = st;
    charged.add_balance(tx.sender, kNativeToken, -fee);
    charged.add_balance(charged.proposer, kNativeToken, fee);

    if (st.nonce(tx.sender) != tx.nonce)
        return {std::move(charged), TxStatus::reverted, fee};
    charged.set_nonce(tx.sender, tx.nonce + 1);

    State next = charged;
    for (const auto& ix : tx.instructions) {
        if (!run_instruction(next, tx.sender, ix))
            return {std::move(charged), TxStatus::reverted, fee};
    }
    return {std::move(next), TxStatus::executed, fee};
}

AppliedBundle apply_bundle(const State& st, const Bundle& b)
{
    if (b.txs.empty()) return {st, false};
    State cur = st;
    for (const auto& tx : b.txs) {
        AppliedTx r = apply_tx(cur, tx);
        if (r.status != TxStatus::executed) return {st, false};
        cur = std::move(r.state);
    }
    if (b.coinbase_payment > 0) {
        const AccountId payer = b.txs.front().sender;
        if (cur.balance(payer, kNativeToken) < b.coinbase_payment) return {st, false};
        cur.add_balance(payer, kNativeToken, -b.coinbase_payment);
        cur.add_balance(cur.proposer, kNativeToken, b.coinbase_payment);
    }
    return {std::move(cur), true};
}

Rat delta_balance(PlayerId player, const State& before, const State& after)
{
    if (before.pricing != after.pricing)
        throw error("delta_balance: states have different pricing vectors");
    bool known = false;
    for (const auto& [id, acct] : before.accounts)
        if (acct.owner == player) { known = true; break; }
    if (!known) throw error("delta_balance: unknown player " + std::to_string(player));

    auto owned = [&](AccountId a) {
        auto it = before.accounts.find(a);
        return it != before.accounts.end() && it->second.owner == player;
    };
    Rat total = 0;
    for (const auto& [key, v] : after.balances)
        if (owned(key.first)) total += before.price(key.second) * v;
    for (const auto& [key, v] : before.balances)
        if (owned(key.first)) total -= before.price(key.second) * v;
    return total;
}

bool bundles_compete(const State& st, const Bundle& a, const Bundle& b)
{
    auto seq_valid = [&](const Bundle& first, const Bundle& second) {
        AppliedBundle r1 = apply_bundle(st, first);
        if (!r1.valid) return false;
        return apply_bundle(r1.state, second).valid;
    };
    return !seq_valid(a, b) && !seq_valid(b, a);
}

bool order_invariant_valid(const State& st, const std::vector<Bundle>& bundles, std::size_t max_len)
{
    if (bundles.size() > max_len)
        throw error("order_invariant_valid: " + std::to_string(bundles.size()) +
                    " bundles exceed the factorial cap of " + std::to_string(max_len) +
                    "; check a sampled subset of permutations instead");
    if (bundles.empty()) return true;

    std::vector<std::size_t> perm(bundles.size());
    std::iota(perm.begin(), perm.end(), 0);

    bool have_ref = false;
    State ref;
    do {
        State cur = st;
        for (std::size_t idx : perm) {
            AppliedBundle r = apply_bundle(cur, bundles[idx]);
            if (!r.valid) return false;
            cur = std::move(r.state);
        }
        if (!have_ref) {
            ref = std::move(cur);
            have_ref = true;
        } else if (!(cur == ref)) {
            return false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

bool is_partial_extraction(const State& st, const Bundle& b, const Bundle& b_ref)
{
    if (!bundles_compete(st, b, b_ref)) return false;
    AppliedBundle rb = apply_bundle(st, b);
    AppliedBundle rref = apply_bundle(st, b_ref);
    if (!rb.valid || !rref.valid) return false;
    const Rat profit = delta_balance(b.sender_id, st, rb.state);
    const Rat profit_ref = delta_balance(b_ref.sender_id, st, rref.state);
    return profit < profit_ref;
}

} // namespace mev::domain
