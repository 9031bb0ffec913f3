#include "mev/domain/types.hpp"

#include "mev/util/error.hpp"

namespace mev::domain {

namespace {
const Rat kZero = Rat(0);

void hash_rat(Fnv64& h, const Rat& r)
{
    h.str(rat_to_string(r));
}

void hash_instruction(Fnv64& h, const Instruction& ix)
{
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TransferIx>) {
                h.u64(1).i64(v.from).i64(v.to).u64(v.token).i64(v.amount);
            } else if constexpr (std::is_same_v<T, ClaimIx>) {
                h.u64(2).i64(v.opportunity);
            } else if constexpr (std::is_same_v<T, SwapIx>) {
                h.u64(3).i64(v.pool).u64(v.token_in).i64(v.amount_in).i64(v.min_amount_out);
            } else {
                h.u64(4).i64(v.gas_units);
            }
        },
        ix);
}
} // namespace

std::uint64_t Transaction::compute_id() const
{
    Fnv64 h;
    h.i64(sender).i64(gas).i64(nonce);
    hash_rat(h, gas_price);
    h.u64(instructions.size());
    for (const auto& ix : instructions) hash_instruction(h, ix);
    return h.value();
}

std::uint64_t Bundle::hash() const
{
    Fnv64 h;
    h.i64(sender_id);
    hash_rat(h, coinbase_payment);
    h.u64(order_nonce ? *order_nonce + 1 : 0);
    h.u64(txs.size());
    for (const auto& tx : txs) h.u64(tx.id ? tx.id : tx.compute_id());
    h.u64(mempool_tx_ids.size());
    for (auto id : mempool_tx_ids) h.u64(id);
    return h.value();
}

const Rat& State::balance(AccountId a, TokenId t) const
{
    auto it = balances.find({a, t});
    return it == balances.end() ? kZero : it->second;
}

void State::add_balance(AccountId a, TokenId t, const Rat& delta)
{
    if (delta == 0) return;
    auto key = std::make_pair(a, t);
    auto it = balances.find(key);
    if (it == balances.end()) {
        balances.emplace(key, delta);
        return;
    }
    it->second += delta;
    if (it->second == 0) balances.erase(it);
}

std::int64_t State::nonce(AccountId a) const
{
    auto it = nonces.find(a);
    return it == nonces.end() ? 0 : it->second;
}

void State::set_nonce(AccountId a, std::int64_t n)
{
    if (n == 0) nonces.erase(a);
    else nonces[a] = n;
}

const Rat& State::price(TokenId t) const
{
    if (t >= pricing.size()) throw error("unknown token " + std::to_string(t));
    return pricing[t];
}

void State::check_invariants() const
{
    if (pricing.empty() || pricing[0] != 1) throw error("pricing[0] must be 1");
    for (const auto& p : pricing)
        if (p < 0) throw error("negative token price");
    if (!has_account(proposer)) throw error("proposer account missing");
    for (const auto& [key, v] : balances) {
        if (!has_account(key.first)) throw error("balance of unknown account");
        if (key.second >= pricing.size()) throw error("balance of unknown token");
        if (key.second == kNativeToken && v < 0) throw error("negative native balance");
    }
    for (const auto& [id, pool] : pools) {
        if (pool.reserve_x <= 0 || pool.reserve_y <= 0) throw error("non-positive pool reserve");
        if (pool.token_x >= pricing.size() || pool.token_y >= pricing.size())
            throw error("pool over unknown token");
        if (pool.token_x == pool.token_y) throw error("pool must span two tokens");
    }
    for (const auto& [id, opp] : opportunities) {
        if (opp.value < 0) throw error("negative opportunity value");
        if (opp.claim_gas <= 0) throw error("opportunity claim gas must be positive");
    }
}

const char* tx_status_name(TxStatus s)
{
    switch (s) {
    case TxStatus::executed: return "executed";
    case TxStatus::reverted: return "reverted";
    default: return "rejected";
    }
}

} // namespace mev::domain
