#include "mev/domain/serde.hpp"

#include "mev/util/error.hpp"

namespace mev::domain {

namespace {

const Rat kMaxJsonInt = Rat(BigInt(1) << 53);

std::int64_t get_i64(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw validation_error(std::string("expected integer field '") + key + "'");
    return j.at(key).get<std::int64_t>();
}

} // namespace

json rat_to_json(const Rat& r)
{
    if (rat_is_int(r) && r < kMaxJsonInt && r > -kMaxJsonInt)
        return rat_to_i64(r);
    return rat_to_string(r);
}

Rat rat_from_json(const json& j)
{
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw validation_error("rational must be an integer or a string");
}

json to_json(const Instruction& ix)
{
    json j;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TransferIx>) {
                j = {{"type", "transfer"}, {"from", v.from},   {"to", v.to},
                     {"token", v.token},   {"amount", v.amount}};
            } else if constexpr (std::is_same_v<T, ClaimIx>) {
                j = {{"type", "claim"}, {"opportunity", v.opportunity}};
            } else if constexpr (std::is_same_v<T, SwapIx>) {
                j = {{"type", "swap"},         {"pool", v.pool},
                     {"token_in", v.token_in}, {"amount_in", v.amount_in},
                     {"min_amount_out", v.min_amount_out}};
            } else {
                j = {{"type", "burn"}, {"gas_units", v.gas_units}};
            }
        },
        ix);
    return j;
}

Instruction instruction_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw validation_error("instruction must be an object with a 'type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "transfer")
        return TransferIx{static_cast<AccountId>(get_i64(j, "from")),
                          static_cast<AccountId>(get_i64(j, "to")),
                          static_cast<TokenId>(get_i64(j, "token")), get_i64(j, "amount")};
    if (type == "claim") return ClaimIx{static_cast<OpportunityId>(get_i64(j, "opportunity"))};
    if (type == "swap")
        return SwapIx{static_cast<PoolId>(get_i64(j, "pool")),
                      static_cast<TokenId>(get_i64(j, "token_in")), get_i64(j, "amount_in"),
                      get_i64(j, "min_amount_out")};
    if (type == "burn") return BurnIx{get_i64(j, "gas_units")};
    throw validation_error("unknown instruction type '" + type + "'");
}

json to_json(const Transaction& tx)
{
    json ixs = json::array();
    for (const auto& ix : tx.instructions) ixs.push_back(to_json(ix));
    return {{"sender", tx.sender},
            {"instructions", std::move(ixs)},
            {"gas", tx.gas},
            {"gas_price", rat_to_json(tx.gas_price)},
            {"nonce", tx.nonce}};
}

Transaction transaction_from_json(const json& j)
{
    if (!j.is_object()) throw validation_error("transaction must be an object");
    Transaction tx;
    tx.sender = static_cast<AccountId>(get_i64(j, "sender"));
    if (!j.contains("instructions") || !j.at("instructions").is_array())
        throw validation_error("transaction needs an 'instructions' array");
    for (const auto& e : j.at("instructions")) tx.instructions.push_back(instruction_from_json(e));
    tx.gas = get_i64(j, "gas");
    if (!j.contains("gas_price")) throw validation_error("transaction needs 'gas_price'");
    tx.gas_price = rat_from_json(j.at("gas_price"));
    tx.nonce = get_i64(j, "nonce");
    return tx.with_id();
}

json to_json(const Bundle& b)
{
    json txs = json::array();
    json mempool = json::array();
    for (std::size_t i = 0; i < b.txs.size(); ++i) {
        txs.push_back(to_json(b.txs[i]));
        if (b.is_mempool_tx(b.txs[i].id)) mempool.push_back(i);
    }
    json j = {{"transactions", std::move(txs)},
              {"player", b.sender_id},
              {"timestamp", rat_to_json(b.sequencer_timestamp)},
              {"coinbase", rat_to_json(b.coinbase_payment)},
              {"mempool_tx_indices", std::move(mempool)}};
    j["order_nonce"] = b.order_nonce ? json(*b.order_nonce) : json(nullptr);
    return j;
}

Bundle bundle_from_json(const json& j)
{
    if (!j.is_object()) throw validation_error("bundle must be an object");
    Bundle b;
    if (!j.contains("transactions") || !j.at("transactions").is_array())
        throw validation_error("bundle needs a 'transactions' array");
    for (const auto& e : j.at("transactions")) b.txs.push_back(transaction_from_json(e));
    b.sender_id = static_cast<PlayerId>(get_i64(j, "player"));
    if (j.contains("timestamp")) b.sequencer_timestamp = rat_from_json(j.at("timestamp"));
    if (j.contains("coinbase")) b.coinbase_payment = rat_from_json(j.at("coinbase"));
    if (j.contains("order_nonce") && !j.at("order_nonce").is_null())
        b.order_nonce = j.at("order_nonce").get<std::uint64_t>();
    if (j.contains("mempool_tx_indices")) {
        for (const auto& e : j.at("mempool_tx_indices")) {
            const auto idx = e.get<std::size_t>();
            if (idx >= b.txs.size()) throw validation_error("mempool tx index out of range");
            b.mempool_tx_ids.insert(b.txs[idx].id);
        }
    }
    return b;
}

json to_json(const State& st)
{
    json accounts = json::array();
    for (const auto& [id, a] : st.accounts)
        accounts.push_back({{"id", a.id}, {"owner", a.owner ? json(*a.owner) : json(nullptr)}});
    json balances = json::array();
    for (const auto& [key, v] : st.balances)
        balances.push_back(
            {{"account", key.first}, {"token", key.second}, {"amount", rat_to_json(v)}});
    json opportunities = json::array();
    for (const auto& [id, o] : st.opportunities)
        opportunities.push_back({{"id", o.id},
                                 {"value", o.value},
                                 {"claim_gas", o.claim_gas},
                                 {"claimed", o.claimed}});
    json pools = json::array();
    for (const auto& [id, p] : st.pools)
        pools.push_back({{"id", p.id},
                         {"token_x", p.token_x},
                         {"token_y", p.token_y},
                         {"reserve_x", p.reserve_x},
                         {"reserve_y", p.reserve_y}});
    json nonces = json::array();
    for (const auto& [a, n] : st.nonces)
        if (n != 0) nonces.push_back({{"account", a}, {"nonce", n}});
    json pricing = json::array();
    for (const auto& p : st.pricing) pricing.push_back(rat_to_json(p));
    return {{"accounts", std::move(accounts)},
            {"proposer", st.proposer},
            {"balances", std::move(balances)},
            {"opportunities", std::move(opportunities)},
            {"pools", std::move(pools)},
            {"nonces", std::move(nonces)},
            {"pricing", std::move(pricing)}};
}

State state_from_json(const json& j)
{
    if (!j.is_object()) throw validation_error("state must be an object");
    State st;
    if (!j.contains("accounts") || !j.at("accounts").is_array())
        throw validation_error("state needs an 'accounts' array");
    for (const auto& e : j.at("accounts")) {
        Account a;
        a.id = static_cast<AccountId>(get_i64(e, "id"));
        if (e.contains("owner") && !e.at("owner").is_null())
            a.owner = static_cast<PlayerId>(e.at("owner").get<std::int64_t>());
        if (st.accounts.count(a.id)) throw validation_error("duplicate account id");
        st.accounts[a.id] = a;
    }
    st.proposer = static_cast<AccountId>(get_i64(j, "proposer"));
    if (j.contains("balances"))
        for (const auto& e : j.at("balances")) {
            if (!e.contains("amount")) throw validation_error("balance entry needs 'amount'");
            st.add_balance(static_cast<AccountId>(get_i64(e, "account")),
                           static_cast<TokenId>(get_i64(e, "token")),
                           rat_from_json(e.at("amount")));
        }
    if (j.contains("opportunities"))
        for (const auto& e : j.at("opportunities")) {
            Opportunity o;
            o.id = static_cast<OpportunityId>(get_i64(e, "id"));
            o.value = get_i64(e, "value");
            o.claim_gas = get_i64(e, "claim_gas");
            o.claimed = e.value("claimed", false);
            if (st.opportunities.count(o.id)) throw validation_error("duplicate opportunity id");
            st.opportunities[o.id] = o;
        }
    if (j.contains("pools"))
        for (const auto& e : j.at("pools")) {
            Pool p;
            p.id = static_cast<PoolId>(get_i64(e, "id"));
            p.token_x = static_cast<TokenId>(get_i64(e, "token_x"));
            p.token_y = static_cast<TokenId>(get_i64(e, "token_y"));
            p.reserve_x = get_i64(e, "reserve_x");
            p.reserve_y = get_i64(e, "reserve_y");
            if (st.pools.count(p.id)) throw validation_error("duplicate pool id");
            st.pools[p.id] = p;
        }
    if (j.contains("nonces"))
        for (const auto& e : j.at("nonces"))
            st.set_nonce(static_cast<AccountId>(get_i64(e, "account")), get_i64(e, "nonce"));
    if (!j.contains("pricing") || !j.at("pricing").is_array())
        throw validation_error("state needs a 'pricing' array");
    for (const auto& e : j.at("pricing")) st.pricing.push_back(rat_from_json(e));
    st.check_invariants();
    return st;
}

json to_json(const Block& blk)
{
    json entries = json::array();
    for (const auto& e : blk.entries)
        entries.push_back({{"tx", to_json(e.tx)}, {"status", tx_status_name(e.status)}});
    return {{"entries", std::move(entries)},
            {"gas_used", blk.gas_used},
            {"proposer_revenue", rat_to_json(blk.proposer_revenue)}};
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace mev::domain
