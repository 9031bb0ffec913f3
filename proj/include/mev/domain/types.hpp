#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "mev/util/hash.hpp"
#include "mev/util/rational.hpp"

namespace mev::domain {

using TokenId = std::uint32_t;
using PlayerId = std::int32_t;
using AccountId = std::int32_t;
using OpportunityId = std::int32_t;
using PoolId = std::int32_t;
using Gas = std::int64_t;

// Token 0 is the native gas token and the numeraire.
inline constexpr TokenId kNativeToken = 0;
inline constexpr PlayerId kNoPlayer = -1;

// Base gas of the fixed instruction set. Claims cost the opportunity's own
// claim gas; burns cost whatever they declare.
inline constexpr Gas kTransferGas = 10;
inline constexpr Gas kSwapGas = 30;

struct Account {
    AccountId id = 0;
    std::optional<PlayerId> owner; // user accounts have no owner

    bool operator==(const Account&) const = default;
};

struct TransferIx {
    AccountId from = 0;
    AccountId to = 0;
    TokenId token = kNativeToken;
    std::int64_t amount = 0;

    bool operator==(const TransferIx&) const = default;
};

struct ClaimIx {
    OpportunityId opportunity = 0;

    bool operator==(const ClaimIx&) const = default;
};

struct SwapIx {
    PoolId pool = 0;
    TokenId token_in = kNativeToken;
    std::int64_t amount_in = 0;
    std::int64_t min_amount_out = 0;

    bool operator==(const SwapIx&) const = default;
};

// Pure gas sink; no state effect.
struct BurnIx {
    Gas gas_units = 0;

    bool operator==(const BurnIx&) const = default;
};

using Instruction = std::variant<TransferIx, ClaimIx, SwapIx, BurnIx>;

struct Transaction {
    AccountId sender = 0;
    std::vector<Instruction> instructions;
    Gas gas = 0;           // declared gas, charged in full even on revert
    Rat gas_price;         // native units per gas unit
    std::int64_t nonce = 0;
    std::uint64_t id = 0;  // content hash; fill via with_id()

    Rat fee() const { return gas_price * Rat(gas); }
    std::uint64_t compute_id() const;
    bool operator==(const Transaction&) const = default;
    Transaction& with_id()
    {
        id = compute_id();
        return *this;
    }
};

// One-shot value source: first successful claim mints `value` native units to
// the claimant and marks the opportunity claimed.
struct Opportunity {
    OpportunityId id = 0;
    std::int64_t value = 0;
    Gas claim_gas = 1;
    bool claimed = false;

    bool operator==(const Opportunity&) const = default;
};

// Fee-free constant-product pool over two tokens; swap output is rounded
// down, so reserve_x * reserve_y never decreases.
struct Pool {
    PoolId id = 0;
    TokenId token_x = 0;
    TokenId token_y = 1;
    std::int64_t reserve_x = 0;
    std::int64_t reserve_y = 0;

    bool operator==(const Pool&) const = default;
};

struct Bundle {
    std::vector<Transaction> txs;
    PlayerId sender_id = kNoPlayer;
    Rat sequencer_timestamp;            // simulated send time
    Rat coinbase_payment;               // direct payment to the proposer
    std::optional<std::uint64_t> order_nonce;
    std::set<std::uint64_t> mempool_tx_ids; // txs taken from the public mempool

    Gas total_gas() const
    {
        Gas g = 0;
        for (const auto& tx : txs) g += tx.gas;
        return g;
    }
    bool is_mempool_tx(std::uint64_t tx_id) const { return mempool_tx_ids.count(tx_id) > 0; }
    // Content hash; excludes the timestamp so re-sends of the same payload
    // hash identically.
    std::uint64_t hash() const;
};

struct State {
    std::map<AccountId, Account> accounts;
    AccountId proposer = 0;
    // Zero balances are never stored, so equal states compare equal.
    std::map<std::pair<AccountId, TokenId>, Rat> balances;
    std::map<OpportunityId, Opportunity> opportunities;
    std::map<PoolId, Pool> pools;
    std::map<AccountId, std::int64_t> nonces; // absent = 0
    std::vector<Rat> pricing;                 // pricing[0] == 1

    const Rat& balance(AccountId a, TokenId t) const;
    void add_balance(AccountId a, TokenId t, const Rat& delta);
    std::int64_t nonce(AccountId a) const;
    void set_nonce(AccountId a, std::int64_t n);
    const Rat& price(TokenId t) const;

    bool has_account(AccountId a) const { return accounts.count(a) > 0; }
    void check_invariants() const; // throws on violation

    bool operator==(const State&) const = default;
};

enum class TxStatus { executed, reverted, rejected };

struct BlockEntry {
    Transaction tx;
    TxStatus status = TxStatus::executed;
};

struct Block {
    std::vector<BlockEntry> entries;
    Gas gas_used = 0;       // sum of declared gas over included txs
    Rat proposer_revenue;   // fees plus coinbase payments
};

const char* tx_status_name(TxStatus s);

} // namespace mev::domain
