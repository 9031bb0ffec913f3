#include "mev/auction/auction.hpp"

#include <algorithm>

#include "mev/builder/fbca.hpp"
#include "mev/util/rng.hpp"

namespace mev::auction {

namespace {

std::optional<PlayerId> tx_owner(const State& st, const Transaction& tx)
{
    auto it = st.accounts.find(tx.sender);
    if (it == st.accounts.end()) return std::nullopt;
    return it->second.owner;
}

struct FlatTx {
    Transaction tx;
    Rat arrival;
};

std::vector<FlatTx> flatten(const SequencerView& view)
{
    std::vector<FlatTx> out;
    for (const auto& sub : view.submissions)
        for (const auto& tx : sub.bundle.txs) out.push_back({tx, sub.arrival});
    return out;
}

void pay(AuctionOutcome& out, const State& st, const Transaction& tx, const Rat& fee)
{
    if (auto owner = tx_owner(st, tx))
        out.payments[*owner] += fee;
    else
        out.unattributed_fees += fee;
}

void record_claims(AuctionOutcome& out, const State& pre_tx, const State& post_tx,
                   const Transaction& tx)
{
    const auto owner = tx_owner(pre_tx, tx);
    for (const auto& [id, opp] : post_tx.opportunities)
        if (opp.claimed && !pre_tx.opportunities.at(id).claimed && owner)
            out.winners.emplace(id, *owner);
}

// Public execution: walk candidates in order, include first-fit by declared
// gas; rejected txs vanish (no gas, no fee), reverted ones stay and pay.
AuctionOutcome exec_flat(const State& st, const std::vector<Transaction>& ordered, Gas gas_limit)
{
    AuctionOutcome out;
    out.post_state = st;
    Gas gas_left = gas_limit;
    for (const auto& tx : ordered) {
        if (tx.gas > gas_left) continue;
        auto applied = apply_tx(out.post_state, tx);
        if (applied.status == TxStatus::rejected) continue;
        record_claims(out, out.post_state, applied.state, tx);
        pay(out, st, tx, applied.fee);
        out.block.entries.push_back({tx, applied.status});
        out.block.gas_used += tx.gas;
        out.block.proposer_revenue += applied.fee;
        out.post_state = std::move(applied.state);
        gas_left -= tx.gas;
    }
    return out;
}

// Sealed execution: each bundle runs atomically on the running state; a
// bundle that fails is dropped entirely.
AuctionOutcome exec_atomic_bundles(const State& st, const std::vector<Bundle>& ordered,
                                   Gas gas_limit)
{
    AuctionOutcome out;
    out.post_state = st;
    Gas gas_left = gas_limit;
    for (const auto& b : ordered) {
        if (b.total_gas() > gas_left) continue;
        auto applied = apply_bundle(out.post_state, b);
        if (!applied.valid) continue;
        for (const auto& tx : b.txs) {
            record_claims(out, out.post_state, applied.state, tx);
            pay(out, st, tx, tx.fee());
            out.block.entries.push_back({tx, TxStatus::executed});
            out.block.proposer_revenue += tx.fee();
        }
        if (b.coinbase_payment > 0) {
            out.payments[b.sender_id] += b.coinbase_payment;
            out.block.proposer_revenue += b.coinbase_payment;
        }
        out.block.gas_used += b.total_gas();
        out.post_state = std::move(applied.state);
        gas_left -= b.total_gas();
    }
    return out;
}

} // namespace

AuctionOutcome order_pga(const State& st, const SequencerView& view, Gas gas_limit)
{
    auto flat = flatten(view);
    std::sort(flat.begin(), flat.end(), [](const FlatTx& a, const FlatTx& b) {
        if (a.tx.gas_price != b.tx.gas_price) return a.tx.gas_price > b.tx.gas_price;
        if (a.arrival != b.arrival) return a.arrival < b.arrival;
        return a.tx.id < b.tx.id;
    });
    std::vector<Transaction> ordered;
    for (auto& f : flat) ordered.push_back(std::move(f.tx));
    return exec_flat(st, ordered, gas_limit);
}

AuctionOutcome order_fbca(const State& st, const SequencerView& view, Gas gas_limit)
{
    builder::ConflictInstance inst;
    for (const auto& sub : view.submissions) inst.bundles.push_back(sub.bundle);
    inst.gas_limit = gas_limit;
    inst.reference = st;
    auto built = builder::fbca_greedy(inst);
    std::vector<Bundle> ordered;
    for (std::size_t i : built.selected) ordered.push_back(inst.bundles[i]);
    return exec_atomic_bundles(st, ordered, gas_limit);
}

AuctionOutcome order_random(const State& st, const SequencerView& view, Gas gas_limit)
{
    auto flat = flatten(view);
    // canonical base order, then a beacon-seeded uniform shuffle
    std::stable_sort(flat.begin(), flat.end(), [](const FlatTx& a, const FlatTx& b) {
        if (a.tx.id != b.tx.id) return a.tx.id < b.tx.id;
        return a.arrival < b.arrival;
    });
    DetRng rng(view.randomness);
    rng.shuffle(flat);
    std::vector<Transaction> ordered;
    for (auto& f : flat) ordered.push_back(std::move(f.tx));
    return exec_flat(st, ordered, gas_limit);
}

AuctionOutcome order_fifo(const State& st, const SequencerView& view, Gas gas_limit)
{
    auto flat = flatten(view);
    std::sort(flat.begin(), flat.end(), [](const FlatTx& a, const FlatTx& b) {
        if (a.arrival != b.arrival) return a.arrival < b.arrival;
        return a.tx.id < b.tx.id;
    });
    std::vector<Transaction> ordered;
    for (auto& f : flat) ordered.push_back(std::move(f.tx));
    return exec_flat(st, ordered, gas_limit);
}

AuctionOutcome order_dictator(const State& st, const SequencerView& view, Gas gas_limit,
                              const std::vector<PlayerId>& whitelist, bool censor)
{
    std::vector<Transaction> ordered;
    std::vector<bool> taken(view.submissions.size(), false);
    for (PlayerId p : whitelist) {
        std::vector<std::size_t> own;
        for (std::size_t i = 0; i < view.submissions.size(); ++i)
            if (!taken[i] && view.submissions[i].bundle.sender_id == p) own.push_back(i);
        std::sort(own.begin(), own.end(), [&](std::size_t a, std::size_t b) {
            const auto& sa = view.submissions[a];
            const auto& sb = view.submissions[b];
            if (sa.arrival != sb.arrival) return sa.arrival < sb.arrival;
            return sa.bundle.hash() < sb.bundle.hash();
        });
        for (std::size_t i : own) {
            taken[i] = true;
            for (const auto& tx : view.submissions[i].bundle.txs) ordered.push_back(tx);
        }
    }
    if (!censor) {
        std::vector<FlatTx> rest;
        for (std::size_t i = 0; i < view.submissions.size(); ++i)
            if (!taken[i])
                for (const auto& tx : view.submissions[i].bundle.txs)
                    rest.push_back({tx, view.submissions[i].arrival});
        std::sort(rest.begin(), rest.end(), [](const FlatTx& a, const FlatTx& b) {
            if (a.tx.gas_price != b.tx.gas_price) return a.tx.gas_price > b.tx.gas_price;
            if (a.arrival != b.arrival) return a.arrival < b.arrival;
            return a.tx.id < b.tx.id;
        });
        for (auto& f : rest) ordered.push_back(std::move(f.tx));
    }
    return exec_flat(st, ordered, gas_limit);
}

AuctionOutcome order_metadata(const State& st, const SequencerView& view, Gas gas_limit)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < view.submissions.size(); ++i)
        if (view.submissions[i].bundle.order_nonce) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ba = view.submissions[a].bundle;
        const auto& bb = view.submissions[b].bundle;
        if (*ba.order_nonce != *bb.order_nonce) return *ba.order_nonce < *bb.order_nonce;
        return ba.hash() < bb.hash();
    });
    AuctionOutcome out;
    out.post_state = st;
    Gas gas_left = gas_limit;
    for (std::size_t i : idx) {
        const Bundle& b = view.submissions[i].bundle;
        if (b.txs.empty() || b.total_gas() > gas_left) continue;
        bool all_executed = true;
        for (const auto& tx : b.txs) {
            auto applied = apply_tx(out.post_state, tx);
            if (applied.status == TxStatus::rejected) {
                all_executed = false;
                continue;
            }
            record_claims(out, out.post_state, applied.state, tx);
            pay(out, st, tx, applied.fee);
            out.block.entries.push_back({tx, applied.status});
            out.block.proposer_revenue += applied.fee;
            out.post_state = std::move(applied.state);
            if (applied.status != TxStatus::executed) all_executed = false;
        }
        const AccountId payer = b.txs.front().sender;
        if (all_executed && b.coinbase_payment > 0 &&
            out.post_state.balance(payer, kNativeToken) >= b.coinbase_payment) {
            out.post_state.add_balance(payer, kNativeToken, -b.coinbase_payment);
            out.post_state.add_balance(st.proposer, kNativeToken, b.coinbase_payment);
            out.payments[b.sender_id] += b.coinbase_payment;
            out.block.proposer_revenue += b.coinbase_payment;
        }
        out.block.gas_used += b.total_gas();
        gas_left -= b.total_gas();
    }
    return out;
}

AuctionOutcome run_auction(const State& st, const SequencerView& view, Gas gas_limit,
                           const MechanismConfig& cfg)
{
    if (cfg.name == "pga") return order_pga(st, view, gas_limit);
    if (cfg.name == "fbca") return order_fbca(st, view, gas_limit);
    if (cfg.name == "random") return order_random(st, view, gas_limit);
    if (cfg.name == "fifo") return order_fifo(st, view, gas_limit);
    if (cfg.name == "dictator") return order_dictator(st, view, gas_limit, cfg.whitelist, cfg.censor);
    if (cfg.name == "metadata") return order_metadata(st, view, gas_limit);
    throw validation_error("unknown ordering mechanism '" + cfg.name + "'");
}

bool default_private_mempool(const std::string& name)
{
    return name == "fbca" || name == "metadata";
}

} // namespace mev::auction
