#include "mev/engine/stage.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mev/util/parallel.hpp"

namespace mev::engine {

namespace {

using nlohmann::json;

std::vector<AccountId> accounts_of(const State& st, PlayerId p)
{
    std::vector<AccountId> out;
    for (const auto& [id, a] : st.accounts)
        if (a.owner && *a.owner == p) out.push_back(id);
    return out;
}

std::string hex64(std::uint64_t v)
{
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

// Per-player simulation context handed to strategy runtimes.
struct PlayerContext {
    const StageGameSpec* spec = nullptr;
    PlayerId self = kNoPlayer;
    std::vector<AccountId> accounts;
    std::map<AccountId, std::int64_t> next_nonce;
    std::uint64_t beacon = 0;
    Rat expected_seal;

    Gas focal_gas() const
    {
        return spec->state.opportunities.at(spec->focal_opportunity).claim_gas;
    }
    std::int64_t value_at(const Rat& t) const { return spec->path_for(self).value_at(t); }

    Transaction claim_tx(AccountId acct, const Rat& m, std::int64_t nonce)
    {
        Transaction tx;
        tx.sender = acct;
        tx.instructions = {ClaimIx{spec->focal_opportunity}};
        tx.gas = focal_gas();
        tx.gas_price = m;
        tx.nonce = nonce;
        return tx.with_id();
    }
    Bundle wrap(std::vector<Transaction> txs, Rat coinbase = Rat(0)) const
    {
        Bundle b;
        b.txs = std::move(txs);
        b.sender_id = self;
        b.coinbase_payment = std::move(coinbase);
        return b;
    }
};

struct PendingSend {
    Rat at;
    Bundle bundle;
};

class Runtime {
public:
    virtual ~Runtime() = default;
    virtual std::vector<PendingSend> on_discover(PlayerContext& ctx, const Rat& now) = 0;
    virtual std::vector<PendingSend> on_observe(PlayerContext&, const Rat&, const Bundle&,
                                                PlayerId)
    {
        return {};
    }
};

class NoOpRuntime : public Runtime {
public:
    std::vector<PendingSend> on_discover(PlayerContext&, const Rat&) override { return {}; }
};

class FixedBidRuntime : public Runtime {
public:
    explicit FixedBidRuntime(FixedBid p) : p_(std::move(p)) {}
    std::vector<PendingSend> on_discover(PlayerContext& ctx, const Rat& now) override
    {
        const AccountId acct = ctx.accounts.front();
        return {{now, ctx.wrap({ctx.claim_tx(acct, p_.m, ctx.next_nonce[acct]++)})}};
    }

private:
    FixedBid p_;
};

class ReactiveRuntime : public Runtime {
public:
    explicit ReactiveRuntime(ReactiveCounterBid p) : p_(std::move(p)) {}
    std::vector<PendingSend> on_discover(PlayerContext& ctx, const Rat& now) override
    {
        if (p_.m0 * Rat(ctx.focal_gas()) > p_.budget) return {};
        const AccountId acct = ctx.accounts.front();
        nonce_ = ctx.next_nonce[acct]++;
        my_price_ = p_.m0;
        active_ = true;
        return {{now, ctx.wrap({ctx.claim_tx(acct, my_price_, nonce_)})}};
    }
    std::vector<PendingSend> on_observe(PlayerContext& ctx, const Rat& now, const Bundle& b,
                                        PlayerId) override
    {
        if (!active_) return {};
        Rat rival(-1);
        for (const auto& tx : b.txs)
            for (const auto& ix : tx.instructions)
                if (const auto* c = std::get_if<ClaimIx>(&ix);
                    c && c->opportunity == ctx.spec->focal_opportunity)
                    rival = std::max(rival, tx.gas_price);
        if (rival < my_price_) return {};
        Rat next = rival * p_.raise;
        if (next * Rat(ctx.focal_gas()) > p_.budget) return {};
        my_price_ = next;
        return {{now, ctx.wrap({ctx.claim_tx(ctx.accounts.front(), my_price_, nonce_)})}};
    }

private:
    ReactiveCounterBid p_;
    Rat my_price_;
    std::int64_t nonce_ = 0;
    bool active_ = false;
};

class SnipeRuntime : public Runtime {
public:
    explicit SnipeRuntime(LastSecondSnipe p) : p_(std::move(p)) {}
    std::vector<PendingSend> on_discover(PlayerContext& ctx, const Rat& now) override
    {
        Rat at = ctx.expected_seal - p_.delta;
        if (at < now) at = now;
        const AccountId acct = ctx.accounts.front();
        return {{at, ctx.wrap({ctx.claim_tx(acct, p_.m, ctx.next_nonce[acct]++)})}};
    }

private:
    LastSecondSnipe p_;
};

class SpamRuntime : public Runtime {
public:
    explicit SpamRuntime(Spam p) : p_(std::move(p)) {}
    std::vector<PendingSend> on_discover(PlayerContext& ctx, const Rat& now) override
    {
        std::vector<Transaction> txs;
        for (int i = 0; i < p_.replicas; ++i) {
            const AccountId acct = ctx.accounts[static_cast<std::size_t>(i)];
            txs.push_back(ctx.claim_tx(acct, p_.m, ctx.next_nonce[acct]++));
        }
        return {{now, ctx.wrap(std::move(txs))}};
    }

private:
    Spam p_;
};

class ShadeRuntime : public Runtime {
public:
    explicit ShadeRuntime(SealedShade p) : p_(std::move(p)) {}
    std::vector<PendingSend> on_discover(PlayerContext& ctx, const Rat& now) override
    {
        const AccountId acct = ctx.accounts.front();
        const Rat fee = p_.base_price * Rat(ctx.focal_gas());
        Rat bid = p_.alpha * Rat(ctx.value_at(now));
        Rat coinbase = bid - fee;
        if (coinbase < 0) coinbase = 0;
        return {{now, ctx.wrap({ctx.claim_tx(acct, p_.base_price, ctx.next_nonce[acct]++)},
                               coinbase)}};
    }

private:
    SealedShade p_;
};

class QuantityRuntime : public Runtime {
public:
    explicit QuantityRuntime(QuantitySell p) : p_(std::move(p)) {}
    std::vector<PendingSend> on_discover(PlayerContext& ctx, const Rat& now) override
    {
        const AccountId acct = ctx.accounts.front();
        Transaction tx;
        tx.sender = acct;
        tx.instructions = {SwapIx{p_.pool, p_.token_in, p_.amount, 0}};
        tx.gas = kSwapGas;
        tx.gas_price = p_.m;
        tx.nonce = ctx.next_nonce[acct]++;
        tx.with_id();
        return {{now, ctx.wrap({tx})}};
    }

private:
    QuantitySell p_;
};

std::unique_ptr<Runtime> make_runtime(const Strategy& s)
{
    return std::visit(
        [](const auto& p) -> std::unique_ptr<Runtime> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NoOpStrategy>) return std::make_unique<NoOpRuntime>();
            else if constexpr (std::is_same_v<T, FixedBid>) return std::make_unique<FixedBidRuntime>(p);
            else if constexpr (std::is_same_v<T, ReactiveCounterBid>) return std::make_unique<ReactiveRuntime>(p);
            else if constexpr (std::is_same_v<T, LastSecondSnipe>) return std::make_unique<SnipeRuntime>(p);
            else if constexpr (std::is_same_v<T, Spam>) return std::make_unique<SpamRuntime>(p);
            else if constexpr (std::is_same_v<T, SealedShade>) return std::make_unique<ShadeRuntime>(p);
            else return std::make_unique<QuantityRuntime>(p);
        },
        s);
}

void validate_profile(const StageGameSpec& spec, const std::vector<Strategy>& profile)
{
    if (profile.size() != spec.players.size())
        throw validation_error("profile has " + std::to_string(profile.size()) +
                               " strategies for " + std::to_string(spec.players.size()) +
                               " players");
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const PlayerId p = spec.players[i].id;
        const auto owned = accounts_of(spec.state, p);
        if (owned.empty())
            throw validation_error("player " + std::to_string(p) + " owns no account");
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Spam>) {
                    if (s.replicas < 1) throw validation_error("spam replicas must be >= 1");
                    if (owned.size() < static_cast<std::size_t>(s.replicas))
                        throw validation_error(
                            "spam strategy needs " + std::to_string(s.replicas) +
                            " accounts; player " + std::to_string(p) + " owns " +
                            std::to_string(owned.size()));
                } else if constexpr (std::is_same_v<T, ReactiveCounterBid>) {
                    if (s.raise <= 1) throw validation_error("counter-bid raise must exceed 1");
                    if (s.budget <= 0) throw validation_error("counter-bid budget must be positive");
                } else if constexpr (std::is_same_v<T, QuantitySell>) {
                    if (s.amount <= 0) throw validation_error("sell amount must be positive");
                } else if constexpr (std::is_same_v<T, LastSecondSnipe>) {
                    if (s.delta < 0) throw validation_error("snipe offset must be non-negative");
                }
            },
            profile[i]);
    }
}

struct Event {
    Rat t;
    int rank = 0; // 0 discover, 1 observe, 2 send
    PlayerId actor = kNoPlayer;
    std::uint64_t seq = 0;
    int kind = 0; // mirrors rank
    Bundle bundle;
    PlayerId from = kNoPlayer;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const
    {
        if (a.t != b.t) return a.t > b.t;
        if (a.rank != b.rank) return a.rank > b.rank;
        if (a.actor != b.actor) return a.actor > b.actor;
        return a.seq > b.seq;
    }
};

} // namespace

std::string strategy_name(const Strategy& s)
{
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NoOpStrategy>) return "noop";
            else if constexpr (std::is_same_v<T, FixedBid>) return "fixed_bid";
            else if constexpr (std::is_same_v<T, ReactiveCounterBid>) return "counter_bid";
            else if constexpr (std::is_same_v<T, LastSecondSnipe>) return "snipe";
            else if constexpr (std::is_same_v<T, Spam>) return "spam";
            else if constexpr (std::is_same_v<T, SealedShade>) return "sealed_shade";
            else return "quantity_sell";
        },
        s);
}

std::string strategy_brief(const Strategy& s)
{
    return std::visit(
        [&](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NoOpStrategy>) return "noop";
            else if constexpr (std::is_same_v<T, FixedBid>)
                return "fixed_bid(m=" + rat_to_string(p.m) + ")";
            else if constexpr (std::is_same_v<T, ReactiveCounterBid>)
                return "counter_bid(m0=" + rat_to_string(p.m0) + ",r=" + rat_to_string(p.raise) +
                       ",budget=" + rat_to_string(p.budget) + ")";
            else if constexpr (std::is_same_v<T, LastSecondSnipe>)
                return "snipe(delta=" + rat_to_string(p.delta) + ",m=" + rat_to_string(p.m) + ")";
            else if constexpr (std::is_same_v<T, Spam>)
                return "spam(k=" + std::to_string(p.replicas) + ",m=" + rat_to_string(p.m) + ")";
            else if constexpr (std::is_same_v<T, SealedShade>)
                return "sealed_shade(alpha=" + rat_to_string(p.alpha) + ")";
            else
                return "quantity_sell(amount=" + std::to_string(p.amount) +
                       ",m=" + rat_to_string(p.m) + ")";
        },
        s);
}

void StageGameSpec::validate() const
{
    state.check_invariants();
    if (gas_limit < 1) throw validation_error("gas limit must be at least 1");
    if (players.empty()) throw validation_error("at least one player required");
    if (!state.opportunities.count(focal_opportunity))
        throw validation_error("focal opportunity " + std::to_string(focal_opportunity) +
                               " is not in the state");
    timer.validate();
    value_path.validate();
    for (const auto& [p, path] : value_path_override) path.validate();
    costs.validate();
    latency.validate(player_ids());
    if (discovery_time < 0) throw validation_error("discovery time must be non-negative");
    std::set<PlayerId> seen;
    for (const auto& p : players) {
        if (!seen.insert(p.id).second) throw validation_error("duplicate player id");
        if (accounts_of(state, p.id).empty())
            throw validation_error("player " + std::to_string(p.id) + " owns no account");
    }
}

std::vector<PlayerId> StageGameSpec::player_ids() const
{
    std::vector<PlayerId> out;
    for (const auto& p : players) out.push_back(p.id);
    return out;
}

const StepPath& StageGameSpec::path_for(PlayerId p) const
{
    auto it = value_path_override.find(p);
    return it == value_path_override.end() ? value_path : it->second;
}

StageResult run_stage(const StageGameSpec& spec, const std::vector<Strategy>& profile,
                      std::uint64_t seed)
{
    spec.validate();
    validate_profile(spec, profile);
    const LatencyMap net(spec.latency);

    StageResult result;
    DetRng rng(seed);
    result.beacon = rng.next_u64();
    result.seal_time = spec.timer.draw(rng);
    const Rat seal = result.seal_time;
    const bool is_private = spec.mechanism.private_mempool;
    const bool metadata = spec.mechanism.name == "metadata";

    auto log = [&](json j) { result.event_log.push_back(j.dump()); };
    log({{"t", rat_to_string(Rat(0))}, {"type", "beacon"}, {"value", hex64(result.beacon)}});

    std::vector<PlayerContext> ctx(spec.players.size());
    std::vector<std::unique_ptr<Runtime>> runtimes;
    for (std::size_t i = 0; i < spec.players.size(); ++i) {
        ctx[i].spec = &spec;
        ctx[i].self = spec.players[i].id;
        ctx[i].accounts = accounts_of(spec.state, ctx[i].self);
        for (AccountId a : ctx[i].accounts) ctx[i].next_nonce[a] = spec.state.nonce(a);
        ctx[i].beacon = result.beacon;
        ctx[i].expected_seal = spec.timer.mean();
        runtimes.push_back(make_runtime(profile[i]));
    }
    std::map<PlayerId, std::size_t> slot;
    for (std::size_t i = 0; i < spec.players.size(); ++i) slot[spec.players[i].id] = i;

    std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
    std::uint64_t seq = 0;
    auto push = [&](Event e) {
        e.seq = seq++;
        queue.push(std::move(e));
    };
    for (const auto& p : spec.players)
        push({spec.discovery_time, 0, p.id, 0, 0, {}, kNoPlayer});

    auction::SequencerView view;
    view.randomness = result.beacon;
    std::map<PlayerId, int> txs_sent;

    auto schedule_sends = [&](PlayerId actor, const Rat& now, std::vector<PendingSend> sends) {
        for (auto& s : sends) {
            Rat at = s.at < now ? now : s.at;
            Event e;
            e.t = std::move(at);
            e.rank = 2;
            e.kind = 2;
            e.actor = actor;
            e.bundle = std::move(s.bundle);
            push(std::move(e));
        }
    };

    while (!queue.empty()) {
        Event e = queue.top();
        queue.pop();
        if (e.t > seal) break;
        const std::size_t i = slot.at(e.actor);
        if (e.kind == 0) {
            log({{"t", rat_to_string(e.t)},
                 {"type", "discover"},
                 {"player", e.actor},
                 {"value", ctx[i].value_at(e.t)}});
            schedule_sends(e.actor, e.t, runtimes[i]->on_discover(ctx[i], e.t));
        } else if (e.kind == 1) {
            log({{"t", rat_to_string(e.t)},
                 {"type", "observe"},
                 {"player", e.actor},
                 {"from", e.from},
                 {"bundle", hex64(e.bundle.hash())}});
            schedule_sends(e.actor, e.t, runtimes[i]->on_observe(ctx[i], e.t, e.bundle, e.from));
        } else {
            Bundle b = e.bundle;
            b.sequencer_timestamp = e.t;
            if (metadata && !b.order_nonce) b.order_nonce = b.hash();
            txs_sent[e.actor] += static_cast<int>(b.txs.size());
            log({{"t", rat_to_string(e.t)},
                 {"type", "send"},
                 {"player", e.actor},
                 {"bundle", hex64(b.hash())},
                 {"txs", b.txs.size()},
                 {"top_price", b.txs.empty() ? "0" : rat_to_string(b.txs.front().gas_price)}});
            if (auto d = net.player_to_sequencer(e.actor)) {
                const Rat arrival = e.t + *d;
                if (arrival <= seal) view.submissions.push_back({b, arrival});
            }
            if (!is_private) {
                for (const auto& other : spec.players) {
                    if (other.id == e.actor) continue;
                    if (auto d = net.player_to_player(e.actor, other.id)) {
                        Event obs;
                        obs.t = e.t + *d;
                        obs.rank = 1;
                        obs.kind = 1;
                        obs.actor = other.id;
                        obs.bundle = b;
                        obs.from = e.actor;
                        push(std::move(obs));
                    }
                }
            }
        }
    }

    result.outcome = auction::run_auction(spec.state, view, spec.gas_limit, spec.mechanism);
    log({{"t", rat_to_string(seal)},
         {"type", "seal"},
         {"submissions", view.submissions.size()},
         {"gas_used", result.outcome.block.gas_used}});

    for (std::size_t i = 0; i < spec.players.size(); ++i) {
        const PlayerId p = spec.players[i].id;
        result.balance_delta[p] = delta_balance(p, spec.state, result.outcome.post_state);
        Rat cost = 0;
        for (const auto& kind : spec.players[i].purchases) cost += spec.costs.cost_of(kind);
        const int extra = std::max(0, txs_sent[p] - 1);
        cost += spec.costs.cost_of("per_spam_tx") * Rat(extra);
        result.external_cost[p] = cost;
        result.utility[p] = result.balance_delta[p] - cost;
    }
    return result;
}

std::uint64_t run_seed(std::uint64_t seed, int run_index)
{
    return Fnv64().u64(seed).i64(run_index).value();
}

UtilitySummary estimate_utilities(const StageGameSpec& spec, const std::vector<Strategy>& profile,
                                  int runs, std::uint64_t seed)
{
    if (runs < 1) throw validation_error("need at least one run");
    spec.validate();
    validate_profile(spec, profile);

    std::vector<StageResult> results(static_cast<std::size_t>(runs));
    parallel_for(static_cast<std::size_t>(runs), [&](std::size_t r) {
        results[r] = run_stage(spec, profile, run_seed(seed, static_cast<int>(r)));
    });

    UtilitySummary out;
    out.runs = runs;
    const std::size_t n = spec.players.size();
    out.mean.assign(n, Rat(0));
    out.ci_half.assign(n, 0.0);
    Rat gas_total = 0;
    for (const auto& r : results) gas_total += Rat(r.outcome.block.gas_used);
    out.mean_gas = gas_total / Rat(runs);
    for (std::size_t i = 0; i < n; ++i) {
        const PlayerId p = spec.players[i].id;
        Rat sum = 0;
        for (const auto& r : results) sum += r.utility.at(p);
        out.mean[i] = sum / Rat(runs);
        if (runs > 1) {
            const double mean_d = static_cast<double>(out.mean[i]);
            double ss = 0;
            for (const auto& r : results) {
                const double d = static_cast<double>(r.utility.at(p)) - mean_d;
                ss += d * d;
            }
            const double stddev = std::sqrt(ss / (runs - 1));
            out.ci_half[i] = 1.96 * stddev / std::sqrt(static_cast<double>(runs));
        }
    }
    return out;
}

} // namespace mev::engine
