#include "doctest.h"

#include <algorithm>

#include "mev/builder/fbca.hpp"
#include "mev/util/rng.hpp"

using namespace mev;
using namespace mev::builder;

namespace {

KevInstance kev3()
{
    KevInstance inst;
    inst.items = {{6, Rat(5)}, {5, Rat(4)}, {5, Rat(4)}};
    inst.gas_limit = 10;
    return inst;
}

// Brute-force oracle over all subsets.
Rat kev_oracle(const KevInstance& inst)
{
    Rat best = 0;
    const std::size_t n = inst.items.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Gas gas = 0;
        Rat rev = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                gas += inst.items[i].gas;
                rev += inst.items[i].gas_price * Rat(inst.items[i].gas);
            }
        if (gas <= inst.gas_limit) best = std::max(best, rev);
    }
    return best;
}

Bundle own_bundle(PlayerId p, Gas gas, Rat price, Rat coinbase = Rat(0), Rat timestamp = Rat(0))
{
    Transaction tx;
    tx.sender = p + 1;
    tx.instructions = {BurnIx{gas}};
    tx.gas = gas;
    tx.gas_price = std::move(price);
    tx.nonce = 0;
    tx.with_id();
    Bundle b;
    b.txs = {tx};
    b.sender_id = p;
    b.coinbase_payment = std::move(coinbase);
    b.sequencer_timestamp = std::move(timestamp);
    return b;
}

} // namespace

TEST_CASE("exact knapsack beats the high-price single item") {
    auto blk = kev_exact(kev3());
    CHECK(blk.revenue == Rat(40));
    CHECK(blk.selected == std::vector<std::size_t>{1, 2});
    CHECK(blk.gas_used == 10);
}

TEST_CASE("knapsack edge cases") {
    KevInstance one;
    one.items = {{4, Rat(3)}};
    one.gas_limit = 10;
    auto blk = kev_exact(one);
    CHECK(blk.selected == std::vector<std::size_t>{0});
    CHECK(blk.revenue == Rat(12));

    KevInstance none;
    none.items = {{11, Rat(9)}, {12, Rat(9)}};
    none.gas_limit = 10;
    auto empty = kev_exact(none);
    CHECK(empty.selected.empty());
    CHECK(empty.revenue == Rat(0));

    KevInstance bad;
    bad.items = {{0, Rat(1)}};
    bad.gas_limit = 10;
    CHECK_THROWS_AS(kev_exact(bad), validation_error);
}

TEST_CASE("greedy by price packs first-fit and trails the optimum") {
    auto blk = kev_greedy_by_price(kev3());
    CHECK(blk.revenue == Rat(30));
    CHECK(blk.selected == std::vector<std::size_t>{0});

    KevInstance ties;
    ties.items = {{5, Rat(2)}, {3, Rat(2)}, {3, Rat(2)}};
    ties.gas_limit = 6;
    auto t = kev_greedy_by_price(ties);
    // equal price: lower gas first, then lower index
    CHECK(t.selected == std::vector<std::size_t>{1, 2});

    KevInstance empty;
    empty.gas_limit = 5;
    CHECK(kev_greedy_by_price(empty).selected.empty());
}

TEST_CASE("exact matches subset enumeration and dominates greedy") {
    DetRng rng(99);
    for (int round = 0; round < 60; ++round) {
        KevInstance inst;
        const int n = 1 + static_cast<int>(rng.below(9));
        for (int i = 0; i < n; ++i)
            inst.items.push_back({static_cast<Gas>(1 + rng.below(12)),
                                  Rat(static_cast<std::int64_t>(rng.below(8)), 1 + rng.below(3))});
        inst.gas_limit = static_cast<Gas>(5 + rng.below(30));
        auto exact = kev_exact(inst);
        CHECK(exact.revenue == kev_oracle(inst));
        CHECK(kev_greedy_by_price(inst).revenue <= exact.revenue);
        CHECK(exact.gas_used <= inst.gas_limit);
        // equal gas everywhere: greedy is optimal
        KevInstance uniform = inst;
        for (auto& it : uniform.items) it.gas = 7;
        CHECK(kev_greedy_by_price(uniform).revenue == kev_exact(uniform).revenue);
    }
}

TEST_CASE("branch-and-bound path agrees with the oracle under huge gas limits") {
    DetRng rng(123);
    for (int round = 0; round < 20; ++round) {
        KevInstance inst;
        const int n = 1 + static_cast<int>(rng.below(10));
        for (int i = 0; i < n; ++i)
            inst.items.push_back({static_cast<Gas>(1'000'000 + rng.below(9'000'000)),
                                  Rat(static_cast<std::int64_t>(1 + rng.below(9)))});
        inst.gas_limit = 20'000'000; // forces the branch-and-bound path
        CHECK(kev_exact(inst).revenue == kev_oracle(inst));
    }
    KevInstance too_big;
    for (int i = 0; i < 26; ++i) too_big.items.push_back({1'000'000, Rat(1)});
    too_big.gas_limit = 100'000'000;
    CHECK_THROWS_AS(kev_exact(too_big), error);
}

TEST_CASE("bundle score excludes mempool fees from the bid") {
    Transaction own;
    own.sender = 1;
    own.instructions = {BurnIx{100}};
    own.gas = 100;
    own.gas_price = Rat(1, 2);
    own.with_id();
    Transaction pub;
    pub.sender = 9;
    pub.instructions = {BurnIx{50}};
    pub.gas = 50;
    pub.gas_price = Rat(2);
    pub.with_id();
    Bundle b;
    b.txs = {own, pub};
    b.sender_id = 0;
    b.coinbase_payment = Rat(10);
    b.mempool_tx_ids = {pub.id};
    CHECK(bundle_score(b) == Rat(2, 5));

    Bundle solo = own_bundle(0, 100, Rat(1, 2), Rat(10));
    CHECK(bundle_score(solo) == Rat(1, 2) + Rat(10) / Rat(100));

    Bundle all_public;
    all_public.txs = {pub};
    all_public.mempool_tx_ids = {pub.id};
    CHECK(bundle_score(all_public) == Rat(0));

    Bundle zero_gas;
    zero_gas.sender_id = 0;
    CHECK_THROWS_AS(bundle_score(zero_gas), error);
}

TEST_CASE("star-conflict family: greedy takes the hub, optimum takes the leaves") {
    auto inst = adversarial_star_instance(100, 10, Rat(1, 100), Rat(1));
    REQUIRE(inst.bundles.size() == 10);
    // derived conflicts are exactly hub-vs-leaf
    std::vector<std::pair<std::size_t, std::size_t>> expect;
    for (std::size_t i = 1; i < 10; ++i) expect.emplace_back(0, i);
    CHECK(inst.conflict_graph == expect);

    auto greedy = fbca_greedy(inst);
    CHECK(greedy.selected == std::vector<std::size_t>{0});
    CHECK(greedy.revenue == Rat(101, 10));

    auto opt = fbca_exact(inst);
    CHECK(opt.revenue == Rat(90));
    std::vector<std::size_t> leaves = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    CHECK(opt.selected == leaves);

    CHECK(approximation_ratio(inst) == Rat(101, 900));
    CHECK(approximation_ratio(inst) <= Rat(1, 9) + Rat(1, 100) * Rat(10) / Rat(9));

    // selections are genuinely compatible on the reference state
    REQUIRE(inst.reference.has_value());
    for (std::size_t a : opt.selected)
        for (std::size_t b : opt.selected)
            if (a < b) CHECK(!bundles_compete(*inst.reference, inst.bundles[a], inst.bundles[b]));
}

TEST_CASE("star family ratio approaches 1/(k-1) as epsilon vanishes") {
    for (Gas k : {3, 5, 8, 10}) {
        const Gas g_min = 10;
        const Rat eps(1, 1'000'000);
        auto inst = adversarial_star_instance(k * g_min, g_min, eps, Rat(1));
        Rat ratio = approximation_ratio(inst);
        Rat target(1, k - 1);
        CHECK(ratio <= target + eps * Rat(k) / Rat(k - 1));
        Rat gap = ratio - target;
        if (gap < 0) gap = -gap;
        CHECK(gap < Rat(1, 10'000));
    }
    CHECK_THROWS_AS(adversarial_star_instance(20, 10, Rat(1, 100), Rat(1)), validation_error);
    CHECK_THROWS_AS(adversarial_star_instance(101, 10, Rat(1, 100), Rat(1)), validation_error);
}

TEST_CASE("conflict-free auction reduces to a knapsack over bundle aggregates") {
    DetRng rng(7);
    for (int round = 0; round < 30; ++round) {
        ConflictInstance inst;
        const int n = 1 + static_cast<int>(rng.below(7));
        KevInstance agg;
        for (int i = 0; i < n; ++i) {
            Gas gas = static_cast<Gas>(10 + rng.below(40));
            Rat price(static_cast<std::int64_t>(1 + rng.below(6)));
            inst.bundles.push_back(own_bundle(i, gas, price, Rat(static_cast<std::int64_t>(rng.below(5)))));
            agg.items.push_back({gas, bundle_score(inst.bundles.back())});
        }
        inst.gas_limit = agg.gas_limit = static_cast<Gas>(40 + rng.below(100));
        auto exact = fbca_exact(inst);
        CHECK(exact.revenue == kev_exact(agg).revenue);
        CHECK(fbca_greedy(inst).revenue <= exact.revenue);
    }
}

TEST_CASE("equal-score conflicting bundles: earlier timestamp wins") {
    ConflictInstance inst;
    inst.bundles = {own_bundle(0, 10, Rat(3), Rat(0), Rat(5)),
                    own_bundle(1, 10, Rat(3), Rat(0), Rat(2))};
    inst.conflict_graph = {{0, 1}};
    inst.gas_limit = 100;
    auto blk = fbca_greedy(inst);
    CHECK(blk.selected == std::vector<std::size_t>{1});
}

TEST_CASE("complete conflict graph keeps only the best bundle") {
    ConflictInstance inst;
    inst.bundles = {own_bundle(0, 10, Rat(1)), own_bundle(1, 20, Rat(4)), own_bundle(2, 10, Rat(2))};
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b) inst.conflict_graph.emplace_back(a, b);
    inst.gas_limit = 100;
    CHECK(fbca_exact(inst).selected == std::vector<std::size_t>{1});
    CHECK(fbca_exact(inst).revenue == Rat(80));
    CHECK(fbca_greedy(inst).selected == std::vector<std::size_t>{1});
}

TEST_CASE("conflict instance validation") {
    ConflictInstance self_loop;
    self_loop.bundles = {own_bundle(0, 10, Rat(1))};
    self_loop.conflict_graph = {{0, 0}};
    self_loop.gas_limit = 10;
    CHECK_THROWS_AS(self_loop.validate_and_complete(), validation_error);

    // supplied edges must match the reference state's competition relation
    auto star = adversarial_star_instance(30, 10, Rat(1, 100), Rat(1));
    star.conflict_graph = {{1, 2}};
    CHECK_THROWS_AS(star.validate_and_complete(), validation_error);
}

TEST_CASE("identical instances produce identical blocks") {
    auto inst = adversarial_star_instance(100, 10, Rat(1, 100), Rat(1));
    auto a = fbca_greedy(inst);
    auto b = fbca_greedy(inst);
    CHECK(a.selected == b.selected);
    CHECK(a.revenue == b.revenue);
    auto c = fbca_exact(inst);
    auto d = fbca_exact(inst);
    CHECK(c.selected == d.selected);
}
