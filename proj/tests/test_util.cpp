#include "doctest.h"

#include "mev/util/hash.hpp"
#include "mev/util/parallel.hpp"
#include "mev/util/rational.hpp"
#include "mev/util/rng.hpp"

using namespace mev;

TEST_CASE("rational round trips and canonical forms") {
    CHECK(rat_to_string(Rat(101, 900)) == "101/900");
    CHECK(rat_to_string(Rat(-4, 2)) == "-2");
    CHECK(rat_from_string("101/900") == Rat(101, 900));
    CHECK(rat_from_string("10.1") == Rat(101, 10));
    CHECK(rat_from_string("-0.25") == Rat(-1, 4));
    CHECK(rat_from_string("42") == Rat(42));
    CHECK_THROWS_AS(rat_from_string("1/0"), error);
}

TEST_CASE("human formatting uses exact decimals only for 2^a 5^b denominators") {
    CHECK(rat_to_human(Rat(101, 10)) == "10.1");
    CHECK(rat_to_human(Rat(1, 4)) == "0.25");
    CHECK(rat_to_human(Rat(-3, 8)) == "-0.375");
    CHECK(rat_to_human(Rat(101, 900)) == "101/900");
    CHECK(rat_to_human(Rat(7)) == "7");
}

TEST_CASE("fnv is stable") {
    Fnv64 h;
    h.str("mev");
    const auto v1 = h.value();
    Fnv64 h2;
    h2.str("mev");
    CHECK(v1 == h2.value());
    CHECK(v1 != Fnv64().str("mew").value());
}

TEST_CASE("rng streams are reproducible and bounded") {
    DetRng a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    DetRng c(9);
    for (int i = 0; i < 1000; ++i) {
        auto v = c.below(13);
        CHECK(v < 13);
        Rat u = c.unit();
        CHECK(u >= 0);
        CHECK(u < 1);
    }
}

TEST_CASE("exponential sampler matches its mean roughly and is exact-rational") {
    DetRng r(123);
    Rat sum = 0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        Rat e = r.exponential(Rat(10));
        CHECK(e >= 0);
        sum += e;
    }
    double mean = static_cast<double>(sum.convert_to<double>()) / n;
    CHECK(mean > 9.0);
    CHECK(mean < 11.0);
}

TEST_CASE("parallel_for result is independent of thread budget") {
    std::vector<std::uint64_t> out1(500), out2(500);
    setenv("MEV_ARENA_THREADS", "1", 1);
    parallel_for(500, [&](std::size_t i) { out1[i] = splitmix64(i); });
    setenv("MEV_ARENA_THREADS", "8", 1);
    parallel_for(500, [&](std::size_t i) { out2[i] = splitmix64(i); });
    unsetenv("MEV_ARENA_THREADS");
    CHECK(out1 == out2);
}
