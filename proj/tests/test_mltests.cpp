#include "doctest.h"

#include "rwb/bits.hpp"
#include "rwb/mltests.hpp"
#include "rwb/prg.hpp"
#include "rwb/rng.hpp"

using namespace rwb;

TEST_CASE("verify_level_bound certifies the battery exhaustively") {
    for (auto& t : default_battery()) {
        for (unsigned n : {4u, 8u, 10u}) {
            auto r = verify_level_bound(t, n);
            REQUIRE_MESSAGE(r.ok, t.name(), " n=", n,
                            r.failure ? " m=" + std::to_string(r.failure->m) : "");
        }
    }
}

TEST_CASE("deficiency test passes the bound") {
    auto t = deficiency_test();
    auto r = verify_level_bound(t, 10);
    CHECK(r.ok);
}

TEST_CASE("registration certification to the exhaustive ceiling") {
    // the full registry, checked at the largest exhaustively calibrated sizes
    std::vector<FiniteTest> registry = default_battery();
    registry.push_back(borel_test(1));
    registry.push_back(borel_test(2));
    registry.push_back(iterated_log_test());
    registry.push_back(deficiency_test());
    for (const auto& t : registry) {
        for (unsigned n : {15u, 16u}) {
            auto r = verify_level_bound(t, n);
            REQUIRE_MESSAGE(r.ok, t.name(), " fails at n=", n);
        }
    }
}

TEST_CASE("constant-zero statistic trivially passes") {
    FiniteTest zero = FiniteTest::direct("zero", [](const BitString&) { return 0u; });
    for (unsigned n : {4u, 8u, 12u}) CHECK(verify_level_bound(zero, n).ok);
}

TEST_CASE("an absurd statistic fails the bound with a named witness") {
    // claimed level statistic(x) = |x| floods every critical region
    FiniteTest absurd =
        FiniteTest::direct("absurd", [](const BitString& x) { return unsigned(x.size()); });
    auto r = verify_level_bound(absurd, 4);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.failure.has_value());
    CHECK(r.failure->n == 4);
    CHECK(r.failure->m == 1);
    CHECK(r.failure->count >= 8);  // all 16 strings reach level 1; bound is < 8
}

TEST_CASE("borel normality statistic") {
    // exact balance at order 1
    BitString alt = BitStream::cycle(BitString("01")).prefix(16);
    CHECK(borel_normality_statistic(alt, 1) == 0);
    // extreme deviation reaches the maximal calibrated level at n = 16
    unsigned lvl0 = borel_normality_statistic(BitString::zeros(16), 1);
    unsigned max_lvl = 0;
    auto t = borel_test(1);
    for (uint64_t w = 0; w < (1u << 16); ++w) {
        std::vector<uint8_t> bits(16);
        for (unsigned i = 0; i < 16; ++i) bits[i] = uint8_t((w >> i) & 1);
        max_lvl = std::max(max_lvl, t.level(BitString(std::move(bits))));
    }
    CHECK(lvl0 == max_lvl);
    CHECK(lvl0 >= 10);
    // Champernowne prefix is nearly normal at order 2
    CHECK(borel_normality_statistic(champernowne_prefix(1 << 12), 2) <= 1);
    CHECK_THROWS_AS(borel_normality_statistic(BitString("0"), 2), std::invalid_argument);
}

TEST_CASE("iterated logarithm statistic") {
    CHECK(iterated_log_statistic(BitString::zeros(1 << 12)) >= 4);  // maximal drift
    BitString alt = BitStream::cycle(BitString("01")).prefix(1 << 12);
    CHECK(iterated_log_statistic(alt) == 0);  // bounded partial sums
    BitString r30 = rule30_single_one(257, 1 << 14);
    CHECK(iterated_log_statistic(r30) <= 1);
    CHECK_THROWS_AS(iterated_log_statistic(BitString("0101")), std::invalid_argument);
}

TEST_CASE("knuth battery on reference inputs") {
    // Champernowne prefix: passes at low levels
    auto rep = knuth_battery(champernowne_prefix(1 << 14));
    CHECK(rep.max_level() <= 2);
    // the all-zero string floods the frequency statistic
    auto zeros = knuth_battery(BitString::zeros(1 << 10));
    CHECK(zeros.level_of("frequency") == frequency_test().m_max());
    CHECK_FALSE(zeros.is_q_pseudorandom(3));
    CHECK(rep.is_q_pseudorandom(3));
    CHECK_THROWS_AS(knuth_battery(BitString("0101")), std::invalid_argument);
}

TEST_CASE("RANDU's triple defect shows at the word lag") {
    // successive words obey x_{k+2} = 6 x_{k+1} - 9 x_k, which leaks into
    // bit agreements at lags of 30 and 60 bit positions (one and two words of
    // the 30-bit extraction); plain bit-lag 3 shows nothing at this size
    BitString bits = lcg_bits(randu(), 1, 1 << 16);
    auto lag30 = serial_test(30);
    CHECK(lag30.level(bits) >= 3);
    auto battery = knuth_battery(bits);
    CHECK(battery.level_of("serial-3") <= 2);  // the small-lag projection is clean
}

TEST_CASE("battery level grows monotonically on the all-zero stream") {
    unsigned prev = 0;
    for (unsigned logn = 5; logn <= 13; ++logn) {
        auto lvl = frequency_test().level(BitString::zeros(1u << logn));
        REQUIRE(lvl >= prev);
        prev = lvl;
    }
}

TEST_CASE("complexity deficiency examples") {
    auto z = complexity_deficiency(BitString::zeros(4096));
    CHECK(z.deficiency > 3800);
    CounterRng rng(2024, 0);
    std::vector<uint8_t> bits(4096);
    for (auto& b : bits) b = rng.bit();
    auto r = complexity_deficiency(BitString(std::move(bits)));
    CHECK(r.deficiency < 256);
}
