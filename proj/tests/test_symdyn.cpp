#include "doctest.h"

#include "rwb/symdyn.hpp"

#include <cmath>

using namespace rwb;

TEST_CASE("trajectory sampling") {
    auto zeros = sample_trajectory(ShiftSpec::bernoulli_shift(0.0), 8, 1);
    CHECK(zeros == BitString::zeros(8));

    auto frozen = sample_trajectory(
        ShiftSpec::markov_shift({0.5, 0.5}, {{{1.0, 0.0}, {0.0, 1.0}}}), 8, 3);
    bool constant = true;
    for (std::size_t i = 1; i < frozen.size(); ++i)
        constant = constant && frozen[i] == frozen[0];
    CHECK(constant);

    auto fair = sample_trajectory(ShiftSpec::bernoulli_shift(0.5), 1 << 16, 7);
    double f = double(count_occurrences(fair, 1)) / double(fair.size());
    CHECK(std::fabs(f - 0.5) < 0.01);

    // deterministic given the seed
    CHECK(sample_trajectory(ShiftSpec::bernoulli_shift(0.3), 64, 9) ==
          sample_trajectory(ShiftSpec::bernoulli_shift(0.3), 64, 9));

    CHECK_THROWS_AS(ShiftSpec::markov_shift({0.9, 0.1}, {{{0.5, 0.5}, {0.5, 0.5}}}),
                    std::invalid_argument);  // e not stationary
}

TEST_CASE("exact entropy rates") {
    CHECK(exact_entropy_rate(ShiftSpec::bernoulli_shift(0.5)) == doctest::Approx(1.0));
    CHECK(exact_entropy_rate(ShiftSpec::bernoulli_shift(0.9)) ==
          doctest::Approx(0.468996).epsilon(1e-5));
    CHECK(exact_entropy_rate(ShiftSpec::markov_shift({0.5, 0.5}, {{{1.0, 0.0}, {0.0, 1.0}}})) ==
          doctest::Approx(0.0));
    // two-state chain: h = sum_i e_i H(P_i.)
    auto chain = ShiftSpec::markov_shift({2.0 / 3.0, 1.0 / 3.0}, {{{0.9, 0.1}, {0.2, 0.8}}});
    double expected = (2.0 / 3.0) * (-xlog2x(0.9) - xlog2x(0.1)) +
                      (1.0 / 3.0) * (-xlog2x(0.2) - xlog2x(0.8));
    CHECK(exact_entropy_rate(chain) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("block entropy estimates") {
    BitString alt = BitStream::cycle(BitString("01")).prefix(1 << 12);
    CHECK(block_entropy_estimate(alt, 2) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(block_entropy_estimate(alt, 4) == doctest::Approx(0.25).epsilon(1e-3));

    BitString fair = sample_trajectory(ShiftSpec::bernoulli_shift(0.5), 1 << 18, 11);
    CHECK(std::fabs(block_entropy_estimate(fair, 8) - 1.0) < 0.02);

    BitString constant = BitString::zeros(1 << 12);
    for (unsigned k : {1u, 2u, 4u}) CHECK(block_entropy_estimate(constant, k) == 0.0);

    CHECK_THROWS_AS(block_entropy_estimate(BitString::zeros(64), 8), std::invalid_argument);
}

TEST_CASE("block entropies decrease toward the rate") {
    for (double p1 : {0.1, 0.3, 0.5}) {
        BitString x = sample_trajectory(ShiftSpec::bernoulli_shift(p1), 1 << 18, 21);
        double prev = 1e9;
        for (unsigned k : {1u, 2u, 4u, 8u}) {
            double hk = block_entropy_estimate(x, k);
            REQUIRE(hk <= prev + 0.02);
            prev = hk;
        }
        double h = exact_entropy_rate(ShiftSpec::bernoulli_shift(p1));
        REQUIRE(std::fabs(block_entropy_estimate(x, 8) - h) <= 0.03);
    }
}

TEST_CASE("brudno rate through the compressor") {
    CHECK(brudno_rate(BitString::zeros(1 << 16)) < 0.02);
    for (double p1 : {0.1, 0.3, 0.5}) {
        BitString x = sample_trajectory(ShiftSpec::bernoulli_shift(p1), 1 << 18, 33);
        double h = exact_entropy_rate(ShiftSpec::bernoulli_shift(p1));
        REQUIRE(std::fabs(brudno_rate(x) - h) <= 0.08);
    }
    CHECK_THROWS_AS(brudno_rate(BitString::zeros(64)), std::invalid_argument);
}

TEST_CASE("markov stationarity at scale") {
    auto chain = ShiftSpec::markov_shift({2.0 / 3.0, 1.0 / 3.0}, {{{0.9, 0.1}, {0.2, 0.8}}});
    BitString x = sample_trajectory(chain, 1 << 18, 5);
    double f1 = double(count_occurrences(x, 1)) / double(x.size());
    CHECK(std::fabs(f1 - 1.0 / 3.0) < 0.02);
}

TEST_CASE("symbolic translation uses fixed-width injective codes") {
    CHECK(symbolic_translate({0, 1, 0}, 2).str() == "010");
    CHECK(symbolic_translate({}, 4) == BitString(""));
    CHECK(symbolic_translate({3}, 4).str() == "11");
    CHECK(symbolic_translate({0, 2, 1}, 3).str() == "001001");
    CHECK_THROWS_AS(symbolic_translate({4}, 4), std::invalid_argument);
    // injectivity over all label pairs for small alphabets
    for (uint64_t count : {2u, 3u, 4u, 5u}) {
        for (uint64_t a = 0; a < count; ++a)
            for (uint64_t b = 0; b < count; ++b)
                if (a != b)
                    REQUIRE(symbolic_translate({a}, count) != symbolic_translate({b}, count));
    }
}
