#include "doctest.h"

#include "rwb/coding.hpp"
#include "rwb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

using namespace rwb;

TEST_CASE("kraft sums are exact") {
    CHECK(kraft_sum({1, 2, 3, 3}) == Rat(1));
    CHECK(kraft_sum({1, 1}) == Rat(1));
    CHECK(kraft_sum({1, 1, 1}) == Rat(3, 2));
}

TEST_CASE("canonical prefix code construction") {
    PrefixCode c = build_prefix_code({1, 2, 3, 3});
    CHECK(c.codewords[0].str() == "0");
    CHECK(c.codewords[1].str() == "10");
    CHECK(c.codewords[2].str() == "110");
    CHECK(c.codewords[3].str() == "111");
    CHECK(c.is_prefix_free());

    PrefixCode full = build_prefix_code({2, 2, 2, 2});
    CHECK(full.codewords[0].str() == "00");
    CHECK(full.codewords[1].str() == "01");
    CHECK(full.codewords[2].str() == "10");
    CHECK(full.codewords[3].str() == "11");

    CHECK_THROWS_AS(build_prefix_code({1, 1, 1}), InfeasibleLengths);
}

TEST_CASE("prefix code construction succeeds exactly when Kraft holds") {
    CounterRng rng(11, 3);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<unsigned> lengths;
        unsigned count = 1 + unsigned(rng.below(8));
        for (unsigned i = 0; i < count; ++i) lengths.push_back(unsigned(rng.below(6)) + 1);
        bool feasible = kraft_sum(lengths) <= 1;
        if (feasible) {
            PrefixCode c = build_prefix_code(lengths);
            REQUIRE(c.is_prefix_free());
            for (std::size_t i = 0; i < lengths.size(); ++i)
                REQUIRE(c.codewords[i].size() == lengths[i]);
        } else {
            REQUIRE_THROWS_AS(build_prefix_code(lengths), InfeasibleLengths);
        }
    }
}

TEST_CASE("shannon entropy") {
    CHECK(shannon_entropy(Distribution::from_weights({0.5, 0.5})) == doctest::Approx(1.0));
    CHECK(shannon_entropy(Distribution::from_weights({1.0, 0.0})) == doctest::Approx(0.0));
    CHECK(shannon_entropy(Distribution::from_weights({0.25, 0.75})) ==
          doctest::Approx(0.811278).epsilon(1e-6));
}

TEST_CASE("KL divergence") {
    auto p = Distribution::from_weights({0.5, 0.5});
    auto q = Distribution::from_weights({0.25, 0.75});
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0));
    CHECK(std::isinf(kl_divergence(p, Distribution::from_weights({1.0, 0.0}))));
    CHECK(kl_divergence(p, q) == doctest::Approx(0.207519).epsilon(1e-5));

    Distribution labeled = Distribution::from_weights({0.5, 0.5});
    labeled.labels = {"x", "y"};
    CHECK_THROWS_AS(kl_divergence(labeled, q), std::invalid_argument);
}

TEST_CASE("KL positivity with equality only at P = Q") {
    CounterRng rng(5, 9);
    for (int trial = 0; trial < 300; ++trial) {
        unsigned denom = 1 + unsigned(rng.below(30));
        auto draw = [&]() {
            std::vector<double> w(3);
            double a = 1 + double(rng.below(denom));
            double b = 1 + double(rng.below(denom));
            double c = 1 + double(rng.below(denom));
            double s = a + b + c;
            return Distribution::from_weights({a / s, b / s, c / s});
        };
        Distribution p = draw(), q = draw();
        double kl = kl_divergence(p, q);
        REQUIRE(kl >= 0.0);
        bool equal = true;
        for (int i = 0; i < 3; ++i) equal = equal && std::fabs(p.w[i] - q.w[i]) < 1e-12;
        if (equal) REQUIRE(kl == doctest::Approx(0.0));
        if (kl < 1e-13) {
            for (int i = 0; i < 3; ++i) REQUIRE(p.w[i] == doctest::Approx(q.w[i]).epsilon(1e-5));
        }
    }
}

TEST_CASE("joint entropy suite and the chain rule") {
    // independent fair pair
    auto ind = joint_entropy_suite({{0.25, 0.25}, {0.25, 0.25}});
    CHECK(ind.mutual == doctest::Approx(0.0));
    CHECK(ind.h_ab == doctest::Approx(2.0));
    // perfectly correlated fair pair
    auto cor = joint_entropy_suite({{0.5, 0.0}, {0.0, 0.5}});
    CHECK(cor.mutual == doctest::Approx(1.0));
    CHECK(cor.h_ab == doctest::Approx(1.0));
    // the worked 2x2 joint
    auto j = joint_entropy_suite({{0.5, 0.25}, {0.25, 0.0}});
    CHECK(j.h_ab == doctest::Approx(1.5));
    CHECK(j.h_a + j.h_b_given_a == doctest::Approx(j.h_ab).epsilon(1e-10));
    CHECK(j.mutual >= 0.0);
}

TEST_CASE("average codeword length") {
    PrefixCode full = build_prefix_code({2, 2, 2, 2});
    CHECK(average_codeword_length(full, Distribution::uniform(4)) == doctest::Approx(2.0));
    PrefixCode skew = build_prefix_code({1, 2, 3, 3});
    auto dyadic = Distribution::from_weights({0.5, 0.25, 0.125, 0.125});
    CHECK(average_codeword_length(skew, dyadic) == doctest::Approx(1.75));
    CHECK(average_codeword_length(skew, Distribution::uniform(4)) == doctest::Approx(2.25));
}

namespace {

// exhaustive optimum over monotone feasible length vectors (oracle)
double optimal_prefix_length(const Distribution& p) {
    std::size_t n = p.size();
    std::vector<unsigned> lengths(n);
    double best = std::numeric_limits<double>::infinity();
    // weights sorted descending get nondecreasing lengths in an optimal code
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return p.w[a] > p.w[b]; });
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned prev) {
        if (k == n) {
            if (kraft_sum(lengths) > 1) return;
            double L = 0;
            for (std::size_t i = 0; i < n; ++i) L += p.w[order[i]] * lengths[i];
            best = std::min(best, L);
            return;
        }
        for (unsigned l = prev; l <= 8; ++l) {
            lengths[k] = l;
            // prune: partial Kraft already infeasible
            Rat partial = 0;
            for (std::size_t i = 0; i <= k; ++i) partial += pow2_inv(lengths[i]);
            if (partial > 1) continue;
            rec(k + 1, l);
        }
    };
    rec(0, 1);
    return best;
}

}  // namespace

TEST_CASE("huffman codes: worked values") {
    auto dyadic = Distribution::from_weights({0.5, 0.25, 0.125, 0.125});
    PrefixCode c = huffman_code(dyadic);
    CHECK(average_codeword_length(c, dyadic) == doctest::Approx(1.75));
    CHECK(average_codeword_length(c, dyadic) ==
          doctest::Approx(shannon_entropy(dyadic)));  // dyadic attains entropy

    auto u3 = Distribution::uniform(3);
    PrefixCode c3 = huffman_code(u3);
    double L = average_codeword_length(c3, u3);
    CHECK(L == doctest::Approx(5.0 / 3.0));
    double H = shannon_entropy(u3);
    CHECK(H <= L);
    CHECK(L < H + 1);

    auto degenerate = Distribution::from_weights({1.0, 0.0});
    CHECK(average_codeword_length(huffman_code(degenerate), degenerate) <= 1.0);
}

TEST_CASE("huffman is optimal among prefix codes, support <= 6") {
    CounterRng rng(17, 1);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + rng.below(5);
        std::vector<double> w(n);
        double s = 0;
        for (auto& x : w) {
            x = 1.0 + double(rng.below(20));
            s += x;
        }
        for (auto& x : w) x /= s;
        Distribution p = Distribution::from_weights(w);
        double lh = average_codeword_length(huffman_code(p), p);
        double lo = optimal_prefix_length(p);
        REQUIRE(lh == doctest::Approx(lo).epsilon(1e-9));
    }
}

TEST_CASE("noiseless coding sandwich on random distributions") {
    CounterRng rng(29, 2);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 2 + rng.below(7);
        std::vector<double> w(n);
        double s = 0;
        for (auto& x : w) {
            x = rng.uniform() + 1e-9;
            s += x;
        }
        for (auto& x : w) x /= s;
        Distribution p = Distribution::from_weights(w);
        double H = shannon_entropy(p);
        double L = average_codeword_length(huffman_code(p), p);
        REQUIRE(H <= L + 1e-9);
        REQUIRE(L < H + 1);
    }
}

TEST_CASE("typical sets and the AEP bound") {
    // all strings are equiprobable under the fair coin: the set is everything
    auto fair = typical_set(Distribution::from_weights({0.5, 0.5}), 12, 0.1);
    CHECK(fair.member_count == BigInt(1) << 12);
    CHECK(fair.total_probability == doctest::Approx(1.0));
    CHECK(fair.cardinality_bound_holds);

    auto r = typical_set(Distribution::from_weights({0.7, 0.3}), 20, 0.1);
    CHECK(r.cardinality_bound_holds);
    CHECK(r.total_probability > 0.5);
    CHECK(r.total_probability < 1.0);

    auto vac = typical_set(Distribution::from_weights({0.7, 0.3}), 20, 2.0);
    CHECK(vac.total_probability == doctest::Approx(1.0));

    CHECK_THROWS_AS(typical_set(Distribution::from_weights({0.7, 0.3}), 30, 0.1),
                    std::invalid_argument);
}

TEST_CASE("sanov decay approaches the KL rate") {
    auto mu = Distribution::from_exact({Rat(1, 2), Rat(1, 2)});
    auto q34 = Distribution::from_exact({Rat(1, 4), Rat(3, 4)});

    auto same = sanov_decay(mu, mu, {8, 16, 24});
    for (const auto& row : same) {
        REQUIRE(row.realizable);
        REQUIRE(row.rate < 0.35);  // tends to KL = 0
    }

    auto rows = sanov_decay(mu, q34, {20});
    REQUIRE(rows[0].realizable);
    // exact binomial value: C(20,15)/2^20
    CHECK(rows[0].exact_probability == Rat(binomial(20, 15), pow2(20)));
    double kl = kl_divergence(q34, mu);
    CHECK(kl == doctest::Approx(0.18872).epsilon(1e-3));
    CHECK(std::fabs(rows[0].rate - kl) < 0.15);

    auto mu9 = Distribution::from_exact({Rat(9, 10), Rat(1, 10)});
    auto qhalf = Distribution::from_exact({Rat(1, 2), Rat(1, 2)});
    auto rows2 = sanov_decay(mu9, qhalf, {20});
    REQUIRE(rows2[0].realizable);
    CHECK(std::fabs(rows2[0].rate - kl_divergence(qhalf, mu9)) < 0.15);

    // unrealizable type is skipped with a note rather than an error
    auto r3 = sanov_decay(mu, q34, {10});
    CHECK_FALSE(r3[0].realizable);
}
