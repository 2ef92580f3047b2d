#include "doctest.h"

#include "rwb/chaitin.hpp"

using namespace rwb;

TEST_CASE("halt-on-one machine has omega exactly 1/2") {
    ToyChaitinMachine m(ToyChaitinMachine::Kind::halt_on_one);
    CHECK(m.is_program(BitString("1"), 10));
    CHECK_FALSE(m.is_program(BitString("0"), 1000));
    CHECK_FALSE(m.is_program(BitString("11"), 10));  // halts before reading the second bit
    CHECK(omega_lower_bound(m, 1, 10) == Rat(1, 2));
    CHECK(omega_lower_bound(m, 8, 1000) == Rat(1, 2));
}

TEST_CASE("demo machine basics") {
    ToyChaitinMachine m;
    // 11 = HALT immediately, output string(0) = empty
    auto r = m.run(BitString("11"), 100);
    CHECK(r.status == ToyChaitinMachine::Status::halted);
    CHECK(r.consumed == 2);
    CHECK(m.is_program(BitString("11"), 100));
    // 00 10 = INC, LOOP -> spins forever
    auto d = m.run(BitString("0010"), 100000);
    CHECK(d.status == ToyChaitinMachine::Status::out_of_steps);
    // 00 00 11 = INC INC HALT, output string(2) = "1"
    auto h = m.run(BitString("000011"), 100);
    REQUIRE(h.status == ToyChaitinMachine::Status::halted);
    CHECK(h.accumulator == 2);
    REQUIRE(h.output.has_value());
    CHECK(h.output->str() == "1");
    // 01 b 11 = READ then HALT
    CHECK(m.is_program(BitString("01011"), 100));
    CHECK(m.is_program(BitString("01111"), 100));
    CHECK_FALSE(m.is_program(BitString("0111"), 100));  // needs one more bit
}

TEST_CASE("halting set is prefix-free on the demo machine") {
    ToyChaitinMachine m;
    std::vector<BitString> programs;
    for (unsigned len = 1; len <= 12; ++len) {
        for (uint64_t w = 0; w < (uint64_t(1) << len); ++w) {
            std::vector<uint8_t> bits(len);
            for (unsigned i = 0; i < len; ++i) bits[i] = uint8_t((w >> i) & 1);
            BitString p(bits);
            if (m.is_program(p, 2000)) programs.push_back(p);
        }
    }
    REQUIRE(programs.size() > 4);
    for (std::size_t i = 0; i < programs.size(); ++i)
        for (std::size_t j = 0; j < programs.size(); ++j)
            if (i != j) REQUIRE_FALSE(programs[i].is_prefix_of(programs[j]));
    // Kraft over the halting set
    Rat kraft = 0;
    for (const auto& p : programs) kraft += pow2_inv(unsigned(p.size()));
    CHECK(kraft <= 1);
}

TEST_CASE("demo machine omega regression constants") {
    // frozen after the first dovetailed enumeration run
    ToyChaitinMachine m;
    CHECK(omega_lower_bound(m, 12, 10000) == Rat(1339, 2048));
    CHECK(omega_lower_bound(m, 16, 10000) == Rat(44819, 65536));
}

TEST_CASE("omega lower bound is monotone and capped by 1") {
    ToyChaitinMachine m;
    CHECK(omega_lower_bound(m, 0, 0) == Rat(0));
    Rat prev = 0;
    for (unsigned len : {2u, 4u, 6u, 8u, 10u, 12u}) {
        Rat v = omega_lower_bound(m, len, 10000);
        REQUIRE(v >= prev);
        REQUIRE(v <= 1);
        prev = v;
    }
    Rat s1 = omega_lower_bound(m, 10, 20);
    Rat s2 = omega_lower_bound(m, 10, 200);
    Rat s3 = omega_lower_bound(m, 10, 20000);
    CHECK(s1 <= s2);
    CHECK(s2 <= s3);
}
