#pragma once

#include "rwb/bits.hpp"
#include "rwb/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rwb {

// A minimal self-delimiting register machine. The program is the bit string
// itself, decoded on demand as 2-bit opcodes:
//
//   00  INC    A <- A + 1
//   01  READ   consume one program bit b, A <- 2A + b
//   10  LOOP   if A > 0 { A <- A - 1; jump to bit 0 }
//   11  HALT   halt and emit string(A)
//
// A string p is a program iff the machine halts having consumed exactly the
// bits of p. Halting is decided by consumed bits alone, so the halting set is
// prefix-free by construction and the Kraft sum of program lengths is <= 1.
class ToyChaitinMachine {
  public:
    enum class Kind {
        demo,          // the interpreter above
        halt_on_one,   // reads one bit: 1 halts, 0 diverges
    };

    enum class Status {
        halted,        // halted; `consumed` bits were read
        needs_input,   // requested a bit past the end of the given string
        out_of_steps,  // step budget exhausted
    };

    struct RunResult {
        Status status;
        std::size_t consumed = 0;
        BigInt accumulator = 0;
        std::optional<BitString> output;
    };

    explicit ToyChaitinMachine(Kind kind = Kind::demo) : kind_(kind) {}
    Kind kind() const { return kind_; }

    RunResult run(const BitString& program, uint64_t max_steps) const {
        if (kind_ == Kind::halt_on_one) return run_halt_on_one(program, max_steps);
        return run_demo(program, max_steps);
    }

    bool is_program(const BitString& p, uint64_t max_steps) const {
        RunResult r = run(p, max_steps);
        return r.status == Status::halted && r.consumed == p.size();
    }

  private:
    RunResult run_halt_on_one(const BitString& p, uint64_t max_steps) const {
        if (p.size() < 1) return {Status::needs_input, 0, 0, std::nullopt};
        if (p[0] == 1) return {Status::halted, 1, 0, BitString()};
        // consumed the 0, then spins
        (void)max_steps;
        return {Status::out_of_steps, 1, 0, std::nullopt};
    }

    RunResult run_demo(const BitString& p, uint64_t max_steps) const {
        std::size_t pc = 0;       // bit index into the consumed buffer
        std::size_t hi = 0;       // number of bits consumed so far
        BigInt acc = 0;
        auto fetch = [&](std::size_t i, uint8_t& out) -> bool {
            if (i >= p.size()) return false;
            if (i >= hi) hi = i + 1;
            out = p[i];
            return true;
        };
        for (uint64_t steps = 0; steps < max_steps; ++steps) {
            uint8_t b0, b1;
            if (!fetch(pc, b0) || !fetch(pc + 1, b1))
                return {Status::needs_input, hi, acc, std::nullopt};
            pc += 2;
            unsigned op = unsigned(b0) << 1 | b1;
            switch (op) {
                case 0: acc += 1; break;
                case 1: {
                    uint8_t b;
                    if (!fetch(pc, b)) return {Status::needs_input, hi, acc, std::nullopt};
                    ++pc;
                    acc = acc * 2 + b;
                    break;
                }
                case 2:
                    if (acc > 0) {
                        acc -= 1;
                        pc = 0;
                    }
                    break;
                case 3: {
                    BitString out;
                    if (acc <= BigInt(1) << 62) out = string_of_index(acc.convert_to<uint64_t>());
                    return {Status::halted, hi, acc, out};
                }
            }
        }
        return {Status::out_of_steps, hi, acc, std::nullopt};
    }

    Kind kind_;
};

// Dovetailed enumeration of the prefix tree: sum of 2^-|p| over programs of
// length <= max_len halting within max_steps. Monotone in both arguments and
// bounded by 1 via Kraft.
inline Rat omega_lower_bound(const ToyChaitinMachine& m, unsigned max_len, uint64_t max_steps) {
    if (max_len > 24) throw std::invalid_argument("omega_lower_bound: max_len too large");
    Rat omega = 0;
    std::vector<BitString> frontier{BitString()};
    while (!frontier.empty()) {
        BitString p = std::move(frontier.back());
        frontier.pop_back();
        auto r = m.run(p, max_steps);
        switch (r.status) {
            case ToyChaitinMachine::Status::halted:
                if (r.consumed == p.size()) omega += pow2_inv(unsigned(p.size()));
                // a halt with unread bits never happens on the frontier walk:
                // we only extend strings whose run requested more input
                break;
            case ToyChaitinMachine::Status::needs_input:
                if (p.size() < max_len) {
                    BitString p0 = p, p1 = p;
                    p0.push_back(0);
                    p1.push_back(1);
                    frontier.push_back(std::move(p0));
                    frontier.push_back(std::move(p1));
                }
                break;
            case ToyChaitinMachine::Status::out_of_steps:
                // the run never requested bit |p|, so every extension runs
                // identically and stalls too
                break;
        }
    }
    return omega;
}

}  // namespace rwb
