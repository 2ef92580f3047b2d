#pragma once

#include "rwb/bits.hpp"
#include "rwb/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rwb {

struct CycleInfo {
    uint64_t tail;    // steps before the orbit enters its cycle
    uint64_t period;  // cycle length
};

namespace detail {
template <typename State, typename Step>
CycleInfo find_cycle(State s0, Step step, uint64_t limit) {
    std::map<State, uint64_t> seen;
    State s = s0;
    uint64_t i = 0;
    while (i <= limit) {
        auto it = seen.find(s);
        if (it != seen.end()) return {it->second, i - it->second};
        seen.emplace(s, i);
        s = step(s);
        ++i;
    }
    return {0, 0};  // not detected within limit
}
}  // namespace detail

// --- von Neumann middle square ------------------------------------------------

// x_{i+1} = middle d digits of the zero-padded square of x_i. The original
// description fixes d = 10; the digit width is a parameter here.
inline std::vector<BigInt> middle_square(const BigInt& seed, std::size_t count, unsigned d) {
    if (d == 0 || d % 2 != 0) throw std::invalid_argument("middle_square: d must be even");
    BigInt mod = 1;
    for (unsigned i = 0; i < d; ++i) mod *= 10;
    BigInt half = 1;
    for (unsigned i = 0; i < d / 2; ++i) half *= 10;
    if (seed < 0 || seed >= mod) throw std::invalid_argument("middle_square: seed out of range");
    std::vector<BigInt> out;
    out.reserve(count);
    BigInt x = seed;
    for (std::size_t i = 0; i < count; ++i) {
        x = (x * x / half) % mod;
        out.push_back(x);
    }
    return out;
}

inline CycleInfo middle_square_cycle(const BigInt& seed, unsigned d, uint64_t limit = 1 << 20) {
    BigInt mod = 1;
    for (unsigned i = 0; i < d; ++i) mod *= 10;
    BigInt half = 1;
    for (unsigned i = 0; i < d / 2; ++i) half *= 10;
    return detail::find_cycle<BigInt>(seed, [&](const BigInt& x) { return (x * x / half) % mod; },
                                      limit);
}

// --- linear congruential ------------------------------------------------------

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t n) {
    return uint64_t((unsigned __int128)(a) * b % n);
}

struct LcgSpec {
    uint64_t a, b, n;
};

inline std::vector<uint64_t> lcg(const LcgSpec& g, uint64_t seed, std::size_t count) {
    if (g.n == 0) throw std::invalid_argument("lcg: modulus must be positive");
    if (seed >= g.n || g.a >= g.n || g.b >= g.n)
        throw std::invalid_argument("lcg: parameters must lie below the modulus");
    std::vector<uint64_t> out;
    out.reserve(count);
    uint64_t x = seed;
    for (std::size_t i = 0; i < count; ++i) {
        x = (mulmod_u64(g.a, x, g.n) + g.b) % g.n;
        out.push_back(x);
    }
    return out;
}

inline LcgSpec randu() { return {65539, 0, uint64_t(1) << 31}; }
inline LcgSpec minimal_standard() { return {16807, 0, (uint64_t(1) << 31) - 1}; }

// high-order bit extraction: floor(log2 n) - 1 bits per output (the low bits
// of power-of-two-modulus generators are structurally weak)
inline BitString lcg_bits(const LcgSpec& g, uint64_t seed, std::size_t bit_count) {
    unsigned width = 0;
    while ((uint64_t(1) << (width + 1)) <= g.n) ++width;  // floor(log2 n)
    if (width < 2) throw std::invalid_argument("lcg_bits: modulus too small");
    unsigned per = width - 1;
    std::vector<uint8_t> bits;
    bits.reserve(bit_count);
    uint64_t x = seed;
    while (bits.size() < bit_count) {
        x = (mulmod_u64(g.a, x, g.n) + g.b) % g.n;
        for (unsigned i = 0; i < per && bits.size() < bit_count; ++i)
            bits.push_back(uint8_t((x >> (width - 1 - i)) & 1u));
    }
    return BitString(std::move(bits));
}

inline std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n) {
    std::vector<std::pair<uint64_t, unsigned>> f;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Greenberger-Hull-Dobell: period equals the modulus iff gcd(b,n)=1, a = 1
// mod p for every prime p | n, and a = 1 mod 4 when 4 | n.
inline bool ghd_full_period(uint64_t a, uint64_t b, uint64_t n) {
    if (n < 2) throw std::invalid_argument("ghd_full_period: n must be >= 2");
    a %= n;
    b %= n;
    if (gcd_u64(b, n) != 1) return false;
    for (auto [p, e] : factorize(n))
        if (a % p != 1 % p) return false;
    if (n % 4 == 0 && a % 4 != 1) return false;
    return true;
}

// direct measurement: the sequence has period n iff the orbit of any state is
// a single cycle through all n residues
inline bool lcg_full_period_simulated(uint64_t a, uint64_t b, uint64_t n) {
    std::vector<bool> seen(n, false);
    uint64_t x = 0;
    for (uint64_t i = 0; i < n; ++i) {
        if (seen[x]) return false;
        seen[x] = true;
        x = (mulmod_u64(a % n, x, n) + b % n) % n;
    }
    return x == 0;  // back to the start after exactly n steps
}

// --- lagged XOR shift register -------------------------------------------------

struct DegenerateSeed : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// x_j = x_{j-p} XOR x_{j-q}; the all-zero seed is a fixed point and rejected
inline BitString lagged_xor(unsigned p, unsigned q, const BitString& seed_bits,
                            std::size_t count) {
    if (!(0 < q && q < p)) throw std::invalid_argument("lagged_xor: need 0 < q < p");
    if (seed_bits.size() != p) throw std::invalid_argument("lagged_xor: seed must have length p");
    if (count_occurrences(seed_bits, 1) == 0) throw DegenerateSeed("lagged_xor: all-zero seed");
    std::vector<uint8_t> x = seed_bits.raw();
    x.reserve(p + count);
    for (std::size_t j = p; j < p + count; ++j)
        x.push_back(uint8_t(x[j - p] ^ x[j - q]));
    return BitString(std::vector<uint8_t>(x.begin() + p, x.end()));
}

// --- rule 30 ---------------------------------------------------------------------

// center-column bits of the rule 30 automaton on a cyclic row; the emitted
// sequence starts with the seed row's center cell
inline BitString rule30(unsigned width, std::size_t steps, const BitString& seed_row) {
    if (width < 3 || width % 2 == 0) throw std::invalid_argument("rule30: width must be odd >= 3");
    if (seed_row.size() != width) throw std::invalid_argument("rule30: seed row width mismatch");
    std::vector<uint8_t> row = seed_row.raw(), next(width);
    std::vector<uint8_t> out;
    out.reserve(steps);
    unsigned center = width / 2;
    for (std::size_t s = 0; s < steps; ++s) {
        out.push_back(row[center]);
        for (unsigned i = 0; i < width; ++i) {
            uint8_t l = row[(i + width - 1) % width], c = row[i], r = row[(i + 1) % width];
            next[i] = uint8_t(l ^ (c | r));  // rule 30
        }
        row.swap(next);
    }
    return BitString(std::move(out));
}

inline BitString rule30_single_one(unsigned width, std::size_t steps) {
    BitString row = BitString::zeros(width);
    std::vector<uint8_t> v = row.raw();
    v[width / 2] = 1;
    return rule30(width, steps, BitString(std::move(v)));
}

}  // namespace rwb
