#pragma once

#include "rwb/bits.hpp"
#include "rwb/coding.hpp"
#include "rwb/compressor.hpp"
#include "rwb/rng.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rwb {

// Binary Bernoulli or Markov shift; a sample trajectory is the symbolic orbit
// of the stationary process.
struct ShiftSpec {
    enum class Kind { bernoulli, markov };
    Kind kind = Kind::bernoulli;
    std::array<double, 2> p{0.5, 0.5};                      // bernoulli: (P(0), P(1))
    std::array<double, 2> e{0.5, 0.5};                      // markov initial (stationary)
    std::array<std::array<double, 2>, 2> P{{{0.5, 0.5}, {0.5, 0.5}}};  // markov rows

    static ShiftSpec bernoulli_shift(double p1) {
        ShiftSpec s;
        s.kind = Kind::bernoulli;
        s.p = {1.0 - p1, p1};
        s.validate();
        return s;
    }
    static ShiftSpec markov_shift(std::array<double, 2> e, std::array<std::array<double, 2>, 2> P) {
        ShiftSpec s;
        s.kind = Kind::markov;
        s.e = e;
        s.P = P;
        s.validate();
        return s;
    }

    void validate() const {
        auto stochastic = [](const std::array<double, 2>& v) {
            return v[0] >= 0 && v[1] >= 0 && std::fabs(v[0] + v[1] - 1.0) <= 1e-10;
        };
        if (kind == Kind::bernoulli) {
            if (!stochastic(p)) throw std::invalid_argument("ShiftSpec: p is not stochastic");
            return;
        }
        if (!stochastic(e) || !stochastic(P[0]) || !stochastic(P[1]))
            throw std::invalid_argument("ShiftSpec: markov data not stochastic");
        for (int j = 0; j < 2; ++j) {
            double ej = e[0] * P[0][j] + e[1] * P[1][j];
            if (std::fabs(ej - e[j]) > 1e-10)
                throw std::invalid_argument("ShiftSpec: e is not stationary for P");
        }
    }
};

inline BitString sample_trajectory(const ShiftSpec& shift, std::size_t n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_trajectory: n must be >= 1");
    shift.validate();
    CounterRng rng(seed, 0x5D);
    std::vector<uint8_t> bits(n);
    if (shift.kind == ShiftSpec::Kind::bernoulli) {
        for (std::size_t i = 0; i < n; ++i) bits[i] = rng.uniform() < shift.p[1] ? 1 : 0;
    } else {
        uint8_t state = rng.uniform() < shift.e[1] ? 1 : 0;
        bits[0] = state;
        for (std::size_t i = 1; i < n; ++i) {
            state = rng.uniform() < shift.P[state][1] ? 1 : 0;
            bits[i] = state;
        }
    }
    return BitString(std::move(bits));
}

// closed forms for the generating partition: H(p) for Bernoulli and the usual
// conditional-entropy expression for Markov
inline double exact_entropy_rate(const ShiftSpec& shift) {
    shift.validate();
    if (shift.kind == ShiftSpec::Kind::bernoulli)
        return -xlog2x(shift.p[0]) - xlog2x(shift.p[1]);
    double h = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) h -= shift.e[i] * xlog2x(shift.P[i][j]);
    return h < 0 ? 0 : h;
}

// plug-in block entropy from overlapping k-blocks, reported per symbol
inline double block_entropy_estimate(const BitString& x, unsigned k) {
    if (k == 0) throw std::invalid_argument("block_entropy_estimate: k must be >= 1");
    if (x.size() < std::size_t(64) << k)
        throw std::invalid_argument("block_entropy_estimate: need at least 64*2^k bits");
    std::size_t windows = x.size() - k + 1;
    std::vector<uint64_t> count(std::size_t(1) << k, 0);
    uint64_t w = 0, mask = (uint64_t(1) << k) - 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        w = ((w << 1) | x[i]) & mask;
        if (i + 1 >= k) ++count[w];
    }
    double h = 0;
    for (uint64_t c : count)
        if (c) h -= xlog2x(double(c) / double(windows));
    return h / double(k);
}

// K(x)/|x| through the built-in compressor; estimates the entropy rate of the
// generating shift at desk scale (Brudno's identification)
inline double brudno_rate(const BitString& x) {
    if (x.size() < (std::size_t(1) << 12))
        throw std::invalid_argument("brudno_rate: need at least 2^12 bits");
    return double(khat(x)) / double(x.size());
}

// Fixed-width binary coding of 0-based atom labels. The variable-length
// quasi-lexicographic concatenation is not uniquely decodable, so the widths
// are padded to ceil(log2 atom_count); for two atoms this is the identity
// coding 0 -> "0", 1 -> "1".
inline BitString symbolic_translate(const std::vector<uint64_t>& labels, uint64_t atom_count) {
    if (atom_count < 1) throw std::invalid_argument("symbolic_translate: empty partition");
    unsigned width = 1;
    while ((uint64_t(1) << width) < atom_count) ++width;
    BitString out;
    for (uint64_t l : labels) {
        if (l >= atom_count) throw std::invalid_argument("symbolic_translate: label out of range");
        for (unsigned i = 0; i < width; ++i) out.push_back(uint8_t((l >> (width - 1 - i)) & 1));
    }
    return out;
}

}  // namespace rwb
