#pragma once

#include "rwb/bits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace rwb {

// Elias gamma code length of a positive integer
inline uint64_t elias_gamma_length(uint64_t m) {
    unsigned fl = 0;
    while (m >> (fl + 1)) ++fl;
    return 2 * uint64_t(fl) + 1;
}

// LZ78 incremental dictionary parse. Phrase t spends ceil(log2 t) bits on the
// dictionary index (t-1 prior phrases plus the empty root) and one literal
// bit; the final phrase may be index-only. A gamma header carries |x|.
inline uint64_t lz78_code_length(const BitString& x) {
    uint64_t bits = elias_gamma_length(uint64_t(x.size()) + 1);
    // trie over phrases: node 0 is the root
    std::vector<std::array<int32_t, 2>> child{{-1, -1}};
    int32_t cur = 0;
    uint64_t phrase = 1;
    auto index_width = [](uint64_t t) {
        unsigned w = 0;
        while ((uint64_t(1) << w) < t) ++w;
        return uint64_t(w);  // ceil(log2 t)
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        int32_t nxt = child[std::size_t(cur)][x[i]];
        if (nxt >= 0) {
            cur = nxt;
            continue;
        }
        bits += index_width(phrase) + 1;  // index + literal
        child[std::size_t(cur)][x[i]] = int32_t(child.size());
        child.push_back({-1, -1});
        cur = 0;
        ++phrase;
    }
    if (cur != 0) bits += index_width(phrase);  // trailing partial phrase
    return bits;
}

// Krichevsky-Trofimov sequential codelength: ceil(-log2 q(x)) for the KT
// mixture plus the same gamma header.
inline uint64_t kt_code_length(const BitString& x) {
    double nll = 0.0;  // -log2 q(x)
    uint64_t c0 = 0, c1 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        uint64_t c = x[i] ? c1 : c0;
        nll -= std::log2((double(c) + 0.5) / (double(c0 + c1) + 1.0));
        (x[i] ? c1 : c0) += 1;
    }
    return elias_gamma_length(uint64_t(x.size()) + 1) + uint64_t(std::ceil(nll - 1e-9));
}

// Built-in complexity upper bound: one flag bit selects the better of the two
// prefix-free codes, so the Kraft sum over the combined code stays <= 1.
inline uint64_t khat(const BitString& x) {
    return 1 + std::min(lz78_code_length(x), kt_code_length(x));
}

struct DeficiencyReport {
    uint64_t length = 0;
    uint64_t khat_bits = 0;
    int64_t deficiency = 0;  // |x| - khat(x); may be negative
};

inline DeficiencyReport complexity_deficiency(const BitString& x) {
    DeficiencyReport r;
    r.length = x.size();
    r.khat_bits = khat(x);
    r.deficiency = int64_t(r.length) - int64_t(r.khat_bits);
    return r;
}

}  // namespace rwb
