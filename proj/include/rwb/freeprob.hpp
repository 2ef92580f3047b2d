#pragma once

#include "rwb/cmatrix.hpp"
#include "rwb/rational.hpp"
#include "rwb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwb {

inline BigInt catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

// standard gaussian: (2m-1)!! at even order 2m, zero at odd orders
inline BigInt gaussian_moment(unsigned n) {
    if (n % 2) return 0;
    return double_factorial_odd(n / 2);
}

// standard semicircle on [-2,2]: Catalan(m) at even order 2m (the statement in
// the source indexes the Catalan number by the full order; the integration
// oracle fixes the half-order indexing)
inline BigInt semicircle_moment(unsigned n) {
    if (n % 2) return 0;
    return catalan(n / 2);
}

inline double semicircle_density(double x) {
    if (x < -2.0 || x > 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * M_PI);
}

inline double semicircle_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * M_PI) + std::asin(x / 2.0) / M_PI;
}

// --- pair partitions ----------------------------------------------------------------

namespace detail {

inline void enumerate_pairings(std::vector<int>& partner, unsigned size, BigInt& total,
                               BigInt& noncrossing) {
    int first = -1;
    for (unsigned i = 0; i < size; ++i)
        if (partner[i] < 0) {
            first = int(i);
            break;
        }
    if (first < 0) {
        total += 1;
        // crossing test: pairs (a<b), (c<d) cross iff a < c < b < d
        std::vector<std::pair<int, int>> pairs;
        for (unsigned i = 0; i < size; ++i)
            if (partner[i] > int(i)) pairs.push_back({int(i), partner[i]});
        for (std::size_t p = 0; p < pairs.size(); ++p)
            for (std::size_t q = p + 1; q < pairs.size(); ++q) {
                auto [a, b] = pairs[p];
                auto [c, d] = pairs[q];
                if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) return;
            }
        noncrossing += 1;
        return;
    }
    for (unsigned j = unsigned(first) + 1; j < size; ++j) {
        if (partner[j] >= 0) continue;
        partner[first] = int(j);
        partner[j] = first;
        enumerate_pairings(partner, size, total, noncrossing);
        partner[first] = -1;
        partner[j] = -1;
    }
}

}  // namespace detail

struct PairPartitionCounts {
    BigInt pairings;      // (2m-1)!!
    BigInt noncrossing;   // Catalan(m)
};

inline PairPartitionCounts count_pair_partitions(unsigned size) {
    if (size % 2) return {0, 0};
    if (size > 14) throw std::invalid_argument("count_pair_partitions: brute force capped at 14");
    std::vector<int> partner(size, -1);
    PairPartitionCounts c{0, 0};
    detail::enumerate_pairings(partner, size, c.pairings, c.noncrossing);
    return c;
}

// --- random walks ----------------------------------------------------------------------

// return probability to the origin of the simple walk on Z^D, exact
inline Rat zd_walk_return(unsigned dim, unsigned t) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("zd_walk_return: D must be 1..3");
    if (t > 24) throw std::invalid_argument("zd_walk_return: t capped at 24");
    int r = int(t);
    int side = 2 * r + 1;
    auto idx = [&](int x, int y, int z) {
        return std::size_t(((x + r) * side + (y + r)) * side + (z + r));
    };
    std::vector<BigInt> cur(std::size_t(side) * side * side, 0), nxt(cur.size());
    cur[idx(0, 0, 0)] = 1;
    const int dirs[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (unsigned step = 0; step < t; ++step) {
        std::fill(nxt.begin(), nxt.end(), BigInt(0));
        for (int x = -r; x <= r; ++x)
            for (int y = (dim >= 2 ? -r : 0); y <= (dim >= 2 ? r : 0); ++y)
                for (int z = (dim >= 3 ? -r : 0); z <= (dim >= 3 ? r : 0); ++z) {
                    const BigInt& c = cur[idx(x, y, z)];
                    if (c == 0) continue;
                    for (unsigned d = 0; d < 2 * dim; ++d) {
                        int nx = x + dirs[d][0], ny = y + dirs[d][1], nz = z + dirs[d][2];
                        if (std::abs(nx) > r || std::abs(ny) > r || std::abs(nz) > r) continue;
                        nxt[idx(nx, ny, nz)] += c;
                    }
                }
        cur.swap(nxt);
    }
    BigInt denom = 1;
    for (unsigned i = 0; i < t; ++i) denom *= 2 * dim;
    return Rat(cur[idx(0, 0, 0)], denom);
}

// return probability to the identity of the free-group walk: the distance from
// the identity is a walk on the 2D-regular tree (one backtracking edge beyond
// the root)
inline Rat free_walk_return(unsigned dim, unsigned t) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("free_walk_return: D must be 1..3");
    if (t > 14 && dim > 1) throw std::invalid_argument("free_walk_return: t capped at 14");
    if (t > 24) throw std::invalid_argument("free_walk_return: t capped at 24");
    std::vector<BigInt> cur(t + 2, 0), nxt(t + 2);
    cur[0] = 1;
    for (unsigned step = 0; step < t; ++step) {
        std::fill(nxt.begin(), nxt.end(), BigInt(0));
        for (unsigned l = 0; l <= t; ++l) {
            const BigInt& c = cur[l];
            if (c == 0) continue;
            if (l == 0) {
                nxt[1] += c * (2 * dim);
            } else {
                nxt[l - 1] += c;                    // backtrack
                if (l + 1 <= t + 1) nxt[l + 1] += c * (2 * dim - 1);
            }
        }
        cur.swap(nxt);
    }
    BigInt denom = 1;
    for (unsigned i = 0; i < t; ++i) denom *= 2 * dim;
    return Rat(cur[0], denom);
}

// --- Gaussian ensembles -----------------------------------------------------------------

// real symmetric, E(a_ij^2) = (1 + delta_ij)/(n+1); normalized so E tau(a^2) = 1
inline CMatrix goe_sample(std::size_t n, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("goe_sample: n must be >= 2");
    CounterRng rng(seed, 0x60E);
    CMatrix m(n);
    double off = std::sqrt(1.0 / double(n + 1));
    double diag = std::sqrt(2.0 / double(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Cx(diag * rng.gaussian(), 0);
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = off * rng.gaussian();
            m(i, j) = Cx(v, 0);
            m(j, i) = Cx(v, 0);
        }
    }
    return m;
}

// complex Hermitian, E(a_ii^2) = 1/n, E(Re a_ij^2) = E(Im a_ij^2) = 1/(2n)
inline CMatrix gue_sample(std::size_t n, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gue_sample: n must be >= 2");
    CounterRng rng(seed, 0x60F);
    CMatrix m(n);
    double diag = std::sqrt(1.0 / double(n));
    double off = std::sqrt(1.0 / double(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Cx(diag * rng.gaussian(), 0);
        for (std::size_t j = i + 1; j < n; ++j) {
            Cx v(off * rng.gaussian(), off * rng.gaussian());
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

// Kolmogorov-Smirnov distance of the pooled empirical spectrum to the standard
// semicircle law
inline double spectral_ks_to_semicircle(const std::vector<CMatrix>& samples) {
    if (samples.empty()) throw std::invalid_argument("spectral_ks_to_semicircle: no samples");
    std::vector<double> eig;
    for (const CMatrix& m : samples) {
        if (m.dim() != samples.front().dim())
            throw std::invalid_argument("spectral_ks_to_semicircle: mixed sizes");
        auto vals = hermitian_eigenvalues(m);
        eig.insert(eig.end(), vals.begin(), vals.end());
    }
    std::sort(eig.begin(), eig.end());
    double n = double(eig.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < eig.size(); ++i) {
        double f = semicircle_cdf(eig[i]);
        ks = std::max(ks, std::fabs(double(i + 1) / n - f));
        ks = std::max(ks, std::fabs(f - double(i) / n));
    }
    return ks;
}

// normalized trace of a word in two matrices, e.g. "abab"
inline double mixed_moment(const CMatrix& a, const CMatrix& b, const std::string& word) {
    CMatrix acc = CMatrix::identity(a.dim());
    for (char c : word) acc = acc * (c == 'a' ? a : b);
    return acc.trace().real() / double(a.dim());
}

// --- truncated full Fock space -----------------------------------------------------------

// Vacuum expectations of words in the semicircular family a_i = c(e_i) +
// c*(e_i) on the full Fock space over d letters, truncated at word length
// `depth`. Each factor changes word length by one, so depth >= pattern length
// keeps the computation exact.
class FockSpace {
  public:
    FockSpace(unsigned letters, unsigned depth) : letters_(letters), depth_(depth) {
        if (letters == 0) throw std::invalid_argument("FockSpace: need at least one letter");
    }

    using State = std::map<std::string, double>;  // word -> amplitude

    static State vacuum() { return {{"", 1.0}}; }

    // apply a_i = creation + annihilation of letter i
    State apply_semicircular(unsigned letter, const State& s) const {
        if (letter >= letters_) throw std::invalid_argument("FockSpace: letter out of range");
        char ch = char('a' + letter);
        State out;
        for (const auto& [word, amp] : s) {
            if (amp == 0.0) continue;
            if (word.size() + 1 > depth_)
                throw std::runtime_error("FockSpace: truncation depth exceeded");
            out[std::string(1, ch) + word] += amp;               // creation
            if (!word.empty() && word.front() == ch) out[word.substr(1)] += amp;  // annihilation
        }
        return out;
    }

    // apply s = (a_1 + ... + a_n)/sqrt(n)
    State apply_normalized_sum(const State& s) const {
        State out;
        double scale = 1.0 / std::sqrt(double(letters_));
        for (unsigned l = 0; l < letters_; ++l) {
            State part = apply_semicircular(l, s);
            for (const auto& [w, amp] : part) out[w] += scale * amp;
        }
        return out;
    }

    static double vacuum_amplitude(const State& s) {
        auto it = s.find("");
        return it == s.end() ? 0.0 : it->second;
    }

    unsigned letters() const { return letters_; }
    unsigned depth() const { return depth_; }

  private:
    unsigned letters_;
    unsigned depth_;
};

// <vac| w(a_0, a_1, ...) |vac> for a word like "abab" (rightmost acts first)
inline double fock_free_moment(unsigned letters, unsigned depth, const std::string& pattern) {
    if (depth < pattern.size()) throw std::invalid_argument("fock_free_moment: depth too small");
    unsigned needed = 0;
    for (char c : pattern) needed = std::max(needed, unsigned(c - 'a') + 1);
    if (needed > letters) throw std::invalid_argument("fock_free_moment: pattern needs more letters");
    FockSpace f(letters, depth);
    FockSpace::State s = FockSpace::vacuum();
    for (auto it = pattern.rbegin(); it != pattern.rend(); ++it)
        s = f.apply_semicircular(unsigned(*it - 'a'), s);
    return FockSpace::vacuum_amplitude(s);
}

// moments of (a_1 + ... + a_n)/sqrt(n) up to the given order: Catalan numbers
// at even orders for every n by semicircular stability
inline std::vector<double> free_clt_moments(unsigned summands, unsigned order, unsigned depth) {
    if (order > 8) throw std::invalid_argument("free_clt_moments: order capped at 8");
    if (depth < order) throw std::invalid_argument("free_clt_moments: depth too small");
    FockSpace f(summands, depth);
    std::vector<double> moments;
    FockSpace::State s = FockSpace::vacuum();
    for (unsigned k = 1; k <= order; ++k) {
        s = f.apply_normalized_sum(s);
        moments.push_back(FockSpace::vacuum_amplitude(s));
    }
    return moments;
}

}  // namespace rwb
