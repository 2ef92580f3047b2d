#pragma once

#include "rwb/bits.hpp"
#include "rwb/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwb {

inline double log2_safe(double x) { return std::log2(x); }

// x*log2(x) with the continuity convention 0*log 0 = 0
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Finite probability vector with exact-or-float duality: entropy arithmetic
// runs on doubles, measure identities on the exact weights when present.
struct Distribution {
    std::vector<double> w;
    std::vector<std::string> labels;         // empty -> implicit "0","1",...
    std::optional<std::vector<Rat>> exact;   // same length as w when present

    std::size_t size() const { return w.size(); }

    static Distribution from_weights(std::vector<double> weights) {
        Distribution d;
        d.w = std::move(weights);
        d.validate();
        return d;
    }
    static Distribution from_exact(std::vector<Rat> weights) {
        Distribution d;
        d.exact = weights;
        d.w.reserve(weights.size());
        for (const Rat& r : weights) d.w.push_back(to_double(r));
        d.validate();
        return d;
    }
    static Distribution uniform(std::size_t n) {
        return from_exact(std::vector<Rat>(n, Rat(1, BigInt(n))));
    }
    static Distribution bernoulli(double p1) {  // weights (P(0), P(1)) = (1-p1, p1)
        return from_weights({1.0 - p1, p1});
    }

    std::string label(std::size_t i) const {
        return i < labels.size() ? labels[i] : std::to_string(i);
    }

    void validate() const {
        double s = 0.0;
        for (double x : w) {
            if (!(x >= 0.0)) throw std::invalid_argument("Distribution: negative weight");
            s += x;
        }
        if (std::fabs(s - 1.0) > 1e-12) throw std::invalid_argument("Distribution: weights must sum to 1");
        if (exact) {
            Rat es = 0;
            for (const Rat& r : *exact) es += r;
            if (es != 1) throw std::invalid_argument("Distribution: exact weights must sum to 1");
        }
    }
};

inline double shannon_entropy(const Distribution& p) {
    double h = 0.0;
    for (double x : p.w) h -= xlog2x(x);
    return h < 0.0 ? 0.0 : h;
}

// KL(P||Q) in bits; +infinity when absolute continuity fails
inline double kl_divergence(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: mismatched supports");
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.label(i) != q.label(i)) throw std::invalid_argument("kl_divergence: mismatched labels");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.w[i] == 0.0) continue;
        if (q.w[i] == 0.0) return std::numeric_limits<double>::infinity();
        s += p.w[i] * std::log2(p.w[i] / q.w[i]);
    }
    return s < 0.0 ? 0.0 : s;
}

struct JointEntropySuite {
    double h_a = 0, h_b = 0, h_ab = 0, h_b_given_a = 0, mutual = 0;
};

// joint is a distribution over an (na x nb) product, row-major
inline JointEntropySuite joint_entropy_suite(const std::vector<std::vector<double>>& joint) {
    std::size_t na = joint.size();
    if (na == 0) throw std::invalid_argument("joint_entropy_suite: empty joint");
    std::size_t nb = joint[0].size();
    double total = 0.0;
    std::vector<double> pa(na, 0.0), pb(nb, 0.0);
    double h_ab = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
        if (joint[a].size() != nb) throw std::invalid_argument("joint_entropy_suite: ragged joint");
        for (std::size_t b = 0; b < nb; ++b) {
            double x = joint[a][b];
            if (!(x >= 0.0)) throw std::invalid_argument("joint_entropy_suite: negative weight");
            total += x;
            pa[a] += x;
            pb[b] += x;
            h_ab -= xlog2x(x);
        }
    }
    if (std::fabs(total - 1.0) > 1e-12) throw std::invalid_argument("joint_entropy_suite: mass != 1");
    JointEntropySuite r;
    r.h_ab = h_ab;
    for (double x : pa) r.h_a -= xlog2x(x);
    for (double x : pb) r.h_b -= xlog2x(x);
    r.h_b_given_a = r.h_ab - r.h_a;
    r.mutual = r.h_a + r.h_b - r.h_ab;
    return r;
}

// --- prefix codes -----------------------------------------------------------

struct PrefixCode {
    std::vector<BitString> codewords;  // codewords[i] encodes source symbol i

    bool is_prefix_free() const {
        for (std::size_t i = 0; i < codewords.size(); ++i)
            for (std::size_t j = 0; j < codewords.size(); ++j)
                if (i != j && codewords[i].is_prefix_of(codewords[j])) return false;
        return true;
    }
    Rat kraft_sum() const {
        Rat s = 0;
        for (const auto& c : codewords) s += pow2_inv(unsigned(c.size()));
        return s;
    }
};

inline Rat kraft_sum(const std::vector<unsigned>& lengths) {
    Rat s = 0;
    for (unsigned l : lengths) s += pow2_inv(l);
    return s;
}

struct InfeasibleLengths : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical construction: symbols sorted by (length, original index), each
// assigned the lexicographically first available codeword.
inline PrefixCode build_prefix_code(const std::vector<unsigned>& lengths) {
    if (kraft_sum(lengths) > 1) throw InfeasibleLengths("build_prefix_code: Kraft sum exceeds 1");
    std::vector<std::size_t> order(lengths.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lengths[a] < lengths[b]; });
    PrefixCode code;
    code.codewords.resize(lengths.size());
    BigInt next = 0;     // canonical code value at current length
    unsigned cur = 0;    // current length
    for (std::size_t k = 0; k < order.size(); ++k) {
        unsigned l = lengths[order[k]];
        next <<= (l - cur);
        cur = l;
        std::vector<uint8_t> v(l);
        for (unsigned i = 0; i < l; ++i)
            v[l - 1 - i] = uint8_t(((next >> i) & 1) != 0);
        code.codewords[order[k]] = BitString(std::move(v));
        ++next;
    }
    return code;
}

inline double average_codeword_length(const PrefixCode& code, const Distribution& p) {
    if (code.codewords.size() < p.size())
        throw std::invalid_argument("average_codeword_length: code does not cover support");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p.w[i] * double(code.codewords[i].size());
    return s;
}

// Huffman with deterministic tie-breaking: queue ordered by
// (weight, smallest source index in subtree).
inline std::vector<unsigned> huffman_lengths(const Distribution& p) {
    std::size_t n = p.size();
    if (n == 0) throw std::invalid_argument("huffman: empty support");
    if (n == 1) return {1};  // a single symbol still needs one bit to terminate
    struct Node {
        double w;
        std::size_t min_idx;
        int left, right;  // -1 for leaves
        std::size_t leaf;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n);
    using QE = std::pair<std::pair<double, std::size_t>, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> q;
    for (std::size_t i = 0; i < n; ++i) {
        nodes.push_back({p.w[i], i, -1, -1, i});
        q.push({{p.w[i], i}, int(nodes.size() - 1)});
    }
    while (q.size() > 1) {
        auto a = q.top(); q.pop();
        auto b = q.top(); q.pop();
        Node m{a.first.first + b.first.first, std::min(a.first.second, b.first.second),
               a.second, b.second, 0};
        nodes.push_back(m);
        q.push({{m.w, m.min_idx}, int(nodes.size() - 1)});
    }
    std::vector<unsigned> lengths(n, 0);
    struct Item { int node; unsigned depth; };
    std::vector<Item> stack{{q.top().second, 0}};
    while (!stack.empty()) {
        auto [id, d] = stack.back();
        stack.pop_back();
        const Node& nd = nodes[std::size_t(id)];
        if (nd.left < 0) {
            lengths[nd.leaf] = d;
        } else {
            stack.push_back({nd.left, d + 1});
            stack.push_back({nd.right, d + 1});
        }
    }
    return lengths;
}

inline PrefixCode huffman_code(const Distribution& p) {
    return build_prefix_code(huffman_lengths(p));
}

// --- typical sets and Sanov decay -------------------------------------------

struct TypicalSetReport {
    BigInt member_count;
    double total_probability = 0.0;
    double log2_cardinality_bound = 0.0;  // n(H+eps)
    bool cardinality_bound_holds = false;
    double entropy = 0.0;
};

// Exhaustive over Sigma^n for a binary P, grouped by type class so the
// enumeration stays exact.
inline TypicalSetReport typical_set(const Distribution& p, unsigned n, double eps) {
    if (p.size() != 2) throw std::invalid_argument("typical_set: binary distributions only");
    if (n == 0 || n > 24) throw std::invalid_argument("typical_set: n must be in [1,24]");
    if (!(eps > 0)) throw std::invalid_argument("typical_set: eps must be positive");
    double h = shannon_entropy(p);
    double lo = -double(n) * (h + eps), hi = -double(n) * (h - eps);
    TypicalSetReport r;
    r.entropy = h;
    r.member_count = 0;
    r.log2_cardinality_bound = double(n) * (h + eps);
    double mass = 0.0;
    double l0 = p.w[0] > 0 ? std::log2(p.w[0]) : -std::numeric_limits<double>::infinity();
    double l1 = p.w[1] > 0 ? std::log2(p.w[1]) : -std::numeric_limits<double>::infinity();
    for (unsigned k = 0; k <= n; ++k) {  // k ones
        double logp = double(n - k) * l0 + double(k) * l1;
        if (logp > lo && logp < hi) {
            BigInt c = binomial(n, k);
            r.member_count += c;
            mass += c.convert_to<double>() * std::exp2(logp);
        }
    }
    r.total_probability = mass;
    double log2_count = r.member_count == 0
                            ? -std::numeric_limits<double>::infinity()
                            : std::log2(r.member_count.convert_to<double>());
    r.cardinality_bound_holds = log2_count <= r.log2_cardinality_bound + 1e-12;
    return r;
}

struct SanovRow {
    unsigned n;
    bool realizable;
    Rat exact_probability;  // P_mu(type == Q), exact when mu is exact
    double rate;            // -(1/n) log2 P
};

// Empirical decay of P_mu(type = Q) toward KL(Q||mu); mu and Q binary.
inline std::vector<SanovRow> sanov_decay(const Distribution& mu, const Distribution& q,
                                         const std::vector<unsigned>& ns) {
    if (mu.size() != 2 || q.size() != 2) throw std::invalid_argument("sanov_decay: binary only");
    std::vector<SanovRow> rows;
    Rat q1 = q.exact ? (*q.exact)[1] : Rat(BigInt(std::llround(q.w[1] * 1e6)), 1000000);
    Rat mu0 = mu.exact ? (*mu.exact)[0] : Rat(BigInt(std::llround(mu.w[0] * 1e6)), 1000000);
    Rat mu1 = mu.exact ? (*mu.exact)[1] : Rat(BigInt(std::llround(mu.w[1] * 1e6)), 1000000);
    for (unsigned n : ns) {
        SanovRow row{n, false, Rat(0), 0.0};
        Rat kn = q1 * n;
        if (denominator(kn) == 1 && kn >= 0 && kn <= n) {
            unsigned k = numerator(kn).convert_to<unsigned>();
            row.realizable = true;
            row.exact_probability =
                Rat(binomial(n, k)) * rat_pow(mu1, k) * rat_pow(mu0, n - k);
            row.rate = -std::log2(to_double(row.exact_probability)) / double(n);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rwb
