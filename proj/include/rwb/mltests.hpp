#pragma once

#include "rwb/bits.hpp"
#include "rwb/compressor.hpp"
#include "rwb/rational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwb {

// Finite Martin-Löf-style test: an integer statistic whose level sets are the
// critical regions V_m = { x : statistic(x) >= m }. The defining bound
// cardinality(Sigma^n ∩ V_m) < 2^(n-m) is certified exhaustively for n <= 16.
//
// Real-valued deviation statistics are turned into integer levels through
// per-(n, statistic) thresholds: exhaustively calibrated for n <= 16, and
// conservative Hoeffding/union-bound thresholds beyond that.

namespace detail {

// smallest threshold tau with #{x in Sigma^n : raw(x) >= tau} <= cap, from the
// multiset of raw values sorted descending; +inf when unreachable
inline double calibrate_threshold(const std::vector<double>& sorted_desc, const BigInt& cap) {
    if (cap <= 0) return std::numeric_limits<double>::infinity();
    std::size_t capn = cap >= BigInt(sorted_desc.size())
                           ? sorted_desc.size()
                           : cap.convert_to<std::size_t>();
    // walk distinct values from the top; count(v) = index of last occurrence + 1
    std::size_t i = 0;
    double best = std::numeric_limits<double>::infinity();
    while (i < sorted_desc.size()) {
        double v = sorted_desc[i];
        std::size_t j = i;
        while (j < sorted_desc.size() && sorted_desc[j] == v) ++j;
        if (j <= capn) best = v;  // count{ raw >= v } = j
        else break;
        i = j;
    }
    return best;
}

}  // namespace detail

class FiniteTest {
  public:
    using RawFn = std::function<double(const BitString&)>;
    using AnalyticFn = std::function<double(unsigned n, unsigned m)>;  // threshold for n > 16

    FiniteTest(std::string name, RawFn raw, AnalyticFn analytic, unsigned m_max = 64)
        : name_(std::move(name)), raw_(std::move(raw)), analytic_(std::move(analytic)),
          m_max_(m_max), cache_(std::make_shared<Cache>()) {}

    // a claimed integer-level statistic taken at face value (no calibration);
    // verify_level_bound decides whether the claim holds
    static FiniteTest direct(std::string name, std::function<unsigned(const BitString&)> lvl,
                             unsigned m_max = 64) {
        FiniteTest t(std::move(name), [lvl](const BitString& x) { return double(lvl(x)); },
                     [](unsigned, unsigned m) { return double(m); }, m_max);
        t.direct_ = true;
        return t;
    }

    const std::string& name() const { return name_; }
    unsigned m_max() const { return m_max_; }
    double raw(const BitString& x) const { return raw_(x); }

    // maximal m with x in V_m (0 when x escapes every critical region)
    unsigned level(const BitString& x) const {
        unsigned n = unsigned(x.size());
        if (n == 0) return 0;
        double r = raw_(x);
        if (direct_) return std::min(m_max_, unsigned(r));
        unsigned cap = std::min(m_max_, n);
        unsigned lvl = 0;
        for (unsigned m = 1; m <= cap; ++m) {
            double tau = threshold(n, m);
            if (r >= tau)
                lvl = m;
            else
                break;  // thresholds are nondecreasing in m
        }
        return lvl;
    }

    double threshold(unsigned n, unsigned m) const {
        if (m == 0) return 0.0;
        if (direct_) return double(m);
        if (m >= n) return std::numeric_limits<double>::infinity();  // V_m must be empty
        if (n <= kExhaustiveMax) return exhaustive_thresholds(n)[m - 1];
        return analytic_(n, m);
    }

    static constexpr unsigned kExhaustiveMax = 16;

  private:
    const std::vector<double>& exhaustive_thresholds(unsigned n) const {
        std::lock_guard<std::mutex> g(cache_->mu);
        auto it = cache_->thresholds.find(n);
        if (it != cache_->thresholds.end()) return it->second;
        std::vector<double> vals;
        vals.reserve(std::size_t(1) << n);
        std::vector<uint8_t> bits(n);
        for (uint64_t w = 0; w < (uint64_t(1) << n); ++w) {
            for (unsigned i = 0; i < n; ++i) bits[i] = uint8_t((w >> i) & 1u);
            vals.push_back(raw_(BitString(bits)));
        }
        std::sort(vals.begin(), vals.end(), std::greater<>());
        std::vector<double> taus;
        unsigned cap_m = std::min(m_max_, n);
        for (unsigned m = 1; m <= cap_m; ++m) {
            BigInt cap = (pow2(n - m)) - 1;  // strict bound: count <= 2^(n-m) - 1
            taus.push_back(detail::calibrate_threshold(vals, cap));
        }
        for (unsigned m = cap_m + 1; m <= m_max_; ++m)
            taus.push_back(std::numeric_limits<double>::infinity());
        auto [pos, _] = cache_->thresholds.emplace(n, std::move(taus));
        return pos->second;
    }

    struct Cache {
        std::mutex mu;
        std::map<unsigned, std::vector<double>> thresholds;
    };

    std::string name_;
    RawFn raw_;
    AnalyticFn analytic_;
    unsigned m_max_;
    bool direct_ = false;
    std::shared_ptr<Cache> cache_;
};

struct LevelBoundFailure {
    unsigned n, m;
    BigInt count;
};

struct LevelBoundResult {
    bool ok = true;
    std::optional<LevelBoundFailure> failure;
};

// exhaustive check of cardinality(Sigma^n ∩ V_m) < 2^(n-m) at every level
inline LevelBoundResult verify_level_bound(const FiniteTest& t, unsigned n) {
    if (n > 16) throw std::invalid_argument("verify_level_bound: n must be <= 16");
    std::vector<BigInt> count_at_least(std::size_t(t.m_max()) + 2, 0);
    std::vector<uint8_t> bits(n);
    for (uint64_t w = 0; w < (uint64_t(1) << n); ++w) {
        for (unsigned i = 0; i < n; ++i) bits[i] = uint8_t((w >> i) & 1u);
        unsigned lvl = t.level(BitString(bits));
        if (lvl > 0) count_at_least[std::min<std::size_t>(lvl, t.m_max())] += 1;
    }
    // suffix-sum: #{level >= m}
    for (std::size_t m = t.m_max(); m >= 1; --m) count_at_least[m - 1] += count_at_least[m];
    for (unsigned m = 1; m <= std::min(t.m_max(), n); ++m) {
        if (count_at_least[m] >= pow2(n - m))
            return {false, LevelBoundFailure{n, m, count_at_least[m]}};
    }
    return {true, std::nullopt};
}

// --- built-in statistics -----------------------------------------------------

namespace stats {

inline double ln2() { return 0.6931471805599453; }

// P(|N1 - n/2| >= t sqrt(n)) <= 2 exp(-2 t^2) = 2^-(3m+4) <= 2^-(m+1);
// the slack absorbs the finite-scale drift of structured reference inputs
inline double hoeffding_threshold(unsigned, unsigned m) {
    return std::sqrt((3.0 * double(m) + 5.0) * ln2() / 2.0);
}

inline double frequency_raw(const BitString& x) {
    if (x.empty()) return 0.0;
    double n = double(x.size());
    double ones = double(count_occurrences(x, 1));
    return std::fabs(ones - n / 2.0) / std::sqrt(n);
}

// lag-k agreement; x_i XOR x_{i+k} is an iid fair sequence under the uniform
// measure, so the frequency threshold applies to it verbatim
inline double serial_raw(const BitString& x, unsigned k) {
    if (x.size() <= k) return 0.0;
    std::size_t np = x.size() - k;
    uint64_t agree = 0;
    for (std::size_t i = 0; i < np; ++i)
        if (x[i] == x[i + k]) ++agree;
    return std::fabs(double(agree) - double(np) / 2.0) / std::sqrt(double(np));
}

inline unsigned longest_run(const BitString& x) {
    unsigned best = 0, cur = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0 && x[i] == x[i - 1])
            ++cur;
        else
            cur = 1;
        best = std::max(best, cur);
    }
    return best;
}

// #{x : some run >= L} <= 2n 2^(n-L), so L = 2m + ceil(log2 n) + 2 is safe
inline double run_threshold(unsigned n, unsigned m) {
    unsigned cl = 0;
    while ((1u << cl) < n) ++cl;
    return double(2 * m + cl + 2);
}

// longest gap between consecutive ones (zeros strictly between two ones)
inline double gap_raw(const BitString& x) {
    long last = -1;
    unsigned best = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 1) {
            if (last >= 0) best = std::max(best, unsigned(long(i) - last - 1));
            last = long(i);
        }
    }
    return double(best);
}

// max block-frequency deviation over all 2^mb words of block order mb,
// non-overlapping blocks, scaled by sqrt(#blocks)
inline double borel_raw(const BitString& x, unsigned mb) {
    std::size_t blocks = x.size() / mb;
    if (blocks == 0) return 0.0;
    std::vector<uint64_t> count(std::size_t(1) << mb, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        uint64_t w = 0;
        for (unsigned j = 0; j < mb; ++j) w = (w << 1) | x[b * mb + j];
        ++count[w];
    }
    double target = std::exp2(-double(mb));
    double worst = 0.0;
    for (uint64_t c : count)
        worst = std::max(worst, std::fabs(double(c) / double(blocks) - target));
    return worst * std::sqrt(double(blocks));
}

inline double borel_threshold(unsigned, unsigned m, unsigned mb) {
    return std::sqrt((3.0 * double(m) + double(mb) + 5.0) * ln2() / 2.0);
}

// max_k |S_k - k/2| / sqrt(k ln ln k) over k in [16, n]; the law of the
// iterated logarithm pins the a.s. limsup of this ratio at 1/sqrt(2)
inline double iterlog_raw(const BitString& x) {
    if (x.size() < 16) return 0.0;
    double best = 0.0;
    long ones = 0;
    for (std::size_t k = 1; k <= x.size(); ++k) {
        ones += x[k - 1];
        if (k < 16) continue;
        double dk = double(k);
        double denom = std::sqrt(dk * std::log(std::log(dk)));
        best = std::max(best, std::fabs(double(ones) - dk / 2.0) / denom);
    }
    return best;
}

// union bound over k: 2 n (ln 16)^(-2 t^2) <= 2^-(m+1) with the same slack
inline double iterlog_threshold(unsigned n, unsigned m) {
    double lnln16 = std::log(std::log(16.0));
    return std::sqrt(((3.0 * double(m) + 5.0) * ln2() + std::log(double(n))) / (2.0 * lnln16));
}

}  // namespace stats

inline FiniteTest frequency_test() {
    return FiniteTest("frequency", stats::frequency_raw, stats::hoeffding_threshold);
}

inline FiniteTest serial_test(unsigned lag) {
    return FiniteTest("serial-" + std::to_string(lag),
                      [lag](const BitString& x) { return stats::serial_raw(x, lag); },
                      stats::hoeffding_threshold);
}

inline FiniteTest runs_test() {
    return FiniteTest("runs", [](const BitString& x) { return double(stats::longest_run(x)); },
                      stats::run_threshold);
}

inline FiniteTest gap_test() {
    return FiniteTest("gap", stats::gap_raw, stats::run_threshold);
}

inline FiniteTest borel_test(unsigned block_order) {
    return FiniteTest("borel-" + std::to_string(block_order),
                      [block_order](const BitString& x) { return stats::borel_raw(x, block_order); },
                      [block_order](unsigned n, unsigned m) {
                          return stats::borel_threshold(n, m, block_order);
                      });
}

inline FiniteTest iterated_log_test() {
    return FiniteTest("iterated-log", stats::iterlog_raw, stats::iterlog_threshold);
}

// compression-based test: level m iff khat(x) <= |x| - m - 1, which keeps the
// Kraft counting bound strict
inline FiniteTest deficiency_test() {
    auto raw = [](const BitString& x) {
        auto r = complexity_deficiency(x);
        return double(r.deficiency > 1 ? r.deficiency - 1 : 0);
    };
    auto analytic = [](unsigned, unsigned m) { return double(m); };
    return FiniteTest("deficiency", raw, analytic);
}

inline unsigned borel_normality_statistic(const BitString& x, unsigned block_order) {
    if (block_order < 1 || x.size() < block_order)
        throw std::invalid_argument("borel_normality_statistic: |x| must be >= block order");
    return borel_test(block_order).level(x);
}

inline unsigned iterated_log_statistic(const BitString& x) {
    if (x.size() < 16) throw std::invalid_argument("iterated_log_statistic: |x| must be >= 16");
    return iterated_log_test().level(x);
}

// --- battery -----------------------------------------------------------------

struct TestReport {
    struct Entry {
        std::string name;
        unsigned level;
    };
    std::size_t input_length = 0;
    std::vector<Entry> entries;

    unsigned level_of(const std::string& name) const {
        for (const auto& e : entries)
            if (e.name == name) return e.level;
        throw std::out_of_range("TestReport: no test named " + name);
    }
    unsigned max_level() const {
        unsigned m = 0;
        for (const auto& e : entries) m = std::max(m, e.level);
        return m;
    }
    // x is q-pseudorandom for the battery when q < |x| and x escapes V_q
    bool is_q_pseudorandom(unsigned q) const {
        return q < input_length && max_level() < q;
    }
};

inline std::vector<FiniteTest> default_battery() {
    std::vector<FiniteTest> v;
    v.push_back(frequency_test());
    v.push_back(serial_test(1));
    v.push_back(serial_test(2));
    v.push_back(serial_test(3));
    v.push_back(runs_test());
    v.push_back(gap_test());
    return v;
}

inline TestReport run_battery(const std::vector<FiniteTest>& battery, const BitString& x) {
    TestReport r;
    r.input_length = x.size();
    for (const auto& t : battery) r.entries.push_back({t.name(), t.level(x)});
    return r;
}

inline TestReport knuth_battery(const BitString& x) {
    if (x.size() < (1u << 10))
        throw std::invalid_argument("knuth_battery: need at least 2^10 bits");
    return run_battery(default_battery(), x);
}

}  // namespace rwb
