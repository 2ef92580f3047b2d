#pragma once

#include "rwb/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwb {

// Finite word over {0,1}. Bits are stored one per byte; positions are
// 1-based in the formula-facing accessors to match the usual x(n) notation.
class BitString {
  public:
    BitString() = default;
    explicit BitString(std::vector<uint8_t> bits) : bits_(std::move(bits)) { check(); }
    explicit BitString(const std::string& s) {
        bits_.reserve(s.size());
        for (char c : s) {
            if (c == '0')
                bits_.push_back(0);
            else if (c == '1')
                bits_.push_back(1);
            else
                throw std::invalid_argument("BitString: bad character");
        }
    }
    static BitString zeros(std::size_t n) { return BitString(std::vector<uint8_t>(n, 0)); }
    static BitString ones(std::size_t n) { return BitString(std::vector<uint8_t>(n, 1)); }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    uint8_t operator[](std::size_t i0) const { return bits_[i0]; }  // 0-based
    uint8_t at1(std::size_t n) const {                              // 1-based x(n)
        if (n == 0 || n > bits_.size()) throw std::out_of_range("BitString::at1");
        return bits_[n - 1];
    }
    const std::vector<uint8_t>& raw() const { return bits_; }

    void push_back(uint8_t b) { bits_.push_back(b ? 1 : 0); }
    void pop_back() { bits_.pop_back(); }

    BitString prefix(std::size_t n) const {
        if (n > size()) throw std::out_of_range("BitString::prefix");
        return BitString(std::vector<uint8_t>(bits_.begin(), bits_.begin() + n));
    }
    // substring x(n, m), 1-based inclusive bounds
    BitString substring(std::size_t n, std::size_t m) const {
        if (n == 0 || m < n || m > size()) throw std::out_of_range("BitString::substring");
        return BitString(std::vector<uint8_t>(bits_.begin() + n - 1, bits_.begin() + m));
    }
    BitString concat(const BitString& o) const {
        std::vector<uint8_t> v = bits_;
        v.insert(v.end(), o.bits_.begin(), o.bits_.end());
        return BitString(std::move(v));
    }

    bool is_prefix_of(const BitString& o) const {
        if (size() > o.size()) return false;
        for (std::size_t i = 0; i < size(); ++i)
            if (bits_[i] != o.bits_[i]) return false;
        return true;
    }

    std::string str() const {
        std::string s(size(), '0');
        for (std::size_t i = 0; i < size(); ++i) s[i] = bits_[i] ? '1' : '0';
        return s;
    }

    friend bool operator==(const BitString& a, const BitString& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }
    friend bool operator<(const BitString& a, const BitString& b) { return a.bits_ < b.bits_; }

  private:
    void check() const {
        for (uint8_t b : bits_)
            if (b > 1) throw std::invalid_argument("BitString: bit out of range");
    }
    std::vector<uint8_t> bits_;
};

// Pull-based infinite sequence: a total map from 1-based position to {0,1}.
// Infinite objects are represented by finite programs; every consumer takes
// an explicit horizon.
class BitStream {
  public:
    using Gen = std::function<uint8_t(uint64_t)>;  // 1-based position

    BitStream(Gen g, std::optional<uint64_t> period = std::nullopt)
        : gen_(std::move(g)), period_(period) {}

    uint8_t at1(uint64_t n) const { return gen_(n) ? 1 : 0; }
    std::optional<uint64_t> period() const { return period_; }

    BitString prefix(std::size_t n) const {
        std::vector<uint8_t> v(n);
        for (std::size_t i = 1; i <= n; ++i) v[i - 1] = at1(i);
        return BitString(std::move(v));
    }

    static BitStream constant(uint8_t b) {
        return BitStream([b](uint64_t) { return b; }, 1);
    }
    static BitStream from_string(BitString x, uint8_t fill = 0) {
        auto sp = std::make_shared<BitString>(std::move(x));
        return BitStream([sp, fill](uint64_t n) -> uint8_t {
            return n <= sp->size() ? sp->at1(n) : fill;
        });
    }
    // periodic repetition of a nonempty word
    static BitStream cycle(BitString x) {
        if (x.empty()) throw std::invalid_argument("BitStream::cycle: empty word");
        auto sp = std::make_shared<BitString>(std::move(x));
        uint64_t p = sp->size();
        return BitStream([sp, p](uint64_t n) { return (*sp)[(n - 1) % p]; }, p);
    }

  private:
    Gen gen_;
    std::optional<uint64_t> period_;
};

// --- quasi-lexicographic ordering ------------------------------------------
// lambda < 0 < 1 < 00 < 01 < 10 < 11 < 000 < ...

inline unsigned bitlength_of_index(uint64_t n) {
    unsigned l = 0;
    uint64_t v = n + 1;
    while (v > 1) {
        v >>= 1;
        ++l;
    }
    return l;  // floor(log2(n+1))
}

inline BitString string_of_index(uint64_t n) {
    unsigned len = bitlength_of_index(n);
    uint64_t offset = n + 1 - (uint64_t(1) << len);
    std::vector<uint8_t> v(len);
    for (unsigned i = 0; i < len; ++i) v[len - 1 - i] = uint8_t((offset >> i) & 1u);
    return BitString(std::move(v));
}

inline uint64_t index_of_string(const BitString& x) {
    uint64_t off = 0;
    for (std::size_t i = 0; i < x.size(); ++i) off = (off << 1) | x[i];
    return (uint64_t(1) << x.size()) - 1 + off;
}

inline uint64_t count_occurrences(const BitString& x, uint8_t letter) {
    uint64_t c = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == letter) ++c;
    return c;
}

// N(x) = sum x_n / 2^n, exact
inline Rat numeric_representation(const BitString& x) {
    BigInt num = 0;
    for (std::size_t i = 0; i < x.size(); ++i) num = (num << 1) + x[i];
    return Rat(num, pow2(unsigned(x.size())));
}

// I(a, n, b): historically named an insertion, but the defining formula
// replaces position n; this follows the formula.
inline BitString splice(uint8_t a, std::size_t n, const BitString& b) {
    if (n == 0 || n > b.size()) throw std::invalid_argument("splice: position out of range");
    std::vector<uint8_t> v = b.raw();
    v[n - 1] = a ? 1 : 0;
    return BitString(std::move(v));
}

// Quasi-lexicographic concatenation of all binary strings: 0 1 00 01 10 11 000...
inline BitString champernowne_prefix(std::size_t n) {
    std::vector<uint8_t> v;
    v.reserve(n);
    for (uint64_t idx = 1; v.size() < n; ++idx) {
        BitString s = string_of_index(idx);
        for (std::size_t i = 0; i < s.size() && v.size() < n; ++i) v.push_back(s[i]);
    }
    return BitString(std::move(v));
}

inline BitStream champernowne_stream() {
    // chunked generation keeps random access cheap for modest positions
    return BitStream([](uint64_t n) -> uint8_t {
        uint64_t pos = 0;
        for (uint64_t idx = 1;; ++idx) {
            unsigned len = bitlength_of_index(idx);
            if (n <= pos + len) {
                BitString s = string_of_index(idx);
                return s[std::size_t(n - pos - 1)];
            }
            pos += len;
        }
    });
}

inline bool cylinder_contains(const BitString& prefix, const BitStream& x) {
    for (std::size_t i = 1; i <= prefix.size(); ++i)
        if (x.at1(i) != prefix.at1(i)) return false;
    return true;
}

// unbiased measure of the cylinder set of a prefix
inline Rat cylinder_measure(const BitString& prefix) { return pow2_inv(unsigned(prefix.size())); }

}  // namespace rwb
