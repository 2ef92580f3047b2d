#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace rwb {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned k) { return BigInt(1) << k; }

// 2^-k as an exact rational
inline Rat pow2_inv(unsigned k) { return Rat(BigInt(1), pow2(k)); }

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat r(1);
    Rat b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::string rat_str(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p/q" or a plain integer.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(p, q);
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// (2m-1)!! with the empty product at m = 0
inline BigInt double_factorial_odd(unsigned m) {
    BigInt r = 1;
    for (unsigned i = 1; i <= m; ++i) r *= 2 * i - 1;
    return r;
}

}  // namespace rwb
