#pragma once

#include "rwb/bits.hpp"
#include "rwb/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwb {

// S : Sigma* -> {bet on 0, bet on 1, no bet}; the no-bet arrow also stands in
// for "undefined" when a strategy is loaded as a partial lookup table.
enum class Bet : uint8_t { on_zero = 0, on_one = 1, none = 2 };

struct Strategy {
    std::string name;
    std::function<Bet(const BitString&)> decide;
};

inline Strategy builtin_strategy(const std::string& name) {
    if (name == "last-result") {
        return {name, [](const BitString& h) {
                    if (h.empty()) return Bet::none;
                    return h[h.size() - 1] ? Bet::on_one : Bet::on_zero;
                }};
    }
    if (name == "less-frequent") {
        return {name, [](const BitString& h) {
                    if (h.empty()) return Bet::none;
                    uint64_t n0 = count_occurrences(h, 0), n1 = h.size() - n0;
                    if (n0 == n1) return Bet::none;
                    return n0 > n1 ? Bet::on_one : Bet::on_zero;
                }};
    }
    throw std::invalid_argument("builtin_strategy: unknown strategy " + name);
}

inline Strategy always_bet(uint8_t letter, std::string name = "") {
    Bet b = letter ? Bet::on_one : Bet::on_zero;
    if (name.empty()) name = letter ? "always-bet-1" : "always-bet-0";
    return {name, [b](const BitString&) { return b; }};
}

// lookup-table strategy for histories up to a horizon; undefined -> no bet
inline Strategy table_strategy(std::string name, std::map<std::string, Bet> table) {
    auto t = std::make_shared<std::map<std::string, Bet>>(std::move(table));
    return {std::move(name), [t](const BitString& h) {
                auto it = t->find(h.str());
                return it == t->end() ? Bet::none : it->second;
            }};
}

// EXT[S]: ordered concatenation of { x_n : S(x_1..x_{n-1}) = 1 }. Selection
// happens exactly on bet-on-1 per the displayed definition.
inline BitString ext(const Strategy& s, const BitStream& x, uint64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("ext: horizon must be >= 1");
    BitString prefix;
    BitString out;
    for (uint64_t n = 1; n <= horizon; ++n) {
        uint8_t bit = x.at1(n);
        if (s.decide(prefix) == Bet::on_one) out.push_back(bit);
        prefix.push_back(bit);
    }
    return out;
}

struct PayoffTurn {
    uint64_t turn;
    uint8_t outcome;
    Bet bet;
    int gain;        // -1, 0, +1 at fixed stake
    long cumulative;
};

struct PayoffTrajectory {
    std::vector<PayoffTurn> turns;
    long final_payoff = 0;
    uint64_t bets_placed = 0;
};

inline PayoffTrajectory payoff_sim(const Strategy& s, const BitString& x) {
    PayoffTrajectory t;
    BitString prefix;
    long cum = 0;
    for (std::size_t n = 1; n <= x.size(); ++n) {
        uint8_t outcome = x.at1(n);
        Bet b = s.decide(prefix);
        int gain = 0;
        if (b != Bet::none) {
            ++t.bets_placed;
            gain = (uint8_t(b) == outcome) ? 1 : -1;
        }
        cum += gain;
        t.turns.push_back({n, outcome, b, gain, cum});
        prefix.push_back(outcome);
    }
    t.final_payoff = cum;
    return t;
}

namespace detail {
inline long payoff_sum_over_tree(const Strategy& s, BitString& prefix, unsigned depth) {
    if (depth == 0) return 0;
    Bet b = s.decide(prefix);
    long sum = 0;
    for (uint8_t bit : {uint8_t(0), uint8_t(1)}) {
        long gain = 0;
        if (b != Bet::none) gain = (uint8_t(b) == bit) ? 1 : -1;
        prefix.push_back(bit);
        long sub = payoff_sum_over_tree(s, prefix, depth - 1);
        // gain at this turn occurs once per leaf of the subtree
        sum += sub + gain * (long(1) << (depth - 1));
        prefix.pop_back();
    }
    return sum;
}
}  // namespace detail

// E[payoff(n)] over all 2^n outcome strings, exact; the weak law of excluded
// gambling strategies makes this zero for every strategy
inline Rat expected_payoff_exhaustive(const Strategy& s, unsigned n) {
    if (n > 20) throw std::invalid_argument("expected_payoff_exhaustive: n must be <= 20");
    BitString prefix;
    long total = detail::payoff_sum_over_tree(s, prefix, n);
    return Rat(BigInt(total), pow2(n));
}

// Variable-stake martingale mode: always bet the same letter, double the
// stake after each loss, reset to one after a win; betting stops for good
// once the next stake would exceed the bankroll cap. Fixed-stake simulations
// stay the default; this is the counterexample mode the weak law excludes.
struct MartingaleTrajectory {
    std::vector<long> stakes;     // stake placed at each betting turn
    long final_payoff = 0;
    bool busted = false;          // stopped by the bankroll cap
    uint64_t wins = 0, losses = 0;
};

inline MartingaleTrajectory martingale_sim(const BitString& x, uint8_t bet_letter,
                                           long bankroll_cap) {
    if (bankroll_cap < 1) throw std::invalid_argument("martingale_sim: cap must be >= 1");
    MartingaleTrajectory t;
    long stake = 1;
    long payoff = 0;
    for (std::size_t n = 1; n <= x.size(); ++n) {
        if (stake > bankroll_cap + payoff) {  // cannot cover the next stake
            t.busted = true;
            break;
        }
        t.stakes.push_back(stake);
        if (x.at1(n) == bet_letter) {
            payoff += stake;
            ++t.wins;
            stake = 1;
        } else {
            payoff -= stake;
            ++t.losses;
            stake *= 2;
        }
    }
    t.final_payoff = payoff;
    return t;
}

struct StPetersburg {
    Rat partial_sum;             // sum_{k=1..N} 2^-k * gain(k), gain = 1
    Rat expected_payoff;         // classic accounting: 2 (1 - 2^-N)
    int limit_annotation = 2;    // annotated limit of the series
};

// St. Petersburg accounting: doubling stakes make every first-win-at-k
// episode gain exactly one fiche; the annotated series limit is kept as 2.
inline StPetersburg st_petersburg_expected(unsigned n_terms) {
    if (n_terms < 1) throw std::invalid_argument("st_petersburg_expected: N must be >= 1");
    StPetersburg r;
    r.partial_sum = 1 - pow2_inv(n_terms);
    r.expected_payoff = Rat(2) * r.partial_sum;
    return r;
}

struct FrequencyStability {
    double freq_original = 0.0;   // relative frequency of 1s in the prefix
    double freq_extracted = 0.0;  // relative frequency of 1s in EXT[S]
    double gap = 0.0;
    uint64_t extracted_bits = 0;
    bool indeterminate = false;   // EXT produced no bits
};

inline FrequencyStability frequency_stability(const Strategy& s, const BitStream& x,
                                              uint64_t horizon) {
    BitString prefix = x.prefix(std::size_t(horizon));
    BitString extracted = ext(s, x, horizon);
    FrequencyStability r;
    r.extracted_bits = extracted.size();
    r.freq_original = horizon ? double(count_occurrences(prefix, 1)) / double(horizon) : 0.0;
    if (extracted.empty()) {
        r.indeterminate = true;
        return r;
    }
    r.freq_extracted = double(count_occurrences(extracted, 1)) / double(extracted.size());
    r.gap = std::fabs(r.freq_original - r.freq_extracted);
    return r;
}

}  // namespace rwb
