// Unified command-line workbench: every subcommand parses its inputs, calls
// into the library, and emits a structured report (json, csv, or text).
// Exit codes: 0 success, 1 check failure, 2 usage error.

#include "rwb/bell.hpp"
#include "rwb/casino.hpp"
#include "rwb/chaitin.hpp"
#include "rwb/coding.hpp"
#include "rwb/compressor.hpp"
#include "rwb/freeprob.hpp"
#include "rwb/gambling.hpp"
#include "rwb/io.hpp"
#include "rwb/mltests.hpp"
#include "rwb/prg.hpp"
#include "rwb/quantum.hpp"
#include "rwb/report.hpp"
#include "rwb/selftest.hpp"
#include "rwb/symdyn.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

using namespace rwb;

struct OutputOptions {
    std::string format = "json";
    std::string out_path;
    bool no_timestamp = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", o.out_path, "write the report to this path (atomic)");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp (comparison mode)");
}

uint64_t default_seed() {
    if (const char* s = std::getenv("RW_SEED")) return std::strtoull(s, nullptr, 10);
    return 0;
}

std::string now_iso8601() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

int emit(Report& rep, const OutputOptions& o) {
    if (!o.no_timestamp) rep.timestamp = now_iso8601();
    std::string body;
    if (o.format == "json")
        body = rep.to_json().dump(2) + "\n";
    else if (o.format == "csv")
        body = rep.to_csv();
    else
        body = rep.to_text();
    if (o.out_path.empty())
        std::fputs(body.c_str(), stdout);
    else
        write_file_atomic(o.out_path, body);
    return rep.all_pass() ? 0 : 1;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> v;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    return v;
}

std::vector<unsigned> parse_unsigneds(const std::string& csv) {
    std::vector<unsigned> v;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(unsigned(std::stoul(tok)));
    return v;
}

Distribution load_distribution(const std::string& spec) {
    // file path or inline JSON
    if (!spec.empty() && (spec[0] == '[' || spec[0] == '{'))
        return distribution_from_json(Json::parse(spec));
    return distribution_from_json(load_json(spec));
}

// --- coding ---------------------------------------------------------------------

int run_coding(const std::string& op, const std::string& lengths_csv, const std::string& dist,
               const std::string& dist_q, unsigned n, double eps, const std::string& ns_csv,
               OutputOptions out) {
    Report rep;
    rep.op = "coding/" + op;
    if (op == "kraft") {
        auto lengths = parse_unsigneds(lengths_csv);
        Rat sum = kraft_sum(lengths);
        rep.inputs["lengths"] = lengths;
        rep.outputs["kraft_sum"] = rat_str(sum);
        rep.outputs["feasible"] = sum <= 1;
        rep.checks.push_back({"kraft<=1", sum <= 1, to_double(sum), 1.0, 0.0});
    } else if (op == "build-code") {
        auto lengths = parse_unsigneds(lengths_csv);
        PrefixCode code = build_prefix_code(lengths);
        Json words = Json::array();
        for (const auto& w : code.codewords) words.push_back(w.str());
        rep.outputs["codewords"] = words;
        rep.checks.push_back({"prefix-free", code.is_prefix_free(), 1, 1, 0});
    } else if (op == "entropy") {
        Distribution p = load_distribution(dist);
        rep.outputs["shannon_entropy_bits"] = shannon_entropy(p);
    } else if (op == "kl") {
        Distribution p = load_distribution(dist);
        Distribution q = load_distribution(dist_q);
        rep.outputs["kl_bits"] = kl_divergence(p, q);
    } else if (op == "huffman") {
        Distribution p = load_distribution(dist);
        PrefixCode code = huffman_code(p);
        Json words = Json::array();
        for (const auto& w : code.codewords) words.push_back(w.str());
        double h = shannon_entropy(p), l = average_codeword_length(code, p);
        rep.outputs["codewords"] = words;
        rep.outputs["entropy"] = h;
        rep.outputs["average_length"] = l;
        rep.checks.push_back({"H<=L", h <= l + 1e-9, h, l, 1e-9});
        rep.checks.push_back({"L<H+1", l < h + 1, l, h + 1, 0});
    } else if (op == "typical") {
        Distribution p = load_distribution(dist);
        auto r = typical_set(p, n, eps);
        rep.outputs["member_count"] = r.member_count.str();
        rep.outputs["total_probability"] = r.total_probability;
        rep.outputs["log2_cardinality_bound"] = r.log2_cardinality_bound;
        rep.checks.push_back({"aep-cardinality", r.cardinality_bound_holds, 0, 0, 0});
    } else if (op == "sanov") {
        Distribution mu = load_distribution(dist);
        Distribution q = load_distribution(dist_q);
        auto rows = sanov_decay(mu, q, parse_unsigneds(ns_csv));
        Json jr = Json::array();
        for (const auto& r : rows)
            jr.push_back({{"n", r.n},
                          {"realizable", r.realizable},
                          {"probability", r.realizable ? rat_str(r.exact_probability) : "-"},
                          {"rate", r.rate}});
        rep.outputs["rows"] = jr;
        rep.outputs["kl_limit"] = kl_divergence(q, mu);
    } else if (op == "omega") {
        ToyChaitinMachine m;
        Rat v = omega_lower_bound(m, n, 10000);
        rep.inputs["max_len"] = n;
        rep.outputs["omega_lower_bound"] = rat_str(v);
        rep.checks.push_back({"omega<=1", v <= 1, to_double(v), 1.0, 0});
    } else {
        throw std::invalid_argument("coding: unknown --op " + op);
    }
    return emit(rep, out);
}

// --- randtest --------------------------------------------------------------------

int run_randtest(const std::string& in_path, const std::string& battery, OutputOptions out) {
    BitString bits = load_bits(in_path);
    Report rep;
    rep.op = "randtest";
    rep.inputs["in"] = in_path;
    rep.inputs["bits"] = bits.size();
    rep.inputs["battery"] = battery;
    std::vector<FiniteTest> tests =
        battery == "full" ? selftest::registered_tests() : default_battery();
    Json levels = Json::object();
    unsigned max_level = 0;
    for (const auto& t : tests) {
        unsigned lvl = t.level(bits);
        levels[t.name()] = lvl;
        max_level = std::max(max_level, lvl);
    }
    auto defic = complexity_deficiency(bits);
    rep.outputs["levels"] = levels;
    rep.outputs["max_level"] = max_level;
    rep.outputs["khat_bits"] = defic.khat_bits;
    rep.outputs["deficiency"] = defic.deficiency;
    rep.checks.push_back({"pseudorandom-at-q3", max_level < 3 && bits.size() > 3,
                          double(max_level), 3.0, 0});
    return emit(rep, out);
}

// --- prg --------------------------------------------------------------------------

int run_prg(const std::string& kind, uint64_t a, uint64_t b, uint64_t n, uint64_t seed,
            uint64_t count, unsigned digits, unsigned lag_p, unsigned lag_q, unsigned width,
            const std::string& emit_kind, const std::string& bits_out, OutputOptions out) {
    Report rep;
    rep.op = "prg/" + kind;
    rep.seed = seed;
    BitString bits;
    std::vector<std::string> ints;
    if (kind == "lcg") {
        LcgSpec g{a, b, n};
        if (emit_kind == "ints") {
            for (uint64_t v : lcg(g, seed, count)) ints.push_back(std::to_string(v));
        } else {
            bits = lcg_bits(g, seed, count);
        }
    } else if (kind == "middle-square") {
        for (const BigInt& v : middle_square(BigInt(seed), count, digits))
            ints.push_back(v.str());
        auto cycle = middle_square_cycle(BigInt(seed), digits);
        rep.outputs["cycle_tail"] = cycle.tail;
        rep.outputs["cycle_period"] = cycle.period;
    } else if (kind == "lagged-xor") {
        CounterRng rng(seed, 0x1a6);
        std::vector<uint8_t> sb(lag_p);
        bool any = false;
        for (auto& x : sb) {
            x = rng.bit();
            any = any || x;
        }
        if (!any) sb[0] = 1;
        bits = lagged_xor(lag_p, lag_q, BitString(sb), count);
    } else if (kind == "rule30") {
        bits = rule30_single_one(width, count);
    } else if (kind == "ghd") {
        bool full = ghd_full_period(a, b, n);
        rep.outputs["full_period"] = full;
        if (n <= (1u << 16)) {
            bool sim = lcg_full_period_simulated(a, b, n);
            rep.checks.push_back({"criterion-matches-simulation", sim == full,
                                  sim ? 1.0 : 0.0, full ? 1.0 : 0.0, 0});
        }
        return emit(rep, out);
    } else {
        throw std::invalid_argument("prg: unknown --kind " + kind);
    }
    if (!ints.empty()) rep.outputs["ints"] = ints;
    if (!bits.empty()) {
        rep.outputs["bits_emitted"] = bits.size();
        if (!bits_out.empty()) {
            save_bits_ascii(bits_out, bits);
            rep.outputs["bits_file"] = bits_out;
        } else if (bits.size() <= 4096) {
            rep.outputs["bits"] = bits.str();
        }
    }
    return emit(rep, out);
}

// --- gamble ------------------------------------------------------------------------

int run_gamble(const std::string& strategy_name, const std::string& table_path,
               const std::string& in_path, uint64_t ext_horizon, OutputOptions out) {
    Strategy strategy = [&]() {
        if (!table_path.empty()) {
            Json j = load_json(table_path);
            std::map<std::string, Bet> table;
            for (auto it = j.begin(); it != j.end(); ++it) {
                std::string v = it.value().get<std::string>();
                Bet bet = v == "0" ? Bet::on_zero : v == "1" ? Bet::on_one : Bet::none;
                table[it.key()] = bet;
            }
            return table_strategy("table:" + table_path, std::move(table));
        }
        return builtin_strategy(strategy_name);
    }();
    BitString bits = load_bits(in_path);
    Report rep;
    rep.op = "gamble";
    rep.inputs["strategy"] = strategy.name;
    rep.inputs["in"] = in_path;
    auto traj = payoff_sim(strategy, bits);
    Json turns = Json::array();
    for (const auto& t : traj.turns)
        turns.push_back({{"turn", t.turn},
                         {"outcome", int(t.outcome)},
                         {"bet", t.bet == Bet::none ? "-" : std::to_string(int(t.bet))},
                         {"gain", t.gain},
                         {"payoff", t.cumulative}});
    if (traj.turns.size() <= 256) rep.outputs["turns"] = turns;
    rep.outputs["final_payoff"] = traj.final_payoff;
    rep.outputs["bets_placed"] = traj.bets_placed;
    if (ext_horizon > 0) {
        BitStream stream = BitStream::from_string(bits);
        uint64_t h = std::min<uint64_t>(ext_horizon, bits.size());
        rep.outputs["ext"] = ext(strategy, stream, h).str();
        auto fs = frequency_stability(strategy, stream, h);
        rep.outputs["freq_original"] = fs.freq_original;
        rep.outputs["freq_extracted"] = fs.indeterminate ? Json() : Json(fs.freq_extracted);
        rep.outputs["gap"] = fs.indeterminate ? Json() : Json(fs.gap);
    }
    return emit(rep, out);
}

// --- shift-entropy --------------------------------------------------------------------

int run_shift_entropy(const std::string& kind, const std::string& e_csv, const std::string& p_csv,
                      std::size_t n, uint64_t seed, unsigned block_k, OutputOptions out) {
    ShiftSpec spec;
    if (kind == "bernoulli") {
        auto p = parse_doubles(p_csv.empty() ? "0.5,0.5" : p_csv);
        if (p.size() != 2) throw std::invalid_argument("shift-entropy: --P needs two entries");
        spec = ShiftSpec::bernoulli_shift(p[1]);
    } else if (kind == "markov") {
        auto e = parse_doubles(e_csv);
        auto p = parse_doubles(p_csv);
        if (e.size() != 2 || p.size() != 4)
            throw std::invalid_argument("shift-entropy: --e needs 2 and --P needs 4 entries");
        spec = ShiftSpec::markov_shift({e[0], e[1]}, {{{p[0], p[1]}, {p[2], p[3]}}});
    } else {
        throw std::invalid_argument("shift-entropy: unknown --kind " + kind);
    }
    Report rep;
    rep.op = "shift-entropy";
    rep.seed = seed;
    BitString x = sample_trajectory(spec, n, seed);
    double exact = exact_entropy_rate(spec);
    double block = block_entropy_estimate(x, block_k);
    double brudno = brudno_rate(x);
    rep.outputs["exact_rate"] = exact;
    rep.outputs["block_estimate"] = block;
    rep.outputs["block_k"] = block_k;
    rep.outputs["brudno_rate"] = brudno;
    rep.checks.push_back({"block-close", std::fabs(block - exact) <= 0.03, block, exact, 0.03});
    rep.checks.push_back({"brudno-close", std::fabs(brudno - exact) <= 0.08, brudno, exact, 0.08});
    return emit(rep, out);
}

// --- qinfo -------------------------------------------------------------------------------

int run_qinfo(const std::string& op, const std::string& a_path, const std::string& b_path,
              const std::string& ens_path, const std::string& r_csv, unsigned grid,
              OutputOptions out) {
    Report rep;
    rep.op = "qinfo/" + op;
    auto load_state = [](const std::string& p) {
        return DensityOperator(cmatrix_from_json(load_json(p)), 1e-8);
    };
    if (op == "fidelity" || op == "trace-distance" || op == "angle" || op == "umegaki") {
        DensityOperator a = load_state(a_path), b = load_state(b_path);
        if (op == "fidelity") rep.outputs["fidelity"] = fidelity(a, b);
        if (op == "angle") rep.outputs["angle_distance"] = angle_distance(a, b);
        if (op == "trace-distance") rep.outputs["trace_distance"] = trace_distance(a, b);
        if (op == "umegaki") {
            double s = umegaki_relative_entropy(a, b);
            rep.outputs["umegaki_bits"] = std::isinf(s) ? Json("inf") : Json(s);
        }
    } else if (op == "vn-entropy") {
        rep.outputs["von_neumann_entropy_bits"] = von_neumann_entropy(load_state(a_path));
    } else if (op == "bloch") {
        auto r = parse_doubles(r_csv);
        if (r.size() != 3) throw std::invalid_argument("qinfo: --r needs x,y,z");
        rep.outputs["state"] = cmatrix_to_json(bloch(r[0], r[1], r[2]).matrix());
    } else if (op == "bloch-inverse") {
        auto v = bloch_inverse(load_state(a_path));
        rep.outputs["r"] = {v[0], v[1], v[2]};
    } else if (op == "holevo" || op == "accessible") {
        Ensemble e = ensemble_from_json(load_json(ens_path));
        double chi = holevo_chi(e);
        rep.outputs["holevo_chi"] = chi;
        if (op == "accessible") {
            double acc = accessible_information(e, grid);
            rep.outputs["accessible_information"] = acc;
            rep.checks.push_back({"holevo-bound", acc <= chi + 1e-9, acc, chi, 1e-9});
        }
    } else if (op == "schatten") {
        Ensemble e = schatten_decomposition(load_state(a_path));
        Json weights = Json::array(), states = Json::array();
        for (std::size_t i = 0; i < e.weights.size(); ++i) {
            weights.push_back(e.weights[i]);
            states.push_back(cmatrix_to_json(e.states[i].matrix()));
        }
        rep.outputs["weights"] = weights;
        rep.outputs["states"] = states;
    } else if (op == "bell") {
        auto t = bell_moment_table();
        Json first = Json::array(), second = Json::array();
        for (double v : t.first) first.push_back(v);
        for (const auto& row : t.second) {
            Json jr = Json::array();
            for (double v : row) jr.push_back(v);
            second.push_back(jr);
        }
        rep.outputs["first_moments"] = first;
        rep.outputs["second_moments"] = second;
        auto cert = classical_model_feasibility(t);
        rep.outputs["classically_feasible"] = cert.feasible;
        if (cert.feasible) {
            Json atoms = Json::array();
            for (const auto& p : cert.atom_probabilities) atoms.push_back(rat_str(p));
            rep.outputs["witness"] = atoms;
        } else {
            Json dual = Json::array();
            for (const auto& y : cert.farkas_dual) dual.push_back(rat_str(y));
            rep.outputs["farkas_dual"] = dual;
        }
    } else {
        throw std::invalid_argument("qinfo: unknown --op " + op);
    }
    return emit(rep, out);
}

// --- casino -------------------------------------------------------------------------------

int run_casino(int kind, double eps, double scale, const std::string& strategy_name,
               uint64_t turns, uint64_t seed, bool replay, uint64_t mc_trials,
               const std::string& csv_path, OutputOptions out) {
    Report rep;
    rep.op = "casino";
    rep.seed = seed;
    if (replay) {
        ReplayReport r = replay_paper_example();
        for (const auto& c : r.checks) rep.checks.push_back({c.name, c.pass, c.lhs, c.rhs, c.tol});
        rep.outputs["final_payoff"] = r.final_payoff;
        return emit(rep, out);
    }
    CasinoConfig cfg{kind, eps, scale, seed};
    QStrategy strategy = builtin_qstrategy(strategy_name, cfg);
    if (mc_trials > 0) {
        auto est = expected_payoff_mc(cfg, strategy, mc_trials);
        auto blind = blind_baseline_mc(cfg, strategy, mc_trials);
        double z = (est.mean - blind.mean) /
                   std::sqrt(est.stderr_ * est.stderr_ + blind.stderr_ * blind.stderr_);
        rep.outputs["mean_per_bet_payoff"] = est.mean;
        rep.outputs["stderr"] = est.stderr_;
        rep.outputs["blind_baseline"] = blind.mean;
        rep.outputs["z"] = z;
        rep.checks.push_back({"indistinguishable-from-blind", std::fabs(z) <= 4.0, z, 0, 4.0});
        return emit(rep, out);
    }
    GameRecord rec = play(cfg, strategy, turns);
    rep.outputs["final_payoff"] = rec.final_payoff;
    rep.outputs["bets"] = rec.bets;
    rep.outputs["wins"] = rec.wins;
    rep.outputs["losses"] = rec.losses;
    rep.checks.push_back({"bookkeeping", rec.final_payoff == long(rec.wins) - long(rec.losses),
                          double(rec.final_payoff), double(rec.wins) - double(rec.losses), 0});
    if (!csv_path.empty()) {
        std::ostringstream os;
        os << "turn,bet,distance,result,payoff\n";
        for (const auto& t : rec.turns)
            os << t.turn << "," << (t.bet_placed ? 1 : 0) << ","
               << (t.bet_placed ? std::to_string(t.distance) : "-") << "," << t.gain << ","
               << t.cumulative << "\n";
        write_file_atomic(csv_path, os.str());
        rep.outputs["csv"] = csv_path;
    }
    return emit(rep, out);
}

// --- freeprob ------------------------------------------------------------------------------

int run_freeprob(const std::string& op, const std::string& ensemble, std::size_t n,
                 unsigned draws, uint64_t seed, unsigned order, unsigned dim, unsigned steps,
                 const std::string& pattern, const std::string& csv_path, OutputOptions out) {
    Report rep;
    rep.op = "freeprob/" + op;
    rep.seed = seed;
    if (op == "catalan") {
        Json v = Json::array();
        for (unsigned i = 0; i <= order; ++i) v.push_back(catalan(i).str());
        rep.outputs["catalan"] = v;
    } else if (op == "moments") {
        Json g = Json::array(), s = Json::array();
        std::ostringstream os;
        os << "order,gaussian,semicircle\n";
        for (unsigned i = 0; i <= order; ++i) {
            g.push_back(gaussian_moment(i).str());
            s.push_back(semicircle_moment(i).str());
            os << i << "," << gaussian_moment(i).str() << "," << semicircle_moment(i).str()
               << "\n";
        }
        rep.outputs["gaussian"] = g;
        rep.outputs["semicircle"] = s;
        if (!csv_path.empty()) {
            write_file_atomic(csv_path, os.str());
            rep.outputs["csv"] = csv_path;
        }
    } else if (op == "partitions") {
        auto c = count_pair_partitions(order);
        rep.outputs["pairings"] = c.pairings.str();
        rep.outputs["noncrossing"] = c.noncrossing.str();
        if (order % 2 == 0 && order > 0) {
            rep.checks.push_back(
                {"pairings=(2m-1)!!", c.pairings == double_factorial_odd(order / 2), 0, 0, 0});
            rep.checks.push_back(
                {"noncrossing=catalan", c.noncrossing == catalan(order / 2), 0, 0, 0});
        }
    } else if (op == "walks") {
        Json rows = Json::array();
        for (unsigned t = 0; t <= steps; ++t) {
            Json row;
            row["t"] = t;
            row["zd"] = rat_str(zd_walk_return(dim, t));
            if (t <= 14 || dim == 1) row["free"] = rat_str(free_walk_return(dim, t));
            rows.push_back(row);
        }
        rep.outputs["rows"] = rows;
    } else if (op == "wigner") {
        std::vector<CMatrix> samples;
        samples.reserve(draws);
        for (unsigned i = 0; i < draws; ++i)
            samples.push_back(ensemble == "goe" ? goe_sample(n, seed + i)
                                                : gue_sample(n, seed + i));
        double ks = spectral_ks_to_semicircle(samples);
        rep.outputs["ks_to_semicircle"] = ks;
        rep.checks.push_back({"ks<=0.06", ks <= 0.06, ks, 0.06, 0});
    } else if (op == "fock") {
        unsigned letters = 1;
        for (char c : pattern) letters = std::max(letters, unsigned(c - 'a') + 1);
        double v = fock_free_moment(letters, unsigned(pattern.size()), pattern);
        rep.outputs["vacuum_expectation"] = v;
    } else if (op == "clt") {
        auto m = free_clt_moments(unsigned(n), order, order);
        Json v = Json::array();
        for (double x : m) v.push_back(x);
        rep.outputs["moments"] = v;
    } else {
        throw std::invalid_argument("freeprob: unknown --op " + op);
    }
    return emit(rep, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomness workbench"};
    app.require_subcommand(1);

    OutputOptions out;
    uint64_t seed = default_seed();

    auto* coding = app.add_subcommand("coding", "codes, entropies, typical sets, omega");
    std::string coding_op = "kraft", lengths_csv, dist_spec, dist_q_spec, ns_csv = "8,12,16,20";
    unsigned coding_n = 20;
    double coding_eps = 0.1;
    coding->add_option("--op", coding_op,
                       "kraft|build-code|entropy|kl|huffman|typical|sanov|omega");
    coding->add_option("--lengths", lengths_csv, "comma-separated codeword lengths");
    coding->add_option("--dist", dist_spec, "distribution (JSON file or inline)");
    coding->add_option("--dist-q", dist_q_spec, "second distribution for kl/sanov");
    coding->add_option("--n", coding_n, "block length / max program length");
    coding->add_option("--eps", coding_eps, "typical-set epsilon");
    coding->add_option("--ns", ns_csv, "sanov n values");
    add_output_options(coding, out);

    auto* randtest = app.add_subcommand("randtest", "statistical test battery on a bit file");
    std::string rt_in, rt_battery = "default";
    randtest->add_option("--in", rt_in, "bit file (ascii or packed)")->required();
    randtest->add_option("--battery", rt_battery, "default|full");
    add_output_options(randtest, out);

    auto* prg = app.add_subcommand("prg", "pseudorandom generators");
    std::string prg_kind = "lcg", prg_emit = "bits", prg_out_bits;
    uint64_t prg_a = 16807, prg_b = 0, prg_n = (uint64_t(1) << 31) - 1, prg_count = 1024;
    unsigned prg_digits = 4, prg_p = 250, prg_q = 103, prg_width = 257;
    prg->add_option("--kind", prg_kind, "lcg|middle-square|lagged-xor|rule30|ghd");
    prg->add_option("--a", prg_a, "lcg multiplier");
    prg->add_option("--b", prg_b, "lcg increment");
    prg->add_option("--n", prg_n, "lcg modulus");
    prg->add_option("--seed", seed, "seed");
    prg->add_option("--count", prg_count, "outputs or bits to emit");
    prg->add_option("--digits", prg_digits, "middle-square digit width (even)");
    prg->add_option("--p", prg_p, "lagged-xor long lag");
    prg->add_option("--q", prg_q, "lagged-xor short lag");
    prg->add_option("--width", prg_width, "rule30 row width (odd)");
    prg->add_option("--emit", prg_emit, "bits|ints")->check(CLI::IsMember({"bits", "ints"}));
    prg->add_option("--bits-out", prg_out_bits, "write emitted bits to this file");
    add_output_options(prg, out);

    auto* gamble = app.add_subcommand("gamble", "betting strategies on recorded tosses");
    std::string g_strategy = "last-result", g_table, g_in;
    uint64_t g_ext = 0;
    gamble->add_option("--strategy", g_strategy, "last-result|less-frequent");
    gamble->add_option("--table", g_table, "strategy as JSON {history: \"0\"|\"1\"|\"no-bet\"}");
    gamble->add_option("--in", g_in, "bit file of outcomes")->required();
    gamble->add_option("--ext-horizon", g_ext, "also report EXT and frequency stability");
    add_output_options(gamble, out);

    auto* shift = app.add_subcommand("shift-entropy", "entropy rates of binary shifts");
    std::string sh_kind = "bernoulli", sh_e, sh_p;
    std::size_t sh_n = 1 << 18;
    unsigned sh_k = 8;
    shift->add_option("--kind", sh_kind, "bernoulli|markov");
    shift->add_option("--e", sh_e, "markov initial distribution e0,e1");
    shift->add_option("--P", sh_p, "rows p00,p01,p10,p11 (or p0,p1 for bernoulli)");
    shift->add_option("--n", sh_n, "trajectory length");
    shift->add_option("--seed", seed, "seed");
    shift->add_option("--k", sh_k, "block length for the plug-in estimate");
    add_output_options(shift, out);

    auto* qinfo = app.add_subcommand("qinfo", "finite-dimensional quantum information");
    std::string q_op = "fidelity", q_a, q_b, q_ens, q_r;
    unsigned q_grid = 128;
    qinfo->add_option("--op", q_op,
                      "fidelity|trace-distance|angle|vn-entropy|umegaki|bloch|bloch-inverse|"
                      "holevo|accessible|schatten|bell");
    qinfo->add_option("--a", q_a, "first state (matrix JSON file)");
    qinfo->add_option("--b", q_b, "second state");
    qinfo->add_option("--ensemble", q_ens, "ensemble JSON file");
    qinfo->add_option("--r", q_r, "bloch vector x,y,z");
    qinfo->add_option("--grid", q_grid, "measurement search grid resolution");
    add_output_options(qinfo, out);

    auto* casino = app.add_subcommand("casino", "quantum casinos");
    int c_kind = 3;
    double c_eps = 10.0, c_scale = 10.0;
    std::string c_strategy = "pauli-height", c_csv;
    uint64_t c_turns = 16, c_mc = 0;
    bool c_replay = false;
    casino->add_option("--kind", c_kind, "1|2|3");
    casino->add_option("--eps", c_eps, "win radius");
    casino->add_option("--scale", c_scale, "kind-3 coin entry scale");
    casino->add_option("--strategy", c_strategy,
                       "pauli-height|blind-center|blind-sigma-z|last-outcome");
    casino->add_option("--turns", c_turns, "turns to play");
    casino->add_option("--seed", seed, "seed");
    casino->add_option("--mc-trials", c_mc, "monte-carlo trials (switches to estimation mode)");
    casino->add_flag("--replay-paper", c_replay, "replay the printed betting episode");
    casino->add_option("--csv", c_csv, "episode log CSV path");
    add_output_options(casino, out);

    auto* freeprob = app.add_subcommand("freeprob", "free probability at desk scale");
    std::string f_op = "wigner", f_ensemble = "gue", f_pattern = "abab", f_csv;
    std::size_t f_n = 200;
    unsigned f_draws = 50, f_order = 8, f_dim = 1, f_steps = 12;
    freeprob->add_option("--op", f_op, "wigner|catalan|moments|partitions|walks|fock|clt");
    freeprob->add_option("--ensemble", f_ensemble, "goe|gue");
    freeprob->add_option("--n", f_n, "matrix size / clt summands");
    freeprob->add_option("--draws", f_draws, "matrix draws");
    freeprob->add_option("--seed", seed, "seed");
    freeprob->add_option("--order", f_order, "moment order / partition size");
    freeprob->add_option("--D", f_dim, "walk rank");
    freeprob->add_option("--t", f_steps, "walk steps");
    freeprob->add_option("--pattern", f_pattern, "fock word, e.g. abab");
    freeprob->add_option("--csv", f_csv, "moment table CSV path");
    add_output_options(freeprob, out);

    auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance criteria");
    std::string st_only;
    bool st_strict = false;
    selftest_cmd->add_option("--only", st_only, "restrict to one module tag");
    selftest_cmd->add_flag("--strict", st_strict, "gate on the documented known-red clause too");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (coding->parsed())
            return run_coding(coding_op, lengths_csv, dist_spec, dist_q_spec, coding_n,
                              coding_eps, ns_csv, out);
        if (randtest->parsed()) return run_randtest(rt_in, rt_battery, out);
        if (prg->parsed())
            return run_prg(prg_kind, prg_a, prg_b, prg_n, seed, prg_count, prg_digits, prg_p,
                           prg_q, prg_width, prg_emit, prg_out_bits, out);
        if (gamble->parsed()) return run_gamble(g_strategy, g_table, g_in, g_ext, out);
        if (shift->parsed()) return run_shift_entropy(sh_kind, sh_e, sh_p, sh_n, seed, sh_k, out);
        if (qinfo->parsed()) return run_qinfo(q_op, q_a, q_b, q_ens, q_r, q_grid, out);
        if (casino->parsed())
            return run_casino(c_kind, c_eps, c_scale, c_strategy, c_turns, seed, c_replay, c_mc,
                              c_csv, out);
        if (freeprob->parsed())
            return run_freeprob(f_op, f_ensemble, f_n, f_draws, seed, f_order, f_dim, f_steps,
                                f_pattern, f_csv, out);
        if (selftest_cmd->parsed()) {
            auto summary = rwb::selftest::run(rwb::selftest::Tolerances{}, st_only);
            int unexpected = 0;
            for (const auto& r : summary.results) {
                if (r.pass) continue;
                bool known = r.name == "epr-bell" &&
                             r.detail.find("anti-correlated coins witness") != std::string::npos;
                if (known && !st_strict) {
                    std::printf("      %2d %-26s known-red clause (see decisions record)\n",
                                r.number, r.name.c_str());
                    continue;
                }
                ++unexpected;
            }
            std::printf("selftest: %d passed, %d failed (%d unexpected)\n", summary.passed,
                        summary.failed, unexpected);
            return unexpected == 0 ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const Json::exception& e) {
        std::fprintf(stderr, "usage error: malformed JSON input (%s)\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
