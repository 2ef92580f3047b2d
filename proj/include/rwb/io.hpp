#pragma once

#include "rwb/bits.hpp"
#include "rwb/cmatrix.hpp"
#include "rwb/coding.hpp"
#include "rwb/quantum.hpp"
#include "rwb/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwb {

// --- bit-stream files -----------------------------------------------------------
// ASCII format: '0'/'1' characters, whitespace ignored, optional '#' header
// lines. Packed format: magic "BST1", 8-byte little-endian bit count, then
// bits MSB-first per byte.

inline BitString parse_ascii_bits(std::istream& in) {
    std::vector<uint8_t> bits;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        for (char c : line) {
            if (c == '0')
                bits.push_back(0);
            else if (c == '1')
                bits.push_back(1);
            else if (!std::isspace(static_cast<unsigned char>(c)))
                throw std::invalid_argument(std::string("bit file: bad character '") + c + "'");
        }
    }
    return BitString(std::move(bits));
}

inline constexpr char kPackedMagic[4] = {'B', 'S', 'T', '1'};

inline void write_packed_bits(std::ostream& out, const BitString& x) {
    out.write(kPackedMagic, 4);
    uint64_t n = x.size();
    for (int i = 0; i < 8; ++i) out.put(char((n >> (8 * i)) & 0xFF));
    uint8_t acc = 0;
    int filled = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc = uint8_t((acc << 1) | x[i]);
        if (++filled == 8) {
            out.put(char(acc));
            acc = 0;
            filled = 0;
        }
    }
    if (filled) out.put(char(acc << (8 - filled)));
}

inline BitString read_packed_bits(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != std::string(kPackedMagic, 4))
        throw std::invalid_argument("packed bit file: bad magic");
    uint64_t n = 0;
    for (int i = 0; i < 8; ++i) {
        int c = in.get();
        if (c < 0) throw std::invalid_argument("packed bit file: truncated header");
        n |= uint64_t(uint8_t(c)) << (8 * i);
    }
    std::vector<uint8_t> bits;
    bits.reserve(n);
    while (bits.size() < n) {
        int c = in.get();
        if (c < 0) throw std::invalid_argument("packed bit file: truncated body");
        for (int i = 7; i >= 0 && bits.size() < n; --i) bits.push_back(uint8_t((c >> i) & 1));
    }
    return BitString(std::move(bits));
}

inline BitString load_bits(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open bit file " + path);
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    in.clear();
    in.seekg(0);
    if (std::string(magic, 4) == std::string(kPackedMagic, 4)) return read_packed_bits(in);
    return parse_ascii_bits(in);
}

inline void save_bits_ascii(const std::string& path, const BitString& x, unsigned wrap = 64) {
    std::ostringstream os;
    for (std::size_t i = 0; i < x.size(); ++i) {
        os << (x[i] ? '1' : '0');
        if (wrap && (i + 1) % wrap == 0) os << '\n';
    }
    if (!x.empty() && (wrap == 0 || x.size() % wrap)) os << '\n';
    write_file_atomic(path, os.str());
}

// --- distributions ----------------------------------------------------------------
// JSON array of weights, or {"labels": [...], "weights": [...]}; exact mode
// uses strings "p/q".

inline Distribution distribution_from_json(const Json& j) {
    const Json* weights = nullptr;
    std::vector<std::string> labels;
    if (j.is_array()) {
        weights = &j;
    } else if (j.is_object() && j.contains("weights")) {
        weights = &j["weights"];
        if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    } else {
        throw std::invalid_argument("distribution JSON: expected array or {labels, weights}");
    }
    bool exact = true;
    for (const auto& w : *weights) exact = exact && w.is_string();
    Distribution d;
    if (exact) {
        std::vector<Rat> r;
        for (const auto& w : *weights) r.push_back(parse_rat(w.get<std::string>()));
        d = Distribution::from_exact(std::move(r));
    } else {
        std::vector<double> w;
        for (const auto& x : *weights) w.push_back(x.get<double>());
        d = Distribution::from_weights(std::move(w));
    }
    d.labels = std::move(labels);
    return d;
}

// --- matrices, states, ensembles ----------------------------------------------------
// {"dim": d, "entries": [[[re, im], ...], ...]}

inline CMatrix cmatrix_from_json(const Json& j) {
    std::size_t d = j.at("dim").get<std::size_t>();
    const Json& rows = j.at("entries");
    if (rows.size() != d) throw std::invalid_argument("matrix JSON: row count mismatch");
    CMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d) throw std::invalid_argument("matrix JSON: column count mismatch");
        for (std::size_t k = 0; k < d; ++k) {
            const Json& e = rows[i][k];
            if (e.is_number()) {
                m(i, k) = Cx(e.get<double>(), 0);
            } else {
                if (e.size() != 2) throw std::invalid_argument("matrix JSON: entry must be [re, im]");
                m(i, k) = Cx(e[0].get<double>(), e[1].get<double>());
            }
        }
    }
    return m;
}

inline Json cmatrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return Json{{"dim", m.dim()}, {"entries", rows}};
}

inline Ensemble ensemble_from_json(const Json& j) {
    Ensemble e;
    for (const auto& w : j.at("weights")) e.weights.push_back(w.get<double>());
    for (const auto& s : j.at("states")) e.states.emplace_back(cmatrix_from_json(s), 1e-8);
    e.validate();
    return e;
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace rwb
