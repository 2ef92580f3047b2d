#pragma once

#include "rwb/cmatrix.hpp"
#include "rwb/lp.hpp"
#include "rwb/quantum.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace rwb {

// Moment data of the six singlet-state spin observables
// q^A_i = sigma_i (x) I and q^B_i = I (x) sigma_i.
struct BellMomentTable {
    std::array<double, 6> first;            // E(q_i), order A1 A2 A3 B1 B2 B3
    std::array<std::array<double, 6>, 6> second;  // E(q_i q_j), real parts
    std::array<std::array<double, 6>, 6> second_imag;
};

inline DensityOperator singlet_state() {
    double s = 1.0 / std::sqrt(2.0);
    return DensityOperator::pure({Cx(0), Cx(s), Cx(-s), Cx(0)});
}

inline std::array<CMatrix, 6> bell_observables() {
    CMatrix id = CMatrix::identity(2);
    return {CMatrix::tensor(pauli_x(), id), CMatrix::tensor(pauli_y(), id),
            CMatrix::tensor(pauli_z(), id), CMatrix::tensor(id, pauli_x()),
            CMatrix::tensor(id, pauli_y()), CMatrix::tensor(id, pauli_z())};
}

inline BellMomentTable bell_moment_table() {
    DensityOperator rho = singlet_state();
    auto q = bell_observables();
    BellMomentTable t{};
    for (std::size_t i = 0; i < 6; ++i) {
        t.first[i] = (rho.matrix() * q[i]).trace().real();
        for (std::size_t j = 0; j < 6; ++j) {
            Cx v = (rho.matrix() * q[i] * q[j]).trace();
            t.second[i][j] = v.real();
            t.second_imag[i][j] = v.imag();
        }
    }
    return t;
}

// Feasibility of a classical model: six +-1 random variables on a 2^6-atom
// space reproducing the first moments and all pairwise second moments. Decided
// by exact rational LP; both outcomes carry an exactly verified certificate.
struct ClassicalModelCertificate {
    bool feasible = false;
    std::vector<Rat> atom_probabilities;  // 64 entries when feasible
    std::vector<Rat> farkas_dual;         // one entry per constraint otherwise
};

inline ClassicalModelCertificate classical_model_feasibility(
    const std::array<double, 6>& first, const std::array<std::array<double, 6>, 6>& second) {
    auto to_rat = [](double v) {
        // moment targets in this artifact are small integers up to roundoff
        long r = std::lround(v * 1024.0);
        return Rat(BigInt(r), 1024);
    };
    // diagonal second moments of +-1 variables are identically 1
    for (std::size_t i = 0; i < 6; ++i)
        if (to_rat(second[i][i]) != 1)
            return {false, {}, {Rat(1)}};  // trivially infeasible: E(v_i^2) != 1

    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    auto sign_of = [](unsigned atom, std::size_t var) { return (atom >> var) & 1u ? -1 : 1; };
    // normalization
    a.emplace_back(64, Rat(1));
    b.emplace_back(1);
    // first moments
    for (std::size_t i = 0; i < 6; ++i) {
        std::vector<Rat> row(64);
        for (unsigned w = 0; w < 64; ++w) row[w] = sign_of(w, i);
        a.push_back(std::move(row));
        b.push_back(to_rat(first[i]));
    }
    // pairwise second moments
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i + 1; j < 6; ++j) {
            std::vector<Rat> row(64);
            for (unsigned w = 0; w < 64; ++w) row[w] = sign_of(w, i) * sign_of(w, j);
            a.push_back(std::move(row));
            b.push_back(to_rat(0.5 * (second[i][j] + second[j][i])));
        }
    }
    LpFeasibility lp = lp_feasibility(std::move(a), std::move(b));
    ClassicalModelCertificate cert;
    cert.feasible = lp.feasible;
    cert.atom_probabilities = std::move(lp.witness);
    cert.farkas_dual = std::move(lp.certificate);
    return cert;
}

inline ClassicalModelCertificate classical_model_feasibility(const BellMomentTable& t) {
    return classical_model_feasibility(t.first, t.second);
}

}  // namespace rwb
