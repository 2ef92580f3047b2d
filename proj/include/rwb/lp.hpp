#pragma once

#include "rwb/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace rwb {

// Exact rational feasibility of { A x = b, x >= 0 } via phase-1 simplex with
// Bland's rule. Feasible systems yield a witness x; infeasible systems yield a
// Farkas certificate y with y^T A <= 0 and y^T b > 0. Both are re-verified
// exactly before being returned.
struct LpFeasibility {
    bool feasible = false;
    std::vector<Rat> witness;      // x with A x = b, x >= 0 (when feasible)
    std::vector<Rat> certificate;  // y with y^T A <= 0, y^T b > 0 (when infeasible)
};

inline LpFeasibility lp_feasibility(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    std::size_t m = a.size();
    if (m == 0) throw std::invalid_argument("lp_feasibility: no constraints");
    std::size_t n = a.front().size();
    for (auto& row : a)
        if (row.size() != n) throw std::invalid_argument("lp_feasibility: ragged matrix");

    // flip rows so b >= 0
    std::vector<int> flip(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            flip[i] = -1;
            b[i] = -b[i];
            for (auto& v : a[i]) v = -v;
        }
    }

    // tableau over columns [x (n) | artificials (m) | rhs], phase-1 objective
    // minimizes the artificial sum
    std::size_t cols = n + m + 1;
    std::vector<std::vector<Rat>> t(m, std::vector<Rat>(cols, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    // reduced-cost row for the phase-1 objective: z_j - c_j
    std::vector<Rat> z(cols, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cols; ++j) z[j] += t[i][j];
    for (std::size_t j = n; j < n + m; ++j) z[j] -= 1;  // c = 1 on artificials

    for (;;) {
        // Bland: smallest index with positive reduced profit (minimization:
        // entering column has z_j - c_j > 0; c_j = 0 for x, 1 for artificials)
        std::size_t enter = cols;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (z[j] > 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;  // optimal
        // ratio test with Bland tie-break on basis index
        std::size_t leave = m;
        Rat best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rat ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) throw std::runtime_error("lp_feasibility: unbounded phase-1");
        // pivot
        Rat piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        Rat fz = z[enter];
        for (std::size_t j = 0; j < cols; ++j) z[j] -= fz * t[leave][j];
        basis[leave] = enter;
    }

    Rat objective = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objective += t[i][cols - 1];

    LpFeasibility out;
    if (objective == 0) {
        out.feasible = true;
        out.witness.assign(n, Rat(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) out.witness[basis[i]] = t[i][cols - 1];
        // exact re-verification
        for (std::size_t i = 0; i < m; ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < n; ++j) s += a[i][j] * out.witness[j];
            if (s != b[i]) throw std::runtime_error("lp_feasibility: witness check failed");
        }
        for (const Rat& x : out.witness)
            if (x < 0) throw std::runtime_error("lp_feasibility: negative witness entry");
    } else {
        out.feasible = false;
        // dual vector from artificial reduced costs: z_j - c_j = y_j - 1
        out.certificate.assign(m, Rat(0));
        for (std::size_t i = 0; i < m; ++i) {
            Rat y = z[n + i] + 1;
            out.certificate[i] = y * flip[i];  // undo the row flips
        }
        // exact Farkas check against the caller's system
        Rat yb = 0;
        std::vector<Rat> ya(n, Rat(0));
        for (std::size_t i = 0; i < m; ++i) {
            Rat yi = out.certificate[i];
            yb += yi * (flip[i] < 0 ? -b[i] : b[i]);
            for (std::size_t j = 0; j < n; ++j)
                ya[j] += yi * (flip[i] < 0 ? -a[i][j] : a[i][j]);
        }
        if (yb <= 0) throw std::runtime_error("lp_feasibility: certificate has y^T b <= 0");
        for (const Rat& v : ya)
            if (v > 0) throw std::runtime_error("lp_feasibility: certificate violates y^T A <= 0");
    }
    return out;
}

}  // namespace rwb
