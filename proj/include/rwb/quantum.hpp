#pragma once

#include "rwb/cmatrix.hpp"
#include "rwb/coding.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rwb {

// positive unit-trace operator; validation tolerances are state-space scale,
// not machine epsilon
class DensityOperator {
  public:
    explicit DensityOperator(CMatrix rho, double tol = 1e-10) : rho_(std::move(rho)) {
        if (!rho_.is_hermitian(tol)) throw std::invalid_argument("DensityOperator: not Hermitian");
        if (std::abs(rho_.trace() - Cx(1, 0)) > tol)
            throw std::invalid_argument("DensityOperator: trace must be 1");
        auto es = jacobi_hermitian(0.5 * (rho_ + rho_.dagger()));
        if (!es.values.empty() && es.values.front() < -tol)
            throw std::invalid_argument("DensityOperator: negative eigenvalue");
    }

    std::size_t dim() const { return rho_.dim(); }
    const CMatrix& matrix() const { return rho_; }

    static DensityOperator pure(const std::vector<Cx>& psi) {
        double n2 = 0;
        for (const Cx& z : psi) n2 += std::norm(z);
        if (n2 <= 0) throw std::invalid_argument("DensityOperator::pure: zero vector");
        CMatrix m(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i)
            for (std::size_t j = 0; j < psi.size(); ++j)
                m(i, j) = psi[i] * std::conj(psi[j]) / n2;
        return DensityOperator(std::move(m));
    }

    static DensityOperator maximally_mixed(std::size_t d) {
        return DensityOperator((1.0 / double(d)) * CMatrix::identity(d));
    }

  private:
    CMatrix rho_;
};

struct Ensemble {
    std::vector<double> weights;
    std::vector<DensityOperator> states;

    void validate() const {
        if (weights.size() != states.size())
            throw std::invalid_argument("Ensemble: weight/state count mismatch");
        double s = 0;
        for (double w : weights) {
            if (!(w >= 0)) throw std::invalid_argument("Ensemble: negative weight");
            s += w;
        }
        if (std::fabs(s - 1.0) > 1e-10) throw std::invalid_argument("Ensemble: weights must sum to 1");
        for (const auto& st : states)
            if (st.dim() != states.front().dim())
                throw std::invalid_argument("Ensemble: dimension mismatch");
    }

    DensityOperator mean_state() const {
        CMatrix m(states.front().dim());
        for (std::size_t i = 0; i < states.size(); ++i) m = m + weights[i] * states[i].matrix();
        return DensityOperator(std::move(m));
    }
};

// operator family with sum V_i^dag V_i = I; doubles as a Kraus channel
struct OperatorSum {
    std::vector<CMatrix> ops;

    void validate(double tol = 1e-8) const {
        if (ops.empty()) throw std::invalid_argument("OperatorSum: empty");
        CMatrix s(ops.front().dim());
        for (const auto& v : ops) s = s + v.dagger() * v;
        if ((s - CMatrix::identity(s.dim())).max_abs() > tol)
            throw std::invalid_argument("OperatorSum: completeness fails");
    }
};

using KrausChannel = OperatorSum;
using Opu = OperatorSum;

// --- Bloch sphere ---------------------------------------------------------------

inline DensityOperator bloch(double rx, double ry, double rz) {
    double n = std::sqrt(rx * rx + ry * ry + rz * rz);
    if (n > 1.0 + 1e-12) throw std::domain_error("bloch: vector outside the unit ball");
    CMatrix m(2);
    m(0, 0) = Cx(0.5 * (1.0 + rz), 0);
    m(1, 1) = Cx(0.5 * (1.0 - rz), 0);
    m(0, 1) = Cx(0.5 * rx, -0.5 * ry);
    m(1, 0) = Cx(0.5 * rx, 0.5 * ry);
    return DensityOperator(std::move(m), 1e-9);
}

inline std::array<double, 3> bloch_inverse(const DensityOperator& rho) {
    const CMatrix& m = rho.matrix();
    if (m.dim() != 2) throw std::invalid_argument("bloch_inverse: qubit states only");
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

// --- distances -------------------------------------------------------------------

inline double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    auto es = jacobi_hermitian(a.matrix() - b.matrix());
    double s = 0;
    for (double v : es.values) s += std::fabs(v);
    return 0.5 * s;
}

inline double fidelity(const DensityOperator& a, const DensityOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    CMatrix sa = hermitian_function(a.matrix(), [](double x) { return std::sqrt(std::max(0.0, x)); });
    CMatrix inner = sa * b.matrix() * sa;
    auto es = jacobi_hermitian(0.5 * (inner + inner.dagger()));
    double f = 0;
    for (double v : es.values) f += std::sqrt(std::max(0.0, v));
    return std::min(1.0, f);
}

inline double angle_distance(const DensityOperator& a, const DensityOperator& b) {
    return std::acos(std::min(1.0, std::max(-1.0, fidelity(a, b))));
}

// --- entropies -------------------------------------------------------------------

// eigenvalues below 1e-14 are treated as exact zeros
inline double von_neumann_entropy(const DensityOperator& rho) {
    auto es = jacobi_hermitian(rho.matrix());
    double s = 0;
    for (double v : es.values)
        if (v > 1e-14) s -= v * std::log2(v);
    return s < 0 ? 0 : s;
}

inline double umegaki_relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("umegaki_relative_entropy: dimension mismatch");
    auto er = jacobi_hermitian(rho.matrix());
    auto es = jacobi_hermitian(sigma.matrix());
    std::size_t d = rho.dim();
    // support condition: supp(rho) <= supp(sigma)
    for (std::size_t k = 0; k < d; ++k) {
        if (es.values[k] > 1e-14) continue;
        // weight of rho on this null direction of sigma
        Cx amp = 0;
        double w = 0;
        for (std::size_t i = 0; i < d; ++i) {
            Cx s = 0;
            for (std::size_t j = 0; j < d; ++j) s += rho.matrix()(i, j) * es.vectors[k][j];
            amp += std::conj(es.vectors[k][i]) * s;
        }
        w = amp.real();
        if (w > 1e-12) return std::numeric_limits<double>::infinity();
    }
    double t1 = 0;
    for (double v : er.values)
        if (v > 1e-14) t1 += v * std::log2(v);
    double t2 = 0;
    for (std::size_t k = 0; k < d; ++k) {
        if (es.values[k] <= 1e-14) continue;
        Cx amp = 0;
        for (std::size_t i = 0; i < d; ++i) {
            Cx s = 0;
            for (std::size_t j = 0; j < d; ++j) s += rho.matrix()(i, j) * es.vectors[k][j];
            amp += std::conj(es.vectors[k][i]) * s;
        }
        t2 += amp.real() * std::log2(es.values[k]);
    }
    double val = t1 - t2;
    return val < 0 ? 0 : val;
}

// --- Holevo information and accessible information --------------------------------

inline double holevo_chi(const Ensemble& e) {
    e.validate();
    double mean_entropy = 0;
    for (std::size_t i = 0; i < e.states.size(); ++i)
        if (e.weights[i] > 0) mean_entropy += e.weights[i] * von_neumann_entropy(e.states[i]);
    double chi = von_neumann_entropy(e.mean_state()) - mean_entropy;
    return chi < 0 ? 0 : chi;
}

namespace detail {

// mutual information of the (preparation, outcome) joint under the projective
// measurement along Bloch direction n
inline double qubit_measurement_mi(const Ensemble& e, const std::array<double, 3>& n) {
    std::size_t k = e.states.size();
    std::vector<std::vector<double>> joint(k, std::vector<double>(2, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        auto r = bloch_inverse(e.states[i]);
        double dot = r[0] * n[0] + r[1] * n[1] + r[2] * n[2];
        double p_up = 0.5 * (1.0 + dot);
        p_up = std::min(1.0, std::max(0.0, p_up));
        joint[i][0] = e.weights[i] * p_up;
        joint[i][1] = e.weights[i] * (1.0 - p_up);
    }
    return joint_entropy_suite(joint).mutual;
}

}  // namespace detail

// Lower-bound search over rank-1 projective qubit measurements: a Fibonacci
// sphere grid followed by one local golden-section refinement pass in the
// spherical angles. Attains chi exactly for orthogonal decompositions.
inline double accessible_information(const Ensemble& e, unsigned grid_resolution = 128) {
    e.validate();
    if (e.states.front().dim() != 2)
        throw std::invalid_argument("accessible_information: qubit ensembles only");
    if (grid_resolution < 16)
        throw std::invalid_argument("accessible_information: grid resolution must be >= 16");
    double best = 0;
    std::array<double, 3> best_n{0, 0, 1};
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (unsigned i = 0; i < grid_resolution; ++i) {
        double z = 1.0 - 2.0 * (double(i) + 0.5) / double(grid_resolution);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden * double(i);
        std::array<double, 3> n{r * std::cos(phi), r * std::sin(phi), z};
        double mi = detail::qubit_measurement_mi(e, n);
        if (mi > best) {
            best = mi;
            best_n = n;
        }
    }
    // golden-section refinement in (theta, phi) around the best grid point
    double theta = std::acos(std::min(1.0, std::max(-1.0, best_n[2])));
    double phi = std::atan2(best_n[1], best_n[0]);
    double span_theta = M_PI / std::sqrt(double(grid_resolution));
    double span_phi = span_theta * 2.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval = [&](double th, double ph) {
        std::array<double, 3> n{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                std::cos(th)};
        return detail::qubit_measurement_mi(e, n);
    };
    for (int round = 0; round < 2; ++round) {
        for (int axis = 0; axis < 2; ++axis) {
            double lo = (axis == 0 ? theta - span_theta : phi - span_phi);
            double hi = (axis == 0 ? theta + span_theta : phi + span_phi);
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = (axis == 0 ? eval(x1, phi) : eval(theta, x1));
            double f2 = (axis == 0 ? eval(x2, phi) : eval(theta, x2));
            for (int it = 0; it < 40; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = (axis == 0 ? eval(x2, phi) : eval(theta, x2));
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = (axis == 0 ? eval(x1, phi) : eval(theta, x1));
                }
            }
            double mid = 0.5 * (lo + hi);
            double fm = (axis == 0 ? eval(mid, phi) : eval(theta, mid));
            if (fm > best) {
                best = fm;
                (axis == 0 ? theta : phi) = mid;
            }
        }
        span_theta *= 0.25;
        span_phi *= 0.25;
    }
    return best;
}

// --- channels and measurements -----------------------------------------------------

// state picture: rho -> sum V_i rho V_i^dag
inline DensityOperator apply_channel(const KrausChannel& c, const DensityOperator& rho) {
    c.validate();
    if (c.ops.front().dim() != rho.dim())
        throw std::invalid_argument("apply_channel: dimension mismatch");
    CMatrix out(rho.dim());
    for (const auto& v : c.ops) out = out + v * rho.matrix() * v.dagger();
    return DensityOperator(std::move(out), 1e-8);
}

// outcome probabilities p_i = Tr(V_i rho V_i^dag) = Tr(rho V_i^dag V_i)
inline Distribution opu_probabilities(const Opu& opu, const DensityOperator& rho) {
    opu.validate();
    if (opu.ops.front().dim() != rho.dim())
        throw std::invalid_argument("opu_probabilities: dimension mismatch");
    std::vector<double> p;
    p.reserve(opu.ops.size());
    double total = 0;
    for (const auto& v : opu.ops) {
        double x = (v * rho.matrix() * v.dagger()).trace().real();
        x = std::max(0.0, x);
        p.push_back(x);
        total += x;
    }
    for (double& x : p) x /= total;  // renormalize roundoff
    return Distribution::from_weights(std::move(p));
}

// --- Schatten decomposition --------------------------------------------------------

// weights are eigenvalues in descending order; degenerate eigenbases are made
// canonical by phase-fixing each eigenvector and ordering lexicographically
inline Ensemble schatten_decomposition(const DensityOperator& rho) {
    auto es = jacobi_hermitian(rho.matrix());
    std::size_t d = rho.dim();
    struct Item {
        double value;
        std::vector<Cx> vec;
    };
    std::vector<Item> items;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Cx> v = es.vectors[k];
        // phase convention: first component of significant magnitude is real positive
        for (std::size_t i = 0; i < d; ++i) {
            if (std::abs(v[i]) > 1e-9) {
                Cx ph = std::conj(v[i]) / std::abs(v[i]);
                for (auto& z : v) z *= ph;
                break;
            }
        }
        items.push_back({es.values[k], std::move(v)});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (std::fabs(a.value - b.value) > 1e-12) return a.value > b.value;
        for (std::size_t i = 0; i < a.vec.size(); ++i) {
            if (std::fabs(a.vec[i].real() - b.vec[i].real()) > 1e-9)
                return a.vec[i].real() > b.vec[i].real();
            if (std::fabs(a.vec[i].imag() - b.vec[i].imag()) > 1e-9)
                return a.vec[i].imag() > b.vec[i].imag();
        }
        return false;
    });
    Ensemble e;
    for (auto& it : items) {
        double w = std::max(0.0, it.value);
        e.weights.push_back(w);
        e.states.push_back(DensityOperator::pure(it.vec));
    }
    // renormalize tiny eigenvalue roundoff
    double s = 0;
    for (double w : e.weights) s += w;
    for (double& w : e.weights) w /= s;
    return e;
}

// --- conditional expectation (Hilbert-Schmidt projection) ---------------------------

// Orthogonal projection onto span(basis) under <a|b> = tau_n(a^dag b). The
// projection is idempotent by construction, unital when the identity lies in
// the span, and restricts to the identity on the span.
class ConditionalExpectation {
  public:
    explicit ConditionalExpectation(const std::vector<CMatrix>& basis) {
        if (basis.empty()) throw std::invalid_argument("ConditionalExpectation: empty basis");
        d_ = basis.front().dim();
        for (const CMatrix& b : basis) {
            if (b.dim() != d_) throw std::invalid_argument("ConditionalExpectation: dim mismatch");
            CMatrix v = b;
            for (const CMatrix& o : ortho_) v = v - hs_inner(o, v) * o;
            double nrm = std::sqrt(hs_inner(v, v).real());
            if (nrm < 1e-10) continue;  // dependent direction
            ortho_.push_back((1.0 / nrm) * v);
        }
        if (ortho_.empty())
            throw std::invalid_argument("ConditionalExpectation: degenerate basis");
    }

    CMatrix operator()(const CMatrix& a) const {
        if (a.dim() != d_) throw std::invalid_argument("ConditionalExpectation: dim mismatch");
        CMatrix out(d_);
        for (const CMatrix& o : ortho_) out = out + hs_inner(o, a) * o;
        return out;
    }

    std::size_t rank() const { return ortho_.size(); }

    // tau_n(a^dag b): normalized-trace Hilbert-Schmidt product
    static Cx hs_inner(const CMatrix& a, const CMatrix& b) {
        Cx s = 0;
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) s += std::conj(a(i, j)) * b(i, j);
        return s / double(a.dim());
    }

  private:
    std::size_t d_;
    std::vector<CMatrix> ortho_;
};

}  // namespace rwb
