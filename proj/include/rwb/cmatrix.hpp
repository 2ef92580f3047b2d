#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace rwb {

using Cx = std::complex<double>;

// Dense square complex matrix, row-major.
class CMatrix {
  public:
    CMatrix() : d_(0) {}
    explicit CMatrix(std::size_t d) : d_(d), a_(d * d, Cx(0, 0)) {}
    CMatrix(std::size_t d, std::vector<Cx> entries) : d_(d), a_(std::move(entries)) {
        if (a_.size() != d * d) throw std::invalid_argument("CMatrix: size mismatch");
    }

    static CMatrix identity(std::size_t d) {
        CMatrix m(d);
        for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return d_; }
    Cx& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
    const Cx& operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
    const std::vector<Cx>& data() const { return a_; }

    CMatrix dagger() const {
        CMatrix m(d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    Cx trace() const {
        Cx t = 0;
        for (std::size_t i = 0; i < d_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const Cx& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0;
        for (const Cx& z : a_) s = std::max(s, std::abs(z));
        return s;
    }

    bool is_hermitian(double tol = 1e-10) const {
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = i; j < d_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    friend CMatrix operator+(const CMatrix& x, const CMatrix& y) {
        check_dims(x, y);
        CMatrix m(x.d_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = x.a_[i] + y.a_[i];
        return m;
    }
    friend CMatrix operator-(const CMatrix& x, const CMatrix& y) {
        check_dims(x, y);
        CMatrix m(x.d_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = x.a_[i] - y.a_[i];
        return m;
    }
    friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
        check_dims(x, y);
        std::size_t d = x.d_;
        CMatrix m(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                Cx xv = x(i, k);
                if (xv == Cx(0, 0)) continue;
                for (std::size_t j = 0; j < d; ++j) m(i, j) += xv * y(k, j);
            }
        return m;
    }
    friend CMatrix operator*(Cx s, const CMatrix& x) {
        CMatrix m(x.d_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = s * x.a_[i];
        return m;
    }
    friend CMatrix operator*(double s, const CMatrix& x) { return Cx(s, 0) * x; }

    static CMatrix tensor(const CMatrix& x, const CMatrix& y) {
        std::size_t dx = x.d_, dy = y.d_;
        CMatrix m(dx * dy);
        for (std::size_t i = 0; i < dx; ++i)
            for (std::size_t j = 0; j < dx; ++j)
                for (std::size_t k = 0; k < dy; ++k)
                    for (std::size_t l = 0; l < dy; ++l)
                        m(i * dy + k, j * dy + l) = x(i, j) * y(k, l);
        return m;
    }

  private:
    static void check_dims(const CMatrix& x, const CMatrix& y) {
        if (x.d_ != y.d_) throw std::invalid_argument("CMatrix: dimension mismatch");
    }
    std::size_t d_;
    std::vector<Cx> a_;
};

inline CMatrix pauli_x() { return CMatrix(2, {Cx(0), Cx(1), Cx(1), Cx(0)}); }
inline CMatrix pauli_y() { return CMatrix(2, {Cx(0), Cx(0, -1), Cx(0, 1), Cx(0)}); }
inline CMatrix pauli_z() { return CMatrix(2, {Cx(1), Cx(0), Cx(0), Cx(-1)}); }

struct EigenSystem {
    std::vector<double> values;           // ascending
    std::vector<std::vector<Cx>> vectors; // vectors[k] is the k-th eigenvector
};

// --- cyclic Jacobi for Hermitian matrices (small dimensions) --------------------

// Annihilates off-diagonal entries with unitary plane rotations until the
// off-diagonal Frobenius mass drops below tol.
inline EigenSystem jacobi_hermitian(CMatrix a, double tol = 1e-12) {
    std::size_t d = a.dim();
    if (!a.is_hermitian(1e-8)) throw std::invalid_argument("jacobi_hermitian: not Hermitian");
    CMatrix v = CMatrix::identity(d);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) < tol) break;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                Cx apq = a(p, q);
                double abs_apq = std::abs(apq);
                if (abs_apq < tol * 1e-4) continue;
                Cx phase = apq / abs_apq;  // e^{i arg apq}
                double app = a(p, p).real(), aqq = a(q, q).real();
                double tau = (aqq - app) / (2.0 * abs_apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // columns: [p q] <- [p q] * [[c, s*phase],[-s*conj(phase), c]]
                for (std::size_t i = 0; i < d; ++i) {
                    Cx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                for (std::size_t j = 0; j < d; ++j) {
                    Cx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * std::conj(phase) * apj + c * aqj;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    Cx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(phase) * viq;
                    v(i, q) = s * phase * vip + c * viq;
                }
            }
        }
    }
    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenSystem es;
    es.values.resize(d);
    es.vectors.assign(d, std::vector<Cx>(d));
    for (std::size_t k = 0; k < d; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < d; ++i) es.vectors[k][i] = v(i, order[k]);
    }
    return es;
}

// --- Householder tridiagonalization + implicit QL (large spectra) ---------------

// Eigenvalues only; suited to the random-matrix spectra where only the
// spectral measure matters.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    std::size_t n = m.dim();
    std::vector<std::vector<Cx>> a(n, std::vector<Cx>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    std::vector<double> diag(n, 0.0), off(n, 0.0);

    // reduce to Hermitian tridiagonal form working on lower columns
    for (std::size_t k = 0; k + 2 <= n; ++k) {
        // x = a[k+1..n-1][k]
        double xnorm2 = 0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a[i][k]);
        diag[k] = a[k][k].real();
        if (xnorm2 < 1e-300) {
            off[k + 1] = 0.0;
            continue;
        }
        double xnorm = std::sqrt(xnorm2);
        Cx x0 = a[k + 1][k];
        Cx alpha = (std::abs(x0) > 0) ? Cx(-x0 / std::abs(x0) * xnorm) : Cx(-xnorm, 0);
        // Householder vector u = x - alpha e1
        std::vector<Cx> u(n, Cx(0));
        double unorm2 = 0;
        for (std::size_t i = k + 1; i < n; ++i) {
            u[i] = a[i][k];
            if (i == k + 1) u[i] -= alpha;
            unorm2 += std::norm(u[i]);
        }
        if (unorm2 < 1e-300) {
            off[k + 1] = std::abs(alpha);
            continue;
        }
        // P = I - 2 u u^dag / |u|^2; apply A <- P A P through the rank-2 form
        std::vector<Cx> w(n, Cx(0));
        for (std::size_t i = k + 1; i < n; ++i) {
            Cx s = 0;
            for (std::size_t j = k + 1; j < n; ++j) s += a[i][j] * u[j];
            w[i] = s * (2.0 / unorm2);
        }
        Cx K = 0;
        for (std::size_t i = k + 1; i < n; ++i) K += std::conj(u[i]) * w[i];
        K /= unorm2;
        for (std::size_t i = k + 1; i < n; ++i) w[i] -= K * u[i];
        // A <- A - u v^dag - v u^dag  (rank-2 update on the trailing block)
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] -= u[i] * std::conj(w[j]) + w[i] * std::conj(u[j]);
        a[k + 1][k] = alpha;
        a[k][k + 1] = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            a[i][k] = 0;
            a[k][i] = 0;
        }
        off[k + 1] = std::abs(alpha);  // phase-rotate to a real subdiagonal
    }
    if (n >= 2) diag[n - 2] = a[n - 2][n - 2].real();
    if (n >= 1) diag[n - 1] = a[n - 1][n - 1].real();
    if (n >= 2 && off[n - 1] == 0.0) off[n - 1] = std::abs(a[n - 1][n - 2]);

    // implicit QL with Wilkinson shifts on the real tridiagonal (d, e)
    std::vector<double> d_ = diag, e = off;  // e[1..n-1] subdiagonals
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    if (n > 0) e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        for (int iter = 0; iter < 80; ++iter) {
            std::size_t mIdx = l;
            for (; mIdx + 1 < n; ++mIdx) {
                double dd = std::fabs(d_[mIdx]) + std::fabs(d_[mIdx + 1]);
                if (std::fabs(e[mIdx]) <= 1e-15 * dd) break;
            }
            if (mIdx == l) break;
            double g = (d_[l + 1] - d_[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d_[mIdx] - d_[l] + e[l] / (g + (g >= 0 ? r : -r));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = mIdx; i-- > l;) {
                double f = s * e[i], b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d_[i + 1] -= p;
                    e[mIdx] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d_[i + 1] - p;
                r = (d_[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d_[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d_[l] -= p;
            e[l] = g;
            e[mIdx] = 0.0;
        }
    }
    std::sort(d_.begin(), d_.end());
    return d_;
}

// largest singular value via the Hermitian spectrum of A^dag A
inline double operator_norm(const CMatrix& a) {
    CMatrix g = a.dagger() * a;
    std::size_t d = a.dim();
    EigenSystem es = jacobi_hermitian(0.5 * (g + g.dagger()));
    double top = es.values.empty() ? 0.0 : es.values[d - 1];
    return std::sqrt(std::max(0.0, top));
}

// largest eigenvalue magnitude of a general (not necessarily normal) 2x2
// matrix via the quadratic formula on its characteristic polynomial
inline double spectral_radius_2x2(const CMatrix& a) {
    if (a.dim() != 2) throw std::invalid_argument("spectral_radius_2x2: need 2x2");
    Cx tr = a(0, 0) + a(1, 1);
    Cx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    Cx disc = std::sqrt(tr * tr - 4.0 * det);
    return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
}

// quadratic-formula spectrum for 2x2 Hermitian matrices; cross-checks Jacobi
inline std::pair<double, double> charpoly_eigenvalues_2x2(const CMatrix& a) {
    if (a.dim() != 2) throw std::invalid_argument("charpoly_eigenvalues_2x2: need 2x2");
    double tr = (a(0, 0) + a(1, 1)).real();
    double det = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {tr / 2.0 - disc, tr / 2.0 + disc};
}

// Hermitian matrix function f applied through the spectral decomposition
template <typename F>
inline CMatrix hermitian_function(const CMatrix& a, F f, double tol = 1e-12) {
    EigenSystem es = jacobi_hermitian(a, tol);
    std::size_t d = a.dim();
    CMatrix out(d);
    for (std::size_t k = 0; k < d; ++k) {
        double fv = f(es.values[k]);
        if (fv == 0.0) continue;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                out(i, j) += fv * es.vectors[k][i] * std::conj(es.vectors[k][j]);
    }
    return out;
}

}  // namespace rwb
