#pragma once

// Dense referee algorithms: implicit-shift QL for symmetric tridiagonal
// matrices, diagonal-similarity symmetrization of the pair Hamiltonian, and
// one-sided Jacobi SVD for small matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "lhy/error.hpp"
#include "lhy/hamiltonians.hpp"
#include "lhy/matrix.hpp"

namespace lhy::oracle {

struct TridiagEigen {
    std::vector<double> values;   ///< ascending
    Matrix<double> vectors;       ///< column j belongs to values[j]; empty unless requested
};

/// Eigen-decomposition of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal (offdiag[i] couples rows i and i+1).
inline TridiagEigen sym_tridiag_eig(std::vector<double> d, std::vector<double> e, bool want_vectors = false) {
    const std::size_t n = d.size();
    require(n > 0, "sym_tridiag_eig: empty matrix");
    require(e.size() + 1 == n, "sym_tridiag_eig: off-diagonal must have n-1 entries");
    e.push_back(0.0);

    Matrix<double> z;
    if (want_vectors) z = Matrix<double>::identity(n);

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                require(++iter < 60, "sym_tridiag_eig: QL iteration failed to converge");
                // Wilkinson-style shift from the leading 2x2 block.
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (want_vectors) {
                        for (std::size_t k = 0; k < n; ++k) {
                            f = z(k, i + 1);
                            z(k, i + 1) = s * z(k, i) + c * f;
                            z(k, i) = c * z(k, i) - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    TridiagEigen out;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.values[j] = d[order[j]];
    if (want_vectors) {
        out.vectors = Matrix<double>(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = z(k, order[j]);
    }
    return out;
}

struct SymmetrizedTridiag {
    std::vector<double> diag;
    std::vector<double> offdiag;
    /// log10 of the largest / smallest diagonal similarity factor relative to
    /// the first one; large magnitudes warn of overflow in back-transformed vectors.
    double log10_scale_max = 0.0;
    double log10_scale_min = 0.0;
};

/// D^-1 M D with D diagonal, turning the nonsymmetric H^(alpha) matrix
/// (y1, y2 > 0) into a symmetric one with off-diagonals sqrt(y1 y2) sqrt((p+s+1)(s+1)).
inline SymmetrizedTridiag symmetrize_tridiag(const HabMatrix& m) {
    require(m.y1 > 0.0 && m.y2 > 0.0,
            "symmetrize_tridiag needs y1, y2 > 0; use the diagonal read-off when y2 = 0");
    SymmetrizedTridiag out;
    out.diag = m.diag;
    out.offdiag.resize(m.super.size());
    double log_scale = 0.0;
    const double step = 0.5 * std::log10(m.y2 / m.y1);
    for (std::size_t s = 0; s < m.super.size(); ++s) {
        out.offdiag[s] = std::sqrt(m.super[s] * m.sub[s]);
        log_scale += step;
        out.log10_scale_max = std::max(out.log10_scale_max, log_scale);
        out.log10_scale_min = std::min(out.log10_scale_min, log_scale);
    }
    return out;
}

/// Singular values (descending) by one-sided Jacobi rotations on the columns.
inline std::vector<double> svd_small(const Matrix<double>& a) {
    require(!a.empty(), "svd_small: empty matrix");
    require(a.rows() <= 64 && a.cols() <= 64, "svd_small: dimensions must be <= 64");
    // Work on the orientation with at most as many columns as rows.
    Matrix<double> u = a.cols() > a.rows() ? a.transpose() : a;
    const std::size_t m = u.rows();
    const std::size_t n = u.cols();
    const double tol = 1e-15;

    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += u(i, j) * u(i, j);
                    beta += u(i, k) * u(i, k);
                    gamma += u(i, j) * u(i, k);
                }
                if (gamma == 0.0) continue;
                const double rel = std::abs(gamma) / std::sqrt(alpha * beta);
                off = std::max(off, rel);
                if (rel < tol) continue;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double x = u(i, j);
                    const double y = u(i, k);
                    u(i, j) = c * x - s * y;
                    u(i, k) = s * x + c * y;
                }
            }
        if (off < tol) break;
    }

    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += u(i, j) * u(i, j);
        sv[j] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

/// Dense form of a tridiagonal matrix; used by the tests' trace checks.
inline Matrix<double> dense(const std::vector<double>& diag, const std::vector<double>& upper,
                            const std::vector<double>& lower) {
    const std::size_t n = diag.size();
    Matrix<double> m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = diag[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = upper[i];
        m(i + 1, i) = lower[i];
    }
    return m;
}

inline Matrix<double> dense(const HabMatrix& h) { return dense(h.diag, h.super, h.sub); }

} // namespace lhy::oracle
