#pragma once

// Fixed-N sector spanned by |p+s, s, Ntot-p-2s> over the modes (k, -k, 0):
// the transformed particle-conserving operator, its closed-form eigenvectors,
// and exp(+-W) with W = (1/Ntot) P a0^2.

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "lhy/error.hpp"
#include "lhy/lattice.hpp"
#include "lhy/matrix.hpp"

namespace lhy {

struct WuSector {
    int Ntot = 1;
    int p = 0;
    Momentum k;

    WuSector() = default;
    WuSector(int Ntot_, int p_, Momentum k_) : Ntot(Ntot_), p(p_), k(k_) {
        require(Ntot >= 1, "WuSector: Ntot must be >= 1");
        require(p >= 0 && p <= Ntot, "WuSector: p must lie in [0, Ntot]");
        require(k.ksq > 0.0, "WuSector: k must be nonzero");
    }

    std::size_t dim() const noexcept { return static_cast<std::size_t>((Ntot - p) / 2) + 1; }
    /// Condensate occupation of basis element s.
    int n0(std::size_t s) const noexcept { return Ntot - p - 2 * static_cast<int>(s); }
};

struct WuCoupling {
    double ytilde = 0.0;
    bool free_limit = false;  ///< a = 0: no coupling, eigenvectors are basis vectors
};

/// ytilde(k) = 8 pi a / (L^3 eps_k).
inline WuCoupling wu_ytilde(const ModeParams& mode, const ModelParams& mp) {
    require(mode.ksq > 0.0, "wu_ytilde: k must be nonzero");
    if (mp.a() == 0.0) return {0.0, true};
    return {8.0 * pi * mp.a() / (mp.volume() * mode.epsilon), false};
}

/// Upper-triangular sector matrix: diagonal eps_k (2s+p), superdiagonal
///   T[s-1][s] = (8 pi a / L^3) sqrt((p+s) s) sqrt((N0+2)(N0+1)),  N0 = Ntot - p - 2s.
inline Matrix<double> build_transformed_wu(const WuSector& sec, const ModelParams& mp) {
    const ModeParams mode = mode_params(mp, sec.k);
    const double g = 8.0 * pi * mp.a() / mp.volume();
    const std::size_t d = sec.dim();
    Matrix<double> T(d, d);
    for (std::size_t s = 0; s < d; ++s) {
        T(s, s) = mode.epsilon * (2.0 * s + sec.p);
        if (s > 0) {
            const double n0 = sec.n0(s);
            T(s - 1, s) = g * std::sqrt((sec.p + double(s)) * s) * std::sqrt((n0 + 2.0) * (n0 + 1.0));
        }
    }
    return T;
}

/// Eigenvalues by diagonal read-off, eps_k (2s + p) for s = 0..dim-1.
inline std::vector<double> wu_spectrum(const WuSector& sec, const ModelParams& mp) {
    const ModeParams mode = mode_params(mp, sec.k);
    std::vector<double> out(sec.dim());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = mode.epsilon * (2.0 * s + sec.p);
    return out;
}

/// Readings of the combinatorial weight w_s in
///   v_s = ytilde^-s binom(n, s) w_s^(-1/2),  w_s = binom(p+s, s) binom(Ntot-p, 2s) x_s.
enum class WuWeight {
    OperatorDerived,  ///< x_s = (2s)! / 4^s; the reading that solves the sector eigenproblem
    InverseFactorial,  ///< x_s = 1 / (2s)!
    InverseTwiceFactorial,  ///< x_s = 1 / (2 s!)
};

inline std::string_view to_string(WuWeight w) {
    switch (w) {
        case WuWeight::OperatorDerived: return "OperatorDerived";
        case WuWeight::InverseFactorial: return "InverseFactorial";
        case WuWeight::InverseTwiceFactorial: return "InverseTwiceFactorial";
    }
    return "?";
}

/// Eigenvector of build_transformed_wu for eps_k (2 n_index + p); supported on s <= n_index.
/// In the free limit it is the basis vector e_{n_index}.
inline std::vector<double> wu_eigenstate(const WuSector& sec, const ModelParams& mp, std::size_t n_index,
                                         WuWeight weight = WuWeight::OperatorDerived) {
    require(n_index < sec.dim(), "wu_eigenstate: n_index outside the sector");
    std::vector<double> v(sec.dim(), 0.0);
    const WuCoupling c = wu_ytilde(mode_params(mp, sec.k), mp);
    if (c.free_limit) {
        v[n_index] = 1.0;
        return v;
    }
    const double M = sec.Ntot - sec.p;
    const double n = double(n_index);
    const double ly = std::log(c.ytilde);
    for (std::size_t s = 0; s <= n_index; ++s) {
        const double ds = double(s);
        const double log_binom_n = std::lgamma(n + 1) - std::lgamma(ds + 1) - std::lgamma(n - ds + 1);
        const double log_binom_p = std::lgamma(sec.p + ds + 1) - std::lgamma(ds + 1) - std::lgamma(sec.p + 1.0);
        const double log_binom_m = std::lgamma(M + 1) - std::lgamma(2 * ds + 1) - std::lgamma(M - 2 * ds + 1);
        double log_x = 0.0;
        switch (weight) {
            case WuWeight::OperatorDerived: log_x = std::lgamma(2 * ds + 1) - ds * std::log(4.0); break;
            case WuWeight::InverseFactorial: log_x = -std::lgamma(2 * ds + 1); break;
            case WuWeight::InverseTwiceFactorial: log_x = -std::log(2.0) - std::lgamma(ds + 1); break;
        }
        v[s] = std::exp(-ds * ly + log_binom_n - 0.5 * (log_binom_p + log_binom_m + log_x));
    }
    return v;
}

/// ||T v - E v|| / (||v|| max|T|).
inline double wu_relative_residual(const Matrix<double>& T, const std::vector<double>& v, double E) {
    const auto Tv = T.apply(v);
    double r = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        r += (Tv[i] - E * v[i]) * (Tv[i] - E * v[i]);
        nv += v[i] * v[i];
    }
    require(nv > 0.0, "wu_relative_residual: zero vector");
    return std::sqrt(r / nv) / std::max(T.max_abs(), 1.0);
}

/// Strictly lower-triangular W on the sector:
///   W[s+1][s] = -alpha/Ntot sqrt((p+s+1)(s+1)) sqrt(N0 (N0-1)),  N0 = Ntot - p - 2s.
inline Matrix<double> wu_w_matrix(const WuSector& sec, double alpha) {
    const std::size_t d = sec.dim();
    Matrix<double> W(d, d);
    for (std::size_t s = 0; s + 1 < d; ++s) {
        const double n0 = sec.n0(s);
        W(s + 1, s) = -alpha / sec.Ntot * std::sqrt((sec.p + s + 1.0) * (s + 1.0)) * std::sqrt(n0 * (n0 - 1.0));
    }
    return W;
}

/// exp(sign W) as the terminating series sum_{j < dim} (sign W)^j / j!.
inline Matrix<double> wu_exp_w_matrix(const WuSector& sec, double alpha, int sign = +1) {
    require(sign == 1 || sign == -1, "wu_exp_w: sign must be +1 or -1");
    const std::size_t d = sec.dim();
    const Matrix<double> W = double(sign) * wu_w_matrix(sec, alpha);
    Matrix<double> out = Matrix<double>::identity(d);
    Matrix<double> term = Matrix<double>::identity(d);
    for (std::size_t j = 1; j < d; ++j) {
        term = (1.0 / double(j)) * (term * W);
        out = out + term;
    }
    return out;
}

/// exp(sign W) state with alpha = alpha(k) of the sector mode.
inline std::vector<double> apply_exp_w(const WuSector& sec, const ModelParams& mp, const std::vector<double>& v,
                                       int sign = +1) {
    require(v.size() == sec.dim(), "apply_exp_w: dimension mismatch");
    return wu_exp_w_matrix(sec, mode_params(mp, sec.k).alpha, sign).apply(v);
}

} // namespace lhy
