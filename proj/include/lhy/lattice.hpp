#pragma once

// Momentum lattice of a periodic box and the scalar per-mode constants of the
// Lee-Huang-Yang pair Hamiltonian. Units: hbar = 2m = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <tuple>
#include <vector>

#include "lhy/error.hpp"

namespace lhy {

inline constexpr double pi = std::numbers::pi;

/// Lattice momentum k = 2*pi*n/L.
struct Momentum {
    std::array<int, 3> n{};
    std::array<double, 3> k{};
    double ksq = 0.0;

    double norm() const { return std::sqrt(ksq); }
    int nsq() const { return n[0] * n[0] + n[1] * n[1] + n[2] * n[2]; }
};

inline Momentum make_momentum(double L, std::array<int, 3> n) {
    require(L > 0.0, "box length must be positive");
    Momentum m;
    m.n = n;
    const double unit = 2.0 * pi / L;
    for (int i = 0; i < 3; ++i) m.k[i] = unit * n[i];
    m.ksq = unit * unit * static_cast<double>(m.nsq());
    return m;
}

/// Physical inputs. Scattering length a, density rho, box side L and nominal
/// particle count N, with rho = N / L^3 enforced.
class ModelParams {
public:
    static ModelParams from_density(double a, double rho, double L) {
        require(rho > 0.0, "density must be positive");
        require(L > 0.0, "box length must be positive");
        return ModelParams(a, rho, L, rho * L * L * L);
    }

    static ModelParams from_count(double a, double N, double L) {
        require(N > 0.0, "particle count must be positive");
        require(L > 0.0, "box length must be positive");
        return ModelParams(a, N / (L * L * L), L, N);
    }

    /// All four supplied: rho must equal N / L^3 to 1e-12 relative.
    static ModelParams make(double a, double rho, double L, double N) {
        require(rho > 0.0 && L > 0.0 && N > 0.0, "rho, L and N must be positive");
        const double implied = N / (L * L * L);
        require(std::abs(implied - rho) <= 1e-12 * rho, "inconsistent density: rho != N / L^3");
        return ModelParams(a, rho, L, N);
    }

    double a() const noexcept { return a_; }
    double rho() const noexcept { return rho_; }
    double L() const noexcept { return L_; }
    double N() const noexcept { return N_; }
    double volume() const noexcept { return L_ * L_ * L_; }
    /// 4*pi*a*rho, the mean-field energy scale.
    double mean_field() const noexcept { return 4.0 * pi * a_ * rho_; }

private:
    ModelParams(double a, double rho, double L, double N) : a_(a), rho_(rho), L_(L), N_(N) {
        require(a >= 0.0, "scattering length must be non-negative");
    }

    double a_;
    double rho_;
    double L_;
    double N_;
};

/// Which root of the quadratic for alpha(k). Only Minus gives a positive
/// spectrum; Plus exists for exploration.
enum class AlphaBranch { Minus, Plus };

struct ModeParams {
    Momentum k;
    double ksq = 0.0;
    double y = 0.0;        ///< 4 pi a rho / (k^2 + 8 pi a rho), in [0, 1/2)
    double ytilde = 0.0;   ///< y / sqrt(1 - 4 y^2)
    double alpha = 0.0;    ///< pair amplitude, minus branch in [0, 1)
    double epsilon = 0.0;  ///< k sqrt(k^2 + 16 pi a rho)
};

/// Nonzero lattice points with components in [-nmax, nmax], restricted to the
/// lexicographically positive half (n3 > 0, or n3 = 0 and n2 > 0, or
/// n3 = n2 = 0 and n1 > 0). Sorted by |n|^2 then by n.
inline std::vector<Momentum> half_lattice(double L, int nmax) {
    require(nmax >= 1, "lattice cutoff nmax must be >= 1");
    require(L > 0.0, "box length must be positive");
    std::vector<Momentum> out;
    for (int n1 = -nmax; n1 <= nmax; ++n1)
        for (int n2 = -nmax; n2 <= nmax; ++n2)
            for (int n3 = -nmax; n3 <= nmax; ++n3) {
                const bool positive = n3 > 0 || (n3 == 0 && n2 > 0) || (n3 == 0 && n2 == 0 && n1 > 0);
                if (positive) out.push_back(make_momentum(L, {n1, n2, n3}));
            }
    std::sort(out.begin(), out.end(), [](const Momentum& x, const Momentum& y) {
        return std::make_tuple(x.nsq(), x.n[0], x.n[1], x.n[2]) <
               std::make_tuple(y.nsq(), y.n[0], y.n[1], y.n[2]);
    });
    return out;
}

inline void check_coupling(double y) {
    require(y >= 0.0 && y < 0.5, "coupling y must lie in [0, 1/2)");
}

/// alpha_c(y) = (1 - sqrt(1 - 4y^2)) / (2y), evaluated as 2y / (1 + sqrt(1 - 4y^2)).
inline double alpha_c(double y) {
    check_coupling(y);
    return 2.0 * y / (1.0 + std::sqrt(1.0 - 4.0 * y * y));
}

/// The larger root 1/alpha_c of y - alpha + alpha^2 y.
inline double alpha_plus(double y) {
    check_coupling(y);
    require(y > 0.0, "alpha_plus is undefined at y = 0");
    return (1.0 + std::sqrt(1.0 - 4.0 * y * y)) / (2.0 * y);
}

inline double ytilde_of(double y) {
    check_coupling(y);
    return y / std::sqrt(1.0 - 4.0 * y * y);
}

/// Inverse of ytilde_of: y = ytilde / sqrt(1 + 4 ytilde^2).
inline double y_of_ytilde(double ytilde) {
    require(ytilde >= 0.0 && std::isfinite(ytilde), "ytilde must be finite and non-negative");
    return ytilde / std::sqrt(1.0 + 4.0 * ytilde * ytilde);
}

struct Couplings {
    double y1 = 0.0;
    double y2 = 0.0;
};

/// Couplings of the transformed pair Hamiltonian
///   H^(alpha) = 1/2 (a*a + b*b) + y1 ab + y2 a*b*.
/// y2 is computed in factored form y (alpha_c - alpha)(alpha_+ - alpha) / (1 - 2 alpha y)
/// so that it vanishes exactly at alpha = alpha_c.
inline Couplings y12(double y, double alpha) {
    check_coupling(y);
    require(alpha >= 0.0, "alpha must be non-negative");
    if (y == 0.0) {
        require(alpha == 0.0, "alpha must be 0 when y = 0");
        return {0.0, 0.0};
    }
    const double ac = alpha_c(y);
    require(alpha <= ac * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()),
            "alpha exceeds alpha_c(y)");
    const double a = std::min(alpha, ac);
    const double denom = 1.0 - 2.0 * a * y;
    return {y / denom, y * (ac - a) * (alpha_plus(y) - a) / denom};
}

inline ModeParams mode_params(const ModelParams& mp, const Momentum& k,
                              AlphaBranch branch = AlphaBranch::Minus) {
    require(k.ksq > 0.0, "the condensate mode k = 0 has no mode parameters");
    ModeParams m;
    m.k = k;
    m.ksq = k.ksq;
    const double g = mp.mean_field();  // 4 pi a rho
    const double shifted = k.ksq + 2.0 * g;
    m.epsilon = k.norm() * std::sqrt(k.ksq + 4.0 * g);
    if (g == 0.0) {
        require(branch == AlphaBranch::Minus, "the plus branch is undefined for a = 0");
        return m;
    }
    m.y = g / shifted;
    m.ytilde = ytilde_of(m.y);
    // (shifted -+ eps) / (2g); the minus root written without cancellation.
    m.alpha = branch == AlphaBranch::Minus ? 2.0 * g / (shifted + m.epsilon)
                                           : (shifted + m.epsilon) / (2.0 * g);
    return m;
}

struct AlphaSum {
    double value = 0.0;                ///< 4 pi a rho * sum over the full truncated lattice of alpha(k)
    bool grows_with_cutoff = false;    ///< unrenormalized: increases without bound in nmax
};

inline AlphaSum alpha_sum(const ModelParams& mp, double L, int nmax) {
    AlphaSum out;
    if (mp.a() == 0.0) {
        half_lattice(L, nmax);  // validates arguments
        return out;
    }
    double half = 0.0;
    for (const auto& k : half_lattice(L, nmax)) half += mode_params(mp, k).alpha;
    out.value = mp.mean_field() * 2.0 * half;
    out.grows_with_cutoff = true;
    return out;
}

inline AlphaSum alpha_sum(const ModelParams& mp, int nmax) { return alpha_sum(mp, mp.L(), nmax); }

} // namespace lhy
