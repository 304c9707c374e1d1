#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lhy/error.hpp"
#include "lhy/fock_ladder.hpp"
#include "lhy/lattice.hpp"

namespace lhy {

/// H^(alpha) = 1/2 (a*a + b*b) + y1 ab + y2 a*b* applied to a ladder state.
/// The result grows by one coefficient unless y2 == 0.
inline LadderState apply_hab_alpha(const LadderState& st, double y1, double y2) {
    LadderState out = combine(1.0, apply_halfnumber(st), y1, apply_ab(st));
    if (y2 != 0.0) out = combine(1.0, out, y2, apply_adbd(st));
    return out;
}

/// Tridiagonal matrix of H^(alpha) on the ladder truncated at smax.
///   diag[s]  = p/2 + s                         (row s, col s)
///   super[s] = y1 sqrt((p+s+1)(s+1))           (row s, col s+1)
///   sub[s]   = y2 sqrt((p+s+1)(s+1))           (row s+1, col s)
struct HabMatrix {
    int p = 0;
    double y1 = 0.0;
    double y2 = 0.0;
    std::size_t smax = 0;
    std::vector<double> diag;
    std::vector<double> super;
    std::vector<double> sub;

    std::size_t dim() const noexcept { return smax + 1; }

    bool is_upper_bidiagonal() const {
        for (double v : sub)
            if (v != 0.0) return false;
        return true;
    }

    template <typename T>
    std::vector<T> apply(const std::vector<T>& v) const {
        require(v.size() == dim(), "HabMatrix::apply: dimension mismatch");
        std::vector<T> out(dim());
        for (std::size_t s = 0; s < dim(); ++s) {
            out[s] = diag[s] * v[s];
            if (s + 1 < dim()) out[s] += super[s] * v[s + 1];
            if (s > 0) out[s] += sub[s - 1] * v[s - 1];
        }
        return out;
    }
};

inline HabMatrix build_tridiagonal(int p, double y1, double y2, std::size_t smax) {
    require(p >= 0, "ladder imbalance p must be non-negative");
    require(smax >= 1, "tridiagonal truncation needs smax >= 1");
    HabMatrix m;
    m.p = p;
    m.y1 = y1;
    m.y2 = y2;
    m.smax = smax;
    m.diag.resize(smax + 1);
    m.super.resize(smax);
    m.sub.resize(smax);
    for (std::size_t s = 0; s <= smax; ++s) m.diag[s] = 0.5 * p + static_cast<double>(s);
    for (std::size_t s = 0; s < smax; ++s) {
        const double amp = pair_amplitude(p, s);
        m.super[s] = y1 * amp;
        m.sub[s] = y2 * amp;
    }
    return m;
}

/// Bogoliubov energy of H_ab(y) = 1/2 (a*a + b*b) + y (a*b* + ab) for the
/// state with n pairs on ladder p:
///   E = sqrt(1 - 4y^2) (n + p/2 + 1/2) - 1/2.
/// One quantum costs sqrt(1-4y^2)/2, one pair sqrt(1-4y^2).
inline double bog_energy_ab(double y, int p, int n) {
    check_coupling(y);
    require(p >= 0 && n >= 0, "p and n must be non-negative");
    return std::sqrt(1.0 - 4.0 * y * y) * (n + 0.5 * p + 0.5) - 0.5;
}

struct BlockEnergy {
    double energy = 0.0;      ///< 2(k^2 + 8 pi a rho) * bog_energy_ab(y(k), p, n)
    double excitation = 0.0;  ///< energy above the per-mode ground, (2n + p) eps_k
};

/// Per-mode LHY block: 2(k^2 + 8 pi a rho) H_ab(y(k)). Constant terms are not included.
inline BlockEnergy lhy_block(const ModeParams& mode, double mean_field, int p, int n) {
    const double scale = 2.0 * (mode.ksq + 2.0 * mean_field);
    BlockEnergy out;
    out.energy = scale * bog_energy_ab(mode.y, p, n);
    out.excitation = scale * std::sqrt(1.0 - 4.0 * mode.y * mode.y) * (n + 0.5 * p);
    return out;
}

inline BlockEnergy lhy_block(const ModeParams& mode, const ModelParams& mp, int p, int n) {
    return lhy_block(mode, mp.mean_field(), p, n);
}

} // namespace lhy
