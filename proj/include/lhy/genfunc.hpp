#pragma once

// Generating functions G(z) = sum_s C_s z^s of ladder states, with
// C_s = sqrt(s!/(p+s)!) c_s, and the analysis built on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "lhy/error.hpp"
#include "lhy/fock_ladder.hpp"
#include "lhy/lattice.hpp"
#include "lhy/pair_transform.hpp"

namespace lhy {

struct GenFn {
    int p = 0;
    bool mirror = false;
    std::vector<cplx> C;

    long smax() const noexcept { return static_cast<long>(C.size()) - 1; }
};

inline GenFn from_state(const LadderState& st) {
    GenFn g{st.p, st.mirror, std::vector<cplx>(st.size())};
    for (std::size_t s = 0; s < st.size(); ++s) g.C[s] = detail::rescale_factor(st.p, s) * st.coeffs[s];
    return g;
}

inline LadderState to_state(const GenFn& g) {
    std::vector<cplx> c(g.C.size());
    for (std::size_t s = 0; s < c.size(); ++s) c[s] = g.C[s] / detail::rescale_factor(g.p, s);
    return LadderState(g.p, std::move(c), g.mirror);
}

/// Coefficient mismatch of
///   z (y2 z^2 + z + y1) G' + (y2 z^2 + (p/2 - E) z + y1 p) G = C_0 y1 p
/// order by order. The order-n coefficient involves C_n, C_{n-1}, C_{n-2}, so
/// every order n <= smax is fully determined by the stored data.
inline double ode_residual(const GenFn& g, cplx E, int p, double y1, double y2) {
    const auto at = [&](long i) -> cplx { return (i >= 0 && i <= g.smax()) ? g.C[i] : cplx{}; };
    double worst = 0.0;
    for (long n = 0; n <= g.smax(); ++n) {
        cplx lhs = y2 * double(n - 1) * at(n - 2) + (double(n - 1) + 0.5 * p - E) * at(n - 1) +
                   y1 * double(n + p) * at(n);
        if (n == 0) lhs -= at(0) * y1 * double(p);
        worst = std::max(worst, std::abs(lhs));
    }
    return worst;
}

struct Roots {
    double z_plus = 0.0;
    double z_minus = 0.0;  ///< -infinity at alpha = alpha_c
    bool minus_at_infinity = false;
};

/// Roots of y2 z^2 + z + y1. z_plus is evaluated as -2 y1 / (1 + sqrt(1 - 4 y1 y2)),
/// which stays finite as y2 -> 0 and tends to -y1 (the degenerate factorization
/// z (z + y1) of the leading polynomial).
inline Roots roots(double y, double alpha) {
    require(y > 0.0, "roots: y must be positive");
    const Couplings c = y12(y, alpha);
    const double disc = std::sqrt(1.0 - 4.0 * c.y1 * c.y2);
    Roots r;
    r.z_plus = -2.0 * c.y1 / (1.0 + disc);
    if (c.y2 == 0.0) {
        r.z_minus = -std::numeric_limits<double>::infinity();
        r.minus_at_infinity = true;
    } else {
        r.z_minus = (-1.0 - disc) / (2.0 * c.y2);
    }
    return r;
}

/// Exponent B of the local solution (z - z_+)^B for an eigenvalue E of H^(alpha):
///   B = ((p/2 - E - 1) z_+ + y1 (p - 1)) / (z_+ + 2 y1).
inline cplx b_from_e(cplx E, int p, double y, double alpha) {
    const Couplings c = y12(y, alpha);
    const double zp = roots(y, alpha).z_plus;
    return ((0.5 * p - E - 1.0) * zp + c.y1 * (p - 1.0)) / (zp + 2.0 * c.y1);
}

/// Algebraic inverse of b_from_e:
///   E = p/2 - 1 - B - (y1 / z_+)(2B - p + 1).
/// At alpha = alpha_c (z_+ = -y1) this is E = B - p/2.
inline cplx e_from_b(cplx B, int p, double y, double alpha) {
    const Couplings c = y12(y, alpha);
    const double zp = roots(y, alpha).z_plus;
    return 0.5 * p - 1.0 - B - (c.y1 / zp) * (2.0 * B - double(p) + 1.0);
}

/// The generating function is analytic in the unit disk (for |z_+| < 1) iff
/// B is a natural number with B >= p.
inline bool analytic_exponent(cplx B, int p, double tol = 1e-9) {
    if (std::abs(B.imag()) > tol) return false;
    const double r = std::round(B.real());
    return std::abs(B.real() - r) <= tol * std::max(1.0, std::abs(r)) && r >= p;
}

/// Power-series coefficients through `order` of (1 + alpha z)^-1 G(z / (1 + alpha z)),
/// by Horner composition with w(z) = z / (1 + alpha z).
inline GenFn mobius(const GenFn& g, double alpha, std::size_t order) {
    const std::size_t n = order + 1;
    std::vector<cplx> w(n);  // sum_{k>=1} (-alpha)^(k-1) z^k
    {
        double pw = 1.0;
        for (std::size_t k = 1; k < n; ++k) {
            w[k] = pw;
            pw *= -alpha;
        }
    }
    std::vector<cplx> acc(n);
    for (std::size_t idx = g.C.size(); idx-- > 0;) {
        // acc <- C_idx + w * acc
        std::vector<cplx> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (acc[i] == cplx{}) continue;
            for (std::size_t k = 1; i + k < n; ++k) next[i + k] += acc[i] * w[k];
        }
        next[0] += g.C[idx];
        acc = std::move(next);
    }
    // multiply by 1 / (1 + alpha z)
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m) out[m] = acc[m] - (m > 0 ? alpha * out[m - 1] : cplx{});
    return GenFn{g.p, g.mirror, std::move(out)};
}

inline GenFn mobius(const GenFn& g, double alpha) {
    return mobius(g, alpha, g.C.empty() ? 0 : g.C.size() - 1);
}

/// Q = alpha y + 2y (y - alpha + alpha^2 y) / (1 - 2 alpha y - sqrt(1 - 4y^2)).
/// Numerator and denominator share the root alpha = alpha_c; there the
/// quotient is replaced by its limit -y (alpha_c - alpha_+).
inline double q_invariant(double y, double alpha) {
    require(y > 0.0, "q_invariant: y must be positive");
    check_coupling(y);
    const double ac = alpha_c(y);
    require(alpha >= 0.0 && alpha <= ac * (1.0 + 1e-15), "q_invariant: alpha must lie in [0, alpha_c]");
    const double root = std::sqrt(1.0 - 4.0 * y * y);
    const double den = 1.0 - 2.0 * alpha * y - root;
    if (std::abs(den) < 1e-9) return alpha * y - y * (alpha - alpha_plus(y));
    return alpha * y + 2.0 * y * (y - alpha + alpha * alpha * y) / den;
}

enum class DiskClass { AnalyticInDisk, SingularInDisk, Boundary, Inconclusive };

inline std::string_view to_string(DiskClass c) {
    switch (c) {
        case DiskClass::AnalyticInDisk: return "AnalyticInDisk";
        case DiskClass::SingularInDisk: return "SingularInDisk";
        case DiskClass::Boundary: return "Boundary";
        case DiskClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct RadiusEstimate {
    double radius = 0.0;        ///< ratio-test estimate: exp(-slope of log|C_m|) over the last half
    double root_radius = 0.0;   ///< root-test value |C_n|^(-1/n) at the last nonzero coefficient
    DiskClass classification = DiskClass::Inconclusive;
};

/// Convergence radius from the tail of the coefficients, classified against
/// the unit circle with a 2% band.
inline RadiusEstimate singularity_radius(const GenFn& g) {
    RadiusEstimate est;
    if (g.C.size() < 64) return est;
    const std::size_t n = g.C.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0, last = 0;
    for (std::size_t m = n / 2; m < n; ++m) {
        const double a = std::abs(g.C[m]);
        if (a == 0.0) continue;
        const double x = double(m), y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
        last = m;
    }
    if (cnt == 0) {
        est.radius = est.root_radius = std::numeric_limits<double>::infinity();
        est.classification = DiskClass::AnalyticInDisk;
        return est;
    }
    if (cnt < 2) return est;
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    est.radius = std::exp(-slope);
    est.root_radius = std::exp(-std::log(std::abs(g.C[last])) / double(last));
    if (est.radius > 1.02)
        est.classification = DiskClass::AnalyticInDisk;
    else if (est.radius < 0.98)
        est.classification = DiskClass::SingularInDisk;
    else
        est.classification = DiskClass::Boundary;
    return est;
}

} // namespace lhy
