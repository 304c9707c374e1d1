#pragma once

// Terminating Gauss hypergeometric sums, the contiguous and derivative
// identities they satisfy, the f_N family and the Gram-matrix witness for
// the transported eigenstates exp(-alpha_c a*b*) Psi_{p,N}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "lhy/eigenstates.hpp"
#include "lhy/error.hpp"
#include "lhy/fock_ladder.hpp"
#include "lhy/lattice.hpp"
#include "lhy/matrix.hpp"
#include "lhy/oracle.hpp"
#include "lhy/pair_transform.hpp"

namespace lhy {

namespace detail {

/// -x as a count if x is a nonpositive integer.
inline std::optional<long> nonpositive_integer(double x) {
    if (x > 0.0 || x != std::floor(x)) return std::nullopt;
    return static_cast<long>(-x);
}

/// Terms t_k = (a)_k (b)_k / ((c)_k k!) of a terminating series, k = 0..n.
inline std::vector<double> hyp_terms(double a, double b, double c) {
    const auto na = nonpositive_integer(a);
    const auto nb = nonpositive_integer(b);
    require(na || nb, "hyp_f: a or b must be a nonpositive integer");
    const long n = std::min(na.value_or(nb.value_or(0)), nb.value_or(na.value_or(0)));
    if (const auto nc = nonpositive_integer(c))
        require(*nc >= n, "hyp_f: c is a nonpositive integer reached before the series terminates");
    std::vector<double> t(static_cast<std::size_t>(n) + 1);
    t[0] = 1.0;
    for (long k = 0; k < n; ++k) t[k + 1] = t[k] * (a + k) * (b + k) / ((c + k) * (k + 1.0));
    return t;
}

} // namespace detail

/// F(a, b, c; z) = sum_k (a)_k (b)_k / ((c)_k k!) z^k for a or b a nonpositive integer.
inline cplx hyp_f(double a, double b, double c, cplx z) {
    const auto t = detail::hyp_terms(a, b, c);
    cplx acc{0.0, 0.0};
    for (std::size_t k = t.size(); k-- > 0;) acc = acc * z + t[k];
    return acc;
}

struct IdentityResidual {
    cplx value{0.0, 0.0};  ///< left side minus right side
    double scale = 0.0;    ///< largest magnitude among the terms entering the identity
    double relative() const { return std::abs(value) / std::max(scale, 1.0); }
};

/// m z F(-m+1, -N, p+1; z) against
///   -(p+1+2N) F(-m, -N) + (p+1+N) F(-m, -N-1) + N F(-m, -N+1),
/// all with c = p+1. At N = 0 the last term drops, which is the exceptional form.
inline IdentityResidual contiguous_residual(int m, int N, int p, cplx z) {
    require(m >= 0 && N >= 0 && p >= 0, "contiguous_residual: m, N, p must be non-negative");
    const double c = p + 1.0;
    const cplx lhs = m == 0 ? cplx{} : double(m) * z * hyp_f(1.0 - m, -double(N), c, z);
    const cplx t1 = -(p + 1.0 + 2.0 * N) * hyp_f(-double(m), -double(N), c, z);
    const cplx t2 = (p + 1.0 + N) * hyp_f(-double(m), -double(N) - 1.0, c, z);
    const cplx t3 = N == 0 ? cplx{} : double(N) * hyp_f(-double(m), 1.0 - N, c, z);
    IdentityResidual r;
    r.value = lhs - (t1 + t2 + t3);
    r.scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), std::abs(t3)});
    return r;
}

enum class PowerConvention {
    Reciprocal,  ///< d/dz [z^-a F(a,b,c;1/z)] = -a z^(-a-1) F(a+1,b,c;1/z)
    Direct,      ///< d/dz [z^a  F(a,b,c;1/z)] =  a z^(a-1)  F(a+1,b,c;1/z), which does not hold
};

struct DerivativeResidual {
    double coeff_max = 0.0;  ///< largest coefficient mismatch of the two Laurent polynomials
    IdentityResidual at_z;   ///< both sides evaluated at z
};

/// Compares both sides of the derivative identity coefficient by coefficient.
/// For a = -n the left side of the reciprocal form is sum_k (n-k) t_k z^(n-k-1);
/// the identity reduces to (-a-k)(a)_k = -a (a+1)_k.
inline DerivativeResidual derivative_residual(int a, double b, double c, cplx z,
                                              PowerConvention conv = PowerConvention::Reciprocal) {
    require(a < 0, "derivative_residual: a must be a negative integer");
    require(z != cplx{}, "derivative_residual: z must be nonzero");
    const auto t = detail::hyp_terms(a, b, c);        // F(a, b, c)
    const auto u = detail::hyp_terms(a + 1.0, b, c);  // F(a+1, b, c)
    // Both sides as sum_k coef_k z^(e - k) with the same top exponent e.
    const double sign = conv == PowerConvention::Reciprocal ? -1.0 : 1.0;
    const double e_top = sign * a;  // exponent of the leading power before differentiation
    const std::size_t len = std::max(t.size(), u.size());
    DerivativeResidual out;
    cplx lhs{}, rhs{};
    double scale = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        const double lc = k < t.size() ? (e_top - double(k)) * t[k] : 0.0;
        const double rc = k < u.size() ? sign * a * u[k] : 0.0;
        out.coeff_max = std::max(out.coeff_max, std::abs(lc - rc));
        const cplx zp = std::pow(z, e_top - 1.0 - double(k));
        lhs += lc * zp;
        rhs += rc * zp;
        scale = std::max({scale, std::abs(lc * zp), std::abs(rc * zp)});
    }
    out.at_z.value = lhs - rhs;
    out.at_z.scale = scale;
    return out;
}

/// f_N(z) = sum_m conj(d_m) z^m sqrt(binom(p+m, m)) F(-m, -N, p+1; 1/(ytilde z)).
inline cplx f_family(int N, int p, double ytilde, const std::vector<cplx>& d, cplx z) {
    require(N >= 0 && p >= 0, "f_family: N and p must be non-negative");
    require(ytilde > 0.0, "ytilde must be positive");
    require(z != cplx{}, "f_family: z must be nonzero");
    const cplx w = 1.0 / (ytilde * z);
    cplx acc{};
    for (std::size_t m = 0; m < d.size(); ++m) {
        if (d[m] == cplx{}) continue;
        const double weight = std::exp(0.5 * (std::lgamma(p + m + 1.0) - std::lgamma(m + 1.0) - std::lgamma(p + 1.0)));
        acc += std::conj(d[m]) * std::pow(z, double(m)) * weight * hyp_f(-double(m), -double(N), p + 1.0, w);
    }
    return acc;
}

/// d/dz f_N computed termwise from the polynomial coefficients.
inline cplx f_family_derivative(int N, int p, double ytilde, const std::vector<cplx>& d, cplx z) {
    require(ytilde > 0.0, "ytilde must be positive");
    require(z != cplx{}, "f_family: z must be nonzero");
    cplx acc{};
    for (std::size_t m = 0; m < d.size(); ++m) {
        if (d[m] == cplx{}) continue;
        const double weight = std::exp(0.5 * (std::lgamma(p + m + 1.0) - std::lgamma(m + 1.0) - std::lgamma(p + 1.0)));
        const auto t = detail::hyp_terms(-double(m), -double(N), p + 1.0);
        cplx inner{};
        for (std::size_t k = 0; k < t.size() && k < m; ++k)
            inner += t[k] * std::pow(ytilde, -double(k)) * double(m - k) * std::pow(z, double(m - k) - 1.0);
        acc += std::conj(d[m]) * weight * inner;
    }
    return acc;
}

/// d/dz f_N - ytilde (-(p+1+2N) f_N + (p+1+N) f_{N+1} + N f_{N-1}).
inline IdentityResidual f_recurrence_residual(int N, int p, double ytilde, const std::vector<cplx>& d, cplx z) {
    const cplx lhs = f_family_derivative(N, p, ytilde, d, z);
    const cplx t1 = -(p + 1.0 + 2.0 * N) * f_family(N, p, ytilde, d, z);
    const cplx t2 = (p + 1.0 + N) * f_family(N + 1, p, ytilde, d, z);
    const cplx t3 = N == 0 ? cplx{} : double(N) * f_family(N - 1, p, ytilde, d, z);
    IdentityResidual r;
    r.value = lhs - ytilde * (t1 + t2 + t3);
    r.scale = std::max({std::abs(lhs), ytilde * std::abs(t1), ytilde * std::abs(t2), ytilde * std::abs(t3)});
    return r;
}

/// exp(-alpha_c a*b*) Psi_{p,N} for N = 0..Nmax on ladder p, truncated at smax, unnormalized.
inline std::vector<LadderState> transported_family(int p, double y, int Nmax, std::size_t smax) {
    require(y > 0.0, "y must be positive");
    require(Nmax >= 0, "Nmax must be non-negative");
    const double yt = ytilde_of(y);
    const double ac = alpha_c(y);
    std::vector<LadderState> out;
    out.reserve(Nmax + 1);
    for (int N = 0; N <= Nmax; ++N) {
        EigenstateSpec spec;
        spec.p = p;
        spec.theta = double(N);
        spec.ytilde = yt;
        spec.smax = smax;
        out.push_back(apply_exp_pair(psi_p_theta(spec), -ac, smax));
    }
    return out;
}

struct GramReport {
    std::vector<double> singular_values;  ///< of the normalized Gram matrix, descending
    std::vector<double> raw_norms2;       ///< squared norms before normalization
    Matrix<double> gram;

    double smallest_ratio() const { return singular_values.back() / singular_values.front(); }
    /// Numerical rank against the threshold 1e-8 * largest.
    std::size_t rank() const {
        std::size_t r = 0;
        for (double s : singular_values) r += s > 1e-8 * singular_values.front();
        return r;
    }
};

inline GramReport gram_witness(int p, double y, int Nmax, std::size_t smax) {
    require(p >= 0, "p must be non-negative");
    require(Nmax >= 0 && Nmax < 64, "gram_witness: Nmax must lie in [0, 63]");
    require(smax >= 10 * static_cast<std::size_t>(std::max(Nmax, 1)), "gram_witness: smax must be >= 10 Nmax");
    auto vs = transported_family(p, y, Nmax, smax);
    GramReport rep;
    for (auto& v : vs) {
        rep.raw_norms2.push_back(norm2(v));
        v = normalized(std::move(v));
    }
    const std::size_t n = vs.size();
    rep.gram = Matrix<double>(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rep.gram(i, j) = inner(vs[i], vs[j]).real();
    rep.singular_values = oracle::svd_small(rep.gram);
    return rep;
}

struct CompletenessWitness {
    GramReport coarse;   ///< at smax
    GramReport fine;     ///< at 2 smax
    double relative_change = 0.0;  ///< of the smallest singular value
    bool full_rank = false;
    bool stable = false;           ///< relative change < 1%
};

inline CompletenessWitness completeness_witness(int p, double y, int Nmax, std::size_t smax) {
    CompletenessWitness w;
    w.coarse = gram_witness(p, y, Nmax, smax);
    w.fine = gram_witness(p, y, Nmax, 2 * smax);
    const double a = w.coarse.singular_values.back();
    const double b = w.fine.singular_values.back();
    w.relative_change = std::abs(b - a) / std::abs(a);
    w.full_rank = w.coarse.rank() == w.coarse.singular_values.size() &&
                  w.fine.rank() == w.fine.singular_values.size();
    w.stable = w.relative_change < 0.01;
    return w;
}

/// Fraction of |target|^2 captured by span{v_0..v_N}, for N = 0..Nmax, by
/// modified Gram-Schmidt on the transported family. Non-decreasing in N.
inline std::vector<double> span_projection(const LadderState& target, double y, int Nmax, std::size_t smax) {
    require(!target.empty(), "span_projection: empty target");
    const double t2 = norm2(target);
    require(t2 > 0.0, "span_projection: zero target");
    const LadderState d = padded(target, smax + 1 > target.size() ? smax + 1 - target.size() : 0);
    auto vs = transported_family(target.p, y, Nmax, smax);
    std::vector<LadderState> basis;
    std::vector<double> out;
    double captured = 0.0;
    for (auto v : vs) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) v = combine(1.0, v, -inner(q, v), q);
        const double n = norm(v);
        if (n > 1e-12) {
            for (auto& c : v.coeffs) c /= n;
            captured += std::norm(inner(v, d));
            basis.push_back(std::move(v));
        }
        out.push_back(std::min(1.0, captured / t2));
    }
    return out;
}

} // namespace lhy
