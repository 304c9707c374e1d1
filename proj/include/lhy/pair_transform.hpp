#pragma once

// The non-Hermitian pair transform exp(t a*b*) on a ladder, its domain test,
// the conjugation identity it induces on a_k, and the per-mode ground state
// exp(-P)|vac> with P = -alpha a*b*.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "lhy/error.hpp"
#include "lhy/fock_ladder.hpp"
#include "lhy/matrix.hpp"

namespace lhy {

namespace detail {

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

/// sqrt(s! / (p+s)!), the factor taking c_s to the rescaled C_s. Exact
/// products for s <= 30, log-factorials beyond.
inline double rescale_factor(int p, std::size_t s) {
    if (p == 0) return 1.0;
    if (s <= 30 && p <= 30) {
        double f = 1.0;
        for (int j = 1; j <= p; ++j) f *= static_cast<double>(s + j);
        return 1.0 / std::sqrt(f);
    }
    return std::exp(0.5 * (log_factorial(static_cast<double>(s)) - log_factorial(static_cast<double>(p + s))));
}

inline double log_binom(double m, double s) {
    return log_factorial(m) - log_factorial(s) - log_factorial(m - s);
}

} // namespace detail

/// exp(t a*b*) applied to a finite ladder state, output truncated at smax.
/// In rescaled coordinates C_s = sqrt(s!/(p+s)!) c_s the action is the binomial
/// convolution C'_m = sum_{s<=m} binom(m, s) t^(m-s) C_s. t = -alpha gives
/// exp(-alpha a*b*).
inline LadderState apply_exp_pair(const LadderState& st, double t, std::size_t smax) {
    std::vector<cplx> C(st.size());
    for (std::size_t s = 0; s < st.size(); ++s) C[s] = detail::rescale_factor(st.p, s) * st.coeffs[s];

    std::vector<cplx> out(smax + 1);
    const double log_t = t != 0.0 ? std::log(std::abs(t)) : 0.0;
    for (std::size_t m = 0; m <= smax; ++m) {
        cplx acc{0.0, 0.0};
        const std::size_t top = std::min<std::size_t>(m, C.empty() ? 0 : C.size() - 1);
        for (std::size_t s = 0; s <= top && s < C.size(); ++s) {
            if (C[s] == cplx{}) continue;
            const std::size_t k = m - s;
            double w;
            if (k == 0) {
                w = 1.0;
            } else if (t == 0.0) {
                continue;
            } else {
                w = std::exp(detail::log_binom(double(m), double(s)) + k * log_t);
                if (t < 0.0 && (k % 2 == 1)) w = -w;
            }
            acc += w * C[s];
        }
        out[m] = acc / detail::rescale_factor(st.p, m);
    }
    return with_coeffs(st, std::move(out));
}

inline LadderState apply_exp_pair(const LadderState& st, double t) {
    return apply_exp_pair(st, t, st.empty() ? 0 : st.size() - 1);
}

enum class DomainVerdict { InDomain, NotInDomain, Inconclusive };

inline std::string_view to_string(DomainVerdict v) {
    switch (v) {
        case DomainVerdict::InDomain: return "InDomain";
        case DomainVerdict::NotInDomain: return "NotInDomain";
        case DomainVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct DomainReport {
    DomainVerdict verdict = DomainVerdict::Inconclusive;
    bool finite_support = false;
    double growth_rate = 0.0;          ///< fitted d/dm log|c'_m| over the second half
    double last_decade_increment = 0.0;  ///< relative growth of the partial norm over the last 10 terms
    std::vector<double> log_abs;       ///< log|c'_m|, -inf for exact zeros
};

/// Is the state with coefficients c_s = coeff_rule(s) in the domain of
/// exp(-alpha a*b*)? Transformed coefficients are formed up to `horizon`
/// by repeated application of (shift - alpha) in rescaled coordinates, with
/// a per-step log scale so neither growth nor decay overflows.
///
/// A sequence that vanishes on the second half of the horizon is treated as
/// finite support: its generating function is a polynomial and the transform
/// only adds the pole at z = -1/alpha, so it is in the domain iff |alpha| < 1.
inline DomainReport domain_check(const std::function<cplx(std::size_t)>& coeff_rule, double alpha, int p,
                                 std::size_t horizon) {
    require(horizon >= 100, "domain_check: horizon must be >= 100");
    require(p >= 0, "p must be non-negative");
    DomainReport rep;

    std::vector<cplx> row(horizon + 1);
    std::size_t last_nonzero = 0;
    bool any = false;
    for (std::size_t s = 0; s <= horizon; ++s) {
        row[s] = coeff_rule(s) * detail::rescale_factor(p, s);
        if (row[s] != cplx{}) {
            last_nonzero = s;
            any = true;
        }
    }
    if (!any || last_nonzero <= horizon / 2) {
        rep.finite_support = true;
        rep.verdict = std::abs(alpha) < 1.0 ? DomainVerdict::InDomain : DomainVerdict::NotInDomain;
        return rep;
    }

    // row_j[s] = ((shift - alpha)^j C)_s ; C'_j = row_j[0].
    rep.log_abs.resize(horizon + 1);
    double log_scale = 0.0;
    for (std::size_t j = 0; j <= horizon; ++j) {
        const double log_ladder = -std::log(detail::rescale_factor(p, j));
        const double a0 = std::abs(row[0]);
        rep.log_abs[j] = a0 == 0.0 ? -std::numeric_limits<double>::infinity()
                                   : std::log(a0) + log_scale + log_ladder;
        if (j == horizon) break;
        const std::size_t len = horizon - j;  // new row length
        double mx = 0.0;
        for (std::size_t s = 0; s < len; ++s) {
            row[s] = row[s + 1] - alpha * row[s];
            mx = std::max(mx, std::abs(row[s]));
        }
        if (mx > 0.0) {
            for (std::size_t s = 0; s < len; ++s) row[s] /= mx;
            log_scale += std::log(mx);
        }
    }

    // Least-squares slope of log|c'_m| over the finite entries of the second half.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t m = horizon / 2; m <= horizon; ++m) {
        if (!std::isfinite(rep.log_abs[m])) continue;
        const double x = double(m), y = rep.log_abs[m];
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) rep.growth_rate = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);

    // Partial norms in log space.
    double log_sum = -std::numeric_limits<double>::infinity();
    std::vector<double> log_partial(horizon + 1);
    for (std::size_t m = 0; m <= horizon; ++m) {
        const double t = 2.0 * rep.log_abs[m];
        if (std::isfinite(t)) {
            const double hi = std::max(log_sum, t);
            log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(t - hi));
        }
        log_partial[m] = log_sum;
    }
    rep.last_decade_increment = std::expm1(log_partial[horizon] - log_partial[horizon - 10]);

    if (rep.growth_rate > 1e-3)
        rep.verdict = DomainVerdict::NotInDomain;
    else if (rep.last_decade_increment < 1e-10)
        rep.verdict = DomainVerdict::InDomain;
    else
        rep.verdict = DomainVerdict::Inconclusive;
    return rep;
}

/// Matrix of exp(t a*b*) on ladder p, truncated to (smax+1)^2. Lower triangular:
///   M[m][s] = t^(m-s)/(m-s)! sqrt((p+m)!/(p+s)!) sqrt(m!/s!).
template <typename T = double>
Matrix<T> exp_pair_matrix(int p, T t, std::size_t smax) {
    const std::size_t n = smax + 1;
    Matrix<T> M(n, n);
    const auto lf = [](T x) { return std::lgamma(x + T(1)); };
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t s = 0; s <= m; ++s) {
            const std::size_t k = m - s;
            if (k == 0) {
                M(m, s) = T(1);
                continue;
            }
            if (t == T(0)) continue;
            const T lw = T(k) * std::log(std::abs(t)) - lf(T(k)) +
                         T(0.5) * (lf(T(p + m)) - lf(T(p + s)) + lf(T(m)) - lf(T(s)));
            M(m, s) = (t < T(0) && k % 2 == 1) ? -std::exp(lw) : std::exp(lw);
        }
    return M;
}

/// Largest entrywise deviation in
///   exp(-P) a exp(P) = a - alpha b*   and   exp(-P) a* exp(P) = a*,
/// with P = -alpha a*b*, between the p = 1 and p = 0 ladders (a and b* take
/// ladder 1 to ladder 0; a* takes ladder 0 to ladder 1). Rows above smax - 2
/// are skipped.
inline double conjugation_check(double alpha, std::size_t smax) {
    require(smax >= 4, "conjugation_check: smax must be >= 4");
    // Extended precision: the products are alternating sums of large binomial terms.
    using T = long double;
    const std::size_t n = smax + 1;
    const T al = alpha;
    Matrix<T> A(n, n), Bd(n, n), Ad(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        A(s, s) = std::sqrt(T(s) + 1);                   // a|1+s,s> = sqrt(s+1)|s,s>
        if (s + 1 < n) Bd(s + 1, s) = std::sqrt(T(s) + 1);  // b*|1+s,s> = sqrt(s+1)|s+1,s+1>
        Ad(s, s) = std::sqrt(T(s) + 1);                  // a*|s,s> = sqrt(s+1)|1+s,s>
    }
    const auto expP_1 = exp_pair_matrix<T>(1, -al, smax);
    const auto expmP_0 = exp_pair_matrix<T>(0, al, smax);
    const auto expP_0 = exp_pair_matrix<T>(0, -al, smax);
    const auto expmP_1 = exp_pair_matrix<T>(1, al, smax);

    const auto lhs_a = expmP_0 * A * expP_1;
    const auto rhs_a = A - al * Bd;
    const auto lhs_ad = expmP_1 * Ad * expP_0;

    double dev = 0.0;
    for (std::size_t i = 0; i + 2 <= smax; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            dev = std::max(dev, double(std::abs(lhs_a(i, j) - rhs_a(i, j))));
            dev = std::max(dev, double(std::abs(lhs_ad(i, j) - Ad(i, j))));
        }
    return dev;
}

/// exp(-P)|vac> on one mode pair: c_n = alpha^n on the p = 0 ladder.
inline LadderState mode_ground_state(double alpha, std::size_t smax, bool normalize = false) {
    require(alpha >= 0.0 && alpha < 1.0, "mode_ground_state: alpha must lie in [0, 1)");
    std::vector<cplx> c(smax + 1);
    const double la = alpha > 0.0 ? std::log(alpha) : 0.0;
    for (std::size_t n = 0; n <= smax; ++n) c[n] = n == 0 ? 1.0 : (alpha > 0.0 ? std::exp(n * la) : 0.0);
    LadderState st(0, std::move(c));
    return normalize ? normalized(std::move(st)) : st;
}

/// <a*a> = sum (p+s)|c_s|^2 / sum |c_s|^2 for a ladder state (on the mirror branch this is <b*b>).
inline double mode_occupancy(const LadderState& st) {
    double num = 0.0, den = 0.0;
    for (std::size_t s = 0; s < st.size(); ++s) {
        const double w = std::norm(st.coeffs[s]);
        num += (st.p + static_cast<double>(s)) * w;
        den += w;
    }
    require(den > 0.0, "mode_occupancy: zero state");
    return num / den;
}

} // namespace lhy
