#pragma once

// Closed-form excited states of H^(alpha_c) = 1/2 (a*a + b*b) + ytilde ab,
//   |Psi_{p,Theta}> = sum_s ytilde^-s binom(Theta, s) binom(p+s, s)^-1/2 |p+s, s>,
// with energy p/2 + Theta, and the machinery to judge when they are normalizable.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "lhy/error.hpp"
#include "lhy/fock_ladder.hpp"
#include "lhy/hamiltonians.hpp"

namespace lhy {

struct EigenstateSpec {
    int p = 0;
    cplx theta{0.0, 0.0};
    double ytilde = 1.0;
    std::size_t smax = 0;
    bool mirror = false;
    bool normalize = false;
};

/// Theta as a non-negative integer, if it is one.
inline std::optional<long> natural_theta(cplx theta) {
    if (theta.imag() != 0.0) return std::nullopt;
    const double r = std::round(theta.real());
    if (r < 0.0 || std::abs(theta.real() - r) > 1e-12 * std::max(1.0, r)) return std::nullopt;
    return static_cast<long>(r);
}

enum class Normalizability { FiniteSum, Normalizable, NotNormalizable };

inline std::string_view to_string(Normalizability n) {
    switch (n) {
        case Normalizability::FiniteSum: return "FiniteSum";
        case Normalizability::Normalizable: return "Normalizable";
        case Normalizability::NotNormalizable: return "NotNormalizable";
    }
    return "?";
}

/// Terminating for Theta in N; otherwise |c_s|^2 ~ K ytilde^-2s / s^(2 Theta + 2 + p),
/// so square-summability is decided by ytilde against 1, and at ytilde = 1 by the exponent.
inline Normalizability classify_normalizable(double ytilde, cplx theta, int p) {
    require(ytilde > 0.0, "ytilde must be positive");
    if (natural_theta(theta)) return Normalizability::FiniteSum;
    if (ytilde < 1.0) return Normalizability::NotNormalizable;
    if (ytilde > 1.0) return Normalizability::Normalizable;
    return (2.0 * theta.real() + 2.0 + p > 1.0) ? Normalizability::Normalizable
                                                : Normalizability::NotNormalizable;
}

/// Coefficients of |Psi_{p,Theta}> up to smax (up to N when Theta = N).
/// binom(Theta, s) is the running product prod_{j<s} (Theta - j) / (j + 1), kept as
/// log-magnitude plus unit phase so that large s neither overflows nor underflows.
inline LadderState psi_p_theta(const EigenstateSpec& spec) {
    require(spec.ytilde > 0.0, "ytilde must be positive");
    require(spec.p >= 0, "p must be non-negative");
    std::size_t last = spec.smax;
    if (auto n = natural_theta(spec.theta)) last = std::min<std::size_t>(last, static_cast<std::size_t>(*n));

    std::vector<cplx> c(last + 1);
    const double log_yt = std::log(spec.ytilde);
    const double lg_p = std::lgamma(spec.p + 1.0);
    double log_binom = 0.0;   // log |binom(Theta, s)|
    cplx phase{1.0, 0.0};     // binom(Theta, s) / |binom(Theta, s)|
    for (std::size_t s = 0; s <= last; ++s) {
        if (s > 0) {
            const cplx factor = spec.theta - static_cast<double>(s - 1);
            const double mag = std::abs(factor);
            if (mag == 0.0) break;  // remaining coefficients are zero
            log_binom += std::log(mag) - std::log(static_cast<double>(s));
            phase *= factor / mag;
        }
        const double log_ladder = std::lgamma(spec.p + s + 1.0) - std::lgamma(s + 1.0) - lg_p;
        c[s] = phase * std::exp(log_binom - s * log_yt - 0.5 * log_ladder);
    }
    LadderState st(spec.p, std::move(c), spec.mirror);
    if (spec.normalize &&
        classify_normalizable(spec.ytilde, spec.theta, spec.p) != Normalizability::NotNormalizable)
        st = normalized(std::move(st));
    return st;
}

/// Forward iteration of the row equations of H^(alpha_c) - E:
///   c_{s+1} = (E - p/2 - s) / (ytilde sqrt((p+s+1)(s+1))) c_s,  c_0 = 1.
inline LadderState recurrence_coeffs(cplx E, int p, double ytilde, std::size_t smax, bool mirror = false) {
    require(ytilde > 0.0, "ytilde must be positive");
    std::vector<cplx> c(smax + 1);
    c[0] = 1.0;
    for (std::size_t s = 0; s < smax; ++s)
        c[s + 1] = (E - 0.5 * p - static_cast<double>(s)) / (ytilde * pair_amplitude(p, s)) * c[s];
    return LadderState(p, std::move(c), mirror);
}

/// ||(H^(alpha) - E) st|| with the top row (index smax) left out, since it
/// would need the truncated coefficient c_{smax+1}.
inline double residual(const LadderState& st, double y1, double y2, cplx E) {
    if (st.size() < 2) return 0.0;
    const LadderState h = apply_hab_alpha(st, y1, y2);
    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < st.size(); ++s) acc += std::norm(h.coeffs[s] - E * st.coeffs[s]);
    return std::sqrt(acc);
}

inline double relative_residual(const LadderState& st, double y1, double y2, cplx E) {
    const double n = norm(st);
    return n == 0.0 ? 0.0 : residual(st, y1, y2, E) / n;
}

struct TailSample {
    std::size_t s = 0;
    double ratio = 0.0;  ///< |c_s|^2 ytilde^2s s^(2 Theta + 2 + p) / |c_0|^2
};

struct TailConstant {
    std::vector<TailSample> samples;
    double expected = 0.0;  ///< Gamma(1+p) / Gamma(-Theta)^2
};

/// Ratios whose limit is the Stirling constant of the coefficient tail, for
/// real non-integer Theta. Computed in log space.
inline TailConstant tail_constant(double ytilde, double theta, int p, const std::vector<std::size_t>& srange) {
    require(ytilde > 0.0, "ytilde must be positive");
    require(!natural_theta(theta), "tail_constant: Theta in N gives a terminating series");
    TailConstant out;
    out.expected = std::exp(std::lgamma(1.0 + p) - 2.0 * std::lgamma(-theta));

    std::size_t smax = 0;
    for (auto s : srange) smax = std::max(smax, s);
    // log |binom(Theta, s)| - 1/2 log binom(p+s, s), accumulated up to smax
    std::vector<double> log_c(smax + 1, 0.0);
    for (std::size_t s = 1; s <= smax; ++s)
        log_c[s] = log_c[s - 1] + std::log(std::abs(theta - static_cast<double>(s - 1))) -
                   std::log(static_cast<double>(s)) - 0.5 * std::log((p + static_cast<double>(s)) / s);
    const double expo = 2.0 * theta + 2.0 + p;
    for (auto s : srange) {
        require(s >= 1, "tail_constant: s must be >= 1");
        out.samples.push_back({s, std::exp(2.0 * log_c[s] + expo * std::log(static_cast<double>(s)))});
    }
    (void)ytilde;  // ytilde^-2s cancels against ytilde^2s
    return out;
}

/// Partial sums of |c_s|^2 for |Psi_{p,Theta}> in log space: entry S is
/// log(sum_{s <= S} |c_s|^2), normalized to c_0 = 1.
inline std::vector<double> log_partial_norms(double ytilde, double theta, int p, std::size_t smax) {
    require(ytilde > 0.0, "ytilde must be positive");
    std::vector<double> out(smax + 1);
    double log_c2 = 0.0;
    double log_sum = 0.0;
    bool terminated = false;
    for (std::size_t s = 0; s <= smax; ++s) {
        if (s > 0 && !terminated) {
            const double f = std::abs(theta - static_cast<double>(s - 1));
            if (f == 0.0) {
                terminated = true;
            } else {
                log_c2 += 2.0 * (std::log(f) - std::log(static_cast<double>(s)) - std::log(ytilde)) -
                          std::log((p + static_cast<double>(s)) / s);
                const double hi = std::max(log_sum, log_c2);
                log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(log_c2 - hi));
            }
        }
        out[s] = log_sum;
    }
    return out;
}

struct DegenerateState {
    int p = 0;
    int N = 0;
    bool mirror = false;
    friend bool operator==(const DegenerateState&, const DegenerateState&) = default;
};

/// All (p, N, mirror) with p/2 + N = E, both branches for p > 0. `max_p` < 0 means no cutoff.
inline std::vector<DegenerateState> enumerate_degenerate(double E, int max_p = -1) {
    const double twoE = 2.0 * E;
    require(twoE >= 0.0 && twoE == std::round(twoE), "E must be a non-negative half-integer");
    const int n2 = static_cast<int>(twoE);
    std::vector<DegenerateState> out;
    for (int p = n2 % 2; p <= n2; p += 2) {
        if (max_p >= 0 && p > max_p) break;
        const int N = (n2 - p) / 2;
        out.push_back({p, N, false});
        if (p > 0) out.push_back({p, N, true});
    }
    return out;
}

} // namespace lhy
