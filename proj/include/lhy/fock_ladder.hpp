#pragma once

// States on the pair ladder span{|p+s, s>, s = 0, 1, ...} (or the mirror
// branch |s, p+s>) stored as truncated coefficient sequences.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "lhy/error.hpp"

namespace lhy {

using cplx = std::complex<double>;

struct LadderState {
    int p = 0;
    bool mirror = false;
    std::vector<cplx> coeffs;

    LadderState() = default;
    LadderState(int p_, std::vector<cplx> c, bool mirror_ = false)
        : p(p_), mirror(mirror_), coeffs(std::move(c)) {
        require(p >= 0, "ladder imbalance p must be non-negative");
    }

    /// Truncation index; -1 for the zero state.
    long smax() const noexcept { return static_cast<long>(coeffs.size()) - 1; }
    std::size_t size() const noexcept { return coeffs.size(); }
    bool empty() const noexcept { return coeffs.empty(); }
    bool same_ladder(const LadderState& o) const noexcept { return p == o.p && mirror == o.mirror; }
};

/// sqrt((p+s+1)(s+1)): matrix element of ab between |p+s+1,s+1> and |p+s,s>.
inline double pair_amplitude(int p, std::size_t s) {
    return std::sqrt((static_cast<double>(p) + s + 1.0) * (s + 1.0));
}

inline LadderState with_coeffs(const LadderState& like, std::vector<cplx> c) {
    return LadderState(like.p, std::move(c), like.mirror);
}

inline LadderState apply_ab(const LadderState& st) {
    std::vector<cplx> out(st.size() > 0 ? st.size() - 1 : 0);
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = pair_amplitude(st.p, s) * st.coeffs[s + 1];
    return with_coeffs(st, std::move(out));
}

inline LadderState apply_adbd(const LadderState& st) {
    if (st.empty()) return st;
    std::vector<cplx> out(st.size() + 1);
    for (std::size_t s = 1; s < out.size(); ++s) out[s] = pair_amplitude(st.p, s - 1) * st.coeffs[s - 1];
    return with_coeffs(st, std::move(out));
}

inline LadderState apply_halfnumber(const LadderState& st) {
    std::vector<cplx> out(st.coeffs);
    for (std::size_t s = 0; s < out.size(); ++s) out[s] *= 0.5 * st.p + static_cast<double>(s);
    return with_coeffs(st, std::move(out));
}

/// l2 pairing, conjugate-linear in the first argument. States on different
/// ladders are orthogonal.
inline cplx inner(const LadderState& x, const LadderState& y) {
    if (!x.same_ladder(y)) return {0.0, 0.0};
    cplx acc{0.0, 0.0};
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t s = 0; s < n; ++s) acc += std::conj(x.coeffs[s]) * y.coeffs[s];
    return acc;
}

inline double norm2(const LadderState& x) {
    double acc = 0.0;
    for (const auto& c : x.coeffs) acc += std::norm(c);
    return acc;
}

inline double norm(const LadderState& x) { return std::sqrt(norm2(x)); }

/// Coefficientwise a*x + b*y, zero-padding the shorter sequence.
inline LadderState combine(cplx a, const LadderState& x, cplx b, const LadderState& y) {
    require(x.same_ladder(y) || x.empty() || y.empty(), "combine: states live on different ladders");
    std::vector<cplx> out(std::max(x.size(), y.size()));
    for (std::size_t s = 0; s < x.size(); ++s) out[s] += a * x.coeffs[s];
    for (std::size_t s = 0; s < y.size(); ++s) out[s] += b * y.coeffs[s];
    const LadderState& shape = x.empty() ? y : x;
    return with_coeffs(shape, std::move(out));
}

/// Appends `extra` zero coefficients.
inline LadderState padded(LadderState st, std::size_t extra) {
    st.coeffs.resize(st.coeffs.size() + extra);
    return st;
}

inline LadderState truncated(LadderState st, std::size_t smax) {
    if (st.coeffs.size() > smax + 1) st.coeffs.resize(smax + 1);
    return st;
}

inline LadderState normalized(LadderState st) {
    const double n = norm(st);
    require(n > 0.0, "cannot normalize the zero state");
    for (auto& c : st.coeffs) c /= n;
    return st;
}

} // namespace lhy
