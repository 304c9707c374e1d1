#pragma once

// Invariant suites run by `lhy verify`. Each check reports a measured
// deviation against a fixed tolerance. The inject_fault option flips signs
// inside the checks and must turn every suite red.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lhy/eigenstates.hpp"
#include "lhy/error.hpp"
#include "lhy/fock_ladder.hpp"
#include "lhy/genfunc.hpp"
#include "lhy/hamiltonians.hpp"
#include "lhy/hypergeom.hpp"
#include "lhy/lattice.hpp"
#include "lhy/oracle.hpp"
#include "lhy/pair_transform.hpp"
#include "lhy/wu_sector.hpp"

namespace lhy::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct Options {
    std::uint64_t seed = 1;
    bool inject_fault = false;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"lattice", "eigen", "genfunc", "hypergeom", "wu"};
    return names;
}

namespace detail {

class Recorder {
public:
    Recorder(Report& rep, std::string suite) : rep_(rep), suite_(std::move(suite)) {}

    /// Passes iff deviation <= tolerance (NaN fails).
    void upper(std::string name, double deviation, double tolerance) {
        rep_.checks.push_back({suite_, std::move(name), deviation, tolerance, deviation <= tolerance});
    }
    /// Passes iff value > bound; the deviation column carries the value.
    void lower(std::string name, double value, double bound) {
        rep_.checks.push_back({suite_, std::move(name), value, bound, value > bound});
    }

private:
    Report& rep_;
    std::string suite_;
};

inline double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

inline ModelParams reference_model() { return ModelParams::from_density(1.0 / (16.0 * pi), 1.0, 2.0 * pi); }

inline LadderState random_state(std::mt19937_64& rng, int p, std::size_t len) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c(len);
    for (auto& x : c) x = {u(rng), u(rng)};
    return LadderState(p, std::move(c));
}

inline void lattice_suite(Report& rep, const Options& opt, std::mt19937_64& rng) {
    Recorder r(rep, "lattice");
    const double f = opt.inject_fault ? -1.0 : 1.0;
    const ModelParams mp = reference_model();
    const double g = mp.mean_field();
    double sq = 0, br = 0, id = 0;
    for (const auto& k : half_lattice(mp.L(), 4)) {
        const ModeParams m = mode_params(mp, k);
        sq = std::max(sq, rel(m.epsilon * m.epsilon, k.ksq * (k.ksq + 4.0 * g)));
        br = std::max(br, rel(m.epsilon, (k.ksq + 2.0 * g) * std::sqrt(1.0 - 4.0 * m.y * m.y)));
        id = std::max(id, std::abs(m.alpha - f * alpha_c(m.y)));
    }
    r.upper("dispersion_square", sq, 1e-12);
    r.upper("dispersion_bracket", br, 1e-12);
    r.upper("alpha_branch_identity", id, 1e-12);

    std::uniform_real_distribution<double> uy(1e-6, 0.4999);
    double rad = 0;
    for (int i = 0; i < 200; ++i) {
        const double y = uy(rng);
        rad = std::max(rad, std::abs(1.0 - 2.0 * alpha_c(y) * y - std::sqrt(1.0 - 4.0 * y * y)));
    }
    r.upper("radical_identity", rad, 1e-12);

    // half_lattice, its negation and {0} partition the cube.
    for (int nmax : {1, 2, 3}) {
        std::set<std::array<int, 3>> seen;
        bool disjoint = true;
        for (const auto& k : half_lattice(mp.L(), nmax)) {
            disjoint &= seen.insert(k.n).second;
            disjoint &= seen.insert({-k.n[0], -k.n[1], -k.n[2]}).second;
        }
        disjoint &= seen.insert({0, 0, 0}).second;
        const double side = 2.0 * nmax + 1.0;
        const double miss = std::abs(double(seen.size()) - side * side * side) + (disjoint ? 0.0 : 1.0);
        r.upper("half_lattice_partition_nmax" + std::to_string(nmax), miss, 0.0);
    }

    const auto s1 = alpha_sum(mp, 1), s3 = alpha_sum(mp, 3);
    r.lower("alpha_sum_grows", s3.value - s1.value, 0.0);
}

inline void eigen_suite(Report& rep, const Options& opt, std::mt19937_64& rng) {
    Recorder r(rep, "eigen");
    const double f = opt.inject_fault ? -1.0 : 1.0;

    // Ladder operators: adjointness and commutator.
    double adj = 0, comm = 0;
    for (int t = 0; t < 20; ++t) {
        const int p = int(rng() % 4);
        auto x = padded(random_state(rng, p, 12), 1);
        auto y = padded(random_state(rng, p, 12), 1);
        adj = std::max(adj, std::abs(inner(apply_adbd(x), y) - inner(x, apply_ab(y))));
        const auto lhs = combine(1.0, apply_ab(apply_adbd(x)), -1.0, apply_adbd(apply_ab(x)));
        for (std::size_t s = 0; s + 1 < x.size(); ++s)
            comm = std::max(comm, std::abs(lhs.coeffs[s] - double(p + 2 * s + 1) * x.coeffs[s]));
    }
    r.upper("ladder_adjointness", adj, 1e-12);
    r.upper("ladder_commutator", comm, 1e-12);

    // Matrix and operator forms of H^(alpha) agree.
    double mat = 0;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const int p = int(rng() % 4);
        const double y1 = u01(rng), y2 = u01(rng);
        const auto x = random_state(rng, p, 16);
        const auto h = apply_hab_alpha(x, y1, y2);
        const auto m = build_tridiagonal(p, y1, y2, 15).apply(x.coeffs);
        for (std::size_t s = 0; s + 1 < 16; ++s) mat = std::max(mat, std::abs(m[s] - h.coeffs[s]));
    }
    r.upper("matrix_operator_agreement", mat, 1e-13);

    // Closed-form finite eigenstates of H^(alpha_c).
    double fin = 0;
    for (double yt : {0.5, 1.0, 2.0})
        for (int p = 0; p <= 20; ++p)
            for (int N = 0; N <= 20; ++N) {
                const auto st = psi_p_theta({p, double(N), yt, std::size_t(N) + 1});
                fin = std::max(fin, residual(st, yt, 0.0, f * (0.5 * p + N)) / norm(st));
            }
    r.upper("finite_eigenstate_residual", fin, 1e-12);

    // Formula and recurrence agree.
    double frm = 0;
    std::uniform_real_distribution<double> uth(-4.0, 4.0), uyt(0.2, 3.0);
    for (int t = 0; t < 200; ++t) {
        const int p = int(rng() % 6);
        cplx th{uth(rng), uth(rng)};
        if (std::abs(th) > 4.0) th *= 4.0 / std::abs(th);
        const double yt = uyt(rng);
        const auto a = psi_p_theta({p, th, yt, 30});
        const auto b = recurrence_coeffs(0.5 * p + th, p, yt, 30);
        for (std::size_t s = 0; s < a.size(); ++s)
            frm = std::max(frm, std::abs(a.coeffs[s] - b.coeffs[s]) / std::max(std::abs(a.coeffs[s]), 1e-300));
    }
    r.upper("formula_recurrence_agreement", frm, 1e-12);

    // Transport through exp(-alpha_c a*b*) lands on H_ab eigenstates.
    double tr = 0, en = 0;
    for (double y : {0.3, 0.45})
        for (int p = 0; p <= 2; ++p)
            for (int N = 0; N <= 3; ++N) {
                const double ac = alpha_c(y);
                const auto st = apply_exp_pair(psi_p_theta({p, double(N), ytilde_of(y), 200}), -ac, 200);
                const double E = (1.0 - 2.0 * ac * y) * (0.5 * p + N) - ac * y;
                tr = std::max(tr, relative_residual(st, y, f * y, E));
                en = std::max(en, std::abs(E - bog_energy_ab(y, p, N)));
            }
    r.upper("transport_residual", tr, 1e-8);
    r.upper("transport_energy", en, 1e-10);

    // Dense oracle reproduces the Bogoliubov ladder.
    {
        const auto h = build_tridiagonal(0, 0.3, 0.3, 200);
        const auto ev = oracle::sym_tridiag_eig(h.diag, h.super).values;
        double d = 0;
        for (int n = 0; n < 6; ++n) d = std::max(d, std::abs(ev[n] - f * bog_energy_ab(0.3, 0, n)));
        r.upper("oracle_bogoliubov", d, 1e-8);
    }

    // Small-ytilde collapse onto |p+N, N>.
    {
        double last = 0;
        bool monotone = true;
        for (double yt : {0.1, 0.01, 0.001}) {
            const auto st = psi_p_theta({1, 3.0, yt, 3, false, true});
            const double ov = std::abs(st.coeffs[3]);
            monotone &= ov >= last;
            last = ov;
        }
        r.upper("small_ytilde_collapse", (monotone ? 0.0 : 1.0) + (1.0 - last), 1e-5);
    }

    // Partial-norm divergence for ytilde < 1.
    {
        const auto lp = log_partial_norms(0.5, 0.5, 0, 200);
        r.lower("partial_norm_divergence_log", lp.back(), std::log(1e6));
    }

    r.upper("conjugation_identity", std::max(conjugation_check(0.3, 12), conjugation_check(0.9, 12)), 1e-12);
}

inline void genfunc_suite(Report& rep, const Options& opt, std::mt19937_64& rng) {
    Recorder r(rep, "genfunc");
    const double f = opt.inject_fault ? -1.0 : 1.0;
    std::uniform_real_distribution<double> ua(0.01, 0.9), uy(0.01, 0.49), u01(0.0, 1.0);

    // Mobius form against the exponential convolution.
    double mob = 0;
    for (int t = 0; t < 100; ++t) {
        const int p = int(rng() % 4);
        const auto st = random_state(rng, p, 1 + rng() % 10);
        const double a = ua(rng);
        const auto lhs = mobius(from_state(st), f * a, 60);
        const auto rhs = from_state(apply_exp_pair(st, -a, 60));
        double scale = 0, d = 0;
        for (std::size_t m = 0; m <= 60; ++m) {
            scale = std::max(scale, std::abs(rhs.C[m]));
            d = std::max(d, std::abs(lhs.C[m] - rhs.C[m]));
        }
        mob = std::max(mob, d / scale);
    }
    r.upper("mobius_exponential_agreement", mob, 1e-11);

    // Q is independent of alpha.
    double qs = 0;
    for (double y : {0.1, 0.3, 0.45}) {
        const double ac = alpha_c(y);
        const double target = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * y * y));
        for (int i = 0; i < 20; ++i) qs = std::max(qs, std::abs(q_invariant(y, ac * i / 19.0) - f * target));
    }
    r.upper("q_invariant_spread", qs, 1e-12);

    // Root bounds on the open interval [0, alpha_c).
    double zm = 1e300, zp = -1e300;
    for (int t = 0; t < 200; ++t) {
        const double y = uy(rng);
        const double a = alpha_c(y) * u01(rng) * 0.999;
        const Roots rt = roots(y, a);
        zm = std::min(zm, std::abs(rt.z_minus) * (1.0 - a) - 1.0);
        zp = std::max(zp, std::abs(rt.z_plus) - 1.0 / (1.0 - a));
    }
    r.lower("z_minus_outside_disk_margin", f * zm, 0.0);
    r.upper("z_plus_bound_excess", zp, 0.0);

    // B <-> E round trip and the exponent of the n-pair state.
    double rt = 0, bog = 0;
    for (int t = 0; t < 100; ++t) {
        const double y = uy(rng);
        const double a = alpha_c(y) * u01(rng);
        const int p = int(rng() % 4), n = int(rng() % 5);
        const cplx B{u01(rng) * 10.0, u01(rng)};
        rt = std::max(rt, std::abs(b_from_e(e_from_b(B, p, y, a), p, y, a) - B) / std::max(1.0, std::abs(B)));
        const cplx E = e_from_b(double(n + p), p, y, a);
        bog = std::max(bog, std::abs((1.0 - 2.0 * a * y) * E - a * y - f * bog_energy_ab(y, p, n)));
    }
    r.upper("b_e_round_trip", rt, 1e-12);
    r.upper("exponent_energy_consistency", bog, 1e-10);

    // Singularity transport of geometric inputs.
    double sing = 0;
    // Negative z0 keeps every term of the composition the same sign; for z0 > 0
    // the coefficients come out of large cancelling sums and the tail is noise.
    for (auto [z0, a] : std::vector<std::pair<double, double>>{
             {-1.5, 0.2}, {-1.5, 0.8}, {-2.5, 0.5}, {-4.0, 0.3}, {-0.8, 0.2}, {-0.8, 0.9}}) {
        std::vector<cplx> C(200);
        for (std::size_t m = 0; m < C.size(); ++m) C[m] = std::pow(1.0 / z0, double(m));
        const auto est = singularity_radius(mobius(GenFn{0, false, C}, f * a));
        const double expect = std::abs(z0 / (1.0 - a * z0));
        sing = std::max(sing, rel(est.radius, expect));
    }
    r.upper("singularity_transport", sing, 0.05);

    // Finite eigenstates solve the generating-function ODE.
    double ode = 0;
    for (double y : {0.2, 0.45})
        for (int p = 0; p <= 3; ++p)
            for (int N = 0; N <= 5; ++N) {
                const auto c = y12(y, alpha_c(y));
                const auto st = psi_p_theta({p, double(N), c.y1, std::size_t(N)});
                ode = std::max(ode, ode_residual(from_state(st), f * (0.5 * p + N), p, c.y1, c.y2));
            }
    r.upper("ode_residual_finite_states", ode, 1e-12);
}

inline void hypergeom_suite(Report& rep, const Options& opt, std::mt19937_64& rng) {
    Recorder r(rep, "hypergeom");
    const double f = opt.inject_fault ? -1.0 : 1.0;
    const std::vector<cplx> zs{0.3, 0.7, 1.5, -0.4, {0.2, 0.5}};
    double con = 0;
    for (int m = 0; m <= 6; ++m)
        for (int N = 0; N <= 6; ++N)
            for (int p = 0; p <= 6; ++p)
                for (const auto z : zs) con = std::max(con, contiguous_residual(m, N, p, f * z).relative());
    r.upper("contiguous_relation", con, 1e-12);

    double der = 0;
    for (int a = -1; a >= -5; --a)
        for (double b : {0.0, -1.0, -2.0})
            for (double c : {1.0, 2.0, 3.5}) {
                const auto d = derivative_residual(a, b, c, {1.3, -0.4},
                                                   opt.inject_fault ? PowerConvention::Direct
                                                                    : PowerConvention::Reciprocal);
                der = std::max({der, d.coeff_max, d.at_z.relative()});
            }
    r.upper("derivative_identity", der, 1e-13);

    double fr = 0;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        const int N = int(rng() % 5), p = int(rng() % 5);
        std::vector<cplx> d(1 + rng() % 6);
        for (auto& x : d) x = {u(rng), u(rng)};
        cplx z{u(rng), u(rng)};
        if (std::abs(z) < 0.1) z = 0.5;
        if (std::abs(z) > 1.0) z /= std::abs(z) * 1.01;
        const double yt = 0.5 + std::abs(u(rng));
        auto res = f_recurrence_residual(N, p, yt, d, z);
        if (opt.inject_fault) res.value = 2.0 * f_family_derivative(N, p, yt, d, z) - res.value;
        fr = std::max(fr, res.relative());
    }
    r.upper("f_family_recurrence", fr, 1e-11);

    {
        const auto w = completeness_witness(0, 0.45, 6, 60);
        r.lower("gram_smallest_ratio", f * w.coarse.smallest_ratio(), 1e-8);
        r.upper("gram_truncation_change", w.relative_change, 0.01);
    }

    {
        auto target = normalized(random_state(rng, 0, 4));
        const auto prof = span_projection(target, 0.45, 32, 400);
        double drop = 0;
        for (std::size_t i = 1; i < prof.size(); ++i) drop = std::max(drop, prof[i - 1] - prof[i]);
        r.upper("span_projection_monotone", drop, 1e-12);
        r.lower("span_projection_nmax32", f * prof.back(), 0.999);
    }
}

inline void wu_suite(Report& rep, const Options& opt, std::mt19937_64&) {
    Recorder r(rep, "wu");
    const double f = opt.inject_fault ? -1.0 : 1.0;
    const ModelParams mp = reference_model();
    const std::array<std::array<int, 3>, 3> modes{{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}}};
    double sub = 0, diag = 0, res = 0, inv = 0;
    for (const auto& n : modes) {
        const Momentum k = make_momentum(mp.L(), n);
        for (int Nt = 1; Nt <= 16; ++Nt)
            for (int p = 0; p <= std::min(4, Nt); ++p) {
                const WuSector sec(Nt, p, k);
                const auto T = build_transformed_wu(sec, mp);
                const auto spec = wu_spectrum(sec, mp);
                for (std::size_t i = 0; i < sec.dim(); ++i) {
                    for (std::size_t j = 0; j < i; ++j) sub = std::max(sub, std::abs(T(i, j)));
                    diag = std::max(diag, std::abs(T(i, i) - spec[i]));
                    const auto v = wu_eigenstate(sec, mp, i);
                    res = std::max(res, wu_relative_residual(T, v, f * spec[i]));
                }
                const double a = mode_params(mp, k).alpha;
                const auto I = wu_exp_w_matrix(sec, a, +1) * wu_exp_w_matrix(sec, f * a, -1);
                inv = std::max(inv, (I - Matrix<double>::identity(sec.dim())).max_abs());
            }
    }
    r.upper("strictly_upper_triangular", sub, 0.0);
    r.upper("diagonal_spectrum", diag, 0.0);
    r.upper("eigenstate_residual", res, 1e-10);
    r.upper("exp_w_inverse", inv, 1e-13);
}

} // namespace detail

/// Runs one suite by name, or all of them for "all".
inline Report run(std::string_view suite, const Options& opt = {}) {
    const bool all = suite == "all";
    require(all || std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end(),
            "verify: unknown suite");
    Report rep;
    std::mt19937_64 rng(opt.seed);
    if (all || suite == "lattice") detail::lattice_suite(rep, opt, rng);
    if (all || suite == "eigen") detail::eigen_suite(rep, opt, rng);
    if (all || suite == "genfunc") detail::genfunc_suite(rep, opt, rng);
    if (all || suite == "hypergeom") detail::hypergeom_suite(rep, opt, rng);
    if (all || suite == "wu") detail::wu_suite(rep, opt, rng);
    return rep;
}

} // namespace lhy::verify
