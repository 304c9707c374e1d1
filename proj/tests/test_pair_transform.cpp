#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lhy/eigenstates.hpp"
#include "lhy/lattice.hpp"
#include "lhy/pair_transform.hpp"

using namespace lhy;

namespace {
// Size of the terms summed when the transform is undone; rounding in the
// cancellation is proportional to it.
std::vector<double> undo_scale(const LadderState& mid, double a, std::size_t smax) {
    std::vector<cplx> m(mid.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::abs(mid.coeffs[i]);
    const auto s = apply_exp_pair(with_coeffs(mid, std::move(m)), std::abs(a), smax);
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(s.coeffs[i]);
    return out;
}
}  // namespace

TEST(ApplyExpPair, VacuumIsGeometric) {
    const auto out = apply_exp_pair(LadderState(0, {1.0}), -0.5, 30);
    ASSERT_EQ(out.size(), 31u);
    for (std::size_t m = 0; m <= 30; ++m) EXPECT_NEAR(out.coeffs[m].real(), std::pow(-0.5, double(m)), 1e-15);
}

TEST(ApplyExpPair, ZeroIsIdentity) {
    const LadderState st(3, {0.2, cplx(1, -1), 0.5, -0.25});
    const auto out = apply_exp_pair(st, 0.0);
    ASSERT_EQ(out.size(), st.size());
    for (std::size_t s = 0; s < st.size(); ++s) EXPECT_EQ(out.coeffs[s], st.coeffs[s]);
}

TEST(ApplyExpPair, TwoTermExample) {
    for (double a : {0.2, 0.6, 0.95}) {
        const auto out = apply_exp_pair(LadderState(0, {1.0, 1.0}), -a, 25);
        EXPECT_NEAR(out.coeffs[0].real(), 1.0, 1e-15);
        for (std::size_t m = 1; m <= 25; ++m) {
            const double ref = std::pow(-a, double(m - 1)) * (double(m) - a);
            EXPECT_NEAR(out.coeffs[m].real(), ref, 1e-13 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST(ApplyExpPair, MatchesMatrix) {
    const std::vector<double> c{0.4, 0.1, -0.7, 0.2, 0.0, 0.05};
    const LadderState st(2, std::vector<cplx>(c.begin(), c.end()));
    const auto M = exp_pair_matrix(2, -0.37, 20);
    auto in = c;
    in.resize(21);
    const auto mv = M.apply(in);
    const auto out = apply_exp_pair(st, -0.37, 20);
    for (std::size_t m = 0; m <= 20; ++m) EXPECT_NEAR(std::abs(mv[m] - out.coeffs[m]), 0.0, 1e-13);
}

TEST(ApplyExpPair, InverseOnFiniteStates) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1), ua(0.05, 0.95);
    for (int t = 0; t < 50; ++t) {
        const int p = int(rng() % 5);
        std::vector<cplx> c(1 + rng() % 8);
        for (auto& x : c) x = cplx(u(rng), u(rng));
        const LadderState st(p, c);
        const double a = ua(rng);
        const auto mid = apply_exp_pair(st, -a, 40);
        const auto back = apply_exp_pair(mid, a, 40);
        const auto scale = undo_scale(mid, a, 40);
        for (std::size_t s = 0; s <= 40; ++s) {
            const cplx ref = s < c.size() ? c[s] : cplx{};
            EXPECT_LE(std::abs(back.coeffs[s] - ref), 1e-14 * (1 + scale[s]));
        }
    }
}

TEST(ApplyExpPair, EigenstateTransport) {
    for (double y : {0.3, 0.45}) {
        const double ac = alpha_c(y), yt = ytilde_of(y);
        for (int p = 0; p <= 3; ++p)
            for (int N = 0; N <= 5; ++N) {
                const auto psi = psi_p_theta(EigenstateSpec{p, double(N), yt, 400});
                const auto st = apply_exp_pair(psi, -ac, 400);
                const double E = (1 - 2 * ac * y) * (0.5 * p + N) - ac * y;
                EXPECT_LE(residual(st, y, y, E), 1e-8 * norm(st));
                EXPECT_NEAR(E, bog_energy_ab(y, p, N), 1e-10);
            }
    }
}

TEST(DomainCheck, Examples) {
    const double yt = 0.8;
    const auto psi = psi_p_theta(EigenstateSpec{0, 3.0, yt, 10});
    const auto finite = [&](std::size_t s) { return s < psi.size() ? psi.coeffs[s] : cplx{}; };
    for (double a : {0.1, 0.5, 0.99}) {
        const auto r = domain_check(finite, a, 0, 200);
        EXPECT_EQ(r.verdict, DomainVerdict::InDomain);
        EXPECT_TRUE(r.finite_support);
    }

    const auto geo = domain_check([](std::size_t s) { return cplx(std::pow(2.0, double(s))); }, 0.9, 0, 200);
    EXPECT_EQ(geo.verdict, DomainVerdict::NotInDomain);
    EXPECT_GT(geo.growth_rate, 0.0);

    const auto vac = domain_check([](std::size_t s) { return s == 0 ? cplx(1.0) : cplx{}; }, 0.7, 0, 100);
    EXPECT_EQ(vac.verdict, DomainVerdict::InDomain);

    // a convergent geometric tail well inside the disk stays in the domain
    const auto small = domain_check([](std::size_t s) { return cplx(std::pow(0.2, double(s))); }, 0.3, 0, 300);
    EXPECT_EQ(small.verdict, DomainVerdict::InDomain);

    EXPECT_THROW(domain_check(finite, 0.5, 0, 99), InvalidInput);
}

TEST(ConjugationCheck, Identity) {
    EXPECT_EQ(conjugation_check(0.0, 12), 0.0);
    EXPECT_LE(conjugation_check(0.3, 12), 1e-12);
    EXPECT_LE(conjugation_check(0.9, 12), 1e-12);
    EXPECT_THROW(conjugation_check(0.3, 3), InvalidInput);
}

TEST(ModeGroundState, Examples) {
    const auto vac = mode_ground_state(0.0, 10);
    EXPECT_EQ(vac.coeffs[0], cplx(1.0));
    for (std::size_t s = 1; s <= 10; ++s) EXPECT_EQ(vac.coeffs[s], cplx(0.0));

    const auto g = mode_ground_state(0.5, 60);
    EXPECT_NEAR(mode_occupancy(g), 1.0 / 3.0, 1e-10);
    EXPECT_NEAR(norm2(g), 4.0 / 3.0, 1e-12);
    EXPECT_NEAR(norm(mode_ground_state(0.5, 60, true)), 1.0, 1e-14);

    for (double a : {0.1, 0.5, 0.9})
        EXPECT_NEAR(mode_occupancy(mode_ground_state(a, 600)), a * a / (1 - a * a), 1e-10);

    EXPECT_THROW(mode_ground_state(1.0, 10), InvalidInput);
    EXPECT_THROW(mode_ground_state(-0.1, 10), InvalidInput);
}

TEST(ModeGroundState, IsTransformedVacuum) {
    const auto a = mode_ground_state(0.4, 30);
    const auto b = apply_exp_pair(LadderState(0, {1.0}), 0.4, 30);
    for (std::size_t s = 0; s <= 30; ++s) EXPECT_NEAR(std::abs(a.coeffs[s] - b.coeffs[s]), 0.0, 1e-15);
}
