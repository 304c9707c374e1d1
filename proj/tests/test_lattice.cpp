#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "lhy/lattice.hpp"

using namespace lhy;

namespace {
const double kA = 1.0 / (16.0 * pi);
}

TEST(HalfLattice, CountsHalfTheCube) {
    EXPECT_EQ(half_lattice(2 * pi, 1).size(), 13u);
    EXPECT_EQ(half_lattice(2 * pi, 2).size(), 62u);
    EXPECT_EQ(half_lattice(2 * pi, 4).size(), (9u * 9u * 9u - 1u) / 2u);
}

TEST(HalfLattice, RejectsEmptyOrBadBox) {
    EXPECT_THROW(half_lattice(2 * pi, 0), InvalidInput);
    EXPECT_THROW(half_lattice(0.0, 1), InvalidInput);
    EXPECT_THROW(half_lattice(-1.0, 1), InvalidInput);
}

TEST(HalfLattice, SortedByNormThenLexicographic) {
    const auto ks = half_lattice(2 * pi, 2);
    for (std::size_t i = 1; i < ks.size(); ++i) {
        const auto& a = ks[i - 1];
        const auto& b = ks[i];
        EXPECT_TRUE(a.nsq() < b.nsq() || (a.nsq() == b.nsq() && a.n < b.n));
    }
    EXPECT_EQ(ks.front().nsq(), 1);
}

TEST(HalfLattice, PartitionsWithItsNegation) {
    std::set<std::array<int, 3>> all;
    for (const auto& k : half_lattice(3.0, 3)) {
        EXPECT_TRUE(all.insert(k.n).second);
        EXPECT_TRUE(all.insert({-k.n[0], -k.n[1], -k.n[2]}).second);
    }
    EXPECT_EQ(all.size(), 7u * 7u * 7u - 1u);
    EXPECT_EQ(all.count({0, 0, 0}), 0u);
}

TEST(HalfLattice, MomentumComponents) {
    const auto k = make_momentum(3.0, {1, -2, 0});
    EXPECT_NEAR(k.k[0], 2 * pi / 3.0, 1e-15);
    EXPECT_NEAR(k.k[1], -4 * pi / 3.0, 1e-15);
    EXPECT_NEAR(k.ksq, 5 * std::pow(2 * pi / 3.0, 2), 1e-13);
}

TEST(ModelParams, ConsistencyOfCountAndDensity) {
    const auto a = ModelParams::from_density(kA, 2.0, 3.0);
    EXPECT_DOUBLE_EQ(a.N(), 54.0);
    const auto b = ModelParams::from_count(kA, 54.0, 3.0);
    EXPECT_DOUBLE_EQ(b.rho(), 2.0);
    EXPECT_NO_THROW(ModelParams::make(kA, 2.0, 3.0, 54.0));
    EXPECT_THROW(ModelParams::make(kA, 2.0, 3.0, 55.0), InvalidInput);
    EXPECT_THROW(ModelParams::from_density(-1.0, 1.0, 1.0), InvalidInput);
    EXPECT_THROW(ModelParams::from_density(kA, 0.0, 1.0), InvalidInput);
    EXPECT_THROW(ModelParams::from_density(kA, 1.0, 0.0), InvalidInput);
}

TEST(ModeParams, FreeLimit) {
    const auto mp = ModelParams::from_density(0.0, 1.0, 2 * pi);
    for (const auto& k : half_lattice(2 * pi, 2)) {
        const auto m = mode_params(mp, k);
        EXPECT_EQ(m.y, 0.0);
        EXPECT_EQ(m.ytilde, 0.0);
        EXPECT_EQ(m.alpha, 0.0);
        EXPECT_NEAR(m.epsilon, k.ksq, 1e-13 * k.ksq);
    }
}

TEST(ModeParams, ReferenceMode) {
    const auto mp = ModelParams::from_density(kA, 1.0, 2 * pi);
    const auto m = mode_params(mp, make_momentum(2 * pi, {1, 0, 0}));
    EXPECT_NEAR(m.y, 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(m.epsilon, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(m.alpha, 3.0 - 2.0 * std::sqrt(2.0), 1e-15);  // 0.1715729
    EXPECT_NEAR(m.ytilde, 1.0 / (4.0 * std::sqrt(2.0)), 1e-15);  // 0.1767767
    EXPECT_NEAR(m.alpha, alpha_c(m.y), 1e-15);
}

TEST(ModeParams, PlusBranchIsReciprocal) {
    const auto mp = ModelParams::from_density(kA, 1.0, 2 * pi);
    for (const auto& k : half_lattice(2 * pi, 2)) {
        const auto minus = mode_params(mp, k);
        const auto plus = mode_params(mp, k, AlphaBranch::Plus);
        EXPECT_NEAR(minus.alpha * plus.alpha, 1.0, 1e-12);
        EXPECT_NEAR(plus.alpha, alpha_plus(minus.y), 1e-12 * plus.alpha);
    }
}

TEST(ModeParams, RejectsCondensateMode) {
    const auto mp = ModelParams::from_density(kA, 1.0, 2 * pi);
    EXPECT_THROW(mode_params(mp, make_momentum(2 * pi, {0, 0, 0})), InvalidInput);
}

TEST(ModeParams, DispersionIdentities) {
    const auto mp = ModelParams::from_density(kA, 1.0, 2 * pi);
    const double g = mp.mean_field();
    for (const auto& k : half_lattice(2 * pi, 4)) {
        const auto m = mode_params(mp, k);
        EXPECT_NEAR(m.epsilon * m.epsilon, k.ksq * (k.ksq + 4 * g), 1e-12 * m.epsilon * m.epsilon);
        EXPECT_NEAR(m.epsilon, (k.ksq + 2 * g) * std::sqrt(1 - 4 * m.y * m.y), 1e-12 * m.epsilon);
        EXPECT_GE(m.y, 0.0);
        EXPECT_LT(m.y, 0.5);
        EXPECT_GE(m.alpha, 0.0);
        EXPECT_LT(m.alpha, 1.0);
    }
}

TEST(AlphaC, Values) {
    EXPECT_NEAR(alpha_c(0.3), 1.0 / 3.0, 1e-15);
    EXPECT_EQ(alpha_c(0.0), 0.0);
    EXPECT_NEAR(alpha_c(1.0 / std::sqrt(8.0)), std::sqrt(2.0) - 1.0, 1e-15);
    EXPECT_NEAR(alpha_c(1e-9), 1e-9, 1e-24);
    EXPECT_THROW(alpha_c(0.5), InvalidInput);
    EXPECT_THROW(alpha_c(-0.1), InvalidInput);
}

TEST(AlphaC, MonotoneAndRadicalIdentity) {
    double last = -1;
    for (int i = 0; i < 100; ++i) {
        const double y = 0.4999 * i / 99.0;
        const double a = alpha_c(y);
        EXPECT_GT(a, last);
        last = a;
        EXPECT_NEAR(1 - 2 * a * y, std::sqrt(1 - 4 * y * y), 1e-12);
    }
}

TEST(Ytilde, RoundTrip) {
    for (double y : {1e-6, 0.1, 0.3, 0.45, 0.49}) EXPECT_NEAR(y_of_ytilde(ytilde_of(y)), y, 1e-15);
    EXPECT_NEAR(ytilde_of(1.0 / std::sqrt(8.0)), 0.5, 1e-15);
    EXPECT_NEAR(ytilde_of(1.0 / std::sqrt(5.0)), 1.0, 1e-14);
}

TEST(Y12, Values) {
    auto c = y12(0.3, 0.0);
    EXPECT_DOUBLE_EQ(c.y1, 0.3);
    EXPECT_NEAR(c.y2, 0.3, 1e-15);
    c = y12(0.3, alpha_c(0.3));
    EXPECT_NEAR(c.y1, 0.375, 1e-15);
    EXPECT_EQ(c.y2, 0.0);
    c = y12(0.3, 0.1);
    EXPECT_NEAR(c.y1, 0.3 / 0.94, 1e-15);
    EXPECT_NEAR(c.y2, 0.203 / 0.94, 1e-15);
    EXPECT_THROW(y12(0.3, 0.34), InvalidInput);
}

TEST(Y12, PositiveBelowAlphaC) {
    for (double y : {0.05, 0.2, 0.45})
        for (int i = 0; i < 50; ++i) {
            const double a = alpha_c(y) * i / 50.0;
            const auto c = y12(y, a);
            EXPECT_GT(c.y1, 0.0);
            EXPECT_GT(c.y2, 0.0);
            EXPECT_NEAR(c.y2, (y - a + a * a * y) / (1 - 2 * a * y), 1e-14);
        }
    EXPECT_NEAR(y12(0.45, alpha_c(0.45)).y1, ytilde_of(0.45), 1e-14);
}

TEST(AlphaSum, FreeGasAndGrowth) {
    const auto free = alpha_sum(ModelParams::from_density(0.0, 1.0, 2 * pi), 2);
    EXPECT_EQ(free.value, 0.0);
    EXPECT_FALSE(free.grows_with_cutoff);
    const auto mp = ModelParams::from_density(kA, 1.0, 2 * pi);
    const auto s1 = alpha_sum(mp, 1), s2 = alpha_sum(mp, 2), s3 = alpha_sum(mp, 3);
    EXPECT_GT(s1.value, 0.0);
    EXPECT_GT(s2.value, s1.value);
    EXPECT_GT(s3.value, s2.value);
    EXPECT_TRUE(s2.grows_with_cutoff);
    double direct = 0;
    for (const auto& k : half_lattice(2 * pi, 2)) direct += mode_params(mp, k).alpha;
    EXPECT_NEAR(s2.value, mp.mean_field() * 2 * direct, 1e-13);
    EXPECT_THROW(alpha_sum(mp, 0), InvalidInput);
}
