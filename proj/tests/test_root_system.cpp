#include <gtest/gtest.h>

#include "oracles.hpp"

using kmgrowth::RootSystem;

class RootSystemTypes : public ::testing::TestWithParam<std::tuple<const char*, int, int>> {};

TEST_P(RootSystemTypes, DimensionAndPositiveRoots) {
    auto [label, dim, pos] = GetParam();
    auto rs = RootSystem::from_label(label);
    EXPECT_EQ(rs->dim(), dim);
    EXPECT_EQ(rs->num_positive(), pos);
}

TEST_P(RootSystemTypes, KillingMatchesAdTrace) {
    auto rs = RootSystem::from_label(std::get<0>(GetParam()));
    for (int a = 0; a < rs->dim(); ++a)
        for (int b = 0; b < rs->dim(); ++b) EXPECT_EQ(rs->killing_basis(a, b), oracle::ad_trace_killing(*rs, a, b));
}

TEST_P(RootSystemTypes, Antisymmetry) {
    auto rs = RootSystem::from_label(std::get<0>(GetParam()));
    for (int a = 0; a < rs->dim(); ++a)
        for (int b = 0; b < rs->dim(); ++b) {
            std::map<int, long> x, y;
            for (auto [k, c] : rs->basis_bracket(a, b)) x[k] += c;
            for (auto [k, c] : rs->basis_bracket(b, a)) y[k] -= c;
            EXPECT_EQ(x, y);
        }
}

INSTANTIATE_TEST_SUITE_P(Types, RootSystemTypes,
                         ::testing::Values(std::make_tuple("A1", 3, 1), std::make_tuple("A2", 8, 3),
                                           std::make_tuple("A3", 15, 6), std::make_tuple("D4", 28, 12),
                                           std::make_tuple("E6", 78, 36)));

TEST(RootSystem, Sl2KillingValue) {
    auto rs = RootSystem::from_label("A1");
    int e = rs->simple_positive(0), f = rs->simple_negative(0);
    EXPECT_EQ(oracle::ad_trace_killing(*rs, e, f), 4);
    EXPECT_EQ(rs->killing_basis(e, f), 4);
}

TEST(RootSystem, HighestRootHeights) {
    EXPECT_EQ(RootSystem::height(RootSystem::from_label("A3")->highest_root()), 3);
    EXPECT_EQ(RootSystem::height(RootSystem::from_label("D4")->highest_root()), 5);
    EXPECT_EQ(RootSystem::height(RootSystem::from_label("E6")->highest_root()), 11);
}

TEST(RootSystem, CartanMatrixOfD4) {
    auto rs = RootSystem::from_label("D4");
    int degree_three = 0;
    for (int i = 0; i < 4; ++i) {
        int deg = 0;
        for (int j = 0; j < 4; ++j) deg += i != j && rs->cartan(i, j) == -1;
        if (deg == 3) ++degree_three;
    }
    EXPECT_EQ(degree_three, 1);
}

TEST(RootSystem, ChevalleyIndexLayout) {
    auto rs = RootSystem::from_label("A2");
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(rs->is_negative(i));
    for (int i = 3; i < 5; ++i) EXPECT_TRUE(rs->is_cartan(i));
    for (int i = 5; i < 8; ++i) EXPECT_TRUE(rs->is_positive(i));
    EXPECT_EQ(rs->theta_index(), 7);
}

TEST(RootSystem, RejectsBadLabels) {
    EXPECT_THROW(RootSystem::from_label("Q3"), std::invalid_argument);
    EXPECT_THROW(RootSystem::from_label("A"), std::invalid_argument);
}
