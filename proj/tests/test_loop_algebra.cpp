#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace kmgrowth;

TEST(Letter, ModifiedDegree) {
    Monomial m{Letter::loop(0, -2), Letter::loop(1, 0), Letter::derivation()};
    EXPECT_EQ(md(m), 3 + 1 + 1);
    EXPECT_EQ(len(m), 3);
    EXPECT_TRUE(Letter::derivation().is_d());
}

TEST(Flavor, NamesRoundTrip) {
    for (Flavor f : {Flavor::Loop, Flavor::Current, Flavor::PosCurrent, Flavor::AffineDerived, Flavor::Affine})
        EXPECT_EQ(parse_flavor(flavor_name(f)), f);
    EXPECT_THROW(parse_flavor("twisted"), std::invalid_argument);
}

TEST(AlgebraSpec, AdmissibilityFollowsWeightsAndFlavor) {
    auto loop = AlgebraSpec::make("A2:r2", Flavor::Loop);
    const auto& b = loop->basis();
    for (int i = 0; i < b.dim(); ++i)
        for (int e = -4; e <= 4; ++e) EXPECT_EQ(loop->admissible(Letter::loop(i, e)), ((e % 2) + 2) % 2 == b[i].weight);
    auto cur = AlgebraSpec::make("A1:r1", Flavor::Current);
    EXPECT_TRUE(cur->admissible(Letter::loop(0, 0)));
    EXPECT_FALSE(cur->admissible(Letter::loop(0, -1)));
    EXPECT_FALSE(cur->admissible(Letter::derivation()));
    auto pos = AlgebraSpec::make("A1:r1", Flavor::PosCurrent);
    EXPECT_FALSE(pos->admissible(Letter::loop(0, 0)));
    auto aff = AlgebraSpec::make("A1:r1", Flavor::Affine, Scalar(1));
    EXPECT_TRUE(aff->admissible(Letter::derivation()));
    EXPECT_THROW(aff->check(Letter::loop(7, 0)), InadmissibleLetter);
}

TEST(AlgebraSpec, LevelRequiresAffineFlavor) {
    EXPECT_THROW(AlgebraSpec::make("A1:r1", Flavor::Loop, Scalar(1)), std::invalid_argument);
}

TEST(AlgebraSpec, CocycleValue) {
    for (long lam : {0L, 1L, 3L}) {
        auto spec = AlgebraSpec::make("A1:r1", Flavor::Affine, Scalar(lam));
        LieResult r = spec->letter_bracket(Letter::loop(2, 1), Letter::loop(0, -1));
        ASSERT_EQ(r.letters.size(), 1u);
        EXPECT_EQ(r.letters[0].first, Letter::loop(1, 0));
        EXPECT_EQ(r.scalar, Scalar(4 * lam));
        LieResult z = spec->letter_bracket(Letter::loop(2, 0), Letter::loop(0, 0));
        EXPECT_TRUE(z.scalar.is_zero());
    }
}

TEST(AlgebraSpec, DerivationActsByExponent) {
    auto spec = AlgebraSpec::make("A1:r1", Flavor::Affine);
    LieResult r = spec->letter_bracket(Letter::derivation(), Letter::loop(2, 3));
    ASSERT_EQ(r.letters.size(), 1u);
    EXPECT_EQ(r.letters[0].second, Scalar(3));
    EXPECT_TRUE(spec->letter_bracket(Letter::derivation(), Letter::loop(2, 0)).is_zero());
    EXPECT_TRUE(spec->letter_bracket(Letter::derivation(), Letter::derivation()).is_zero());
}

TEST(AlgebraSpec, LetterBracketAntisymmetric) {
    auto spec = AlgebraSpec::make("D4:r3", Flavor::Affine, Scalar(2));
    const int n = spec->basis().dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int wi = spec->basis()[i].weight, wj = spec->basis()[j].weight;
            Letter x = Letter::loop(i, wi + 3), y = Letter::loop(j, wj - 3 * (wi == 0 ? 1 : 2));
            LieResult a = spec->letter_bracket(x, y), b = spec->letter_bracket(y, x);
            EXPECT_EQ(a.scalar, -b.scalar);
            Element ea, eb;
            for (auto& [l, c] : a.letters) ea.add(Monomial{l}, c);
            for (auto& [l, c] : b.letters) eb.add(Monomial{l}, -c);
            EXPECT_EQ(ea, eb);
        }
}

TEST(Element, ArithmeticAndQueries) {
    Element x = Element::letter(Letter::loop(0, 2)) + Element::constant(Scalar(3));
    Element y = x - Element::constant(Scalar(3));
    EXPECT_EQ(y, Element::letter(Letter::loop(0, 2)));
    EXPECT_EQ(x.size(), 2u);
    EXPECT_EQ(x.max_md(), 3);
    EXPECT_EQ(x.coefficient(Monomial{}), Scalar(3));
    EXPECT_TRUE((x - x).is_zero());
    Element z = Element::monomial(Monomial{Letter::loop(1, -1), Letter::derivation()});
    EXPECT_TRUE(z.has_d());
    EXPECT_EQ(z.min_exponent(), -1);
}
