#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace kmgrowth;

TEST(Text, FormatParseRoundTrip) {
    auto spec = AlgebraSpec::make("D4:r3", Flavor::Affine, Scalar(1));
    for (const char* s : {"1*b1@t^0", "-1/2*b15@t^1*b22@t^2", "1+1w*b1@t^0 + 3", "2*d*b2@t^0", "w*b16@t^-2"}) {
        Element e = parse_element_s(*spec, s);
        EXPECT_EQ(parse_element_s(*spec, format_element(e)), e) << s;
    }
}

TEST(Text, SymmetricParseSortsLetters) {
    auto spec = AlgebraSpec::make("A1:r1", Flavor::Loop);
    EXPECT_EQ(parse_element_s(*spec, "1*b3@t^1*b1@t^0"), parse_element_s(*spec, "1*b1@t^0*b3@t^1"));
}

TEST(Text, EnvelopingParseStraightens) {
    auto spec = AlgebraSpec::make("A1:r1", Flavor::Affine, Scalar(1));
    EXPECT_EQ(format_element(parse_element_u(*spec, "1*b3@t^1*b1@t^-1")), "1*b1@t^-1*b3@t^1 + 1*b2@t^0 + 4");
}

TEST(Text, ErrorsCarryPosition) {
    auto spec = AlgebraSpec::make("A1:r1", Flavor::Loop);
    try {
        parse_element_s(*spec, "1*b3@t^");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 7u);
    }
    EXPECT_THROW(parse_element_s(*spec, "1*b3t^1"), ParseError);
    EXPECT_THROW(parse_element_s(*spec, "1*b4@t^1"), std::exception);
    EXPECT_THROW(parse_element_s(*spec, "w*b1@t^0"), std::domain_error);
    EXPECT_THROW(parse_element_s(*AlgebraSpec::make("A1:r1", Flavor::Current), "1*b1@t^-1"), InadmissibleLetter);
}

TEST(Text, MonomialParsing) {
    auto spec = AlgebraSpec::make("A1:r1", Flavor::Loop);
    EXPECT_EQ(parse_monomial(*spec, "b2@t^14"), (Monomial{Letter::loop(1, 14)}));
    EXPECT_EQ(format_monomial(Monomial{Letter::loop(1, 14), Letter::loop(2, 15)}), "b2@t^14*b3@t^15");
}
