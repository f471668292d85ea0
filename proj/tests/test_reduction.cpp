#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace kmgrowth;

namespace {

// sl2 letters: b1 = f, b2 = h, b3 = e
Letter F(int k) { return Letter::loop(0, k); }
Letter H(int k) { return Letter::loop(1, k); }
Letter E(int k) { return Letter::loop(2, k); }
Element mono(std::initializer_list<Letter> ls, long c = 1) {
    Monomial m(ls);
    std::sort(m.begin(), m.end());
    return Element::monomial(m, Scalar(c));
}

ReductionEngine sl2_engine() { return ReductionEngine(EquivariantBasis::from_label("A1:r1")); }

bool supported_on_theta_lines(const EquivariantBasis& b, const Element& g) {
    for (const auto& [m, c] : g.terms())
        for (const Letter& l : m)
            if (l.idx != b.theta() && l.idx != b.minus_theta()) return false;
    return true;
}

}  // namespace

TEST(Kill, AlreadyHighestRoot) {
    auto eng = sl2_engine();
    Element f = mono({E(1), E(2)});
    KillResult r = eng.kill_positive_action(f, Positivity::Positive);
    EXPECT_EQ(r.g, f);
    EXPECT_EQ(r.rounds, 0);
}

TEST(Kill, CartanNeedsOneBracket) {
    auto eng = sl2_engine();
    KillResult r = eng.kill_positive_action(mono({H(1)}), Positivity::Positive);
    EXPECT_EQ(r.trace.bracket_count(), 1u);
    ASSERT_EQ(r.g.size(), 1u);
    EXPECT_EQ(leading_term(r.g)[0].idx, 2);
    EXPECT_EQ(replay_s(eng.spec(), r.trace), r.g);
}

TEST(Kill, MixedProductEndsOnThetaLine) {
    auto eng = sl2_engine();
    KillResult r = eng.kill_positive_action(mono({F(1), H(2)}), Positivity::Positive);
    EXPECT_TRUE(supported_on_theta_lines(eng.basis(), r.g));
    for (const auto& [m, c] : r.g.terms())
        for (const Letter& l : m) EXPECT_EQ(l.idx, 2);
    EXPECT_LE(r.rounds, r.round_bound);
    EXPECT_EQ(replay_s(eng.spec(), r.trace), r.g);
}

TEST(Kill, RejectsBadInput) {
    auto eng = sl2_engine();
    EXPECT_THROW(eng.kill_positive_action(Element(), Positivity::Positive), std::invalid_argument);
    EXPECT_THROW(eng.kill_positive_action(mono({E(1)}) + mono({E(1), E(2)}), Positivity::Positive), std::invalid_argument);
}

TEST(Realize, SingleLetterToNegative) {
    auto eng = sl2_engine();
    RealizeResult r = eng.realize_congruence_class(mono({E(1)}), {0});
    EXPECT_EQ(congruence_class(leading_term(r.g, MonomialOrder::RevLex)), (std::vector<int>{0}));
    EXPECT_EQ(replay_s(eng.spec(), r.trace), r.g);
}

TEST(Realize, MatchedClassNeedsNoStages) {
    auto eng = sl2_engine();
    RealizeResult r = eng.realize_congruence_class(mono({E(1), E(2)}), {2, 2});
    EXPECT_EQ(r.stages, 0);
    EXPECT_EQ(congruence_class(leading_term(r.g, MonomialOrder::RevLex)), (std::vector<int>{2, 2}));
}

TEST(Realize, AllClassesOfTwistedTypes) {
    for (const char* label : {"A2:r2", "D4:r3"}) {
        ReductionEngine eng(EquivariantBasis::from_label(label));
        const auto& b = eng.basis();
        Element f = Element::letter(Letter::loop(b.theta(), eng.spec().next_exponent(b.theta_weight(), 1)));
        for (int i = 0; i < b.dim(); ++i) {
            if (!b.is_root_element(i)) continue;
            RealizeResult r = eng.realize_congruence_class(f, {i});
            EXPECT_EQ(congruence_class(leading_term(r.g, MonomialOrder::RevLex)), (std::vector<int>{i})) << label;
            EXPECT_EQ(replay_s(eng.spec(), r.trace), r.g);
        }
    }
}

TEST(Lift, Sl2CartanTarget) {
    auto eng = sl2_engine();
    Element g = mono({E(2)});
    auto partners = eng.partners_for(Monomial{H(7)});
    ConstructResult r = eng.lift_leading_term(g, {2}, 2, Monomial{H(7)}, partners);
    EXPECT_EQ(leading_term(r.h), Monomial{H(7)});
    EXPECT_EQ(r.h.size(), 1u);
}

TEST(Lift, ThresholdIsEnforced) {
    auto eng = sl2_engine();
    auto partners = eng.partners_for(Monomial{H(3)});
    try {
        eng.lift_leading_term(mono({E(2)}), {2}, 2, Monomial{H(2)}, partners);
        FAIL();
    } catch (const ThresholdNotMet& e) {
        EXPECT_EQ(e.threshold, 2);
    }
}

TEST(Construct, Sl2RandomTargetsAboveThreshold) {
    auto eng = sl2_engine();
    Element f = mono({E(1), E(2)});
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> idx(0, 2), gap(0, 4);
    const int n = eng.uniform_threshold(f);
    for (int t = 0; t < 20; ++t) {
        Monomial m{Letter::loop(idx(rng), 0), Letter::loop(idx(rng), 0)};
        m[0].exp = n + 1 + gap(rng);
        m[1].exp = m[0].exp + gap(rng);
        std::sort(m.begin(), m.end());
        ConstructResult r = eng.construct_h_m(f, m);
        EXPECT_EQ(leading_term(r.h), m);
        EXPECT_GE(r.h.min_exponent(), 1);
        EXPECT_GE(r.trace.min_acting_exponent(), 1);
        EXPECT_EQ(replay_s(eng.spec(), r.trace), r.h);
    }
}

TEST(Construct, ReduceExampleFromTheUsageProgram) {
    auto eng = sl2_engine();
    ConstructResult r = eng.construct_h_m(mono({E(1)}), Monomial{H(14)});
    EXPECT_EQ(r.h, mono({H(14)}, -4));
    EXPECT_EQ(r.ell, 1);
}

TEST(Construct, UniformThresholdBoundsPerClass) {
    auto eng = sl2_engine();
    Element f = mono({E(1), H(2)});
    int u = eng.uniform_threshold(f);
    for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) EXPECT_LE(eng.threshold_for(f, Monomial{Letter::loop(a, 0), Letter::loop(c, 0)}), u);
    EXPECT_THROW(eng.uniform_threshold(mono({E(1), E(1), E(1)})), std::invalid_argument);
}

TEST(Project, DerivationTimesE) {
    auto spec = AlgebraSpec::make("A1:r1", Flavor::Affine);
    Element f = Element::monomial(Monomial{E(1), Letter::derivation()});
    ProjectResult r = project_to_derived(*spec, f);
    EXPECT_EQ(r.h, mono({E(1), E(1)}, -1));
    EXPECT_EQ(r.trace.steps.size(), 1u);
}

TEST(Project, DerivationSquared) {
    auto spec = AlgebraSpec::make("A1:r1", Flavor::Affine);
    ProjectResult r = project_to_derived(*spec, Element::monomial(Monomial{Letter::derivation(), Letter::derivation()}));
    EXPECT_EQ(r.h, mono({E(1), E(1)}, 2));
    EXPECT_EQ(r.trace.steps.size(), 2u);
    EXPECT_EQ(replay_s(*spec, r.trace), r.h);
}

TEST(Project, DerivationFreeIsUnchanged) {
    auto spec = AlgebraSpec::make("A1:r1", Flavor::Affine);
    Element f = mono({F(-1), H(3)});
    ProjectResult r = project_to_derived(*spec, f);
    EXPECT_EQ(r.h, f);
    EXPECT_TRUE(r.trace.steps.empty());
}

TEST(LiftToU, ReproducesLeadingTerm) {
    auto eng = sl2_engine();
    Element f = mono({E(1), E(2)});
    const int n = eng.uniform_threshold(f);
    Monomial m{H(n + 1), E(n + 3)};
    ConstructResult r = eng.construct_h_m(f, m);
    for (long lam : {0L, 1L}) {
        auto uspec = AlgebraSpec::make("A1:r1", Flavor::Affine, Scalar(lam));
        Element h = straighten(*uspec, Monomial{E(1), E(2)});
        Element lifted = lift_to_u(*uspec, h, r.trace);
        EXPECT_EQ(leading_term(lifted), m);
        EXPECT_EQ(gr_len(lifted), r.h);
    }
}

TEST(LiftToU, EmptyTraceAndMismatch) {
    auto uspec = AlgebraSpec::make("A1:r1", Flavor::Affine, Scalar(1));
    ReductionTrace t;
    t.generator = mono({E(1)});
    EXPECT_EQ(lift_to_u(*uspec, mono({E(1)}), t), mono({E(1)}));
    EXPECT_THROW(lift_to_u(*uspec, mono({E(2)}), t), std::invalid_argument);
}
