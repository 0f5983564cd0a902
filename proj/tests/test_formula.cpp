#include <gtest/gtest.h>

#include <subcoord/discoord.hpp>
#include <subcoord/enumerate.hpp>
#include <subcoord/formula.hpp>
#include <subcoord/random.hpp>

using namespace subcoord;

TEST(FormulaParse, RoundTripsThroughToString) {
    for (const std::string& text : discoordination_formulas()) {
        const Formula f = Formula::parse(text);
        const Formula g = Formula::parse(f.to_string());
        EXPECT_EQ(f.to_string(), g.to_string());
        EXPECT_EQ(f.arity(), 3u);
    }
}

TEST(FormulaParse, JuxtapositionMeansIntersection) {
    const auto t = counterexample_triple();
    EXPECT_EQ(Formula::parse("dim(AB)").evaluate(t), Formula::parse("dim(A&B)").evaluate(t));
    EXPECT_EQ(Formula::parse("dim(A+B)").evaluate(t), 2);
}

TEST(FormulaParse, CoefficientsAndQuotients) {
    const auto t = counterexample_triple();
    EXPECT_EQ(Formula::parse("3 dim(A) - 2*dim(B)").evaluate(t), 1);
    EXPECT_EQ(Formula::parse("dim(A+B | C)").evaluate(t), 1);
    EXPECT_EQ(Formula::parse("dim(0)").evaluate(t), 0);
}

TEST(FormulaParse, ErrorsCarryColumn) {
    for (const char* bad : {"", "dim(A", "dom(A)", "dim(A) dim(B)", "dim(a)", "dim(A+)"}) {
        try {
            Formula::parse(bad);
            ADD_FAILURE() << "accepted '" << bad << "'";
        } catch (const ParseError& e) {
            EXPECT_NE(std::string(e.what()).find("formula"), std::string::npos);
        }
    }
}

TEST(FormulaEval, TooFewLeavesIsContractViolation) {
    EXPECT_THROW(Formula::parse("dim(D)").evaluate(counterexample_triple()), ContractViolation);
}

TEST(Formulas, AllSixGiveOneOnCounterexample) {
    for (const std::string& text : discoordination_formulas())
        EXPECT_EQ(Formula::parse(text).evaluate(counterexample_triple()), 1) << text;
}

TEST(Formulas, AllSixMatchBruteOnEveryTripleOfGF2Cubed) {
    std::vector<Formula> fs;
    for (const std::string& text : discoordination_formulas()) fs.push_back(Formula::parse(text));
    const auto subs = all_subspaces_gf2(3);
    for (const Subspace& a : subs)
        for (const Subspace& b : subs)
            for (const Subspace& c : subs) {
                const auto dc = static_cast<long long>(discoordination_brute({a, b, c}));
                for (const Formula& f : fs) ASSERT_EQ(f.evaluate({a, b, c}), dc) << f.to_string();
            }
}

TEST(Formulas, AllSixMatchOverGF5) {
    Rng rng(41);
    const Field f(5);
    for (int t = 0; t < 100; ++t) {
        const std::vector<Subspace> abc{random_subspace(f, 5, rng), random_subspace(f, 5, rng), random_subspace(f, 5, rng)};
        const auto dc = static_cast<long long>(discoordination(SubspaceFamily(abc)));
        for (const std::string& text : discoordination_formulas()) EXPECT_EQ(Formula::parse(text).evaluate(abc), dc);
    }
}

TEST(Balanced, DiscoordFormulasAreBalancedWithKOne) {
    for (const std::string& text : discoordination_formulas()) {
        const auto r = balanced_check(Formula::parse(text));
        EXPECT_TRUE(r.balanced);
        EXPECT_EQ(r.k, 1);
    }
}

TEST(Balanced, MutualInformationIsNotBalanced) {
    const auto r = balanced_check(Formula::parse("dim(A+B+C) - dim(A+B) - dim(A+C) - dim(B+C) + dim(A) + dim(B) + dim(C)"));
    EXPECT_FALSE(r.balanced);
    EXPECT_EQ(r.k, -1);
}

TEST(Balanced, BalancedFormulaIsKTimesDiscoord) {
    const Formula f = Formula::parse("2 dim(C&(A+B)) - 2 dim(C&A) - 2 dim(C&B) + 2 dim(A&B&C)");
    const auto r = balanced_check(f);
    ASSERT_TRUE(r.balanced);
    EXPECT_EQ(r.k, 2);
    Rng rng(42);
    for (int t = 0; t < 100; ++t) {
        const Field two(2);
        const Subspace a = random_subspace(two, 4, rng), b = random_subspace(two, 4, rng), c = random_subspace(two, 4, rng);
        EXPECT_EQ(balanced_eval(f, a, b, c), r.k * static_cast<long long>(discoordination({a, b, c})));
    }
}

TEST(Balanced, FourVariablesRejected) {
    EXPECT_THROW(balanced_check(Formula::parse("dim(A+D)")), ContractViolation);
}
