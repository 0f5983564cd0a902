#include <gtest/gtest.h>

#include <subcoord/caching/builtin.hpp>
#include <subcoord/caching/scheme.hpp>
#include <subcoord/caching/symmetry.hpp>
#include <subcoord/caching/verify.hpp>

using namespace subcoord;
using namespace subcoord::caching;

namespace {

const char* kMan22 = R"(field=2
N=2
K=2
F=2
# cache of user 1
Z 1
1010

Z 2
0101

X 1 1
1000
0100

X 1 2
0100
0010

X 2 1
1000
0001

X 2 2
0010
0001
)";

std::size_t error_line(const std::string& text) {
    try {
        parse_scheme(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(SchemeParse, Man22FromText) {
    const auto s = parse_scheme(kMan22);
    EXPECT_EQ(s.N(), 2);
    EXPECT_EQ(s.K(), 2);
    EXPECT_EQ(s.F(), 2);
    EXPECT_EQ(s.cache(1).dim(), 1u);
    EXPECT_TRUE(s.complete());
    EXPECT_TRUE(verify_scheme(s).valid);
    const auto r = memory_rate(s);
    EXPECT_EQ(r.M, Rational(1, 2));
    EXPECT_EQ(*r.R, Rational(1));
}

TEST(SchemeParse, SerializeRoundTripsEveryBuiltin) {
    for (const std::string& name : builtin_names()) {
        const auto s = builtin(name);
        const auto t = parse_scheme(serialize_scheme(s));
        EXPECT_EQ(serialize_scheme(t), serialize_scheme(s)) << name;
        EXPECT_EQ(t.caches(), s.caches()) << name;
        EXPECT_EQ(t.broadcasts(), s.broadcasts()) << name;
    }
}

TEST(SchemeParse, ErrorsReportLineNumbers) {
    EXPECT_EQ(error_line("field=4\nN=2\nK=2\nF=1\n"), 1u);
    EXPECT_EQ(error_line("field=2\nN=2\nQ=2\nF=1\n"), 3u);
    EXPECT_EQ(error_line("field=2\nN=2\nK=2\nF=1\nZ 1\n101\n"), 6u);
    EXPECT_EQ(error_line("field=2\nN=2\nK=2\nF=1\nZ 3\n10\n"), 5u);
    EXPECT_EQ(error_line("field=2\nN=2\nK=2\nF=1\nX 1 3\n10\n"), 5u);
    EXPECT_EQ(error_line("field=2\nN=2\nK=2\nF=1\nZ 1\n1x\n"), 6u);
    EXPECT_EQ(error_line("field=2\nN=2\nK=2\nF=1\n10\n"), 5u);
    EXPECT_EQ(error_line("field=2\nN=2\nK=2\nF=1\nZ 1\n10\n\nZ 1\n01\n"), 8u);
    EXPECT_EQ(error_line("field=2\nN=2\nK=2\nF=x\n"), 4u);
}

TEST(SchemeParse, MissingCachesAreZero) {
    const auto s = parse_scheme("field=3\nN=2\nK=2\nF=1\n");
    EXPECT_EQ(s.cache(2).dim(), 0u);
    EXPECT_FALSE(s.complete());
    EXPECT_EQ(s.missing_demands().size(), 4u);
}

TEST(SchemeParse, WideFieldUsesSpaces) {
    const auto s = parse_scheme("field=11\nN=2\nK=1\nF=1\nZ 1\n10 3\n\nX 2\n0 1\n");
    EXPECT_EQ(s.cache(1).dim(), 1u);
    EXPECT_TRUE(verify_scheme(s).valid);
}

TEST(SchemeParse, SplitSectionsMustBeComplete) {
    const auto s = builtin("man-33");
    std::string text = serialize_scheme(s) + "\nS 1 1\n100000000\n";
    EXPECT_THROW(parse_scheme(text), ParseError);
}

TEST(Verify, DeletedGeneratorYieldsWitness) {
    auto s = parse_scheme(kMan22);
    s.set_broadcast({1, 2}, Subspace::span(s.field(), 4, {Vector::parse(s.field(), "0100")}));
    const auto v = verify_scheme(s);
    EXPECT_FALSE(v.valid);
    ASSERT_EQ(v.failures.size(), 2u);
    for (const auto& fail : v.failures) {
        EXPECT_EQ(fail.demand, (Demand{1, 2}));
        EXPECT_TRUE(s.doc(fail.user).contains(fail.witness));
        EXPECT_FALSE(sum(s.cache(fail.user), s.broadcast({1, 2})).contains(fail.witness));
    }
    EXPECT_EQ(v.failures[0].user, 1);
    EXPECT_EQ(v.failures[1].user, 2);
}

TEST(Verify, IncompleteSchemeStillChecksSuppliedDemands) {
    auto s = parse_scheme(kMan22);
    s.erase_broadcast({2, 2});
    const auto v = verify_scheme(s);
    EXPECT_TRUE(v.valid);
    EXPECT_FALSE(v.complete);
    EXPECT_EQ(v.demands_checked, 3u);
}

TEST(Verify, DecodesHelper) {
    const auto s = parse_scheme(kMan22);
    EXPECT_TRUE(decodes(s, {1, 2}, s.broadcast({1, 2})));
    EXPECT_FALSE(decodes(s, {1, 2}, Subspace::zero(s.field(), 4)));
}

TEST(Scheme, CoordinateLayout) {
    const CachingScheme s(Field(2), 3, 3, 4);
    EXPECT_EQ(s.coord(1, 0), 0u);
    EXPECT_EQ(s.coord(3, 2), 10u);
    EXPECT_EQ(s.doc(2).dim(), 4u);
    EXPECT_THROW(s.coord(4, 0), ContractViolation);
    EXPECT_THROW(s.cache(0), ContractViolation);
}

TEST(Scheme, AllDemandsIsLexicographic) {
    const auto d = all_demands(2, 3);
    ASSERT_EQ(d.size(), 8u);
    EXPECT_EQ(d.front(), (Demand{1, 1, 1}));
    EXPECT_EQ(d[1], (Demand{1, 1, 2}));
    EXPECT_EQ(d.back(), (Demand{2, 2, 2}));
    EXPECT_EQ(demand_string({1, 2, 3}), "123");
    EXPECT_EQ(demand_string({10, 2}), "10 2");
}

TEST(Symmetry, PermutationHelpers) {
    const auto perms = all_perms(3);
    EXPECT_EQ(perms.size(), 6u);
    for (const Perm& p : perms) {
        EXPECT_EQ(compose(p, inverse(p)), perms.front());
        EXPECT_EQ(compose(inverse(p), p), perms.front());
    }
}

TEST(Symmetry, PermuteSchemeKeepsValidity) {
    const auto s = builtin("new-half");
    for (const Perm& kappa : all_perms(3))
        for (const Perm& nu : all_perms(3)) {
            const auto t = permute_scheme(s, kappa, nu);
            EXPECT_TRUE(verify_scheme(t).valid);
            EXPECT_EQ(memory_rate(t).M, memory_rate(s).M);
            EXPECT_EQ(*memory_rate(t).R, *memory_rate(s).R);
        }
}

TEST(Symmetry, SymmetrizedMan22IsSymmetricUnderWitnesses) {
    const auto s = builtin("man-22");
    const auto sym = symmetrize(s);
    EXPECT_EQ(sym.F(), 2 * 2 * s.F());
    EXPECT_TRUE(verify_scheme(sym).valid);
    EXPECT_TRUE(symmetric_under(sym, [&](const Perm& sigma, const Perm& tau) {
        return symmetry_witness(s.N(), s.K(), s.F(), sigma, tau);
    }));
}

TEST(Symmetry, LopsidedIsNotSymmetricWithIdentityWitness) {
    const auto s = builtin("lopsided");
    EXPECT_FALSE(symmetric_under(s, [&](const Perm&, const Perm&) {
        std::vector<std::size_t> id(s.ambient_dim());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        return id;
    }));
}

TEST(Symmetry, SymmetrizeRefusesIncompleteScheme) {
    auto s = builtin("man-22");
    s.erase_broadcast({1, 1});
    EXPECT_THROW(symmetrize(s), Refusal);
}
