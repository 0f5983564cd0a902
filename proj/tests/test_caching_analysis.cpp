#include <gtest/gtest.h>

#include <subcoord/caching/bounds.hpp>
#include <subcoord/caching/builtin.hpp>
#include <subcoord/caching/symmetry.hpp>
#include <subcoord/caching/verify.hpp>
#include <subcoord/caching/zdecomp.hpp>
#include <subcoord/random.hpp>

using namespace subcoord;
using namespace subcoord::caching;

namespace {

Rational q(long long a, long long b = 1) { return Rational(a, b); }

}  // namespace

TEST(Builtin, EveryBuiltinIsValidAndComplete) {
    for (const std::string& name : builtin_names()) {
        const auto s = builtin(name);
        const auto v = verify_scheme(s);
        EXPECT_TRUE(v.valid) << name;
        EXPECT_EQ(v.complete, name != "tian-caches") << name;
    }
}

TEST(Builtin, RatesOfNamedSchemes) {
    const auto m22 = memory_rate(builtin("man-22"));
    EXPECT_EQ(m22.M, q(1, 2));
    EXPECT_EQ(*m22.R, q(1));
    const auto m33 = memory_rate(builtin("man-33"));
    EXPECT_EQ(m33.M, q(1));
    EXPECT_EQ(*m33.R, q(1));
    const auto nh = builtin("new-half");
    EXPECT_EQ(nh.F(), 6);
    EXPECT_EQ(memory_rate(nh).M, q(1, 2));
    EXPECT_EQ(*memory_rate(nh).R, q(5, 3));
    for (const auto& [d, x] : nh.broadcasts()) EXPECT_LE(x.dim(), 10u) << demand_string(d);
    const auto lop = memory_rate(builtin("lopsided"));
    EXPECT_EQ(*lop.R, q(2));
    EXPECT_EQ(*lop.R_avg_distinct, q(7, 6));
}

TEST(Builtin, ReplicationScalesF) {
    const auto s = builtin("man-22", 6);
    EXPECT_EQ(s.F(), 6);
    EXPECT_TRUE(verify_scheme(s).valid);
    EXPECT_EQ(memory_rate(s).M, q(1, 2));
    EXPECT_THROW(builtin("man-22", 3), ContractViolation);
    EXPECT_THROW(builtin("no-such-scheme"), ContractViolation);
    EXPECT_THROW(builtin("tian-caches", 4), ContractViolation);
}

TEST(Ratios, NamedValues) {
    const auto m33 = ratios(builtin("man-33"));
    EXPECT_EQ(m33.r[0], q(1, 3));
    EXPECT_TRUE(m33.uniform);
    const auto nh = ratios(builtin("new-half"));
    EXPECT_EQ(nh.r[2], q(1, 3));
    const auto e = ratios(builtin("empty"));
    EXPECT_EQ(e.r[4], q(1, 3));
    EXPECT_EQ(memory_rate(builtin("empty")).M, q(0));
    EXPECT_EQ(ratios(builtin("full")).r[0], q(1));
    EXPECT_FALSE(ratios(builtin("lopsided")).uniform);
}

TEST(Ratios, MemoryIdentityHoldsForUniformSchemes) {
    for (const std::string& name : builtin_names()) {
        const auto s = builtin(name);
        if (s.N() != 3 || s.K() != 3) continue;
        const auto r = ratios(s);
        if (!r.uniform) continue;
        EXPECT_EQ(r.memory(), memory_rate(s).M) << name;
    }
}

TEST(Ratios, RequireThreeByThree) {
    EXPECT_THROW(ratios(builtin("man-22")), ContractViolation);
}

TEST(Bounds, NamedTightRows) {
    const auto m33 = bound_report(builtin("man-33"));
    const BoundRow* r = m33.find("6M+5R>=11");
    ASSERT_NE(r, nullptr);
    EXPECT_TRUE(r->tight());
    const auto nh = bound_report(builtin("new-half"));
    r = nh.find("2M+R>=8/3");
    ASSERT_NE(r, nullptr);
    EXPECT_TRUE(r->tight());
    const auto m22 = bound_report(builtin("man-22"));
    r = m22.find("M+R>=3/2");
    ASSERT_NE(r, nullptr);
    EXPECT_TRUE(r->tight());
}

TEST(Bounds, EveryBuiltinSatisfiesEveryProvenRow) {
    for (const std::string& name : builtin_names()) {
        const auto rep = bound_report(builtin(name));
        EXPECT_TRUE(rep.all_proven_satisfied()) << name;
        for (const BoundRow& row : rep.rows) EXPECT_FALSE(row.violated()) << name << " " << row.name;
    }
}

TEST(Bounds, ConjectureIsNotProven) {
    const auto rep = bound_report(builtin("man-33"));
    const BoundRow* r = rep.find("4M+3R>=7");
    ASSERT_NE(r, nullptr);
    EXPECT_FALSE(r->proven);
}

TEST(Bounds, IncompleteSchemeSkipsRateRows) {
    auto s = builtin("man-33");
    s.erase_broadcast({1, 2, 3});
    for (const BoundRow& row : bound_report(s).rows) EXPECT_TRUE(row.skipped.has_value()) << row.name;
}

TEST(Bounds, SeparatedRowsNeedSeparation) {
    const auto rep = bound_report(builtin("full"));
    ASSERT_TRUE(rep.separated.has_value());
    EXPECT_FALSE(*rep.separated);
    const BoundRow* r = rep.find("6M+5R>=11+3r4+(15/2)r5");
    ASSERT_NE(r, nullptr);
    EXPECT_TRUE(r->skipped.has_value());
}

TEST(Tian, Man33BlockRanks) {
    const auto t = tian_rank_audit(builtin("man-33"), {1, 2, 3});
    EXPECT_TRUE(t.separated);
    EXPECT_TRUE(t.hypothesis);
    EXPECT_EQ(t.block_ranks[0], 0u);
    EXPECT_EQ(t.block_ranks[4], 0u);
    EXPECT_EQ(t.block_ranks[8], 0u);
    EXPECT_EQ(t.lhs, q(5));
    EXPECT_TRUE(t.inequality);
    EXPECT_TRUE(t.groups_within_limit);
}

TEST(Tian, NewHalfFailsHypothesis) {
    const auto t = tian_rank_audit(builtin("new-half"), {1, 2, 3});
    EXPECT_FALSE(t.hypothesis);
    EXPECT_FALSE(t.hypothesis_failures.empty());
    EXPECT_FALSE(t.applicable());
}

TEST(DiscoordAudit, NewHalfValues) {
    const auto a = discoord_audit(builtin("new-half"));
    EXPECT_EQ(a.delta, q(1, 6));
    EXPECT_EQ(a.delta_prime, q(1, 6));
    EXPECT_EQ(a.lhs, q(29, 6));
    EXPECT_EQ(a.rhs_second, q(29, 6));
    EXPECT_TRUE(a.first_holds());
    EXPECT_TRUE(a.second_holds());
}

TEST(DiscoordAudit, SymmetrizedNewHalfMeetsRatioForm) {
    const auto s = symmetrize(builtin("new-half"));
    EXPECT_EQ(s.F(), 216);
    const auto a = discoord_audit(s);
    const auto r = ratios(s);
    EXPECT_TRUE(r.uniform);
    EXPECT_EQ(a.lhs, q(29, 6));
    EXPECT_EQ(a.rhs_second, q(29, 6));
    EXPECT_EQ(q(5) - r.r[1] - r.r[2] / 2, q(29, 6));
}

TEST(DiscoordAudit, SymmetrizedMan33IsTightAtFive) {
    const auto a = discoord_audit(symmetrize(builtin("man-33")));
    EXPECT_EQ(a.lhs, q(5));
    EXPECT_EQ(a.rhs_second, q(5));
    EXPECT_EQ(a.delta_prime, q(0));
}

TEST(DiscoordAudit, AuditsHoldOnEveryThreeByThreeBuiltin) {
    for (const std::string& name : builtin_names()) {
        const auto s = builtin(name);
        if (s.N() != 3 || s.K() != 3 || !s.complete()) continue;
        const auto a = discoord_audit(s);
        EXPECT_TRUE(a.first_holds()) << name;
        EXPECT_TRUE(a.second_holds()) << name;
    }
}

TEST(SymmetrizeWitness, NewHalfSymmetrizedIsSymmetric) {
    const auto s = builtin("new-half");
    const auto sym = symmetrize(s);
    EXPECT_TRUE(verify_scheme(sym).valid);
    EXPECT_EQ(memory_rate(sym).M, q(1, 2));
    EXPECT_EQ(*memory_rate(sym).R, q(5, 3));
    EXPECT_TRUE(symmetric_under(sym, [&](const Perm& sigma, const Perm& tau) {
        return symmetry_witness(s.N(), s.K(), s.F(), sigma, tau);
    }));
}

TEST(ZDecomp, RandomCachesSatisfyInvariants) {
    Rng rng(51);
    for (int F = 1; F <= 3; ++F) {
        const CachingScheme s(Field(2), 3, 3, F);
        for (int t = 0; t < 100; ++t) {
            const Subspace z = random_subspace(Field(2), s.ambient_dim(), rng);
            const auto d = z_decompose(z, s);
            ASSERT_TRUE(z_decomposition_invariants(d, z, s));
            std::size_t total = 0;
            for (std::size_t side = 0; side < 3; ++side) total += d.side(side).dim();
            EXPECT_GE(total, z.dim());
        }
    }
}

TEST(ZDecomp, PureTypesLandInTheirLevel) {
    const Field f(2);
    const CachingScheme s(f, 3, 3, 1);
    auto v = [&](const char* t) { return Vector::parse(f, t); };
    struct Case {
        const char* gen;
        std::array<int, 3> level;  // -1 when the side is untouched
    };
    const Case cases[] = {
        {"100", {0, -1, -1}}, {"010", {-1, 0, -1}}, {"110", {2, 2, -1}},
        {"101", {3, -1, 2}},  {"011", {-1, 3, 3}},  {"111", {4, 4, 4}},
    };
    for (const Case& c : cases) {
        const Subspace z = Subspace::span(f, 3, {v(c.gen)});
        const auto d = z_decompose(z, s);
        EXPECT_TRUE(z_decomposition_invariants(d, z, s)) << c.gen;
        for (std::size_t side = 0; side < 3; ++side) {
            const int l = c.level[side];
            EXPECT_EQ(d.side(side).dim(), l < 0 ? 0u : 1u) << c.gen << " side " << side;
            if (l >= 0) EXPECT_EQ(d.blocks[side][static_cast<std::size_t>(l)].dim(), 1u) << c.gen << " side " << side;
        }
        const Subspace again = Subspace::span(f, 3, d.generators());
        const auto d2 = z_decompose(again, s);
        for (std::size_t side = 0; side < 3; ++side)
            for (std::size_t l = 0; l < 5; ++l) EXPECT_EQ(d2.blocks[side][l], d.blocks[side][l]);
    }
}

TEST(ZDecomp, LevelTwoNeedsAllThreeDocuments) {
    const Field f(2);
    const CachingScheme s(f, 3, 3, 1);
    const Subspace z = Subspace::span(f, 3, {Vector::parse(f, "110"), Vector::parse(f, "011")});
    const auto d = z_decompose(z, s);
    EXPECT_TRUE(z_decomposition_invariants(d, z, s));
    EXPECT_EQ(d.a2.size(), 1u);
    for (std::size_t side = 0; side < 3; ++side) EXPECT_EQ(d.blocks[side][1].dim(), 1u);
}

TEST(ZDecomp, Man33CachesAreTwoWayFree) {
    const auto s = builtin("man-33");
    for (int j = 1; j <= 3; ++j) {
        const auto d = z_decompose(s.cache(j), s);
        EXPECT_TRUE(z_decomposition_invariants(d, s.cache(j), s));
        for (std::size_t side = 0; side < 3; ++side) {
            EXPECT_EQ(d.blocks[side][0].dim(), 1u);
            EXPECT_EQ(d.two_way_dim(side), 0u);
        }
    }
}
