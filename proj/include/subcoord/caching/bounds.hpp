#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "../discoord.hpp"
#include "symmetry.hpp"
#include "verify.hpp"
#include "zdecomp.hpp"

namespace subcoord::caching {

inline void require_three_by_three(const CachingScheme& s, const std::string& what) {
    if (s.N() != 3 || s.K() != 3)
        throw ContractViolation(what + " needs N = K = 3, got N=" + std::to_string(s.N()) + ", K=" + std::to_string(s.K()));
}

/// Composition weights r1..r5 of an N = K = 3 scheme.
struct Ratios {
    std::array<Rational, 5> r{};
    /// Every user and every document side produced the same r1..r4, and r5
    /// agrees across sides. Symmetric schemes always have uniform ratios.
    bool uniform = true;

    Rational total() const { return r[0] + r[1] + r[2] + r[3] + r[4]; }
    Rational memory() const { return 3 * r[0] + 2 * r[1] + Rational(3, 2) * r[2] + r[3]; }
};

inline Ratios ratios(const CachingScheme& s) {
    require_three_by_three(s, "ratios");
    const long long F = s.F();
    std::vector<ZDecomposition> decs;
    for (int j = 1; j <= 3; ++j) decs.push_back(z_decompose(s.cache(j), s));

    Ratios out;
    std::array<Rational, 4> acc{};
    std::optional<std::array<std::size_t, 4>> first;
    for (const ZDecomposition& d : decs)
        for (std::size_t side = 0; side < 3; ++side) {
            const std::array<std::size_t, 4> v{d.blocks[side][0].dim(), d.blocks[side][1].dim(), d.two_way_dim(side),
                                               d.blocks[side][4].dim()};
            if (!first) first = v;
            else if (*first != v) out.uniform = false;
            for (std::size_t i = 0; i < 4; ++i) acc[i] += Rational(static_cast<long long>(v[i]));
        }
    for (std::size_t i = 0; i < 4; ++i) out.r[i] = acc[i] / Rational(9 * F);

    Rational r5{};
    std::optional<std::size_t> first5;
    for (std::size_t side = 0; side < 3; ++side) {
        std::vector<Subspace> parts;
        for (const ZDecomposition& d : decs) parts.push_back(d.side(side));
        const std::size_t used = sum(parts, s.field(), s.ambient_dim()).dim();
        if (!first5) first5 = used;
        else if (*first5 != used) out.uniform = false;
        r5 += Rational(F - static_cast<long long>(used), 3 * F);
    }
    out.r[4] = r5 / Rational(3);
    return out;
}

/// Z_i lies in the sum of block i of every document.
inline bool is_separated(const CachingScheme& s) {
    require_three_by_three(s, "is_separated");
    const auto split = s.effective_split();
    if (!split) throw ContractViolation("is_separated needs a split or F divisible by 3");
    for (int i = 1; i <= 3; ++i) {
        std::vector<Subspace> blocks;
        for (const auto& doc : *split) blocks.push_back(doc[static_cast<std::size_t>(i - 1)]);
        if (!subspace_contains(sum(blocks, s.field(), s.ambient_dim()), s.cache(i))) return false;
    }
    return true;
}

struct TianAudit {
    Demand demand;
    bool separated = false;
    bool hypothesis = false;          ///< each user i recovers W_{d_i} and block i of every document
    std::vector<int> hypothesis_failures;  ///< users for which it fails
    std::array<std::size_t, 9> block_ranks{};  ///< G1..G9 in the order A1 A2 A3 B1 .. C3
    std::array<std::size_t, 3> group_ranks{};  ///< undecoded column group of each user
    Rational group_limit;             ///< (M + R' - 5/3)
    Rational r_prime;                 ///< dim(X_d) / F
    Rational lhs;                     ///< 2R' + 3M
    bool groups_within_limit = false;
    bool inequality = false;          ///< 2R' + 3M >= 5; only meaningful when the hypothesis holds
    bool applicable() const { return separated && hypothesis; }
};

inline TianAudit tian_rank_audit(const CachingScheme& s, const Demand& d) {
    require_three_by_three(s, "tian_rank_audit");
    s.check_demand(d);
    if (!distinct_entries(d)) throw ContractViolation("tian_rank_audit needs a demand with distinct entries");
    if (!s.has_broadcast(d)) throw ContractViolation("tian_rank_audit: no broadcast for demand " + demand_string(d));
    const auto split = s.effective_split();
    if (!split) throw ContractViolation("tian_rank_audit needs a split or F divisible by 3");
    const Field f = s.field();
    const std::size_t n = s.ambient_dim();
    const Subspace& x = s.broadcast(d);

    TianAudit a;
    a.demand = d;
    a.separated = is_separated(s);
    for (int i = 1; i <= 3; ++i) {
        std::vector<Subspace> need{s.doc(d[static_cast<std::size_t>(i - 1)])};
        for (const auto& doc : *split) need.push_back(doc[static_cast<std::size_t>(i - 1)]);
        if (!subspace_contains(sum(s.cache(i), x), sum(need, f, n))) a.hypothesis_failures.push_back(i);
    }
    a.hypothesis = a.hypothesis_failures.empty();

    // Coordinates of X_d in the concatenated block bases.
    std::vector<std::size_t> col_block;
    Matrix basis = Matrix::empty(f, n);
    for (std::size_t doc = 0; doc < 3; ++doc)
        for (std::size_t b = 0; b < 3; ++b)
            for (const Vector& v : (*split)[doc][b].basis_vectors()) {
                basis.append_row(v);
                col_block.push_back(doc * 3 + b);
            }
    std::vector<Vector> g;
    for (const Vector& v : x.basis_vectors()) {
        auto c = solve(basis, v);
        if (!c) throw std::logic_error("tian_rank_audit: split does not span the ambient");
        g.push_back(*c);
    }
    auto column_rank = [&](auto keep) {
        std::vector<Vector> rows;
        for (const Vector& r : g) {
            Vector t(f, r.size());
            for (std::size_t c = 0; c < r.size(); ++c)
                if (keep(col_block[c])) t[c] = r[c];
            rows.push_back(std::move(t));
        }
        return rank(Matrix(f, col_block.size(), rows));
    };
    for (std::size_t k = 0; k < 9; ++k) a.block_ranks[k] = column_rank([k](std::size_t blk) { return blk == k; });
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t own = static_cast<std::size_t>(d[i] - 1);
        a.group_ranks[i] = column_rank([&](std::size_t blk) { return blk / 3 != own && blk % 3 != i; });
    }
    const RateReport rr = memory_rate(s);
    a.r_prime = Rational(static_cast<long long>(x.dim()), s.F());
    a.group_limit = rr.M + a.r_prime - Rational(5, 3);
    a.groups_within_limit = true;
    for (std::size_t r : a.group_ranks)
        if (Rational(static_cast<long long>(r), s.F()) > a.group_limit) a.groups_within_limit = false;
    a.lhs = 2 * a.r_prime + 3 * rr.M;
    a.inequality = a.lhs >= Rational(5);
    return a;
}

struct BoundRow {
    std::string name;
    Rational lhs, rhs;
    bool proven = true;                 ///< false for conjectures, which are evaluated only
    std::optional<std::string> skipped;  ///< reason the row could not be evaluated
    bool satisfied() const { return !skipped && lhs >= rhs; }
    bool tight() const { return !skipped && lhs == rhs; }
    bool violated() const { return !skipped && proven && lhs < rhs; }
};

struct BoundReport {
    RateReport rates;
    std::optional<Ratios> ratios;
    std::optional<bool> separated;
    std::optional<TianAudit> tian;
    std::vector<BoundRow> rows;

    bool all_proven_satisfied() const {
        for (const BoundRow& r : rows)
            if (r.violated()) return false;
        return true;
    }
    const BoundRow* find(const std::string& name) const {
        for (const BoundRow& r : rows)
            if (r.name == name) return &r;
        return nullptr;
    }
};

inline BoundReport bound_report(const CachingScheme& s) {
    BoundReport rep;
    rep.rates = memory_rate(s);
    const Rational M = rep.rates.M;
    const Rational R = rep.rates.R.value_or(Rational(0));
    std::optional<std::string> no_r;
    if (!rep.rates.complete) no_r = "broadcasts incomplete, R is not a worst case";

    auto row = [&](std::string name, Rational lhs, Rational rhs, std::optional<std::string> skip = std::nullopt,
                   bool proven = true) {
        rep.rows.push_back({std::move(name), lhs, rhs, proven, std::move(skip)});
    };

    if (s.N() == 2 && s.K() == 2) {
        row("M+R>=3/2", M + R, Rational(3, 2), no_r);
        row("2M+R>=2", 2 * M + R, Rational(2), no_r);
        row("M+2R>=2", M + 2 * R, Rational(2), no_r);
        return rep;
    }
    if (s.N() != 3 || s.K() != 3) return rep;

    row("3R+M>=3", 3 * R + M, Rational(3), no_r);
    row("3R+2M>=5", 3 * R + 2 * M, Rational(5), no_r);
    row("R+3M>=3", R + 3 * M, Rational(3), no_r);
    row("M+R>=2", M + R, Rational(2), no_r);
    row("2M+R>=8/3", 2 * M + R, Rational(8, 3), no_r);

    rep.ratios = ratios(s);
    const auto& r = rep.ratios->r;
    if (s.effective_split()) rep.separated = is_separated(s);
    const bool sep = rep.separated.value_or(false);
    std::optional<std::string> no_sym = no_r;
    if (!no_sym && !rep.ratios->uniform) no_sym = "ratios not uniform across users and documents";
    std::optional<std::string> no_sep = no_sym;
    if (!no_sep && !sep) no_sep = "scheme not separated";
    std::optional<std::string> no_gen = no_sym;
    if (!no_gen && sep) no_gen = "separated; the sharper separated row applies";

    row("6M+5R>=11", 6 * M + 5 * R, Rational(11), no_sym);
    row("6M+5R>=11+3r4+(15/2)r5", 6 * M + 5 * R, 11 + 3 * r[3] + Rational(15, 2) * r[4], no_sep);
    row("6M+5R>=11+(15/2)r5", 6 * M + 5 * R, 11 + Rational(15, 2) * r[4], no_sym);
    row("2R+3M>=5-(3/2)r3+3r5", 2 * R + 3 * M, 5 - Rational(3, 2) * r[2] + 3 * r[4], no_sep);
    row("2R+3M>=5-(3/2)r3-3r4+3r5", 2 * R + 3 * M, 5 - Rational(3, 2) * r[2] - 3 * r[3] + 3 * r[4], no_gen);
    row("2R+3M>=5-r2-r3/2", 2 * R + 3 * M, 5 - r[1] - r[2] / 2, no_sym);

    std::optional<std::string> no_tian = no_r;
    if (!no_tian) {
        if (!sep) no_tian = "scheme not separated";
        else if (!s.has_broadcast({1, 2, 3})) no_tian = "no broadcast for demand 123";
        else {
            rep.tian = tian_rank_audit(s, {1, 2, 3});
            if (!rep.tian->hypothesis) no_tian = "users do not recover their blocks from X_123";
        }
    }
    row("2R+3M>=5", 2 * R + 3 * M, Rational(5), no_tian);
    row("4M+3R>=7", 4 * M + 3 * R, Rational(7), no_r, false);
    return rep;
}

struct DiscoordAudit {
    Rational delta;        ///< DisCoord(P1, P2, Z3) / F
    Rational delta_prime;  ///< average DisCoord(W_a, W_b, Z_c) / F over relabelings
    Rational s1, s2, t1, t2;
    Rational lhs;          ///< 2R + 3M
    Rational rhs_first;    ///< 5 + t1 + t2 + s1 + s2 - delta
    Rational rhs_second;   ///< 5 - delta'
    bool first_holds() const { return lhs >= rhs_first; }
    bool second_holds() const { return lhs >= rhs_second; }
};

/// Discoordination terms of the two 2R+3M bounds; needs demands 123 and 213.
/// The symmetric-scheme form 2R+3M >= 5 - delta' is exact only when s1 = s2 = 0.
inline DiscoordAudit discoord_audit(const CachingScheme& s) {
    require_three_by_three(s, "discoord_audit");
    for (const Demand& d : {Demand{1, 2, 3}, Demand{2, 1, 3}})
        if (!s.has_broadcast(d))
            throw ContractViolation("discoord_audit: missing demand " + demand_string(d));
    const Field f = s.field();
    const std::size_t n = s.ambient_dim();
    const long long F = s.F();
    auto dim = [](const Subspace& x) { return static_cast<long long>(x.dim()); };
    const Subspace w1 = s.doc(1), w2 = s.doc(2), w3 = s.doc(3);
    const Subspace& z3 = s.cache(3);
    const Subspace p1 = sum(s.broadcast({1, 2, 3}), s.cache(1));
    const Subspace p2 = sum(s.broadcast({2, 1, 3}), s.cache(2));

    DiscoordAudit a;
    a.delta = Rational(static_cast<long long>(discoordination(SubspaceFamily({p1, p2, z3}))), F);

    long long total = 0, count = 0;
    for (const Perm& kappa : all_perms(3))
        for (const Perm& nu : all_perms(3)) {
            const Subspace wa = s.doc(nu[0] + 1), wb = s.doc(nu[1] + 1);
            const Subspace& z = s.cache(kappa[2] + 1);
            total += dim(intersect(sum(wa, wb), z)) - dim(intersect(wa, z)) - dim(intersect(wb, z));
            ++count;
        }
    a.delta_prime = Rational(total, count * F);

    a.s1 = Rational(dim(sum({w1, w3, z3}, f, n)) - dim(sum({w1, w2, z3}, f, n)), F);
    a.s2 = Rational(dim(intersect(w1, z3)) - dim(intersect(w2, z3)), F);
    a.t1 = Rational(static_cast<long long>(quotient_dim(intersect(sum(p1, p2), z3), sum(w1, w2))), F);
    a.t2 = Rational(dim(intersect(w2, z3)), F);

    const RateReport rr = memory_rate(s);
    a.lhs = 2 * rr.R.value_or(Rational(0)) + 3 * rr.M;
    a.rhs_first = 5 + a.t1 + a.t2 + a.s1 + a.s2 - a.delta;
    a.rhs_second = 5 - a.delta_prime;
    return a;
}

}  // namespace subcoord::caching
