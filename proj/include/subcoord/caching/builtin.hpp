#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symmetry.hpp"
#include "verify.hpp"

namespace subcoord::caching {

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"man-22", "man-33",    "new-half",   "full",
                                                "empty",  "lopsided", "tian-caches"};
    return names;
}

/// t side-by-side copies of a scheme: bit f of copy c of document i becomes
/// bit c*F + f.
inline CachingScheme replicate(const CachingScheme& s, int t) {
    if (t < 1) throw ContractViolation("replicate: factor must be positive");
    if (t == 1) return s;
    CachingScheme out(s.field(), s.N(), s.K(), s.F() * t);
    std::vector<std::vector<std::size_t>> maps;
    for (int c = 0; c < t; ++c) {
        std::vector<std::size_t> m(s.ambient_dim());
        for (int i = 1; i <= s.N(); ++i)
            for (int f = 0; f < s.F(); ++f) m[s.coord(i, f)] = out.coord(i, c * s.F() + f);
        maps.push_back(std::move(m));
    }
    auto copies = [&](const Subspace& x) {
        std::vector<Subspace> parts;
        for (const auto& m : maps) parts.push_back(map_coordinates(x, m, out.ambient_dim()));
        return sum(parts, s.field(), out.ambient_dim());
    };
    for (int j = 1; j <= s.K(); ++j) out.set_cache(j, copies(s.cache(j)));
    for (const auto& [d, x] : s.broadcasts()) out.set_broadcast(d, copies(x));
    if (const auto sp = s.effective_split()) {
        Split ns;
        for (const auto& doc_blocks : *sp) {
            std::vector<Subspace> blocks;
            for (const Subspace& b : doc_blocks) blocks.push_back(copies(b));
            ns.push_back(std::move(blocks));
        }
        out.set_split(std::move(ns));
    }
    return out;
}

namespace detail {

inline Vector sum_bits(const CachingScheme& s, const std::vector<std::pair<int, int>>& bits) {
    Vector v(s.field(), s.ambient_dim());
    for (const auto& [doc, b] : bits) v += s.bit(doc, b);
    return v;
}

inline CachingScheme man22() {
    CachingScheme s(Field(2), 2, 2, 2);
    const std::size_t n = s.ambient_dim();
    auto sp = [&](std::vector<std::vector<std::pair<int, int>>> gens) {
        std::vector<Vector> v;
        for (const auto& g : gens) v.push_back(sum_bits(s, g));
        return Subspace::span(s.field(), n, v);
    };
    // document 1 = (A1, A2), document 2 = (B1, B2)
    s.set_cache(1, sp({{{1, 0}, {2, 0}}}));
    s.set_cache(2, sp({{{1, 1}, {2, 1}}}));
    s.set_broadcast({1, 1}, s.doc(1));
    s.set_broadcast({2, 2}, s.doc(2));
    s.set_broadcast({1, 2}, sp({{{1, 1}}, {{2, 0}}}));
    s.set_broadcast({2, 1}, sp({{{1, 0}}, {{2, 1}}}));
    return s;
}

/// Z_i holds bit i of every document; X_d carries W_{d_j}[k] + W_{d_k}[j] for j < k.
inline CachingScheme man33() {
    CachingScheme s(Field(2), 3, 3, 3);
    const std::size_t n = s.ambient_dim();
    for (int j = 1; j <= 3; ++j)
        s.set_cache(j, Subspace::span(s.field(), n, {s.bit(1, j - 1), s.bit(2, j - 1), s.bit(3, j - 1)}));
    for (const Demand& d : all_demands(3, 3)) {
        std::vector<Vector> g;
        for (int j = 1; j <= 3; ++j)
            for (int k = j + 1; k <= 3; ++k)
                g.push_back(s.bit(d[static_cast<std::size_t>(j - 1)], k - 1) + s.bit(d[static_cast<std::size_t>(k - 1)], j - 1));
        s.set_broadcast(d, Subspace::span(s.field(), n, g));
    }
    return s;
}

/// Bit of document i in block j reserved for pairing with document k (k != i).
/// Per block the smaller partner gets the primed bit, the larger the double-primed one.
inline std::size_t half_bit(int i, int j, int k) {
    int lo = 0;
    for (int x = 1; x <= 3; ++x)
        if (x != i) {
            lo = x;
            break;
        }
    return static_cast<std::size_t>((i - 1) * 6 + 2 * (j - 1) + (k == lo ? 0 : 1));
}

inline CachingScheme new_half() {
    CachingScheme s(Field(2), 3, 3, 6);
    const Field f = s.field();
    const std::size_t n = s.ambient_dim();
    auto vec = [&](std::vector<std::array<int, 3>> bits) {
        Vector v(f, n);
        for (const auto& b : bits) v[half_bit(b[0], b[1], b[2])] ^= 1;
        return v;
    };
    for (int j = 1; j <= 3; ++j)
        s.set_cache(j, Subspace::span(f, n, {vec({{1, j, 2}, {2, j, 1}}), vec({{1, j, 3}, {3, j, 1}}),
                                            vec({{2, j, 3}, {3, j, 2}})}));
    // a_j' = (1,j,2), a_j'' = (1,j,3); b_j' = (2,j,1), b_j'' = (2,j,3); c_j' = (3,j,1), c_j'' = (3,j,2)
    const std::array<int, 3> a2p{1, 2, 2}, a2pp{1, 2, 3}, a3p{1, 3, 2}, a3pp{1, 3, 3};
    const std::array<int, 3> b1p{2, 1, 1}, b1pp{2, 1, 3}, b3p{2, 3, 1}, b3pp{2, 3, 3};
    const std::array<int, 3> c1p{3, 1, 1}, c1pp{3, 1, 2}, c2p{3, 2, 1}, c2pp{3, 2, 2};
    const Subspace x123 = Subspace::span(
        f, n,
        {vec({a2p}), vec({a3pp}), vec({b1p}), vec({b3pp}), vec({c1p}), vec({c2pp}), vec({a2pp, b1pp, c1pp}),
         vec({a3p, b1pp, c1pp}), vec({a2pp, b1pp, c2p}), vec({a2pp, b3p, c2p}), vec({a3p, b3p, c1pp}),
         vec({a3p, b3p, c2p})});
    const std::array<int, 3> a1p{1, 1, 2}, a1pp{1, 1, 3}, a2p_{1, 2, 2}, b2p{2, 2, 1}, b2pp{2, 2, 3};
    const Subspace x112 = Subspace::span(
        f, n,
        {vec({a1pp}), vec({a2pp}), vec({a3pp}), vec({b1pp}), vec({b2pp}), vec({b3pp}), vec({b1p}), vec({b2p}),
         vec({a3p}), vec({a1p, a2p_})});
    const std::vector<std::pair<Demand, Subspace>> base{{{1, 2, 3}, x123}, {{1, 1, 2}, x112}, {{1, 1, 1}, s.doc(1)}};
    // (kappa, nu) sends bit (i, j, k) to (nu i, kappa j, nu k).
    for (const Perm& kappa : all_perms(3))
        for (const Perm& nu : all_perms(3)) {
            std::vector<std::size_t> map(n);
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j)
                    for (int k = 1; k <= 3; ++k)
                        if (k != i)
                            map[half_bit(i, j, k)] = half_bit(nu[static_cast<std::size_t>(i - 1)] + 1,
                                                              kappa[static_cast<std::size_t>(j - 1)] + 1,
                                                              nu[static_cast<std::size_t>(k - 1)] + 1);
            for (const auto& [d, x] : base) {
                const Demand e = act_on_demand(kappa, nu, d);
                if (!s.has_broadcast(e)) s.set_broadcast(e, map_coordinates(x, map, n));
            }
        }
    return s;
}

inline CachingScheme full(int F) {
    CachingScheme s(Field(2), 3, 3, F);
    for (int j = 1; j <= 3; ++j) s.set_cache(j, Subspace::full(s.field(), s.ambient_dim()));
    for (const Demand& d : all_demands(3, 3)) s.set_broadcast(d, Subspace::zero(s.field(), s.ambient_dim()));
    return s;
}

inline CachingScheme empty(int F) {
    CachingScheme s(Field(2), 3, 3, F);
    for (const Demand& d : all_demands(3, 3)) {
        std::vector<Subspace> parts;
        for (int x : d) parts.push_back(s.doc(x));
        s.set_broadcast(d, sum(parts, s.field(), s.ambient_dim()));
    }
    return s;
}

/// Z_i = W_i; user j with d_j != j receives W_{d_j} + W_j bitwise.
inline CachingScheme lopsided(int F) {
    CachingScheme s(Field(2), 3, 3, F);
    for (int j = 1; j <= 3; ++j) s.set_cache(j, s.doc(j));
    for (const Demand& d : all_demands(3, 3)) {
        std::vector<Vector> g;
        for (int j = 1; j <= 3; ++j) {
            const int dj = d[static_cast<std::size_t>(j - 1)];
            if (dj == j) continue;
            for (int b = 0; b < F; ++b) g.push_back(s.bit(dj, b) + s.bit(j, b));
        }
        s.set_broadcast(d, Subspace::span(s.field(), s.ambient_dim(), g));
    }
    return s;
}

/// Caches only: block j of each document enters Z_j as a+b and b+c.
inline CachingScheme tian_caches(int F) {
    if (F % 3 != 0) throw ContractViolation("tian-caches needs F divisible by 3");
    CachingScheme s(Field(2), 3, 3, F);
    const int w = F / 3;
    for (int j = 1; j <= 3; ++j) {
        std::vector<Vector> g;
        for (int b = 0; b < w; ++b) {
            const int bit = (j - 1) * w + b;
            g.push_back(s.bit(1, bit) + s.bit(2, bit));
            g.push_back(s.bit(2, bit) + s.bit(3, bit));
        }
        s.set_cache(j, Subspace::span(s.field(), s.ambient_dim(), g));
    }
    return s;
}

}  // namespace detail

/// Built-in schemes by name. F defaults to the scheme's natural size; fixed
/// constructions (man-22, man-33, new-half) accept multiples of it and are
/// replicated.
inline CachingScheme builtin(const std::string& name, std::optional<int> F = std::nullopt) {
    auto scaled = [&](CachingScheme base) {
        if (!F || *F == base.F()) return base;
        if (*F < 1 || *F % base.F() != 0)
            throw ContractViolation(name + " needs F to be a multiple of " + std::to_string(base.F()));
        return replicate(base, *F / base.F());
    };
    if (F && *F < 1) throw ContractViolation("F must be positive");
    if (name == "man-22") return scaled(detail::man22());
    if (name == "man-33") return scaled(detail::man33());
    if (name == "new-half") return scaled(detail::new_half());
    if (name == "full") return detail::full(F.value_or(3));
    if (name == "empty") return detail::empty(F.value_or(3));
    if (name == "lopsided") return detail::lopsided(F.value_or(3));
    if (name == "tian-caches") return detail::tian_caches(F.value_or(3));
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw ContractViolation("unknown built-in scheme '" + name + "' (known: " + known + ")");
}

}  // namespace subcoord::caching
