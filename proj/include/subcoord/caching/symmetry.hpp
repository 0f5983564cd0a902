#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "scheme.hpp"

namespace subcoord::caching {

/// A permutation of {0..n-1}; p[i] is the image of i.
using Perm = std::vector<int>;

inline std::vector<Perm> all_perms(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline Perm inverse(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return q;
}

/// (a ∘ b)(i) = a(b(i))
inline Perm compose(const Perm& a, const Perm& b) {
    Perm c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
}

/// Image of a subspace under the coordinate map c -> map[c].
inline Subspace map_coordinates(const Subspace& s, const std::vector<std::size_t>& map, std::size_t target_dim) {
    std::vector<Vector> gens;
    for (const Vector& v : s.basis_vectors()) {
        Vector w(s.field(), target_dim);
        for (std::size_t c = 0; c < v.size(); ++c)
            if (v[c]) w[map[c]] = v[c];
        gens.push_back(std::move(w));
    }
    return Subspace::span(s.field(), target_dim, gens);
}

/// The demand after user j is renamed sigma(j) and document i is renamed tau(i).
inline Demand act_on_demand(const Perm& sigma, const Perm& tau, const Demand& d) {
    Demand out(d.size());
    for (std::size_t j = 0; j < d.size(); ++j)
        out[static_cast<std::size_t>(sigma[j])] = tau[static_cast<std::size_t>(d[j] - 1)] + 1;
    return out;
}

/// The scheme in which user j plays the role of user kappa(j) and document i
/// is renamed nu(i).
inline CachingScheme permute_scheme(const CachingScheme& s, const Perm& kappa, const Perm& nu) {
    CachingScheme t(s.field(), s.N(), s.K(), s.F());
    std::vector<std::size_t> map(s.ambient_dim());
    for (int i = 1; i <= s.N(); ++i)
        for (int f = 0; f < s.F(); ++f) map[s.coord(i, f)] = s.coord(nu[static_cast<std::size_t>(i - 1)] + 1, f);
    for (int j = 1; j <= s.K(); ++j)
        t.set_cache(j, map_coordinates(s.cache(kappa[static_cast<std::size_t>(j - 1)] + 1), map, s.ambient_dim()));
    const Perm kinv = inverse(kappa), ninv = inverse(nu);
    for (const Demand& d : all_demands(s.N(), s.K())) {
        Demand e(d.size());
        for (std::size_t m = 0; m < d.size(); ++m)
            e[m] = ninv[static_cast<std::size_t>(d[static_cast<std::size_t>(kinv[m])] - 1)] + 1;
        if (s.has_broadcast(e)) t.set_broadcast(d, map_coordinates(s.broadcast(e), map, s.ambient_dim()));
    }
    return t;
}

/// Group elements (kappa, nu) of S_K x S_N in the order used for copies.
inline std::vector<std::pair<Perm, Perm>> copy_order(int K, int N) {
    std::vector<std::pair<Perm, Perm>> g;
    for (const Perm& k : all_perms(K))
        for (const Perm& n : all_perms(N)) g.emplace_back(k, n);
    return g;
}

/// Concatenates the K!N! permuted copies of a complete scheme. Bit f of copy
/// g of document i lands at coordinate i*F' + g*F + f with F' = K!N!F.
inline CachingScheme symmetrize(const CachingScheme& s) {
    const auto missing = s.missing_demands();
    if (!missing.empty()) {
        std::string list;
        for (std::size_t i = 0; i < missing.size() && i < 8; ++i) list += (i ? ", " : "") + demand_string(missing[i]);
        if (missing.size() > 8) list += ", ...";
        throw Refusal("complete-broadcasts", "symmetrize needs every demand; missing " + list);
    }
    const auto group = copy_order(s.K(), s.N());
    const int G = static_cast<int>(group.size());
    CachingScheme out(s.field(), s.N(), s.K(), s.F() * G);
    std::vector<CachingScheme> copies;
    for (const auto& [kappa, nu] : group) copies.push_back(permute_scheme(s, kappa, nu));
    auto embed = [&](int g) {
        std::vector<std::size_t> map(s.ambient_dim());
        for (int i = 1; i <= s.N(); ++i)
            for (int f = 0; f < s.F(); ++f) map[s.coord(i, f)] = out.coord(i, g * s.F() + f);
        return map;
    };
    std::vector<std::vector<std::size_t>> maps;
    for (int g = 0; g < G; ++g) maps.push_back(embed(g));
    auto gather = [&](auto pick) {
        std::vector<Subspace> parts;
        for (int g = 0; g < G; ++g)
            parts.push_back(map_coordinates(pick(copies[static_cast<std::size_t>(g)]), maps[static_cast<std::size_t>(g)],
                                            out.ambient_dim()));
        return sum(parts, s.field(), out.ambient_dim());
    };
    for (int j = 1; j <= s.K(); ++j)
        out.set_cache(j, gather([&](const CachingScheme& c) -> const Subspace& { return c.cache(j); }));
    for (const Demand& d : all_demands(s.N(), s.K()))
        out.set_broadcast(d, gather([&](const CachingScheme& c) -> const Subspace& { return c.broadcast(d); }));
    if (const auto split = s.effective_split()) {
        // Copy g puts block kappa_g(b) of the source document into block b.
        Split sp;
        for (int i = 1; i <= s.N(); ++i) {
            std::vector<Subspace> blocks;
            for (int b = 0; b < 3; ++b) {
                std::vector<Subspace> parts;
                for (int g = 0; g < G; ++g) {
                    const auto& [kappa, nu] = group[static_cast<std::size_t>(g)];
                    const int src = inverse(nu)[static_cast<std::size_t>(i - 1)];
                    const int src_block = s.K() == 3 ? kappa[static_cast<std::size_t>(b)] : b;
                    std::vector<std::size_t> map(s.ambient_dim());
                    for (int ii = 1; ii <= s.N(); ++ii)
                        for (int f = 0; f < s.F(); ++f)
                            map[s.coord(ii, f)] = out.coord(nu[static_cast<std::size_t>(ii - 1)] + 1, g * s.F() + f);
                    parts.push_back(map_coordinates(
                        (*split)[static_cast<std::size_t>(src)][static_cast<std::size_t>(src_block)], map, out.ambient_dim()));
                }
                blocks.push_back(sum(parts, s.field(), out.ambient_dim()));
            }
            sp.push_back(std::move(blocks));
        }
        out.set_split(std::move(sp));
    }
    return out;
}

/// Coordinate permutation of a symmetrized scheme realizing the relabeling
/// (sigma on users, tau on documents): copy (kappa, nu) goes to copy
/// (kappa ∘ sigma^-1, tau ∘ nu) and document i to tau(i).
inline std::vector<std::size_t> symmetry_witness(int N, int K, int F_orig, const Perm& sigma, const Perm& tau) {
    const auto group = copy_order(K, N);
    const int G = static_cast<int>(group.size());
    const Perm sinv = inverse(sigma);
    std::vector<std::size_t> map(static_cast<std::size_t>(N * G * F_orig));
    const std::size_t Fp = static_cast<std::size_t>(G * F_orig);
    for (int g = 0; g < G; ++g) {
        const auto& [kappa, nu] = group[static_cast<std::size_t>(g)];
        const std::pair<Perm, Perm> target{compose(kappa, sinv), compose(tau, nu)};
        const auto gp = static_cast<std::size_t>(std::find(group.begin(), group.end(), target) - group.begin());
        for (int i = 0; i < N; ++i)
            for (int f = 0; f < F_orig; ++f)
                map[static_cast<std::size_t>(i) * Fp + static_cast<std::size_t>(g * F_orig + f)] =
                    static_cast<std::size_t>(tau[static_cast<std::size_t>(i)]) * Fp + gp * static_cast<std::size_t>(F_orig) +
                    static_cast<std::size_t>(f);
    }
    return map;
}

using WitnessFn = std::function<std::vector<std::size_t>(const Perm& sigma, const Perm& tau)>;

/// Checks that every (sigma, tau) witness maps W_i to W_tau(i), Z_j to
/// Z_sigma(j) and each supplied X_d to X of the relabeled demand.
inline bool symmetric_under(const CachingScheme& s, const WitnessFn& witness) {
    const std::size_t n = s.ambient_dim();
    for (const Perm& sigma : all_perms(s.K()))
        for (const Perm& tau : all_perms(s.N())) {
            const auto map = witness(sigma, tau);
            for (int i = 1; i <= s.N(); ++i)
                if (!(map_coordinates(s.doc(i), map, n) == s.doc(tau[static_cast<std::size_t>(i - 1)] + 1))) return false;
            for (int j = 1; j <= s.K(); ++j)
                if (!(map_coordinates(s.cache(j), map, n) == s.cache(sigma[static_cast<std::size_t>(j - 1)] + 1))) return false;
            for (const auto& [d, x] : s.broadcasts()) {
                const Demand e = act_on_demand(sigma, tau, d);
                if (!s.has_broadcast(e) || !(map_coordinates(x, map, n) == s.broadcast(e))) return false;
            }
        }
    return true;
}

}  // namespace subcoord::caching
