#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "../enumerate.hpp"
#include "verify.hpp"

namespace subcoord::caching {

enum class SearchMode { exhaustive, greedy };

inline constexpr std::size_t kSearchAmbientLimit = 12;

struct SearchResult {
    Subspace x;
    std::size_t lower_bound = 0;     ///< max_j of dim W_{d_j} modulo Z_j
    std::uint64_t examined = 0;      ///< candidate subspaces tested (exhaustive mode)
    bool minimal = false;            ///< true when the search proves no smaller X decodes
};

namespace detail {

struct UserNeed {
    subcoord::detail::MaskEchelon cache;
    std::vector<std::uint64_t> wanted;
};

inline bool mask_decodes(const std::vector<UserNeed>& users, const std::vector<std::uint64_t>& xrows) {
    for (const UserNeed& u : users) {
        subcoord::detail::MaskEchelon e = u.cache;
        for (std::uint64_t r : xrows) e.insert(r);
        for (std::uint64_t w : u.wanted)
            if (e.reduce(w)) return false;
    }
    return true;
}

}  // namespace detail

/// Broadcast for demand d given the scheme's caches. Exhaustive mode scans
/// subspaces by increasing dimension and returns a smallest decoding one;
/// greedy mode adds missing document basis vectors user by user.
inline SearchResult search_min_x(const CachingScheme& s, const Demand& d, SearchMode mode) {
    s.check_demand(d);
    const Field f = s.field();
    const std::size_t n = s.ambient_dim();
    SearchResult res;
    for (int j = 1; j <= s.K(); ++j)
        res.lower_bound = std::max(res.lower_bound, quotient_dim(s.doc(d[static_cast<std::size_t>(j - 1)]), s.cache(j)));

    if (mode == SearchMode::greedy) {
        std::vector<Vector> gens;
        for (int j = 1; j <= s.K(); ++j) {
            const Subspace need = s.doc(d[static_cast<std::size_t>(j - 1)]);
            for (const Vector& w : need.basis_vectors()) {
                const Subspace have = sum(s.cache(j), Subspace::span(f, n, gens));
                if (!have.contains(w)) gens.push_back(have.reduce(w));
            }
        }
        res.x = Subspace::span(f, n, gens);
        res.minimal = res.x.dim() == res.lower_bound;
        return res;
    }

    if (!f.is_binary()) throw Refusal("p=2", "exhaustive search is implemented over GF(2) only");
    if (n > kSearchAmbientLimit)
        throw Refusal("2^(NF)<=2^12", "exhaustive search needs N*F <= 12, got " + std::to_string(n));
    std::vector<detail::UserNeed> users;
    for (int j = 1; j <= s.K(); ++j) {
        detail::UserNeed u{subcoord::detail::MaskEchelon(n), {}};
        for (const Vector& z : s.cache(j).basis_vectors()) u.cache.insert(subcoord::detail::to_mask(z));
        const Subspace need = s.doc(d[static_cast<std::size_t>(j - 1)]);
        for (const Vector& w : need.basis_vectors()) u.wanted.push_back(subcoord::detail::to_mask(w));
        users.push_back(std::move(u));
    }
    for (std::size_t k = res.lower_bound; k <= n; ++k) {
        std::optional<std::vector<std::uint64_t>> found;
        subcoord::detail::for_each_rref(n, k, [&](const std::vector<std::uint64_t>& rows) {
            ++res.examined;
            if (!detail::mask_decodes(users, rows)) return false;
            found = rows;
            return true;
        });
        if (found) {
            std::vector<Vector> gens;
            for (std::uint64_t r : *found) gens.push_back(subcoord::detail::from_mask(f, n, r));
            res.x = Subspace::span(f, n, gens);
            res.minimal = true;
            return res;
        }
    }
    throw std::logic_error("search_min_x: the full space failed to decode");
}

}  // namespace subcoord::caching
