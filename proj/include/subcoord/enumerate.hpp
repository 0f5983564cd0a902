#pragma once

#include <cstdint>
#include <vector>

#include "subspace.hpp"

namespace subcoord {

namespace detail {

/// Echelon basis of GF(2) row masks keyed by leading bit.
class MaskEchelon {
public:
    explicit MaskEchelon(std::size_t n) : rows_(n, 0) {}

    std::uint64_t reduce(std::uint64_t v) const {
        while (v) {
            const auto top = static_cast<std::size_t>(63 - __builtin_clzll(v));
            if (!rows_[top]) return v;
            v ^= rows_[top];
        }
        return 0;
    }
    bool insert(std::uint64_t v) {
        v = reduce(v);
        if (!v) return false;
        rows_[static_cast<std::size_t>(63 - __builtin_clzll(v))] = v;
        return true;
    }

private:
    std::vector<std::uint64_t> rows_;
};

inline std::uint64_t to_mask(const Vector& v) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) m |= std::uint64_t{1} << i;
    return m;
}

inline Vector from_mask(Field f, std::size_t n, std::uint64_t m) {
    Vector v(f, n);
    for (std::size_t i = 0; i < n; ++i)
        if ((m >> i) & 1u) v[i] = 1;
    return v;
}

/// Calls visit(rows) for every k-dimensional subspace of GF(2)^n given by its
/// reduced echelon basis; stops early when visit returns true.
template <class Visit>
bool for_each_rref(std::size_t n, std::size_t k, Visit&& visit) {
    std::vector<std::size_t> piv(k);
    std::vector<std::uint64_t> rows(k);
    // Free positions of row r: non-pivot columns after piv[r].
    auto enumerate_pivots = [&](auto&& self, std::size_t r, std::size_t start) -> bool {
        if (r == k) {
            std::vector<std::vector<std::size_t>> free(k);
            std::uint64_t pivmask = 0;
            for (std::size_t p : piv) pivmask |= std::uint64_t{1} << p;
            std::size_t total = 0;
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t c = piv[i] + 1; c < n; ++c)
                    if (!((pivmask >> c) & 1u)) free[i].push_back(c);
                total += free[i].size();
            }
            for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << total); ++bits) {
                std::uint64_t b = bits;
                for (std::size_t i = 0; i < k; ++i) {
                    std::uint64_t row = std::uint64_t{1} << piv[i];
                    for (std::size_t c : free[i]) {
                        if (b & 1u) row |= std::uint64_t{1} << c;
                        b >>= 1;
                    }
                    rows[i] = row;
                }
                if (visit(rows)) return true;
            }
            return false;
        }
        for (std::size_t p = start; p + (k - r) <= n; ++p) {
            piv[r] = p;
            if (self(self, r + 1, p + 1)) return true;
        }
        return false;
    };
    return enumerate_pivots(enumerate_pivots, 0, 0);
}

}  // namespace detail

/// Every subspace of GF(2)^n, grouped by increasing dimension.
inline std::vector<Subspace> all_subspaces_gf2(std::size_t n) {
    if (n > 8) throw Refusal("n<=8", "enumerating all subspaces of GF(2)^" + std::to_string(n) + " is too large");
    const Field f(2);
    std::vector<Subspace> out;
    for (std::size_t k = 0; k <= n; ++k)
        detail::for_each_rref(n, k, [&](const std::vector<std::uint64_t>& rows) {
            std::vector<Vector> gens;
            for (std::uint64_t r : rows) gens.push_back(detail::from_mask(f, n, r));
            out.push_back(Subspace::span(f, n, gens));
            return false;
        });
    return out;
}

}  // namespace subcoord
