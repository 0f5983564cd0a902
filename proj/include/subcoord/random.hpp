#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "subspace.hpp"

namespace subcoord {

using Rng = std::mt19937_64;

inline Vector random_vector(Field f, std::size_t n, Rng& rng) {
    std::uniform_int_distribution<unsigned> d(0, f.p() - 1);
    Vector v(f, n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Elem>(d(rng));
    return v;
}

/// A subspace of exactly the requested dimension (clamped to n).
inline Subspace random_subspace(Field f, std::size_t n, std::size_t dim, Rng& rng) {
    dim = std::min(dim, n);
    Echelon e(f, n);
    std::vector<Vector> gens;
    while (gens.size() < dim) {
        Vector v = random_vector(f, n, rng);
        if (e.insert(v)) gens.push_back(std::move(v));
    }
    return Subspace::span(f, n, gens);
}

/// Dimension drawn uniformly from 0..n.
inline Subspace random_subspace(Field f, std::size_t n, Rng& rng) {
    return random_subspace(f, n, std::uniform_int_distribution<std::size_t>(0, n)(rng), rng);
}

/// A random subspace of `parent` of the given dimension.
inline Subspace random_subspace_of(const Subspace& parent, std::size_t dim, Rng& rng) {
    const Field f = parent.field();
    dim = std::min(dim, parent.dim());
    Echelon e(f, parent.ambient_dim());
    std::vector<Vector> gens;
    while (gens.size() < dim) {
        Vector v = parent.basis().left_mul(random_vector(f, parent.dim(), rng));
        if (e.insert(v)) gens.push_back(std::move(v));
    }
    return Subspace::span(f, parent.ambient_dim(), gens);
}

inline Subspace random_subspace_of(const Subspace& parent, Rng& rng) {
    return random_subspace_of(parent, std::uniform_int_distribution<std::size_t>(0, parent.dim())(rng), rng);
}

inline SubspaceFamily random_family(Field f, std::size_t n, std::size_t m, Rng& rng) {
    std::vector<Subspace> members;
    for (std::size_t i = 0; i < m; ++i) members.push_back(random_subspace(f, n, rng));
    return SubspaceFamily(members);
}

/// An increasing chain V_1 ⊆ ... ⊆ V_len.
inline std::vector<Subspace> random_chain(Field f, std::size_t n, std::size_t len, Rng& rng) {
    std::vector<std::size_t> dims(len);
    std::uniform_int_distribution<std::size_t> d(0, n);
    for (auto& x : dims) x = d(rng);
    std::sort(dims.begin(), dims.end());
    std::vector<Subspace> out(len);
    Subspace top = random_subspace(f, n, dims.empty() ? 0 : dims.back(), rng);
    for (std::size_t i = len; i-- > 0;) {
        top = random_subspace_of(top, dims[i], rng);
        out[i] = top;
    }
    return out;
}

}  // namespace subcoord
