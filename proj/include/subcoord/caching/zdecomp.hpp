#pragma once

#include <array>
#include <vector>

#include "scheme.hpp"

namespace subcoord::caching {

/// Decomposition of a cache Z ⊆ W1 + W2 + W3 into pure pieces.
///
/// blocks[s][l] is level l+1 of side s (0 = A ⊆ W1, 1 = B ⊆ W2, 2 = C ⊆ W3):
///   level 1: raw bits Z ∩ W_s
///   level 2: Tian pairs, a2[i]+b2[i] ∈ Z and b2[i]+c2[i] ∈ Z
///   level 3: A with B (a3+b3), A with C (a4+c3), B with C (b4+c4);
///            blocks[0][2] = span a3, blocks[0][3] = span a4,
///            blocks[1][2] = span b3, blocks[1][3] = span b4,
///            blocks[2][2] = span c3, blocks[2][3] = span c4
///   level 5: triple sums a5+b5+c5
struct ZDecomposition {
    std::array<std::array<Subspace, 5>, 3> blocks;
    std::vector<Vector> a2, b2, c2;
    std::vector<Vector> a3, b3;
    std::vector<Vector> a4, c3;
    std::vector<Vector> b4, c4;
    std::vector<Vector> a5, b5, c5;

    /// Generators whose span must equal Z.
    std::vector<Vector> generators() const {
        std::vector<Vector> g;
        for (std::size_t s = 0; s < 3; ++s)
            for (const Vector& v : blocks[s][0].basis_vectors()) g.push_back(v);
        for (std::size_t i = 0; i < a2.size(); ++i) {
            g.push_back(a2[i] + b2[i]);
            g.push_back(b2[i] + c2[i]);
        }
        for (std::size_t i = 0; i < a3.size(); ++i) g.push_back(a3[i] + b3[i]);
        for (std::size_t i = 0; i < a4.size(); ++i) g.push_back(a4[i] + c3[i]);
        for (std::size_t i = 0; i < b4.size(); ++i) g.push_back(b4[i] + c4[i]);
        for (std::size_t i = 0; i < a5.size(); ++i) g.push_back(a5[i] + b5[i] + c5[i]);
        return g;
    }

    /// Dimension of the two-way part of side s (levels 3 and 4 combined).
    std::size_t two_way_dim(std::size_t s) const { return blocks[s][2].dim() + blocks[s][3].dim(); }

    /// Sum of all five levels of side s.
    Subspace side(std::size_t s) const {
        std::vector<Subspace> parts(blocks[s].begin(), blocks[s].end());
        return sum(parts, parts[0].field(), parts[0].ambient_dim());
    }
};

namespace detail {

/// w ∈ target with v + w ∈ z; v must lie in z + target.
inline Vector partner(const Subspace& z, const Subspace& target, const Vector& v) {
    const auto x = solve(z.basis().stack(target.basis()), v);
    if (!x) throw std::logic_error("z_decompose: vector has no partner in the requested document");
    Vector w(v.field(), v.size());
    for (std::size_t i = 0; i < target.dim(); ++i) w.axpy((*x)[z.dim() + i], target.basis().row(i));
    return -w;
}

/// (w2, w3) with v + w2 + w3 ∈ z.
inline std::pair<Vector, Vector> partners(const Subspace& z, const Subspace& t2, const Subspace& t3, const Vector& v) {
    const auto x = solve(z.basis().stack(t2.basis()).stack(t3.basis()), v);
    if (!x) throw std::logic_error("z_decompose: vector has no triple partner");
    Vector w2(v.field(), v.size()), w3(v.field(), v.size());
    for (std::size_t i = 0; i < t2.dim(); ++i) w2.axpy((*x)[z.dim() + i], t2.basis().row(i));
    for (std::size_t i = 0; i < t3.dim(); ++i) w3.axpy((*x)[z.dim() + t2.dim() + i], t3.basis().row(i));
    return {-w2, -w3};
}

}  // namespace detail

/// Splits z into raw bits, Tian pairs, two-way sums and triple sums relative
/// to the three documents of an N = 3 scheme.
inline ZDecomposition z_decompose(const Subspace& z, const CachingScheme& s) {
    if (s.N() != 3) throw Refusal("N=3", "z_decompose needs exactly three documents, got N=" + std::to_string(s.N()));
    s.check_ambient(z);
    const Field f = s.field();
    const std::size_t n = s.ambient_dim();
    const Subspace w1 = s.doc(1), w2 = s.doc(2), w3 = s.doc(3);
    auto span_of = [&](const std::vector<Vector>& v) { return Subspace::span(f, n, v); };

    ZDecomposition d;
    const Subspace a1 = intersect(z, w1), b1 = intersect(z, w2), c1 = intersect(z, w3);
    const Subspace a_with_b = intersect(w1, sum(z, w2)), a_with_c = intersect(w1, sum(z, w3));

    d.a2 = relative_basis(intersect(a_with_b, a_with_c), a1);
    for (const Vector& a : d.a2) {
        d.b2.push_back(detail::partner(z, w2, a));
        d.c2.push_back(-detail::partner(z, w3, a));
    }
    const Subspace a12 = sum(a1, span_of(d.a2));
    d.a3 = relative_basis(a_with_b, a12);
    for (const Vector& a : d.a3) d.b3.push_back(detail::partner(z, w2, a));
    d.a4 = relative_basis(a_with_c, a12);
    for (const Vector& a : d.a4) d.c3.push_back(detail::partner(z, w3, a));

    const Subspace b12 = sum(b1, span_of(d.b2));
    d.b4 = relative_basis(intersect(w2, sum(z, w3)), b12);
    for (const Vector& b : d.b4) d.c4.push_back(detail::partner(z, w3, b));

    const Subspace a1234 = sum({a12, span_of(d.a3), span_of(d.a4)}, f, n);
    d.a5 = relative_basis(intersect(w1, sum({z, w2, w3}, f, n)), a1234);
    for (const Vector& a : d.a5) {
        auto [b, c] = detail::partners(z, w2, w3, a);
        d.b5.push_back(b);
        d.c5.push_back(c);
    }

    d.blocks[0] = {a1, span_of(d.a2), span_of(d.a3), span_of(d.a4), span_of(d.a5)};
    d.blocks[1] = {b1, span_of(d.b2), span_of(d.b3), span_of(d.b4), span_of(d.b5)};
    d.blocks[2] = {c1, span_of(d.c2), span_of(d.c3), span_of(d.c4), span_of(d.c5)};
    return d;
}

/// Each side's five levels are independent, lie in its document, and the
/// generators span z again.
inline bool z_decomposition_invariants(const ZDecomposition& d, const Subspace& z, const CachingScheme& s) {
    for (std::size_t side = 0; side < 3; ++side) {
        const Subspace w = s.doc(static_cast<int>(side) + 1);
        std::vector<Subspace> parts(d.blocks[side].begin(), d.blocks[side].end());
        for (const Subspace& p : parts)
            if (!subspace_contains(w, p)) return false;
        if (!independent(SubspaceFamily(parts))) return false;
    }
    auto paired = [](const std::vector<Vector>& x, const std::vector<Vector>& y) { return x.size() == y.size(); };
    if (!paired(d.a2, d.b2) || !paired(d.a2, d.c2) || !paired(d.a3, d.b3) || !paired(d.a4, d.c3) ||
        !paired(d.b4, d.c4) || !paired(d.a5, d.b5) || !paired(d.a5, d.c5))
        return false;
    for (const Vector& g : d.generators())
        if (!z.contains(g)) return false;
    return Subspace::span(s.field(), s.ambient_dim(), d.generators()) == z;
}

}  // namespace subcoord::caching
