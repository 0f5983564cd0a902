#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subspace.hpp"

namespace subcoord {

inline constexpr std::size_t kMaxFamilySize = 16;
inline constexpr std::uint64_t kBruteAmbientLimit = 1u << 16;

/// Number of family members containing x.
inline std::size_t meet(const Vector& x, const SubspaceFamily& fam) {
    std::size_t n = 0;
    for (const Subspace& a : fam)
        if (a.contains(x)) ++n;
    return n;
}

/// Intersections of every sub-family, indexed by bitmask. Index 0 holds the
/// whole ambient space.
inline std::vector<Subspace> subset_intersections(const SubspaceFamily& fam) {
    const std::size_t m = fam.size();
    if (m > kMaxFamilySize)
        throw Refusal("family-size<=16", "family has " + std::to_string(m) +
                                             " members; subset intersections are limited to 16");
    std::vector<Subspace> table(std::size_t{1} << m);
    table[0] = Subspace::full(fam.field(), fam.ambient_dim());
    for (std::size_t mask = 1; mask < table.size(); ++mask) {
        std::size_t top = 63 - static_cast<std::size_t>(__builtin_clzll(mask));
        std::size_t rest = mask & ~(std::size_t{1} << top);
        table[mask] = rest ? intersect(table[rest], fam[top]) : fam[top];
    }
    return table;
}

/// k-subsets of {0..m-1} in lexicographic order, as bitmasks.
inline std::vector<std::size_t> k_subsets(std::size_t m, std::size_t k) {
    std::vector<std::size_t> out;
    if (k > m) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::size_t mask = 0;
        for (std::size_t i : idx) mask |= std::size_t{1} << i;
        out.push_back(mask);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// S_1, ..., S_m where S_k is the sum of all k-fold intersections.
inline std::vector<Subspace> s_chain(const SubspaceFamily& fam,
                                     const std::vector<Subspace>& table) {
    const std::size_t m = fam.size();
    std::vector<Subspace> chain;
    for (std::size_t k = 1; k <= m; ++k) {
        std::vector<Subspace> parts;
        for (std::size_t mask : k_subsets(m, k)) parts.push_back(table[mask]);
        chain.push_back(sum(parts, fam.field(), fam.ambient_dim()));
    }
    return chain;
}

inline std::vector<Subspace> s_chain(const SubspaceFamily& fam) {
    return s_chain(fam, subset_intersections(fam));
}

inline std::size_t discoordination_from_chain(const SubspaceFamily& fam,
                                              const std::vector<Subspace>& chain) {
    std::size_t total = 0, s = 0;
    for (const Subspace& a : fam) total += a.dim();
    for (const Subspace& sk : chain) s += sk.dim();
    return total - s;
}

inline std::size_t discoordination(const SubspaceFamily& fam) {
    return discoordination_from_chain(fam, s_chain(fam));
}

/// The objective sum_i (dim A_i - |X ∩ A_i|) for an independent set X.
inline std::size_t discoordination_at(const SubspaceFamily& fam, const std::vector<Vector>& x) {
    std::size_t total = 0;
    for (const Subspace& a : fam) {
        std::size_t hit = 0;
        for (const Vector& v : x)
            if (a.contains(v)) ++hit;
        if (hit > a.dim()) throw ContractViolation("discoordination_at: X is not independent");
        total += a.dim() - hit;
    }
    return total;
}

/// True when X is independent and X ∩ A is a basis of A for every member.
inline bool coordinates_family(const std::vector<Vector>& x, const SubspaceFamily& fam) {
    Echelon e(fam.field(), fam.ambient_dim());
    for (const Vector& v : x)
        if (!e.insert(v)) return false;
    return discoordination_at(fam, x) == 0;
}

namespace detail {

inline std::uint64_t checked_ambient_size(Field f, std::size_t n) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= f.p();
        if (total > kBruteAmbientLimit)
            throw Refusal("p^n<=65536", "brute force needs p^n <= 65536; GF(" + std::to_string(f.p()) +
                                            ")^" + std::to_string(n) + " is larger");
    }
    return total;
}

inline std::uint64_t encode(const Vector& v) {
    std::uint64_t code = 0;
    for (std::size_t i = v.size(); i-- > 0;) code = code * v.field().p() + v[i];
    return code;
}

inline Vector decode(Field f, std::size_t n, std::uint64_t code) {
    Vector v(f, n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<Elem>(code % f.p());
        code /= f.p();
    }
    return v;
}

/// Meet number of every vector of the ambient, indexed by its base-p code.
inline std::vector<std::uint8_t> meet_table(const SubspaceFamily& fam) {
    const Field f = fam.field();
    const std::size_t n = fam.ambient_dim();
    const std::uint64_t size = checked_ambient_size(f, n);
    std::vector<std::uint8_t> count(size, 0);
    for (const Subspace& a : fam) {
        const std::size_t d = a.dim();
        std::uint64_t elems = 1;
        for (std::size_t i = 0; i < d; ++i) elems *= f.p();
        Vector coef(f, d);
        for (std::uint64_t t = 0; t < elems; ++t) {
            ++count[encode(a.basis().left_mul(coef))];
            for (std::size_t i = 0; i < d; ++i) {
                coef[i] = static_cast<Elem>(coef[i] + 1u == f.p() ? 0 : coef[i] + 1);
                if (coef[i]) break;
            }
        }
    }
    return count;
}

}  // namespace detail

/// Exhaustive oracle: enumerates the ambient, weights each vector by its meet
/// number and takes a maximum-weight basis of the vector matroid, which
/// minimizes sum_i (dim A_i - |X ∩ A_i|) over all independent X.
inline std::size_t discoordination_brute(const SubspaceFamily& fam) {
    const Field f = fam.field();
    const std::size_t n = fam.ambient_dim();
    const std::vector<std::uint8_t> weight = detail::meet_table(fam);
    std::vector<std::uint64_t> order;
    for (std::uint64_t c = 1; c < weight.size(); ++c)
        if (weight[c]) order.push_back(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return weight[a] > weight[b]; });
    Echelon e(f, n);
    std::size_t best = 0;
    for (std::uint64_t c : order) {
        if (e.size() == n) break;
        if (e.insert(detail::decode(f, n, c))) best += weight[c];
    }
    std::size_t total = 0;
    for (const Subspace& a : fam) total += a.dim();
    return total - best;
}

struct MinimizerResult {
    /// parts[j] holds X_j for j = 0..m; X_0 is always empty.
    std::vector<std::vector<Vector>> parts;
    std::size_t discoordination = 0;
    /// dim S_1 .. dim S_m
    std::vector<std::size_t> s_dims;

    std::vector<Vector> all() const {
        std::vector<Vector> out;
        for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
        return out;
    }
};

/// Builds X_m, ..., X_1 where X_j is a basis of S_j relative to S_{j+1}
/// drawn from the j-fold intersections taken in lexicographic order.
inline MinimizerResult greedy_minimizer(const SubspaceFamily& fam) {
    const std::size_t m = fam.size();
    const auto table = subset_intersections(fam);
    const auto chain = s_chain(fam, table);
    MinimizerResult res;
    res.parts.assign(m + 1, {});
    for (const Subspace& s : chain) res.s_dims.push_back(s.dim());
    for (std::size_t j = m; j >= 1; --j) {
        Echelon e(fam.field(), fam.ambient_dim());
        if (j < m)
            for (const Vector& v : chain[j].basis_vectors()) e.insert(v);
        const std::size_t target = chain[j - 1].dim();
        for (std::size_t mask : k_subsets(m, j)) {
            for (const Vector& v : table[mask].basis_vectors()) {
                if (e.size() == target) break;
                if (e.insert(v)) res.parts[j].push_back(v);
            }
            if (e.size() == target) break;
        }
    }
    res.discoordination = discoordination_at(fam, res.all());
    return res;
}

/// d_1..d_m with d_j = sum_i dim([A_i ∩ S_j] mod S_{j+1}) - j dim(S_j / S_{j+1}).
inline std::vector<long long> d_profile(const SubspaceFamily& fam) {
    const std::size_t m = fam.size();
    auto chain = s_chain(fam);
    chain.push_back(Subspace::zero(fam.field(), fam.ambient_dim()));
    std::vector<long long> d;
    for (std::size_t j = 1; j <= m; ++j) {
        const Subspace& sj = chain[j - 1];
        const Subspace& next = chain[j];
        long long v = 0;
        for (const Subspace& a : fam) v += static_cast<long long>(quotient_dim(intersect(a, sj), next));
        v -= static_cast<long long>(j) * static_cast<long long>(sj.dim() - next.dim());
        d.push_back(v);
    }
    return d;
}

inline bool is_quasi_increasing(const SubspaceFamily& seq) {
    const Field f = seq.field();
    const std::size_t n = seq.ambient_dim();
    Subspace prefix = Subspace::zero(f, n);
    for (std::size_t r = 0; r < seq.size(); ++r) {
        std::vector<Subspace> included;
        for (std::size_t i = 0; i < r; ++i)
            if (subspace_contains(seq[r], seq[i])) included.push_back(seq[i]);
        if (!subspace_contains(sum(included, f, n), intersect(seq[r], prefix))) return false;
        prefix = sum(prefix, seq[r]);
    }
    return true;
}

inline bool is_strongly_quasi_increasing(const SubspaceFamily& fam) {
    const Field f = fam.field();
    const std::size_t n = fam.ambient_dim();
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (fam[i] == fam[j])
                throw ContractViolation("strong quasi-increase needs distinct members; members " +
                                        std::to_string(i) + " and " + std::to_string(j) + " coincide");
    for (std::size_t r = 0; r < fam.size(); ++r) {
        std::vector<Subspace> js, ks;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (!subspace_contains(fam[i], fam[r])) js.push_back(fam[i]);
            if (i != r && subspace_contains(fam[r], fam[i])) ks.push_back(fam[i]);
        }
        if (!subspace_contains(sum(ks, f, n), intersect(fam[r], sum(js, f, n)))) return false;
    }
    return true;
}

/// Reorders members so that inclusion implies earlier position (sort by dimension).
inline SubspaceFamily inclusion_compatible_order(const SubspaceFamily& fam) {
    std::vector<Subspace> v = fam.members();
    std::stable_sort(v.begin(), v.end(),
                     [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
    return SubspaceFamily(std::move(v));
}

/// An independent set coordinating a quasi-increasing sequence. Each member
/// is completed from the vectors already chosen inside it.
inline std::vector<Vector> coordinate_quasi_increasing(const SubspaceFamily& seq) {
    Echelon e(seq.field(), seq.ambient_dim());
    std::vector<Vector> chosen;
    for (const Subspace& v : seq) {
        for (const Vector& row : v.basis_vectors())
            if (e.insert(row)) chosen.push_back(row);
    }
    if (!coordinates_family(chosen, seq))
        throw ContractViolation("coordinate_quasi_increasing: sequence is not quasi-increasing");
    return chosen;
}

inline SubspaceFamily six_of_seven_family(const Subspace& a, const Subspace& b, const Subspace& c) {
    const Subspace ab = intersect(a, b), ac = intersect(a, c), bc = intersect(b, c);
    return {intersect(ab, c), ab, ac, bc, a, b};
}

inline SubspaceFamily with_d_family(const Subspace& a, const Subspace& b, const Subspace& c,
                                    const Subspace& d) {
    const Subspace ab = intersect(a, b), ac = intersect(a, c), bc = intersect(b, c);
    if (!subspace_contains(ab, d)) throw ContractViolation("with-D family: D must lie in A ∩ B");
    const Subspace abc = intersect(ab, c);
    return {intersect(abc, d), abc, d, ab, ac, bc, a, b};
}

/// {A_i ∩ B_j} for two increasing chains, ordered as A_i ∩ B_j at i + s(j-1).
inline SubspaceFamily two_chains_family(const std::vector<Subspace>& as, const std::vector<Subspace>& bs) {
    for (std::size_t i = 1; i < as.size(); ++i)
        if (!subspace_contains(as[i], as[i - 1])) throw ContractViolation("first chain is not increasing");
    for (std::size_t i = 1; i < bs.size(); ++i)
        if (!subspace_contains(bs[i], bs[i - 1])) throw ContractViolation("second chain is not increasing");
    std::vector<Subspace> out;
    for (const Subspace& b : bs)
        for (const Subspace& a : as) out.push_back(intersect(a, b));
    return SubspaceFamily(std::move(out));
}

/// The full intersection followed by each intersection omitting one member.
inline SubspaceFamily m_minus_one_fold_family(const SubspaceFamily& fam) {
    const auto table = subset_intersections(fam);
    const std::size_t all = table.size() - 1;
    std::vector<Subspace> out{table[all]};
    for (std::size_t i = 0; i < fam.size(); ++i) out.push_back(table[all & ~(std::size_t{1} << i)]);
    return SubspaceFamily(std::move(out));
}

/// All k-fold intersections, in lexicographic subset order.
inline SubspaceFamily k_fold_intersections(const SubspaceFamily& fam, std::size_t k) {
    const auto table = subset_intersections(fam);
    std::vector<Subspace> out;
    for (std::size_t mask : k_subsets(fam.size(), k)) out.push_back(table[mask]);
    return SubspaceFamily(std::move(out));
}

struct CoordinationInput {
    Subspace a, b, c;
    std::optional<Subspace> d;
    std::vector<Subspace> chain_a, chain_b;
    std::optional<SubspaceFamily> family;
};

struct CoordinationReport {
    std::size_t six_of_seven = 0;
    std::optional<std::size_t> with_d;
    std::optional<std::size_t> two_chains;
    std::optional<std::size_t> m_minus_one_fold;

    bool all_coordinated() const {
        return six_of_seven == 0 && with_d.value_or(0) == 0 && two_chains.value_or(0) == 0 &&
               m_minus_one_fold.value_or(0) == 0;
    }
};

/// Discoordination of each family the coordination theorems declare coordinated.
inline CoordinationReport coordination_theorem_suite(const CoordinationInput& in) {
    CoordinationReport rep;
    rep.six_of_seven = discoordination(six_of_seven_family(in.a, in.b, in.c));
    if (in.d) rep.with_d = discoordination(with_d_family(in.a, in.b, in.c, *in.d));
    if (!in.chain_a.empty() && !in.chain_b.empty())
        rep.two_chains = discoordination(two_chains_family(in.chain_a, in.chain_b));
    if (in.family) rep.m_minus_one_fold = discoordination(m_minus_one_fold_family(*in.family));
    return rep;
}

/// Inclusion-exclusion I(A;B;C).
inline long long three_way_mutual(const Subspace& a, const Subspace& b, const Subspace& c) {
    auto d = [](const Subspace& s) { return static_cast<long long>(s.dim()); };
    const Subspace ab = sum(a, b);
    return d(sum(ab, c)) - d(ab) - d(sum(a, c)) - d(sum(b, c)) + d(a) + d(b) + d(c);
}

inline Subspace pairwise_sum(const Subspace& a, const Subspace& b, const Subspace& c) {
    return sum({intersect(a, b), intersect(a, c), intersect(b, c)}, a.field(), a.ambient_dim());
}

struct LiftedTriple {
    Vector a, b, c;
};

/// Given ta ∈ A, tb ∈ B, tc ∈ C with ta + tb ≡ tc modulo S2, returns a ∈ A,
/// b ∈ B, c ∈ C with a + b = c, each congruent to its input modulo S2.
inline LiftedTriple lift_triple(const Subspace& a, const Subspace& b, const Subspace& c,
                                const Vector& ta, const Vector& tb, const Vector& tc) {
    if (!a.contains(ta)) throw ContractViolation("lift_triple: ta is not in A");
    if (!b.contains(tb)) throw ContractViolation("lift_triple: tb is not in B");
    if (!c.contains(tc)) throw ContractViolation("lift_triple: tc is not in C");
    const Subspace ab = intersect(a, b), ac = intersect(a, c), bc = intersect(b, c);
    const Vector t = ta + tb - tc;
    const Matrix stacked = ab.basis().stack(ac.basis()).stack(bc.basis());
    const auto x = solve(stacked, t);
    if (!x) throw ContractViolation("lift_triple: ta + tb - tc is not in S2 (cosets of ta + tb and tc differ)");
    const Field f = a.field();
    const std::size_t n = a.ambient_dim();
    Vector v1(f, n), v2(f, n), v3(f, n);
    for (std::size_t i = 0; i < ab.dim(); ++i) v1.axpy((*x)[i], ab.basis().row(i));
    for (std::size_t i = 0; i < ac.dim(); ++i) v2.axpy((*x)[ab.dim() + i], ac.basis().row(i));
    for (std::size_t i = 0; i < bc.dim(); ++i) v3.axpy((*x)[ab.dim() + ac.dim() + i], bc.basis().row(i));
    return {ta - v1, tb, tc + v2 + v3};
}

struct ThreeDecomposition {
    std::vector<Vector> u1_basis;
    std::vector<LiftedTriple> triples;
    std::size_t m = 0;
    Subspace u1, u2;
    /// (X ∩ U1, X ∩ U2) for X = A, B, C.
    std::array<std::pair<Subspace, Subspace>, 3> factors;
};

/// Splits the universe into U1, where A, B, C are coordinated, and U2, which
/// is spanned by m triples a_i, b_i, c_i = a_i + b_i.
inline ThreeDecomposition decompose_three(const Subspace& a, const Subspace& b, const Subspace& c) {
    a.check_same_ambient(b);
    a.check_same_ambient(c);
    const Field f = a.field();
    const std::size_t n = a.ambient_dim();
    const Subspace ab = intersect(a, b), ac = intersect(a, c), bc = intersect(b, c);
    const Subspace abc = intersect(ab, c);
    const Subspace s2 = sum({ab, ac, bc}, f, n);

    ThreeDecomposition out;
    std::vector<Vector> x = coordinate_quasi_increasing({abc, ab, ac, bc});

    const QuotientMap q(s2);
    const Subspace qa = q.image(a), qb = q.image(b), qc = q.image(c);
    const Subspace target = intersect(sum(qa, qb), qc);
    Matrix images_ab = Matrix::empty(f, q.target_dim());
    for (const Vector& v : a.basis_vectors()) images_ab.append_row(q.apply(v));
    for (const Vector& v : b.basis_vectors()) images_ab.append_row(q.apply(v));
    Matrix images_c = Matrix::empty(f, q.target_dim());
    for (const Vector& v : c.basis_vectors()) images_c.append_row(q.apply(v));

    for (const Vector& cq : target.basis_vectors()) {
        const auto y = solve(images_ab, cq);
        const auto z = solve(images_c, cq);
        if (!y || !z) throw std::logic_error("decompose_three: quotient split failed");
        Vector ta(f, n), tb(f, n);
        for (std::size_t i = 0; i < a.dim(); ++i) ta.axpy((*y)[i], a.basis().row(i));
        for (std::size_t i = 0; i < b.dim(); ++i) tb.axpy((*y)[a.dim() + i], b.basis().row(i));
        out.triples.push_back(lift_triple(a, b, c, ta, tb, c.basis().left_mul(*z)));
    }
    out.m = out.triples.size();

    auto extend = [&](const Subspace& s, auto pick) {
        Echelon e(f, n);
        for (const Vector& v : s2.basis_vectors()) e.insert(v);
        for (const LiftedTriple& t : out.triples) e.insert(pick(t));
        std::vector<Vector> extra;
        for (const Vector& v : s.basis_vectors())
            if (e.insert(v)) extra.push_back(v);
        return extra;
    };
    std::vector<Vector> u1 = x;
    for (const Vector& v : extend(a, [](const LiftedTriple& t) { return t.a; })) u1.push_back(v);
    for (const Vector& v : extend(b, [](const LiftedTriple& t) { return t.b; })) u1.push_back(v);
    for (const Vector& v : extend(c, [](const LiftedTriple& t) { return t.c; })) u1.push_back(v);
    const Subspace abc_sum = sum({a, b, c}, f, n);
    for (const Vector& v : relative_basis(Subspace::full(f, n), abc_sum)) u1.push_back(v);

    std::vector<Vector> u2;
    for (const LiftedTriple& t : out.triples) {
        u2.push_back(t.a);
        u2.push_back(t.b);
    }
    out.u1_basis = u1;
    out.u1 = Subspace::span(f, n, u1);
    out.u2 = Subspace::span(f, n, u2);
    if (out.u1.dim() != u1.size() || out.u2.dim() != u2.size() || out.u1.dim() + out.u2.dim() != n)
        throw std::logic_error("decompose_three: U1 and U2 do not form a decomposition");
    const std::array<const Subspace*, 3> abcs{&a, &b, &c};
    for (std::size_t i = 0; i < 3; ++i)
        out.factors[i] = {intersect(*abcs[i], out.u1), intersect(*abcs[i], out.u2)};
    return out;
}

/// (DisCoord(a,b,c), DisCoord of the images in U/d) for d ⊆ a ∩ b.
inline std::pair<std::size_t, std::size_t> quotient_discoord_check(const Subspace& a, const Subspace& b,
                                                                   const Subspace& c, const Subspace& d) {
    if (!subspace_contains(intersect(a, b), d))
        throw ContractViolation("quotient_discoord_check: d is not contained in a ∩ b");
    const QuotientMap q(d);
    return {discoordination({a, b, c}), discoordination({q.image(a), q.image(b), q.image(c)})};
}

struct QuotientBySkResult {
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    bool equal = false;
};

/// Compares the discoordination of the family with that of its images modulo S_k.
inline QuotientBySkResult quotient_by_sk_check(const SubspaceFamily& fam, std::size_t k) {
    if (k < 1 || k > fam.size())
        throw ContractViolation("quotient_by_sk_check: k must be in 1..m, got " + std::to_string(k));
    const auto chain = s_chain(fam);
    const QuotientMap q(chain[k - 1]);
    QuotientBySkResult r;
    r.lhs = discoordination_from_chain(fam, chain);
    r.rhs = discoordination(q.image(fam));
    r.equal = r.lhs == r.rhs;
    return r;
}

}  // namespace subcoord
