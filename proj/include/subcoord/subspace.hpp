#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace subcoord {

/// Incrementally grown echelon basis. Rows keep distinct pivots and each row
/// is reduced against the rows inserted before it, which is enough for
/// membership tests and independence checks.
class Echelon {
public:
    Echelon(Field f, std::size_t n) : field_(f), n_(n) {}

    std::size_t size() const { return rows_.size(); }
    std::size_t ambient_dim() const { return n_; }
    const std::vector<Vector>& rows() const { return rows_; }

    Vector reduce(Vector v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Elem c = v[pivots_[i]];
            if (c) v.axpy(field_.neg(c), rows_[i]);
        }
        return v;
    }

    bool contains(const Vector& v) const { return reduce(v).is_zero(); }

    /// Adds v when it is independent of the current rows; returns whether it was.
    bool insert(const Vector& v) {
        if (v.size() != n_) throw ContractViolation("echelon insert: vector length mismatch");
        Vector r = reduce(v);
        const std::size_t lead = r.leading();
        if (lead == n_) return false;
        const Elem inv = field_.inv(r[lead]);
        if (inv != 1) r = inv * r;
        rows_.push_back(std::move(r));
        pivots_.push_back(lead);
        return true;
    }

private:
    Field field_;
    std::size_t n_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

/// A subspace of GF(p)^n held by its reduced row-echelon basis, so equal
/// subspaces have identical representations.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(Field f, std::size_t n) {
        Subspace s;
        s.field_ = f;
        s.n_ = n;
        s.basis_ = Matrix::empty(f, n);
        return s;
    }
    static Subspace full(Field f, std::size_t n) { return row_space(Matrix::identity(f, n)); }

    static Subspace row_space(const Matrix& m) {
        RrefResult rr = rref(m);
        Subspace s;
        s.field_ = m.field();
        s.n_ = m.cols();
        std::vector<Vector> rows(rr.r.row_vectors().begin(),
                                 rr.r.row_vectors().begin() + static_cast<std::ptrdiff_t>(rr.rank));
        s.basis_ = Matrix(s.field_, s.n_, std::move(rows));
        s.pivots_ = std::move(rr.pivots);
        return s;
    }

    static Subspace span(Field f, std::size_t n, const std::vector<Vector>& vs) {
        for (const Vector& v : vs)
            if (v.size() != n || !(v.field() == f))
                throw ContractViolation("span: vector of length " + std::to_string(v.size()) +
                                        " in ambient of dimension " + std::to_string(n));
        return row_space(Matrix(f, n, vs));
    }

    /// The coordinate subspace e_I spanned by the listed standard basis vectors.
    static Subspace coordinate(Field f, std::size_t n, const std::vector<std::size_t>& idx) {
        std::vector<Vector> vs;
        for (std::size_t i : idx) vs.push_back(Vector::unit(f, n, i));
        return span(f, n, vs);
    }

    Field field() const { return field_; }
    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    const Matrix& basis() const { return basis_; }
    const std::vector<Vector>& basis_vectors() const { return basis_.row_vectors(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Canonical representative of v + this (pivot coordinates cleared).
    Vector reduce(Vector v) const {
        check_vector(v);
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            const Elem c = v[pivots_[i]];
            if (c) v.axpy(field_.neg(c), basis_.row(i));
        }
        return v;
    }

    bool contains(const Vector& v) const { return reduce(v).is_zero(); }

    /// Coordinates x with x * basis() == v, when v lies in the subspace.
    std::optional<Vector> coordinates(const Vector& v) const {
        check_vector(v);
        Vector x(field_, dim());
        for (std::size_t i = 0; i < pivots_.size(); ++i) x[i] = v[pivots_[i]];
        if (basis_.left_mul(x) == v) return x;
        return std::nullopt;
    }

    void check_vector(const Vector& v) const {
        if (v.size() != n_ || !(v.field() == field_))
            throw ContractViolation("vector of length " + std::to_string(v.size()) +
                                    " used with a subspace of ambient dimension " + std::to_string(n_));
    }
    void check_same_ambient(const Subspace& o) const {
        if (o.n_ != n_ || !(o.field_ == field_))
            throw ContractViolation("ambient mismatch: GF(" + std::to_string(field_.p()) + ")^" +
                                    std::to_string(n_) + " vs GF(" + std::to_string(o.field_.p()) +
                                    ")^" + std::to_string(o.n_));
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.basis_ == b.basis_;
    }

private:
    Field field_;
    std::size_t n_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

inline Subspace span(Field f, std::size_t n, const std::vector<Vector>& vs) {
    return Subspace::span(f, n, vs);
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    return Subspace::row_space(a.basis().stack(b.basis()));
}

inline Subspace sum(const std::vector<Subspace>& parts, Field f, std::size_t n) {
    Matrix m = Matrix::empty(f, n);
    for (const Subspace& s : parts) {
        if (s.ambient_dim() != n || !(s.field() == f)) throw ContractViolation("sum: ambient mismatch");
        for (const Vector& v : s.basis_vectors()) m.append_row(v);
    }
    return Subspace::row_space(m);
}

inline bool subspace_contains(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    if (b.dim() > a.dim()) return false;
    for (const Vector& v : b.basis_vectors())
        if (!a.contains(v)) return false;
    return true;
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    if (a.is_zero() || b.is_zero()) return Subspace::zero(a.field(), a.ambient_dim());
    if (subspace_contains(b, a)) return a;
    if (subspace_contains(a, b)) return b;
    // Pairs (x, y) with x R_A + y R_B = 0 give x R_A in both subspaces.
    const Matrix lk = left_kernel(a.basis().stack(b.basis()));
    std::vector<Vector> gens;
    gens.reserve(lk.rows());
    for (const Vector& k : lk.row_vectors()) gens.push_back(a.basis().left_mul(k.slice(0, a.dim())));
    return Subspace::span(a.field(), a.ambient_dim(), gens);
}

inline std::size_t quotient_dim(const Subspace& a, const Subspace& w) {
    a.check_same_ambient(w);
    return sum(a, w).dim() - w.dim();
}

/// Vectors of u completing any basis of w to a basis of u, chosen among the
/// reduced basis rows of u in order.
inline std::vector<Vector> relative_basis(const Subspace& u, const Subspace& w) {
    if (!subspace_contains(u, w)) throw ContractViolation("relative_basis: w is not contained in u");
    Echelon e(u.field(), u.ambient_dim());
    for (const Vector& v : w.basis_vectors()) e.insert(v);
    std::vector<Vector> out;
    for (const Vector& v : u.basis_vectors()) {
        if (e.size() == u.dim()) break;
        if (e.insert(v)) out.push_back(v);
    }
    return out;
}

/// Vectors completing `base` (any spanning list, possibly dependent) inside u.
inline std::vector<Vector> extend_independent(const Subspace& u, const std::vector<Vector>& base) {
    Echelon e(u.field(), u.ambient_dim());
    for (const Vector& v : base) e.insert(v);
    std::vector<Vector> out;
    for (const Vector& v : u.basis_vectors())
        if (e.insert(v)) out.push_back(v);
    return out;
}

/// An ordered, non-empty list of subspaces of a common ambient.
class SubspaceFamily {
public:
    SubspaceFamily() = default;
    SubspaceFamily(std::vector<Subspace> members) : members_(std::move(members)) { validate(); }
    SubspaceFamily(std::initializer_list<Subspace> members) : members_(members) { validate(); }

    std::size_t size() const { return members_.size(); }
    const Subspace& operator[](std::size_t i) const { return members_[i]; }
    const std::vector<Subspace>& members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    Field field() const { return members_.front().field(); }
    std::size_t ambient_dim() const { return members_.front().ambient_dim(); }

private:
    void validate() const {
        if (members_.empty()) throw ContractViolation("subspace family must be non-empty");
        for (const Subspace& s : members_) members_.front().check_same_ambient(s);
    }
    std::vector<Subspace> members_;
};

inline Subspace family_sum(const SubspaceFamily& fam) {
    return sum(fam.members(), fam.field(), fam.ambient_dim());
}

/// True iff the members form a direct sum.
inline bool independent(const SubspaceFamily& fam) {
    std::size_t total = 0;
    for (const Subspace& s : fam) total += s.dim();
    return total == family_sum(fam).dim();
}

/// Independent subspaces U_1..U_r of one ambient.
class Decomposition {
public:
    explicit Decomposition(std::vector<Subspace> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw ContractViolation("decomposition needs at least one part");
        if (!independent(SubspaceFamily(parts_)))
            throw ContractViolation("decomposition parts are not independent");
    }
    const std::vector<Subspace>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }

private:
    std::vector<Subspace> parts_;
};

/// True iff dim(a) equals the sum of dim(a ∩ U_i) over the parts.
inline bool factors_through(const Subspace& a, const Decomposition& d) {
    std::size_t total = 0;
    for (const Subspace& u : d.parts()) total += intersect(a, u).dim();
    return total == a.dim();
}

/// Coordinates on U/W: a vector is reduced modulo W and read off at the
/// non-pivot columns of W's reduced basis.
class QuotientMap {
public:
    explicit QuotientMap(Subspace w) : w_(std::move(w)) {
        std::vector<bool> piv(w_.ambient_dim(), false);
        for (std::size_t c : w_.pivots()) piv[c] = true;
        for (std::size_t c = 0; c < w_.ambient_dim(); ++c)
            if (!piv[c]) free_.push_back(c);
    }

    const Subspace& kernel() const { return w_; }
    std::size_t target_dim() const { return free_.size(); }

    Vector apply(const Vector& v) const {
        const Vector r = w_.reduce(v);
        Vector out(w_.field(), free_.size());
        for (std::size_t i = 0; i < free_.size(); ++i) out[i] = r[free_[i]];
        return out;
    }

    /// A vector of U mapping to q.
    Vector lift(const Vector& q) const {
        if (q.size() != free_.size()) throw ContractViolation("quotient lift: length mismatch");
        Vector v(w_.field(), w_.ambient_dim());
        for (std::size_t i = 0; i < free_.size(); ++i) v[free_[i]] = q[i];
        return v;
    }

    Subspace image(const Subspace& a) const {
        w_.check_same_ambient(a);
        std::vector<Vector> gens;
        for (const Vector& v : a.basis_vectors()) gens.push_back(apply(v));
        return Subspace::span(w_.field(), free_.size(), gens);
    }

    SubspaceFamily image(const SubspaceFamily& fam) const {
        std::vector<Subspace> out;
        for (const Subspace& s : fam) out.push_back(image(s));
        return SubspaceFamily(std::move(out));
    }

private:
    Subspace w_;
    std::vector<std::size_t> free_;
};

}  // namespace subcoord
