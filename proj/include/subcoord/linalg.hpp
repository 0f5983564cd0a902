#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace subcoord {

/// An element of GF(p)^n stored as one byte per coordinate.
class Vector {
public:
    Vector() = default;
    Vector(Field f, std::size_t n) : field_(f), coords_(n, 0) {}
    Vector(Field f, std::vector<Elem> coords) : field_(f), coords_(std::move(coords)) {
        for (Elem& c : coords_)
            if (c >= f.p()) c = static_cast<Elem>(c % f.p());
    }

    static Vector unit(Field f, std::size_t n, std::size_t i) {
        Vector v(f, n);
        v.coords_.at(i) = 1;
        return v;
    }

    /// Parses a string of digits ("0110"); for p > 10 the digits are
    /// separated by whitespace ("12 0 7").
    static Vector parse(Field f, const std::string& text) {
        std::vector<Elem> c;
        if (f.p() <= 10) {
            for (char ch : text) {
                if (ch == ' ' || ch == '\t' || ch == '\r') continue;
                if (ch < '0' || ch > '9' || unsigned(ch - '0') >= f.p())
                    throw ContractViolation(std::string("invalid digit '") + ch + "' for GF(" +
                                            std::to_string(f.p()) + ")");
                c.push_back(static_cast<Elem>(ch - '0'));
            }
        } else {
            std::size_t i = 0;
            while (i < text.size()) {
                while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
                if (i >= text.size()) break;
                unsigned v = 0;
                std::size_t start = i;
                while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                    v = v * 10 + unsigned(text[i] - '0');
                    if (v >= f.p()) break;
                    ++i;
                }
                if (i == start || v >= f.p() || (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r'))
                    throw ContractViolation("invalid entry in '" + text + "' for GF(" +
                                            std::to_string(f.p()) + ")");
                c.push_back(static_cast<Elem>(v));
            }
        }
        return Vector(f, std::move(c));
    }

    Field field() const { return field_; }
    std::size_t size() const { return coords_.size(); }
    Elem operator[](std::size_t i) const { return coords_[i]; }
    Elem& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Elem>& coords() const { return coords_; }

    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](Elem e) { return e == 0; });
    }

    /// Index of the first nonzero coordinate, or size() for the zero vector.
    std::size_t leading() const {
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i]) return i;
        return coords_.size();
    }

    /// this += c * other
    void axpy(Elem c, const Vector& other) {
        check_same(other);
        if (c == 0) return;
        if (field_.is_binary()) {
            for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] ^= other.coords_[i];
            return;
        }
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] = field_.add(coords_[i], field_.mul(c, other.coords_[i]));
    }

    Vector& operator+=(const Vector& o) { axpy(1, o); return *this; }
    Vector& operator-=(const Vector& o) { axpy(field_.neg(1), o); return *this; }
    friend Vector operator+(Vector a, const Vector& b) { a += b; return a; }
    friend Vector operator-(Vector a, const Vector& b) { a -= b; return a; }
    friend Vector operator*(Elem c, Vector v) {
        for (Elem& e : v.coords_) e = v.field_.mul(c, e);
        return v;
    }
    Vector operator-() const { return field_.neg(1) * *this; }

    /// Concatenation [this | o].
    Vector concat(const Vector& o) const {
        std::vector<Elem> c = coords_;
        c.insert(c.end(), o.coords_.begin(), o.coords_.end());
        return Vector(field_, std::move(c));
    }
    Vector slice(std::size_t from, std::size_t len) const {
        return Vector(field_, std::vector<Elem>(coords_.begin() + static_cast<std::ptrdiff_t>(from),
                                                coords_.begin() + static_cast<std::ptrdiff_t>(from + len)));
    }

    std::string to_string() const {
        std::string s;
        if (field_.p() <= 10) {
            for (Elem e : coords_) s.push_back(static_cast<char>('0' + e));
        } else {
            for (std::size_t i = 0; i < coords_.size(); ++i) {
                if (i) s.push_back(' ');
                s += std::to_string(coords_[i]);
            }
        }
        return s;
    }

    friend bool operator==(const Vector& a, const Vector& b) {
        return a.field_ == b.field_ && a.coords_ == b.coords_;
    }
    friend auto operator<=>(const Vector& a, const Vector& b) { return a.coords_ <=> b.coords_; }

    void check_same(const Vector& o) const {
        if (!(field_ == o.field_) || coords_.size() != o.coords_.size())
            throw ContractViolation("vector length or field mismatch (" + std::to_string(size()) +
                                    " vs " + std::to_string(o.size()) + ")");
    }

private:
    Field field_;
    std::vector<Elem> coords_;
};

/// Dense row-major matrix over GF(p).
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), cols_(cols), rows_(rows, Vector(f, cols)) {}
    Matrix(Field f, std::size_t cols, std::vector<Vector> rows)
        : field_(f), cols_(cols), rows_(std::move(rows)) {
        for (const Vector& r : rows_)
            if (r.size() != cols_ || !(r.field() == f))
                throw ContractViolation("matrix row has length " + std::to_string(r.size()) +
                                        ", expected " + std::to_string(cols_));
    }

    /// A matrix with no rows and the given width.
    static Matrix empty(Field f, std::size_t cols) { return Matrix(f, cols, std::vector<Vector>{}); }

    static Matrix identity(Field f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i][i] = 1;
        return m;
    }

    Field field() const { return field_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const Vector& row(std::size_t i) const { return rows_[i]; }
    Vector& row(std::size_t i) { return rows_[i]; }
    const std::vector<Vector>& row_vectors() const { return rows_; }
    Elem at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    Elem& at(std::size_t i, std::size_t j) { return rows_[i][j]; }

    void append_row(Vector v) {
        if (v.size() != cols_) throw ContractViolation("appended row has wrong length");
        rows_.push_back(std::move(v));
    }

    /// Rows of `this` followed by rows of `other`.
    Matrix stack(const Matrix& other) const {
        if (other.cols_ != cols_) throw ContractViolation("stacking matrices with different widths");
        Matrix m = *this;
        m.rows_.insert(m.rows_.end(), other.rows_.begin(), other.rows_.end());
        return m;
    }

    /// Column concatenation [this | other].
    Matrix augment(const Matrix& other) const {
        if (other.rows() != rows()) throw ContractViolation("augmenting matrices with different heights");
        Matrix m = Matrix::empty(field_, cols_ + other.cols_);
        for (std::size_t i = 0; i < rows(); ++i) m.rows_.push_back(rows_[i].concat(other.rows_[i]));
        return m;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.rows_[j][i] = rows_[i][j];
        return t;
    }

    /// Row vector times matrix: x * this.
    Vector left_mul(const Vector& x) const {
        if (x.size() != rows()) throw ContractViolation("coefficient vector length mismatch");
        Vector out(field_, cols_);
        for (std::size_t i = 0; i < rows(); ++i) out.axpy(x[i], rows_[i]);
        return out;
    }

    /// Matrix times column vector: this * x^T, returned as a vector of length rows().
    Vector apply(const Vector& x) const {
        if (x.size() != cols_) throw ContractViolation("vector length mismatch");
        Vector out(field_, rows());
        for (std::size_t i = 0; i < rows(); ++i) {
            unsigned acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) acc += unsigned(rows_[i][j]) * x[j];
            out[i] = static_cast<Elem>(acc % field_.p());
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

private:
    Field field_;
    std::size_t cols_ = 0;
    std::vector<Vector> rows_;
};

struct RrefResult {
    Matrix r;  ///< same shape as the input; zero rows at the bottom
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Row reduction over an arbitrary prime field, one byte per entry.
inline RrefResult rref_generic(const Matrix& m) {
    const Field f = m.field();
    RrefResult res{m, 0, {}};
    Matrix& a = res.r;
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t piv = rank;
        while (piv < R && a.at(piv, c) == 0) ++piv;
        if (piv == R) continue;
        std::swap(a.row(piv), a.row(rank));
        Elem inv = f.inv(a.at(rank, c));
        if (inv != 1) a.row(rank) = inv * a.row(rank);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == rank) continue;
            Elem e = a.at(i, c);
            if (e) a.row(i).axpy(f.neg(e), a.row(rank));
        }
        res.pivots.push_back(c);
        ++rank;
    }
    res.rank = rank;
    return res;
}

/// Bit-packed GF(2) matrix used by the fast elimination path.
class BitMatrix {
public:
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    explicit BitMatrix(const Matrix& m) : BitMatrix(m.rows(), m.cols()) {
        for (std::size_t i = 0; i < rows_; ++i) {
            const auto& c = m.row(i).coords();
            std::uint64_t* w = row(i);
            for (std::size_t j = 0; j < cols_; ++j)
                if (c[j]) w[j >> 6] |= std::uint64_t{1} << (j & 63);
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words() const { return words_; }
    std::uint64_t* row(std::size_t i) { return data_.data() + i * words_; }
    const std::uint64_t* row(std::size_t i) const { return data_.data() + i * words_; }
    bool get(std::size_t i, std::size_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(row(a), row(a) + words_, row(b));
    }

    Matrix to_matrix() const {
        Matrix m(Field(2), rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (get(i, j)) m.at(i, j) = 1;
        return m;
    }

    /// In-place reduced row-echelon form; returns the pivot columns.
    std::vector<std::size_t> reduce() {
        std::vector<std::size_t> pivots;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
            const std::size_t w = c >> 6;
            const std::uint64_t mask = std::uint64_t{1} << (c & 63);
            std::size_t piv = rank;
            while (piv < rows_ && !(row(piv)[w] & mask)) ++piv;
            if (piv == rows_) continue;
            swap_rows(piv, rank);
            const std::uint64_t* p = row(rank);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == rank) continue;
                std::uint64_t* r = row(i);
                if (r[w] & mask)
                    for (std::size_t k = w; k < words_; ++k) r[k] ^= p[k];
            }
            pivots.push_back(c);
            ++rank;
        }
        return pivots;
    }

private:
    std::size_t rows_, cols_, words_;
    std::vector<std::uint64_t> data_;
};

inline RrefResult rref_gf2(const Matrix& m) {
    if (!m.field().is_binary()) throw ContractViolation("rref_gf2 called on a non-binary matrix");
    BitMatrix b(m);
    auto pivots = b.reduce();
    RrefResult res{b.to_matrix(), pivots.size(), std::move(pivots)};
    return res;
}

/// Reduced row-echelon form; dispatches to the packed path when p = 2.
inline RrefResult rref(const Matrix& m) {
    return m.field().is_binary() ? rref_gf2(m) : rref_generic(m);
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// Basis of the right kernel {x : m x^T = 0}, one basis vector per free column.
inline Matrix kernel(const Matrix& m) {
    const Field f = m.field();
    const RrefResult rr = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : rr.pivots) is_pivot[c] = true;
    Matrix out = Matrix::empty(f, n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vector x(f, n);
        x[free] = 1;
        for (std::size_t i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = f.neg(rr.r.at(i, free));
        out.append_row(std::move(x));
    }
    return out;
}

/// Row reduction of [m | I]. Rows whose m-part vanishes carry left-kernel
/// coefficients; the others express each reduced row as a combination of m's rows.
struct AugmentedReduction {
    RrefResult red;
    std::size_t cols = 0;  ///< width of the m-part
    std::size_t row_rank = 0;  ///< rank of m (pivots inside the m-part)
};

inline AugmentedReduction reduce_augmented(const Matrix& m) {
    AugmentedReduction a;
    a.cols = m.cols();
    a.red = rref(m.augment(Matrix::identity(m.field(), m.rows())));
    a.row_rank = static_cast<std::size_t>(
        std::count_if(a.red.pivots.begin(), a.red.pivots.end(), [&](std::size_t c) { return c < a.cols; }));
    return a;
}

/// Basis of the left kernel {x : x m = 0}.
inline Matrix left_kernel(const Matrix& m) {
    const AugmentedReduction a = reduce_augmented(m);
    Matrix out = Matrix::empty(m.field(), m.rows());
    for (std::size_t i = a.row_rank; i < a.red.rank; ++i)
        out.append_row(a.red.r.row(i).slice(a.cols, m.rows()));
    return out;
}

/// Finds x with x m = b, or nothing when b is outside the row space of m.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.cols())
        throw ContractViolation("solve: right-hand side has length " + std::to_string(b.size()) +
                                ", matrix has " + std::to_string(m.cols()) + " columns");
    const Field f = m.field();
    const AugmentedReduction a = reduce_augmented(m);
    Vector rest = b;
    Vector x(f, m.rows());
    for (std::size_t i = 0; i < a.row_rank; ++i) {
        const std::size_t c = a.red.pivots[i];
        const Elem coef = rest[c];
        if (!coef) continue;
        const Vector& full = a.red.r.row(i);
        rest.axpy(f.neg(coef), full.slice(0, a.cols));
        x.axpy(coef, full.slice(a.cols, m.rows()));
    }
    if (!rest.is_zero()) return std::nullopt;
    return x;
}

}  // namespace subcoord
