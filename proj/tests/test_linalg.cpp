#include <gtest/gtest.h>

#include <subcoord/linalg.hpp>
#include <subcoord/random.hpp>

using namespace subcoord;

namespace {

Matrix from_rows(Field f, std::vector<std::string> rows) {
    std::vector<Vector> vs;
    for (const auto& r : rows) vs.push_back(Vector::parse(f, r));
    return Matrix(f, vs.empty() ? 0 : vs[0].size(), vs);
}

Matrix random_matrix(Field f, std::size_t r, std::size_t c, Rng& rng) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(random_vector(f, c, rng));
    return Matrix(f, c, rows);
}

// Plain elimination on integer rows, independent of the library.
std::size_t naive_rank(const Matrix& m) {
    const unsigned p = m.field().p();
    std::vector<std::vector<unsigned>> a;
    for (const Vector& v : m.row_vectors()) a.emplace_back(v.coords().begin(), v.coords().end());
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < a.size(); ++col) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][col] % p == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][col] % p == 0) continue;
            const unsigned x = a[i][col], y = a[rank][col];
            for (std::size_t k = 0; k < m.cols(); ++k) a[i][k] = (a[i][k] * y + (p - x) * a[rank][k]) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST(Field, RejectsComposite) {
    EXPECT_THROW(Field(4), ContractViolation);
    EXPECT_THROW(Field(1), ContractViolation);
    EXPECT_THROW(Field(257), ContractViolation);
    EXPECT_NO_THROW(Field(251));
}

TEST(Field, InverseTimesSelfIsOne) {
    for (unsigned p : {2u, 3u, 5u, 7u, 251u}) {
        Field f(p);
        for (unsigned a = 1; a < p; ++a) EXPECT_EQ(f.mul(static_cast<Elem>(a), f.inv(static_cast<Elem>(a))), 1);
    }
}

TEST(Rref, IdentityIsFixed) {
    const Field f(2);
    const auto r = rref(Matrix::identity(f, 3));
    EXPECT_EQ(r.rank, 3u);
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(r.r, Matrix::identity(f, 3));
}

TEST(Rref, DependentRowsOverGF2) {
    const Field f(2);
    EXPECT_EQ(rref(from_rows(f, {"110", "011", "101"})).rank, 2u);
}

TEST(Rref, EmptyMatrix) {
    const auto r = rref(Matrix::empty(Field(2), 4));
    EXPECT_EQ(r.rank, 0u);
    EXPECT_TRUE(r.pivots.empty());
}

TEST(Rref, RandomRankMatchesNaiveElimination) {
    Rng rng(11);
    for (unsigned p : {2u, 3u, 5u, 7u})
        for (int t = 0; t < 100; ++t) {
            const Matrix m = random_matrix(Field(p), 6, 6, rng);
            EXPECT_EQ(rank(m), naive_rank(m));
        }
}

TEST(Rref, Idempotent) {
    Rng rng(12);
    for (unsigned p : {2u, 5u})
        for (int t = 0; t < 50; ++t) {
            const Matrix m = random_matrix(Field(p), 5, 7, rng);
            const Matrix once = rref(m).r;
            EXPECT_EQ(rref(once).r, once);
        }
}

TEST(Rref, RankEqualsTransposeRank) {
    Rng rng(13);
    for (unsigned p : {2u, 3u, 7u})
        for (int t = 0; t < 50; ++t) {
            const Matrix m = random_matrix(Field(p), 4, 7, rng);
            EXPECT_EQ(rank(m), rank(m.transpose()));
        }
}

TEST(Rref, PackedPathMatchesGenericOnThousandMatrices) {
    Rng rng(14);
    const Field f(2);
    std::uniform_int_distribution<std::size_t> dim(1, 32);
    for (int t = 0; t < 1000; ++t) {
        const Matrix m = random_matrix(f, dim(rng), dim(rng), rng);
        const auto a = rref_gf2(m), b = rref_generic(m);
        ASSERT_EQ(a.r, b.r);
        ASSERT_EQ(a.rank, b.rank);
        ASSERT_EQ(a.pivots, b.pivots);
    }
}

TEST(Rref, PackedPathHandlesWideRows) {
    Rng rng(15);
    const Field f(2);
    for (int t = 0; t < 20; ++t) {
        const Matrix m = random_matrix(f, 70, 150, rng);
        EXPECT_EQ(rref_gf2(m).r, rref_generic(m).r);
    }
}

TEST(Kernel, ZeroMapHasFullKernel) {
    const Field f(2);
    EXPECT_EQ(kernel(Matrix(f, 2, 3)).rows(), 3u);
}

TEST(Kernel, IdentityHasTrivialKernel) {
    EXPECT_EQ(kernel(Matrix::identity(Field(3), 4)).rows(), 0u);
}

TEST(Kernel, SingleRowMatchesEnumeration) {
    const Field f(2);
    const Matrix m = from_rows(f, {"110"});
    const Matrix k = kernel(m);
    EXPECT_EQ(k.rows(), 2u);
    std::size_t members = 0;
    for (unsigned code = 0; code < 8; ++code) {
        Vector x(f, 3);
        for (std::size_t i = 0; i < 3; ++i) x[i] = (code >> i) & 1u;
        if (m.apply(x).is_zero()) ++members;
    }
    EXPECT_EQ(members, 4u);
    for (const Vector& v : k.row_vectors()) EXPECT_TRUE(m.apply(v).is_zero());
    EXPECT_EQ(rank(k), 2u);
}

TEST(Kernel, RankNullity) {
    Rng rng(16);
    std::uniform_int_distribution<std::size_t> dim(1, 9);
    for (unsigned p : {2u, 3u, 5u})
        for (int t = 0; t < 100; ++t) {
            const Matrix m = random_matrix(Field(p), dim(rng), dim(rng), rng);
            const Matrix k = kernel(m);
            EXPECT_EQ(rank(m) + k.rows(), m.cols());
            for (const Vector& v : k.row_vectors()) EXPECT_TRUE(m.apply(v).is_zero());
        }
}

TEST(LeftKernel, AnnihilatesRows) {
    Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        const Matrix m = random_matrix(Field(3), 6, 4, rng);
        const Matrix lk = left_kernel(m);
        EXPECT_EQ(lk.rows() + rank(m), m.rows());
        for (const Vector& y : lk.row_vectors()) EXPECT_TRUE(m.left_mul(y).is_zero());
    }
}

TEST(Solve, IdentityReturnsB) {
    const Field f(5);
    const Vector b = Vector::parse(f, "4021");
    const auto x = solve(Matrix::identity(f, 4), b);
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, b);
}

TEST(Solve, SumOfTwoRows) {
    const Field f(2);
    const auto x = solve(from_rows(f, {"110", "011"}), Vector::parse(f, "101"));
    ASSERT_TRUE(x);
    EXPECT_EQ(*x, Vector::parse(f, "11"));
}

TEST(Solve, LengthMismatchIsContractViolation) {
    const Field f(2);
    EXPECT_THROW(solve(from_rows(f, {"110"}), Vector::parse(f, "10")), ContractViolation);
}

TEST(Solve, AgreesWithExhaustiveCoefficientSearch) {
    Rng rng(18);
    const Field f(3);
    for (int t = 0; t < 60; ++t) {
        const Matrix m = random_matrix(f, 4, 5, rng);
        const Vector b = random_vector(f, 5, rng);
        bool reachable = false;
        for (unsigned code = 0; code < 81 && !reachable; ++code) {
            Vector c(f, 4);
            unsigned x = code;
            for (std::size_t i = 0; i < 4; ++i, x /= 3) c[i] = static_cast<Elem>(x % 3);
            reachable = m.left_mul(c) == b;
        }
        const auto sol = solve(m, b);
        EXPECT_EQ(sol.has_value(), reachable);
        if (sol) EXPECT_EQ(m.left_mul(*sol), b);
    }
}

TEST(Vector, ParseRejectsOutOfFieldDigits) {
    EXPECT_THROW(Vector::parse(Field(2), "102"), ContractViolation);
    EXPECT_EQ(Vector::parse(Field(11), "10 3 0").to_string(), "10 3 0");
}
