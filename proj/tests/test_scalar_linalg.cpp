#include <superlie/scalar_linalg.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace superlie;

namespace {

// determinant by cofactor expansion; fine for the tiny sizes used here
Rational det_laplace(const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Rational d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c].is_zero()) continue;
        std::vector<std::vector<Rational>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(std::move(row));
        }
        const Rational term = a[0][c] * det_laplace(minor);
        d += (c % 2) ? Rational(-term) : term;
    }
    return d;
}

// largest k with a nonzero k x k minor
std::size_t rank_by_minors(const Matrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    for (std::size_t k = std::min(R, C); k > 0; --k) {
        for (unsigned rs = 0; rs < (1u << R); ++rs) {
            if (static_cast<std::size_t>(__builtin_popcount(rs)) != k) continue;
            for (unsigned cs = 0; cs < (1u << C); ++cs) {
                if (static_cast<std::size_t>(__builtin_popcount(cs)) != k) continue;
                std::vector<std::vector<Rational>> sub;
                for (std::size_t i = 0; i < R; ++i) {
                    if (!((rs >> i) & 1u)) continue;
                    std::vector<Rational> row;
                    for (std::size_t j = 0; j < C; ++j)
                        if ((cs >> j) & 1u) row.push_back(m(i, j));
                    sub.push_back(std::move(row));
                }
                if (!det_laplace(sub).is_zero()) return k;
            }
        }
    }
    return 0;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> v(-3, 3), den(1, 4), sparse(0, 2);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = sparse(rng) ? Rational(v(rng), den(rng)) : Rational(0);
    return m;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
    EXPECT_EQ(to_string(Rational(6, 3)), "2");
    EXPECT_EQ(to_string(Rational(-3, 6)), "-1/2");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Rank, FuzzAgainstMinors) {
    std::mt19937_64 rng(7);
    for (int c = 0; c < 1500; ++c) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        Matrix m = random_matrix(rng, dim(rng), dim(rng));
        // sometimes force a dependent row
        if (c % 3 == 0 && m.rows() >= 2)
            for (std::size_t j = 0; j < m.cols(); ++j) m(m.rows() - 1, j) = m(0, j) * Rational(2, 3) - m(1, j);
        ASSERT_EQ(rank(m), rank_by_minors(m)) << "case " << c;
    }
}

TEST(Kernel, VectorsAnnihilateAndCountIsNullity) {
    std::mt19937_64 rng(11);
    for (int c = 0; c < 500; ++c) {
        std::uniform_int_distribution<std::size_t> dim(1, 6);
        const Matrix m = random_matrix(rng, dim(rng), dim(rng));
        const auto ker = kernel_basis(m);
        ASSERT_EQ(ker.size() + rank(m), m.cols());
        for (const auto& v : ker)
            for (const auto& x : m * v) ASSERT_TRUE(x.is_zero());
        if (!ker.empty()) {
            Matrix k(ker.size(), m.cols());
            for (std::size_t i = 0; i < ker.size(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) k(i, j) = ker[i][j];
            ASSERT_EQ(rank(k), ker.size());
        }
    }
}

TEST(Solve, ConsistentAndInconsistent) {
    std::mt19937_64 rng(13);
    for (int c = 0; c < 500; ++c) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        const Matrix m = random_matrix(rng, dim(rng), dim(rng));
        Vector x(m.cols());
        for (auto& e : x) e = Rational(static_cast<int>(rng() % 7) - 3);
        const Vector b = m * x;
        auto sol = solve(m, b);
        ASSERT_TRUE(sol.has_value());
        ASSERT_EQ(m * *sol, b);
    }
    const Matrix m = Matrix::from_rows({{1, 1}, {2, 2}});
    EXPECT_FALSE(solve(m, {1, 3}).has_value());
}

TEST(Inverse, RoundTrip) {
    std::mt19937_64 rng(17);
    int invertible = 0;
    for (int c = 0; c < 400; ++c) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        const std::size_t n = dim(rng);
        const Matrix m = random_matrix(rng, n, n);
        const auto inv = inverse(m);
        ASSERT_EQ(inv.has_value(), rank_by_minors(m) == n);
        if (inv) {
            ++invertible;
            ASSERT_EQ(m * *inv, Matrix::identity(n));
        }
    }
    EXPECT_GT(invertible, 50);
}

TEST(SpanBasis, DropsDependentVectors) {
    const auto b = span_basis({{1, 2, 3}, {2, 4, 6}, {0, 1, 0}}, 3);
    EXPECT_EQ(b.size(), 2u);
    EXPECT_TRUE(span_basis({}, 3).empty());
}

TEST(Rank, SmallExamples) {
    EXPECT_EQ(rank(Matrix(3, 3)), 0u);
    EXPECT_EQ(rank(Matrix::identity(4)), 4u);
    const Matrix m = Matrix::from_rows({{1, 2}, {2, 4}, {3, 6}});
    EXPECT_EQ(rank(m), 1u);
    EXPECT_EQ(rank(m.transpose()), 1u);
    EXPECT_EQ(rank(Matrix(0, 3)), 0u);
}

TEST(Rank, TransposeInvariant) {
    std::mt19937_64 rng(19);
    for (int c = 0; c < 500; ++c) {
        std::uniform_int_distribution<std::size_t> dim(1, 7);
        const Matrix m = random_matrix(rng, dim(rng), dim(rng));
        ASSERT_EQ(rank(m), rank(m.transpose()));
    }
}

TEST(Kernel, SmallExamples) {
    EXPECT_TRUE(kernel_basis(Matrix::identity(3)).empty());
    EXPECT_EQ(kernel_basis(Matrix(2, 4)).size(), 4u);
    EXPECT_EQ(kernel_basis(Matrix::from_rows({{1, 1, 0}})).size(), 2u);
}

TEST(Solve, SmallExamples) {
    const Vector rhs{Rational(1, 3), -2, 5};
    EXPECT_EQ(solve(Matrix::identity(3), rhs), std::optional<Vector>(rhs));
    const auto x = solve(Matrix::from_rows({{1, 1}}), {2});
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0] + (*x)[1], 2);
    EXPECT_FALSE(solve(Matrix::from_rows({{1}, {1}}), {1, 2}));
}
