#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "grassmann/kernels.hpp"
#include "grassmann/rng.hpp"
#include "test_support.hpp"

using namespace grassmann;
using grassmann::testing::max_eig_residual;
using grassmann::testing::random_matrix;
using grassmann::testing::random_symmetric;
using grassmann::testing::svd_reconstruction_error;

TEST(DenseMatrix, RejectsNonFiniteAndZeroDims) {
    EXPECT_THROW(DenseMatrix(0, 3), ValidationError);
    EXPECT_THROW(DenseMatrix(2, 2, {1.0, 2.0, std::nan(""), 4.0}), ValidationError);
    EXPECT_THROW(DenseMatrix(2, 2, {1.0, 2.0, std::numeric_limits<double>::infinity(), 4.0}), ValidationError);
    EXPECT_THROW(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), ValidationError);
}

TEST(ThinSvd, SingleColumn) {
    auto s = thin_svd(DenseMatrix::from_rows({{3}, {4}}));
    ASSERT_EQ(s.singular_values.size(), 1u);
    EXPECT_NEAR(s.singular_values[0], 5.0, 1e-14);
    EXPECT_NEAR(s.left(0, 0), 0.6, 1e-14);
    EXPECT_NEAR(s.left(1, 0), 0.8, 1e-14);
}

TEST(ThinSvd, Identity) {
    auto s = thin_svd(DenseMatrix::identity(3));
    for (double v : s.singular_values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(ThinSvd, DiagonalSorted) {
    auto s = thin_svd(DenseMatrix::from_rows({{1, 0}, {0, 2}}));
    EXPECT_NEAR(s.singular_values[0], 2.0, 1e-15);
    EXPECT_NEAR(s.singular_values[1], 1.0, 1e-15);
}

TEST(ThinSvd, WideAndRankDeficientInputs) {
    Rng rng(3);
    DenseMatrix wide = random_matrix(3, 7, rng);
    auto s = thin_svd(wide);
    EXPECT_EQ(s.singular_values.size(), 3u);
    EXPECT_LE(svd_reconstruction_error(wide, s), 1e-10 * std::max(1.0, frobenius_norm(wide)));
    EXPECT_LE(orthonormality_error(s.left), 1e-12);
    EXPECT_LE(orthonormality_error(s.right), 1e-12);

    // Two equal columns: one zero singular value, factors still orthonormal.
    auto r = thin_svd(DenseMatrix::from_rows({{1, 1}, {2, 2}, {3, 3}}));
    EXPECT_NEAR(r.singular_values[1], 0.0, 1e-12);
    EXPECT_LE(orthonormality_error(r.left), 1e-12);
}

TEST(ThinSvd, RandomContractsHold) {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng.below(20), c = 1 + rng.below(20);
        DenseMatrix M = random_matrix(r, c, rng);
        auto s = thin_svd(M);
        for (std::size_t i = 0; i + 1 < s.singular_values.size(); ++i)
            EXPECT_GE(s.singular_values[i], s.singular_values[i + 1]);
        for (double v : s.singular_values) EXPECT_GE(v, 0.0);
        EXPECT_LE(orthonormality_error(s.left), 1e-12);
        EXPECT_LE(orthonormality_error(s.right), 1e-12);
        EXPECT_LE(svd_reconstruction_error(M, s), 1e-10 * std::max(1.0, frobenius_norm(M)));
    }
}

TEST(ThinSvd, SignConventionFirstSignificantEntryNonnegative) {
    Rng rng(5);
    auto s = thin_svd(random_matrix(6, 4, rng));
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t i = 0; i < 6; ++i) {
            if (std::abs(s.left(i, j)) > kSignCutoff) {
                EXPECT_GT(s.left(i, j), 0.0);
                break;
            }
        }
    }
}

TEST(ThinSvd, AgreesWithEigenvaluesOfGram) {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        DenseMatrix M = random_matrix(5 + rng.below(10), 1 + rng.below(5), rng);
        auto s = thin_svd(M);
        auto e = sym_eig(multiply_at_b(M, M));
        for (std::size_t i = 0; i < s.singular_values.size(); ++i) {
            const double ref = std::sqrt(std::max(0.0, e.eigenvalues[i]));
            EXPECT_NEAR(s.singular_values[i], ref, 1e-8 * std::max(1.0, ref));
        }
    }
}

TEST(SymEig, RankOne) {
    auto e = sym_eig(DenseMatrix::from_rows({{1, -1}, {-1, 1}}));
    EXPECT_NEAR(e.eigenvalues[0], 2.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues[1], 0.0, 1e-14);
}

TEST(SymEig, DiagonalSorted) {
    DenseMatrix S(3, 3);
    S(0, 0) = 3;
    S(1, 1) = -1;
    S(2, 2) = 2;
    auto e = sym_eig(S);
    EXPECT_EQ(e.eigenvalues, (std::vector<double>{3, 2, -1}));
}

TEST(SymEig, Zeros) {
    auto e = sym_eig(DenseMatrix(4, 4));
    for (double v : e.eigenvalues) EXPECT_EQ(v, 0.0);
    EXPECT_LE(orthonormality_error(e.eigenvectors), 1e-12);
}

TEST(SymEig, RejectsAsymmetricInput) {
    EXPECT_THROW(sym_eig(DenseMatrix::from_rows({{1, 2}, {0, 1}})), ValidationError);
    EXPECT_THROW(sym_eig(DenseMatrix(2, 3)), ValidationError);
}

TEST(SymEig, TiesKeepOriginalIndexOrder) {
    auto e = sym_eig(DenseMatrix::identity(3));
    EXPECT_EQ(e.eigenvectors, DenseMatrix::identity(3));
}

TEST(SymEig, RandomContractsHold) {
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng.below(25);
        DenseMatrix S = random_symmetric(n, rng);
        auto e = sym_eig(S);
        for (std::size_t i = 0; i + 1 < n; ++i) EXPECT_GE(e.eigenvalues[i], e.eigenvalues[i + 1]);
        EXPECT_LE(orthonormality_error(e.eigenvectors), 1e-12);
        EXPECT_LE(max_eig_residual(S, e), 1e-10 * std::max(1.0, frobenius_norm(S)));
    }
}

TEST(QrOrthonormal, SingleColumn) {
    DenseMatrix Q = qr_orthonormal(DenseMatrix::from_rows({{3}, {4}}));
    EXPECT_NEAR(std::abs(Q(0, 0)), 0.6, 1e-15);
    EXPECT_NEAR(std::abs(Q(1, 0)), 0.8, 1e-15);
}

TEST(QrOrthonormal, SpansFirstTwoAxes) {
    DenseMatrix Q = qr_orthonormal(DenseMatrix::from_rows({{1, 1}, {0, 1}, {0, 0}}));
    EXPECT_LE(orthonormality_error(Q), 1e-12);
    EXPECT_NEAR(Q(2, 0), 0.0, 1e-15);
    EXPECT_NEAR(Q(2, 1), 0.0, 1e-15);
}

TEST(QrOrthonormal, RankDeficientReportsRank) {
    try {
        qr_orthonormal(DenseMatrix::from_rows({{1, 2}, {2, 4}}));
        FAIL() << "expected RankDeficientError";
    } catch (const RankDeficientError& e) {
        EXPECT_EQ(e.rank(), 1u);
    }
}

TEST(QrOrthonormal, PreservesRange) {
    Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 4 + rng.below(20), k = 1 + rng.below(4);
        DenseMatrix Y = random_matrix(n, k, rng);
        DenseMatrix Q = qr_orthonormal(Y);
        EXPECT_LE(orthonormality_error(Q), 1e-12);
        // Y − QQᵀY vanishes when range(Q) = range(Y).
        DenseMatrix resid = subtract(Y, multiply(Q, multiply_at_b(Q, Y)));
        EXPECT_LE(frobenius_norm(resid), 1e-10 * std::max(1.0, frobenius_norm(Y)));
    }
}

TEST(RandomOrthonormal, IsOrthonormalAndDeterministic) {
    Rng a(41), b(41);
    DenseMatrix A = random_orthonormal(12, 5, a);
    EXPECT_LE(orthonormality_error(A), 1e-12);
    EXPECT_EQ(A, random_orthonormal(12, 5, b));
}

TEST(NumericalRank, CountsIndependentColumns) {
    EXPECT_EQ(numerical_rank(DenseMatrix::from_rows({{1, 2}, {2, 4}})), 1u);
    EXPECT_EQ(numerical_rank(DenseMatrix::identity(4)), 4u);
    EXPECT_EQ(numerical_rank(DenseMatrix(3, 3)), 0u);
}

TEST(Rng, DeterministicStreams) {
    Rng a(7), b(7);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    EXPECT_NE(derive_seed(7, 0), derive_seed(7, 1));
    Rng c(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(c.below(13), 13u);
    }
}
