#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "grassmann/mds.hpp"
#include "test_support.hpp"

using namespace grassmann;
using grassmann::testing::as_distance_matrix;
using grassmann::testing::euclidean_distances;
using grassmann::testing::random_matrix;
using grassmann::testing::random_point;

namespace {

DistanceMatrix distances_of(const std::vector<SubspacePoint>& pts, MetricKind m) { return distance_matrix(pts, m, 1); }

double max_relative_distortion(const DenseMatrix& D, const EmbeddingResult& E) {
    double worst = 0.0;
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = i + 1; j < D.rows(); ++j)
            worst = std::max(worst, std::abs(embedded_distance(E.coordinates, i, j) - D(i, j)) / D(i, j));
    return worst;
}

}  // namespace

TEST(ClassicalMds, TwoPointsOnALine) {
    auto E = classical_mds(as_distance_matrix(DenseMatrix::from_rows({{0, 2}, {2, 0}})));
    EXPECT_NEAR(E.eigenvalues_all[0], 2.0, 1e-12);
    EXPECT_NEAR(E.eigenvalues_all[1], 0.0, 1e-12);
    ASSERT_EQ(E.retained_dim, 1u);
    EXPECT_NEAR(std::abs(E.coordinates(0, 0)), 1.0, 1e-12);
    EXPECT_NEAR(E.coordinates(0, 0), -E.coordinates(1, 0), 1e-12);
    EXPECT_EQ(E.negative_count, 0u);
}

TEST(ClassicalMds, EquilateralTriangle) {
    auto E = classical_mds(as_distance_matrix(DenseMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})));
    EXPECT_NEAR(E.eigenvalues_all[0], 0.5, 1e-9);
    EXPECT_NEAR(E.eigenvalues_all[1], 0.5, 1e-9);
    EXPECT_NEAR(E.eigenvalues_all[2], 0.0, 1e-9);
    EXPECT_EQ(E.retained_dim, 2u);
    EXPECT_EQ(E.negative_count, 0u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) EXPECT_NEAR(embedded_distance(E.coordinates, i, j), 1.0, 1e-9);
}

TEST(ClassicalMds, StarMetricIsNotEuclidean) {
    // Centre 0 at distance 1 from three leaves that are pairwise 2 apart.
    const auto D = DenseMatrix::from_rows({{0, 1, 1, 1}, {1, 0, 2, 2}, {1, 2, 0, 2}, {1, 2, 2, 0}});
    // Certificate independent of the eigensolver: z sums to zero, so
    // zᵀBz = zᵀAz = −½ Σ z_i z_j D_ij², which is −3 for z = (−3, 1, 1, 1).
    const std::vector<double> z = {-3, 1, 1, 1};
    const DenseMatrix B = double_centered_gram(D);
    double q = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) q += z[i] * B(i, j) * z[j];
    EXPECT_NEAR(q, -3.0, 1e-12);

    auto E = classical_mds(as_distance_matrix(D));
    EXPECT_GE(E.negative_count, 1u);
    // Rayleigh bound: λ_min ≤ zᵀBz / zᵀz = −0.25.
    EXPECT_LE(E.eigenvalues_all.back(), -0.25 + 1e-12);
    EXPECT_GT(isometry_report(as_distance_matrix(D), E).negative_mass_ratio, 0.0);
}

TEST(ClassicalMds, RandomEuclideanRoundTrip) {
    Rng rng(1);
    const DenseMatrix pts = random_matrix(20, 5, rng);
    const DenseMatrix D = euclidean_distances(pts);
    auto E = classical_mds(as_distance_matrix(D));
    EXPECT_EQ(E.negative_count, 0u);
    EXPECT_EQ(E.retained_dim, 5u);
    EXPECT_LE(max_relative_distortion(D, E), 1e-8);
    const auto iso = isometry_report(as_distance_matrix(D), E);
    EXPECT_LE(iso.max_distortion, 1e-8);
    EXPECT_LE(iso.negative_mass_ratio, 1e-10);
}

TEST(ClassicalMds, CoordinateStructure) {
    Rng rng(2);
    const DenseMatrix D = euclidean_distances(random_matrix(15, 4, rng));
    auto E = classical_mds(as_distance_matrix(D));
    EXPECT_LE(E.retained_dim, D.rows() - 1);
    const double scale = max_abs(E.coordinates);
    for (std::size_t j = 0; j < E.retained_dim; ++j) {
        double sq = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < E.size(); ++i) {
            sq += E.coordinates(i, j) * E.coordinates(i, j);
            mean += E.coordinates(i, j);
        }
        EXPECT_NEAR(sq, E.eigenvalues_all[j], 1e-9 * E.eigenvalues_all[j]);
        EXPECT_LE(std::abs(mean / static_cast<double>(E.size())), 1e-9 * scale);
    }
    const DenseMatrix B = double_centered_gram(D);
    double trace = 0.0;
    for (std::size_t i = 0; i < B.rows(); ++i) trace += B(i, i);
    const double sum = std::accumulate(E.eigenvalues_all.begin(), E.eigenvalues_all.end(), 0.0);
    EXPECT_NEAR(sum, trace, 1e-9 * std::abs(trace));
}

TEST(ClassicalMds, SpectrumInvariantUnderRigidMotion) {
    Rng rng(3);
    const DenseMatrix pts = random_matrix(12, 3, rng);
    DenseMatrix moved = multiply(pts, random_orthonormal(3, 3, rng));
    for (std::size_t i = 0; i < moved.rows(); ++i) {
        moved(i, 0) += 5.0;
        moved(i, 2) -= 2.0;
    }
    const auto a = classical_mds(as_distance_matrix(euclidean_distances(pts)));
    const auto b = classical_mds(as_distance_matrix(euclidean_distances(moved)));
    for (std::size_t i = 0; i < a.eigenvalues_all.size(); ++i)
        EXPECT_NEAR(a.eigenvalues_all[i], b.eigenvalues_all[i], 1e-9 * std::max(1.0, a.eigenvalues_all[0]));
}

TEST(ClassicalMds, KeepsLabelsAndSplits) {
    Rng rng(4);
    std::vector<SubspacePoint> pts = {random_point(6, 2, rng, 1, Split::Train), random_point(6, 2, rng, 2, Split::Test),
                                      random_point(6, 2, rng, 1, Split::Test)};
    auto E = classical_mds(distances_of(pts, MetricKind::Chordal));
    EXPECT_EQ(E.labels, (std::vector<int>{1, 2, 1}));
    EXPECT_EQ(E.splits, (std::vector<Split>{Split::Train, Split::Test, Split::Test}));
}

TEST(ClassicalMds, AllZeroDistancesAreDegenerate) {
    EXPECT_THROW(classical_mds(as_distance_matrix(DenseMatrix(3, 3))), DegenerateEmbeddingError);
}

TEST(ClassicalMds, InvalidDistanceMatrixRejected) {
    EXPECT_THROW(classical_mds(as_distance_matrix(DenseMatrix::from_rows({{0, 1}, {3, 0}}))), ValidationError);
}

TEST(IsometryReport, ChordalIsEuclideanRealizable) {
    Rng rng(5);
    std::vector<SubspacePoint> pts;
    for (int i = 0; i < 50; ++i) pts.push_back(random_point(30, 5, rng));
    const auto D = distances_of(pts, MetricKind::Chordal);
    auto E = classical_mds(D);
    EXPECT_LE(isometry_report(D, E).negative_mass_ratio, 1e-8);
    EXPECT_EQ(E.negative_count, 0u);
}

TEST(IsometryReport, GeodesicLinesInR3HaveNegativeEigenvalues) {
    Rng rng(6);
    std::vector<SubspacePoint> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(random_point(3, 1, rng));
    auto E = classical_mds(distances_of(pts, MetricKind::Geodesic));
    EXPECT_GE(E.negative_count, 1u);
    EXPECT_GT(-E.eigenvalues_all.back() / E.eigenvalues_all.front(), 1e-6);
}

TEST(IsometryReport, PseudometricIsFarFromEuclidean) {
    Rng rng(7);
    std::vector<SubspacePoint> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(random_point(6, 3, rng));
    const auto D = distances_of(pts, MetricKind::Pseudo);
    EXPECT_GT(isometry_report(D, classical_mds(D)).negative_mass_ratio, 1e-3);
}

TEST(IsometryReport, SizeMismatchRejected) {
    const auto D2 = as_distance_matrix(DenseMatrix::from_rows({{0, 2}, {2, 0}}));
    const auto D3 = as_distance_matrix(DenseMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    EXPECT_THROW(isometry_report(D3, classical_mds(D2)), ValidationError);
}
