#ifndef GRASSMANN_MDS_HPP
#define GRASSMANN_MDS_HPP

// Classical (Torgerson) multidimensional scaling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "grassmann/error.hpp"
#include "grassmann/kernels.hpp"
#include "grassmann/matrix.hpp"
#include "grassmann/subspace.hpp"

namespace grassmann {

struct EmbeddingResult {
    DenseMatrix coordinates;               // p x d, columns by descending eigenvalue
    std::vector<double> eigenvalues_all;   // all p eigenvalues of B, nonincreasing
    std::size_t retained_dim = 0;          // d
    std::size_t negative_count = 0;        // eigenvalues below -threshold
    double threshold = 0.0;                // eps_rel * lambda_1
    std::vector<int> labels;
    std::vector<Split> splits;

    std::size_t size() const noexcept { return coordinates.rows(); }
};

/// Doubly centered matrix B = H A H with A_ij = -D_ij^2 / 2.
inline DenseMatrix double_centered_gram(const DenseMatrix& D) {
    const std::size_t p = D.rows();
    DenseMatrix a(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) a(i, j) = -0.5 * D(i, j) * D(i, j);
    std::vector<double> row_mean(p, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) row_mean[i] += a(i, j);
        grand += row_mean[i];
        row_mean[i] /= static_cast<double>(p);
    }
    grand /= static_cast<double>(p * p);
    // A is symmetric, so column means equal row means.
    DenseMatrix b(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) b(i, j) = a(i, j) - row_mean[i] - row_mean[j] + grand;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            const double s = 0.5 * (b(i, j) + b(j, i));
            b(i, j) = s;
            b(j, i) = s;
        }
    return b;
}

/// Embeds the points of D into R^d, d = number of eigenvalues of B above
/// eps_rel * lambda_1. Train and test rows are embedded together.
inline EmbeddingResult classical_mds(const DistanceMatrix& D, double eps_rel = 1e-9) {
    validate(D);
    const std::size_t p = D.size();
    if (p < 2) throw ValidationError("classical_mds needs at least 2 points");

    const auto eig = sym_eig(double_centered_gram(D.entries));
    const double lambda1 = eig.eigenvalues.front();
    if (!(lambda1 > 0.0)) {
        throw DegenerateEmbeddingError("classical_mds: B has no positive eigenvalue (largest " +
                                       std::to_string(lambda1) + ")");
    }
    const double eps = eps_rel * lambda1;

    EmbeddingResult out;
    out.eigenvalues_all = eig.eigenvalues;
    out.threshold = eps;
    out.labels = D.labels;
    out.splits = D.splits;
    for (double l : eig.eigenvalues) {
        if (l > eps) ++out.retained_dim;
        if (l < -eps) ++out.negative_count;
    }
    out.retained_dim = std::min(out.retained_dim, p - 1);
    if (out.retained_dim == 0) throw DegenerateEmbeddingError("classical_mds: no eigenvalue above threshold");

    out.coordinates = DenseMatrix(p, out.retained_dim);
    for (std::size_t j = 0; j < out.retained_dim; ++j) {
        const double scale = std::sqrt(eig.eigenvalues[j]);
        for (std::size_t i = 0; i < p; ++i) out.coordinates(i, j) = eig.eigenvectors(i, j) * scale;
    }
    return out;
}

struct IsometryReport {
    double max_distortion = 0.0;
    double mean_distortion = 0.0;
    double negative_mass_ratio = 0.0;  // sum |lambda < 0| / sum lambda > 0
};

inline double embedded_distance(const DenseMatrix& x, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t c = 0; c < x.cols(); ++c) {
        const double d = x(i, c) - x(j, c);
        s += d * d;
    }
    return std::sqrt(s);
}

/// Relative distortion |‖x_i − x_j‖ − D_ij| / max(D_ij, 1e-12) over i < j,
/// plus the share of negative spectral mass.
inline IsometryReport isometry_report(const DistanceMatrix& D, const EmbeddingResult& E) {
    const std::size_t p = D.size();
    if (E.size() != p || E.eigenvalues_all.size() != p) {
        throw ValidationError("isometry_report: embedding has " + std::to_string(E.size()) +
                              " points, distance matrix has " + std::to_string(p));
    }
    constexpr double delta = 1e-12;
    IsometryReport r;
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            const double dij = D.entries(i, j);
            const double rel = std::abs(embedded_distance(E.coordinates, i, j) - dij) / std::max(dij, delta);
            r.max_distortion = std::max(r.max_distortion, rel);
            total += rel;
            ++pairs;
        }
    r.mean_distortion = pairs ? total / static_cast<double>(pairs) : 0.0;
    double pos = 0.0, neg = 0.0;
    for (double l : E.eigenvalues_all) (l > 0.0 ? pos : neg) += std::abs(l);
    r.negative_mass_ratio = pos > 0.0 ? neg / pos : 0.0;
    return r;
}

}  // namespace grassmann

#endif  // GRASSMANN_MDS_HPP
