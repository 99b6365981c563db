#ifndef GRASSMANN_SUBSPACE_HPP
#define GRASSMANN_SUBSPACE_HPP

// Points on the Grassmann manifold G(k, n) and the distances between them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "grassmann/error.hpp"
#include "grassmann/kernels.hpp"
#include "grassmann/matrix.hpp"

namespace grassmann {

enum class Split { Train, Test };
enum class MetricKind { Geodesic, Chordal, Pseudo };
enum class Construction { SVD, QR };

inline std::string_view to_string(Split s) { return s == Split::Train ? "train" : "test"; }

inline std::string_view to_string(MetricKind m) {
    switch (m) {
        case MetricKind::Geodesic: return "geodesic";
        case MetricKind::Chordal: return "chordal";
        case MetricKind::Pseudo: return "pseudo";
    }
    return "?";
}

inline std::string_view to_string(Construction c) { return c == Construction::SVD ? "svd" : "qr"; }

inline std::optional<MetricKind> parse_metric(std::string_view s) {
    if (s == "geodesic") return MetricKind::Geodesic;
    if (s == "chordal") return MetricKind::Chordal;
    if (s == "pseudo") return MetricKind::Pseudo;
    return std::nullopt;
}

inline std::optional<Construction> parse_construction(std::string_view s) {
    if (s == "svd") return Construction::SVD;
    if (s == "qr") return Construction::QR;
    return std::nullopt;
}

/// A k-dimensional subspace of R^n held as an n x k orthonormal basis.
/// Any basis with the same span denotes the same point.
struct SubspacePoint {
    DenseMatrix basis;
    int label = 0;
    Split split = Split::Train;

    std::size_t ambient_dim() const noexcept { return basis.rows(); }
    std::size_t subspace_dim() const noexcept { return basis.cols(); }
};

/// Builds a Grassmann point spanning range(Y). Throws RankDeficientError if
/// Y does not have full column rank.
inline SubspacePoint make_point(const DenseMatrix& Y, int label, Split split,
                                Construction method = Construction::SVD) {
    if (Y.cols() > Y.rows()) {
        throw ValidationError("make_point: k=" + std::to_string(Y.cols()) + " exceeds n=" + std::to_string(Y.rows()));
    }
    SubspacePoint pt;
    pt.label = label;
    pt.split = split;
    if (method == Construction::QR) {
        pt.basis = qr_orthonormal(Y);
    } else {
        auto svd = thin_svd(Y);
        const auto& s = svd.singular_values;
        const std::size_t rank = s.front() == 0.0
                                     ? 0
                                     : static_cast<std::size_t>(std::count_if(
                                           s.begin(), s.end(), [&](double x) { return x > kRankTolerance * s.front(); }));
        if (rank < Y.cols()) throw RankDeficientError(rank, Y.cols());
        pt.basis = std::move(svd.left);
    }
    return pt;
}

namespace detail {

inline void check_same_grassmannian(const SubspacePoint& p, const SubspacePoint& q) {
    if (p.ambient_dim() != q.ambient_dim() || p.subspace_dim() != q.subspace_dim()) {
        throw ValidationError("subspaces live on different Grassmannians: G(" + std::to_string(p.subspace_dim()) + "," +
                              std::to_string(p.ambient_dim()) + ") vs G(" + std::to_string(q.subspace_dim()) + "," +
                              std::to_string(q.ambient_dim()) + ")");
    }
}

}  // namespace detail

/// Principal angles in radians, nondecreasing in [0, pi/2]: arccos of the
/// singular values of PᵀQ, clamped into [0, 1] first.
inline std::vector<double> principal_angles(const SubspacePoint& P, const SubspacePoint& Q) {
    detail::check_same_grassmannian(P, Q);
    const auto sigma = singular_values(multiply_at_b(P.basis, Q.basis));
    std::vector<double> theta(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) theta[i] = std::acos(std::clamp(sigma[i], 0.0, 1.0));
    std::sort(theta.begin(), theta.end());
    return theta;
}

/// Distance computed from a principal-angle vector.
inline double distance_from_angles(const std::vector<double>& theta, MetricKind metric) {
    switch (metric) {
        case MetricKind::Geodesic: {
            double s = 0.0;
            for (double t : theta) s += t * t;
            return std::sqrt(s);
        }
        case MetricKind::Chordal: {
            double s = 0.0;
            for (double t : theta) s += std::sin(t) * std::sin(t);
            return std::sqrt(s);
        }
        case MetricKind::Pseudo: return theta.empty() ? 0.0 : theta.front();
    }
    return 0.0;
}

inline double distance(const SubspacePoint& P, const SubspacePoint& Q, MetricKind metric) {
    return distance_from_angles(principal_angles(P, Q), metric);
}

/// Symmetric p x p matrix of subspace distances with the per-row labels and
/// split tags of the points it was built from.
struct DistanceMatrix {
    DenseMatrix entries;
    MetricKind metric = MetricKind::Chordal;
    std::vector<int> labels;
    std::vector<Split> splits;

    std::size_t size() const noexcept { return entries.rows(); }
};

/// Checks symmetry, zero diagonal, nonnegativity and finiteness.
inline void validate(const DistanceMatrix& D) {
    const std::size_t p = D.entries.rows();
    if (p == 0 || D.entries.cols() != p) throw ValidationError("distance matrix must be square and nonempty");
    if (D.labels.size() != p || D.splits.size() != p) {
        throw ValidationError("distance matrix labels/splits do not match its size " + std::to_string(p));
    }
    for (std::size_t i = 0; i < p; ++i) {
        if (D.entries(i, i) != 0.0) throw ValidationError("distance matrix diagonal entry " + std::to_string(i) + " is nonzero");
        for (std::size_t j = 0; j < p; ++j) {
            const double x = D.entries(i, j);
            if (!std::isfinite(x) || x < 0.0) {
                throw ValidationError("distance matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ") is negative or non-finite");
            }
            if (x != D.entries(j, i)) {
                throw ValidationError("distance matrix not symmetric at (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
            }
        }
    }
}

/// Pairwise distances over all points. Each unordered pair is evaluated once
/// and mirrored, so the result does not depend on `threads` (0 = hardware).
inline DistanceMatrix distance_matrix(const std::vector<SubspacePoint>& points, MetricKind metric,
                                      unsigned threads = 0) {
    const std::size_t p = points.size();
    if (p < 2) throw ValidationError("distance_matrix needs at least 2 points, got " + std::to_string(p));
    for (std::size_t i = 1; i < p; ++i) {
        if (points[i].ambient_dim() != points[0].ambient_dim() ||
            points[i].subspace_dim() != points[0].subspace_dim()) {
            throw ValidationError("distance_matrix: point " + std::to_string(i) + " is on G(" +
                                  std::to_string(points[i].subspace_dim()) + "," +
                                  std::to_string(points[i].ambient_dim()) + "), point 0 is on G(" +
                                  std::to_string(points[0].subspace_dim()) + "," +
                                  std::to_string(points[0].ambient_dim()) + ")");
        }
    }

    DistanceMatrix D;
    D.entries = DenseMatrix(p, p);
    D.metric = metric;
    for (const auto& pt : points) {
        D.labels.push_back(pt.label);
        D.splits.push_back(pt.split);
    }

    unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, p - 1));
    std::vector<std::exception_ptr> failures(n_threads);

    auto fill_rows = [&](std::size_t worker) {
        try {
            for (std::size_t i = worker; i < p; i += n_threads)
                for (std::size_t j = i + 1; j < p; ++j) {
                    const double d = distance(points[i], points[j], metric);
                    D.entries(i, j) = d;
                    D.entries(j, i) = d;
                }
        } catch (...) {
            failures[worker] = std::current_exception();
        }
    };

    if (n_threads <= 1) {
        fill_rows(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(fill_rows, w);
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    return D;
}

}  // namespace grassmann

#endif  // GRASSMANN_SUBSPACE_HPP
