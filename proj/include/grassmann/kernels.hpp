#ifndef GRASSMANN_KERNELS_HPP
#define GRASSMANN_KERNELS_HPP

// Dense linear-algebra kernels: one-sided Jacobi thin SVD, cyclic Jacobi
// symmetric eigendecomposition, and Gram-Schmidt orthonormalization.
//
// Sign convention for every returned singular/eigen vector: the first entry
// with magnitude above kSignCutoff is nonnegative. Ties in sorted spectra
// keep the original column order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "grassmann/error.hpp"
#include "grassmann/matrix.hpp"
#include "grassmann/rng.hpp"

namespace grassmann {

struct ThinSvdResult {
    DenseMatrix left;                    // rows x r
    std::vector<double> singular_values; // nonincreasing, length r
    DenseMatrix right;                   // cols x r
};

struct SymEigResult {
    std::vector<double> eigenvalues;  // nonincreasing
    DenseMatrix eigenvectors;         // column j pairs with eigenvalues[j]
};

inline constexpr int kJacobiMaxSweeps = 30;
inline constexpr double kSignCutoff = 1e-12;
inline constexpr double kRankTolerance = 1e-10;

namespace detail {

inline std::string dims(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

// Column-major scratch matrix used by the one-sided sweep.
struct ColumnStore {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> a;

    double* col(std::size_t j) { return a.data() + j * m; }
    const double* col(std::size_t j) const { return a.data() + j * m; }
};

inline ColumnStore to_columns(const DenseMatrix& M, bool transpose) {
    ColumnStore s;
    s.m = transpose ? M.cols() : M.rows();
    s.n = transpose ? M.rows() : M.cols();
    s.a.resize(s.m * s.n);
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) {
            if (transpose)
                s.a[i * s.m + j] = M(i, j);
            else
                s.a[j * s.m + i] = M(i, j);
        }
    return s;
}

// Orthogonalizes the columns of `w` in place by plane rotations, accumulating
// them into `v` (n x n, column-major) when non-null. Requires w.m >= w.n.
inline void one_sided_jacobi(ColumnStore& w, ColumnStore* v, std::size_t orig_rows, std::size_t orig_cols) {
    const std::size_t m = w.m;
    const std::size_t n = w.n;
    const double tol = std::max<double>(static_cast<double>(m), 1.0) * std::numeric_limits<double>::epsilon();
    double worst = 0.0;
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        bool rotated = false;
        worst = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double* ap = w.col(p);
                double* aq = w.col(q);
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += ap[i] * ap[i];
                    beta += aq[i] * aq[i];
                    gamma += ap[i] * aq[i];
                }
                if (alpha == 0.0 || beta == 0.0 || gamma == 0.0) continue;
                const double coupling = std::abs(gamma) / std::sqrt(alpha * beta);
                worst = std::max(worst, coupling);
                if (coupling <= tol) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double x = ap[i];
                    const double y = aq[i];
                    ap[i] = c * x - s * y;
                    aq[i] = s * x + c * y;
                }
                if (v) {
                    double* vp = v->col(p);
                    double* vq = v->col(q);
                    for (std::size_t i = 0; i < n; ++i) {
                        const double x = vp[i];
                        const double y = vq[i];
                        vp[i] = c * x - s * y;
                        vq[i] = s * x + c * y;
                    }
                }
            }
        }
        if (!rotated) return;
    }
    throw ConvergenceError("thin_svd: no convergence after " + std::to_string(kJacobiMaxSweeps) +
                           " sweeps for a " + dims(orig_rows, orig_cols) +
                           " matrix (max column coupling " + std::to_string(worst) + ")");
}

inline std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

// True when column j of m needs flipping under the sign convention.
inline bool needs_flip(const DenseMatrix& m, std::size_t j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double x = m(i, j);
        if (std::abs(x) > kSignCutoff) return x < 0.0;
    }
    return false;
}

inline void negate_column(DenseMatrix& m, std::size_t j) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

// Replaces the columns of u flagged in `missing` with unit vectors orthogonal
// to every other column, chosen from the coordinate axes by largest residual.
inline void complete_orthonormal(DenseMatrix& u, const std::vector<bool>& missing) {
    const std::size_t m = u.rows();
    std::vector<bool> filled(u.cols());
    for (std::size_t j = 0; j < u.cols(); ++j) filled[j] = !missing[j];
    for (std::size_t j = 0; j < u.cols(); ++j) {
        if (filled[j]) continue;
        std::vector<double> best;
        double best_norm = -1.0;
        for (std::size_t axis = 0; axis < m; ++axis) {
            std::vector<double> x(m, 0.0);
            x[axis] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c = 0; c < u.cols(); ++c) {
                    if (!filled[c]) continue;
                    double proj = 0.0;
                    for (std::size_t i = 0; i < m; ++i) proj += u(i, c) * x[i];
                    for (std::size_t i = 0; i < m; ++i) x[i] -= proj * u(i, c);
                }
            }
            double nrm = 0.0;
            for (double xi : x) nrm += xi * xi;
            nrm = std::sqrt(nrm);
            if (nrm > best_norm) {
                best_norm = nrm;
                best = std::move(x);
            }
        }
        for (std::size_t i = 0; i < m; ++i) u(i, j) = best[i] / best_norm;
        filled[j] = true;
    }
}

}  // namespace detail

/// Singular values only (nonincreasing). Cheaper than thin_svd since no
/// right vectors are accumulated.
inline std::vector<double> singular_values(const DenseMatrix& M) {
    const bool transpose = M.rows() < M.cols();
    detail::ColumnStore w = detail::to_columns(M, transpose);
    detail::one_sided_jacobi(w, nullptr, M.rows(), M.cols());
    std::vector<double> sigma(w.n);
    for (std::size_t j = 0; j < w.n; ++j) {
        const double* c = w.col(j);
        double s = 0.0;
        for (std::size_t i = 0; i < w.m; ++i) s += c[i] * c[i];
        sigma[j] = std::sqrt(s);
    }
    std::stable_sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

inline ThinSvdResult thin_svd(const DenseMatrix& M) {
    if (M.empty()) throw ValidationError("thin_svd: empty matrix");
    const bool transpose = M.rows() < M.cols();
    detail::ColumnStore w = detail::to_columns(M, transpose);
    const std::size_t m = w.m;
    const std::size_t n = w.n;

    detail::ColumnStore v;
    v.m = n;
    v.n = n;
    v.a.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) v.col(j)[j] = 1.0;

    detail::one_sided_jacobi(w, &v, M.rows(), M.cols());

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double* c = w.col(j);
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += c[i] * c[i];
        norms[j] = std::sqrt(s);
    }
    const auto order = detail::descending_order(norms);
    const double zero_cut = norms[order[0]] * 1e-100;

    DenseMatrix u(m, n);
    DenseMatrix vr(n, n);
    std::vector<double> sigma(n);
    std::vector<bool> missing(n, false);
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        sigma[jj] = norms[j];
        const double* c = w.col(j);
        if (norms[j] <= zero_cut || norms[j] == 0.0) {
            missing[jj] = true;
        } else {
            for (std::size_t i = 0; i < m; ++i) u(i, jj) = c[i] / norms[j];
        }
        const double* vc = v.col(j);
        for (std::size_t i = 0; i < n; ++i) vr(i, jj) = vc[i];
    }
    if (std::find(missing.begin(), missing.end(), true) != missing.end()) detail::complete_orthonormal(u, missing);

    ThinSvdResult out;
    out.singular_values = std::move(sigma);
    if (transpose) {
        out.left = std::move(vr);
        out.right = std::move(u);
    } else {
        out.left = std::move(u);
        out.right = std::move(vr);
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (detail::needs_flip(out.left, j)) {
            detail::negate_column(out.left, j);
            detail::negate_column(out.right, j);
        }
    }
    return out;
}

inline SymEigResult sym_eig(const DenseMatrix& S) {
    if (S.rows() != S.cols()) {
        throw ValidationError("sym_eig: matrix is " + detail::dims(S.rows(), S.cols()) + ", expected square");
    }
    const std::size_t p = S.rows();
    const double scale = std::max(1.0, max_abs(S));
    double asym = 0.0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) asym = std::max(asym, std::abs(S(i, j) - S(j, i)));
    if (asym > 1e-10 * scale) {
        throw ValidationError("sym_eig: matrix not symmetric (max deviation " + std::to_string(asym) + ")");
    }

    DenseMatrix a(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) a(i, j) = 0.5 * (S(i, j) + S(j, i));
    DenseMatrix v = DenseMatrix::identity(p);

    const double norm = frobenius_norm(a);
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    bool converged = false;
    double off = off_norm();
    for (int sweep = 1; sweep <= kJacobiMaxSweeps + 1; ++sweep) {
        if (off == 0.0 || off <= 1e-14 * norm) {
            converged = true;
            break;
        }
        if (sweep > kJacobiMaxSweeps) break;
        // Early sweeps skip small entries; late sweeps flush entries that no
        // longer change either diagonal.
        double sum_abs = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j) sum_abs += std::abs(a(i, j));
        const double thresh = sweep < 4 ? 0.2 * sum_abs / static_cast<double>(p * p) : 0.0;

        for (std::size_t ip = 0; ip + 1 < p; ++ip) {
            for (std::size_t iq = ip + 1; iq < p; ++iq) {
                const double apq = a(ip, iq);
                const double g = 100.0 * std::abs(apq);
                const double app = a(ip, ip);
                const double aqq = a(iq, iq);
                if (sweep > 4 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
                    a(ip, iq) = 0.0;
                    a(iq, ip) = 0.0;
                    continue;
                }
                if (std::abs(apq) <= thresh || apq == 0.0) continue;
                const double h = aqq - app;
                double t;
                if (std::abs(h) + g == std::abs(h)) {
                    t = apq / h;
                } else {
                    const double theta = 0.5 * h / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                a(ip, ip) = app - t * apq;
                a(iq, iq) = aqq + t * apq;
                a(ip, iq) = 0.0;
                a(iq, ip) = 0.0;
                for (std::size_t r = 0; r < p; ++r) {
                    if (r == ip || r == iq) continue;
                    const double arp = a(r, ip);
                    const double arq = a(r, iq);
                    const double np = c * arp - s * arq;
                    const double nq = s * arp + c * arq;
                    a(r, ip) = np;
                    a(ip, r) = np;
                    a(r, iq) = nq;
                    a(iq, r) = nq;
                }
                for (std::size_t r = 0; r < p; ++r) {
                    const double vp = v(r, ip);
                    const double vq = v(r, iq);
                    v(r, ip) = c * vp - s * vq;
                    v(r, iq) = s * vp + c * vq;
                }
            }
        }
        off = off_norm();
    }
    if (!converged) {
        throw ConvergenceError("sym_eig: no convergence after " + std::to_string(kJacobiMaxSweeps) + " sweeps for a " +
                               detail::dims(p, p) + " matrix (relative off-diagonal residual " +
                               std::to_string(norm > 0.0 ? off / norm : off) + ")");
    }

    std::vector<double> diag(p);
    for (std::size_t i = 0; i < p; ++i) diag[i] = a(i, i);
    const auto order = detail::descending_order(diag);
    SymEigResult out;
    out.eigenvalues.resize(p);
    out.eigenvectors = DenseMatrix(p, p);
    for (std::size_t jj = 0; jj < p; ++jj) {
        const std::size_t j = order[jj];
        out.eigenvalues[jj] = diag[j];
        for (std::size_t i = 0; i < p; ++i) out.eigenvectors(i, jj) = v(i, j);
        if (detail::needs_flip(out.eigenvectors, jj)) detail::negate_column(out.eigenvectors, jj);
    }
    return out;
}

/// Count of singular values above rel_tol times the largest.
inline std::size_t numerical_rank(const DenseMatrix& M, double rel_tol = kRankTolerance) {
    const auto sigma = singular_values(M);
    if (sigma.empty() || sigma.front() == 0.0) return 0;
    return static_cast<std::size_t>(
        std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > rel_tol * sigma.front(); }));
}

/// Orthonormal basis for range(Y) by modified Gram-Schmidt with one
/// reorthogonalization pass. Throws RankDeficientError when the numerical
/// rank of Y is below its column count.
inline DenseMatrix qr_orthonormal(const DenseMatrix& Y) {
    const std::size_t n = Y.rows();
    const std::size_t k = Y.cols();
    if (k > n) {
        throw ValidationError("qr_orthonormal: " + detail::dims(n, k) + " matrix has more columns than rows");
    }
    const std::size_t rank = numerical_rank(Y);
    if (rank < k) throw RankDeficientError(rank, k);

    detail::ColumnStore q = detail::to_columns(Y, false);
    for (std::size_t j = 0; j < k; ++j) {
        double* qj = q.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t c = 0; c < j; ++c) {
                const double* qc = q.col(c);
                double r = 0.0;
                for (std::size_t i = 0; i < n; ++i) r += qc[i] * qj[i];
                for (std::size_t i = 0; i < n; ++i) qj[i] -= r * qc[i];
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += qj[i] * qj[i];
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) qj[i] /= nrm;
    }
    DenseMatrix out(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) out(i, j) = q.col(j)[i];
    return out;
}

/// Haar-ish random n x k orthonormal matrix (Gaussian draw, then Gram-Schmidt).
inline DenseMatrix random_orthonormal(std::size_t n, std::size_t k, Rng& rng) {
    DenseMatrix g(n, k);
    for (double& x : g.data()) x = rng.normal();
    return qr_orthonormal(g);
}

}  // namespace grassmann

#endif  // GRASSMANN_KERNELS_HPP
