#ifndef GRASSMANN_SSVM_HPP
#define GRASSMANN_SSVM_HPP

// Sparse (l1-regularized) linear support vector machine.
//
// Training minimizes
//     F(w, b) = lambda * ‖w‖₁ + (1/p) * Σ max(0, 1 − y_i (w·x_i + b))
// with the bias unpenalized. Feature indices are 0-based throughout.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grassmann/error.hpp"
#include "grassmann/kernels.hpp"
#include "grassmann/matrix.hpp"

namespace grassmann {

enum class SsvmSolver { Simplex, Admm, ProxSubgradient };

inline std::string_view to_string(SsvmSolver s) {
    switch (s) {
        case SsvmSolver::Simplex: return "simplex";
        case SsvmSolver::Admm: return "admm";
        case SsvmSolver::ProxSubgradient: return "subgradient";
    }
    return "simplex";
}

inline std::optional<SsvmSolver> parse_solver(std::string_view s) {
    if (s == "simplex") return SsvmSolver::Simplex;
    if (s == "admm") return SsvmSolver::Admm;
    if (s == "subgradient") return SsvmSolver::ProxSubgradient;
    return std::nullopt;
}

struct TrainConfig {
    double lambda = 0.01;
    int max_iters = 20000;  // iterations, or pivots for the simplex
    double step = 1.0;   // initial step (subgradient) or initial penalty (ADMM)
    double tol = 1e-7;
    double tau = 1e-3;
    std::uint64_t seed = 0;
    bool standardize = false;
    SsvmSolver solver = SsvmSolver::Simplex;

    void validate() const {
        if (!(lambda > 0.0)) throw ValidationError("ssvm lambda must be positive");
        if (max_iters <= 0) throw ValidationError("ssvm max_iters must be positive");
        if (!(step > 0.0)) throw ValidationError("ssvm step must be positive");
        if (!(tol > 0.0)) throw ValidationError("ssvm tol must be positive");
        if (!(tau > 0.0 && tau < 1.0)) throw ValidationError("ssvm tau must lie in (0, 1)");
    }

    bool operator==(const TrainConfig&) const = default;
};

struct SsvmModel {
    std::vector<double> weights;
    double bias = 0.0;
    double lambda = 0.01;
    double tau = 1e-3;
    std::vector<std::size_t> selected_dims;
    // z-scoring applied before the decision function; empty when disabled.
    std::vector<double> feature_mean;
    std::vector<double> feature_scale;
    double objective = 0.0;
    int iterations = 0;

    bool operator==(const SsvmModel&) const = default;

    double decision(std::span<const double> x) const {
        double s = bias;
        if (feature_mean.empty()) {
            for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * x[j];
        } else {
            for (std::size_t j = 0; j < weights.size(); ++j)
                s += weights[j] * (x[j] - feature_mean[j]) / feature_scale[j];
        }
        return s;
    }
};

/// {j : |w_j| > tau * max|w|}; empty iff every weight is zero.
inline std::vector<std::size_t> selected_dimensions(std::span<const double> weights, double tau) {
    double wmax = 0.0;
    for (double w : weights) wmax = std::max(wmax, std::abs(w));
    std::vector<std::size_t> out;
    if (wmax == 0.0) return out;
    for (std::size_t j = 0; j < weights.size(); ++j)
        if (std::abs(weights[j]) > tau * wmax) out.push_back(j);
    return out;
}

inline std::vector<std::size_t> selected_dimensions(const SsvmModel& m) { return selected_dimensions(m.weights, m.tau); }

/// Training objective F(w, b).
inline double ssvm_objective(const DenseMatrix& X, std::span<const int> y, std::span<const double> w, double b,
                             double lambda) {
    double hinge = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const double margin = y[i] * (dot(X.row(i), w) + b);
        hinge += std::max(0.0, 1.0 - margin);
    }
    double l1 = 0.0;
    for (double v : w) l1 += std::abs(v);
    return lambda * l1 + hinge / static_cast<double>(X.rows());
}

namespace detail {

inline void check_training_data(const DenseMatrix& X, std::span<const int> y) {
    if (X.empty()) throw ValidationError("ssvm: empty training matrix");
    if (y.size() != X.rows()) {
        throw ValidationError("ssvm: " + std::to_string(y.size()) + " labels for " + std::to_string(X.rows()) +
                              " examples");
    }
    bool pos = false, neg = false;
    for (int v : y) {
        if (v == 1)
            pos = true;
        else if (v == -1)
            neg = true;
        else
            throw ValidationError("ssvm: binary labels must be -1 or +1, got " + std::to_string(v));
    }
    if (!pos || !neg) throw ValidationError("ssvm: training data contains a single class");
    for (double v : X.data())
        if (!std::isfinite(v)) throw ValidationError("ssvm: non-finite feature value");
}

inline double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

// Exact minimizer over b of Σ max(0, 1 − y_i (s_i + b)) for fixed scores s.
// The loss is convex piecewise linear with kinks at b = y_i − s_i, so the
// minimum sits at a kink where the slope changes sign.
inline double best_bias(std::span<const double> scores, std::span<const int> y, double fallback) {
    const std::size_t p = scores.size();
    std::vector<std::pair<double, int>> kinks(p);
    for (std::size_t i = 0; i < p; ++i) kinks[i] = {y[i] - scores[i], y[i]};
    std::sort(kinks.begin(), kinks.end());
    // slope(b) = #{negatives with b > kink} − #{positives with b < kink}, so it
    // starts at −#positives and rises by one at every kink.
    std::ptrdiff_t slope = 0;
    for (const auto& k : kinks)
        if (k.second == 1) --slope;
    double best = fallback;
    for (const auto& k : kinks) {
        slope += 1;
        if (slope >= 0) {
            best = k.first;
            break;
        }
    }
    return best;
}

// Cholesky factor (lower) of a symmetric positive definite matrix.
inline DenseMatrix cholesky(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) throw NumericalError("ssvm: normal matrix is not positive definite");
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

inline void cholesky_solve(const DenseMatrix& l, std::vector<double>& x) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x[k];
        x[i] = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
}

struct SolverOutput {
    std::vector<double> w;
    double b = 0.0;
    int iterations = 0;
};

inline constexpr int kAdmmBalanceIters = 2000;

// Scaled-form ADMM on the splitting z = Y[X 1]u (hinge), v = w (l1).
// The u-update system matrix does not depend on the penalty rho, so it is
// factored once and rho is rebalanced freely.
inline SolverOutput solve_admm(const DenseMatrix& X, std::span<const int> y, const TrainConfig& cfg) {
    const std::size_t p = X.rows();
    const std::size_t d = X.cols();
    const std::size_t m = d + 1;
    const double inv_p = 1.0 / static_cast<double>(p);

    DenseMatrix A(p, m);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < d; ++j) A(i, j) = y[i] * X(i, j);
        A(i, d) = y[i];
    }
    DenseMatrix M = multiply_at_b(A, A);
    for (std::size_t j = 0; j < d; ++j) M(j, j) += 1.0;
    const DenseMatrix L = cholesky(M);

    std::vector<double> u(m, 0.0), z(p, 1.0), v(d, 0.0), alpha(p, 0.0), beta(d, 0.0);
    std::vector<double> Au(p, 0.0), rhs(m), z_old(p), v_old(d);
    double rho = cfg.step;

    SolverOutput out;
    out.w = v;
    double best_obj = ssvm_objective(X, y, v, 0.0, cfg.lambda);
    double last_window_obj = best_obj;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        // u-update: (AᵀA + EᵀE) u = Aᵀ(z − alpha) + Eᵀ(v − beta)
        std::fill(rhs.begin(), rhs.end(), 0.0);
        for (std::size_t i = 0; i < p; ++i) {
            const double r = z[i] - alpha[i];
            auto arow = A.row(i);
            for (std::size_t j = 0; j < m; ++j) rhs[j] += arow[j] * r;
        }
        for (std::size_t j = 0; j < d; ++j) rhs[j] += v[j] - beta[j];
        u = rhs;
        cholesky_solve(L, u);
        for (std::size_t i = 0; i < p; ++i) Au[i] = dot(A.row(i), u);

        // z-update: prox of (1/p) max(0, 1 − z) with weight 1/rho.
        z_old = z;
        const double kappa = inv_p / rho;
        for (std::size_t i = 0; i < p; ++i) {
            const double c = Au[i] + alpha[i];
            z[i] = c >= 1.0 ? c : (c < 1.0 - kappa ? c + kappa : 1.0);
        }
        // v-update: soft threshold.
        v_old = v;
        for (std::size_t j = 0; j < d; ++j) v[j] = soft_threshold(u[j] + beta[j], cfg.lambda / rho);

        double r_primal = 0.0, r_dual = 0.0, scale_primal = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            const double r = Au[i] - z[i];
            alpha[i] += r;
            r_primal += r * r;
            scale_primal = std::max({scale_primal, std::abs(Au[i]), std::abs(z[i])});
            r_dual += (z[i] - z_old[i]) * (z[i] - z_old[i]);
        }
        for (std::size_t j = 0; j < d; ++j) {
            const double r = u[j] - v[j];
            beta[j] += r;
            r_primal += r * r;
            r_dual += (v[j] - v_old[j]) * (v[j] - v_old[j]);
        }
        r_primal = std::sqrt(r_primal);
        r_dual = rho * std::sqrt(r_dual);
        out.iterations = it;

        // Residual balancing during warm-up only; a penalty that keeps moving
        // voids the convergence guarantee. Scaled duals move inversely with rho.
        if (it % 10 == 0 && it <= kAdmmBalanceIters) {
            double factor = 1.0;
            if (r_primal > 10.0 * r_dual)
                factor = 2.0;
            else if (r_dual > 10.0 * r_primal)
                factor = 0.5;
            if (factor != 1.0) {
                rho *= factor;
                for (double& a : alpha) a /= factor;
                for (double& b : beta) b /= factor;
            }
        }

        if (it % 100 == 0) {
            const double obj = ssvm_objective(X, y, v, u[d], cfg.lambda);
            if (obj < best_obj) {
                best_obj = obj;
                out.w = v;
                out.b = u[d];
            }
            const bool flat = std::abs(obj - last_window_obj) <= cfg.tol * std::max(1.0, std::abs(obj));
            const bool feasible = r_primal <= 1e-9 * std::max(1.0, scale_primal) * std::sqrt(static_cast<double>(p + d));
            last_window_obj = obj;
            if (flat && feasible) break;
        }
    }
    if (ssvm_objective(X, y, v, u[d], cfg.lambda) < best_obj) {
        out.w = v;
        out.b = u[d];
    }
    return out;
}

// Proximal subgradient: subgradient step on the averaged hinge, soft
// threshold on w, step cfg.step/sqrt(t), iterate averaging over the second
// half of the budget.
inline SolverOutput solve_prox_subgradient(const DenseMatrix& X, std::span<const int> y, const TrainConfig& cfg) {
    const std::size_t p = X.rows();
    const std::size_t d = X.cols();
    const double inv_p = 1.0 / static_cast<double>(p);
    std::vector<double> w(d, 0.0), gw(d), w_avg(d, 0.0);
    double b = 0.0, b_avg = 0.0;
    long averaged = 0;
    const int avg_start = cfg.max_iters / 2;
    double last_window_obj = std::numeric_limits<double>::infinity();

    SolverOutput out;
    for (int t = 1; t <= cfg.max_iters; ++t) {
        std::fill(gw.begin(), gw.end(), 0.0);
        double gb = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            auto xi = X.row(i);
            if (y[i] * (dot(xi, w) + b) < 1.0) {
                for (std::size_t j = 0; j < d; ++j) gw[j] -= y[i] * xi[j];
                gb -= y[i];
            }
        }
        const double eta = cfg.step / std::sqrt(static_cast<double>(t));
        for (std::size_t j = 0; j < d; ++j) w[j] = soft_threshold(w[j] - eta * gw[j] * inv_p, cfg.lambda * eta);
        b -= eta * gb * inv_p;
        out.iterations = t;

        if (t > avg_start) {
            ++averaged;
            const double f = 1.0 / static_cast<double>(averaged);
            for (std::size_t j = 0; j < d; ++j) w_avg[j] += (w[j] - w_avg[j]) * f;
            b_avg += (b - b_avg) * f;
            if (averaged % 100 == 0) {
                const double obj = ssvm_objective(X, y, w_avg, b_avg, cfg.lambda);
                if (std::abs(obj - last_window_obj) < cfg.tol * std::max(1.0, std::abs(obj))) break;
                last_window_obj = obj;
            }
        }
    }
    if (averaged == 0) {
        w_avg = w;
        b_avg = b;
    }
    out.w = std::move(w_avg);
    out.b = b_avg;
    return out;
}

// Exact solve of the equivalent linear program
//     min  lambda * Σ(w⁺ + w⁻) + (1/p) Σ ξ
//     s.t. y_i (x_i·(w⁺ − w⁻) + b⁺ − b⁻) + ξ_i − s_i = 1,   all vars ≥ 0
// by a dense tableau simplex. ξ = 1 is a feasible starting basis. Pricing is
// Dantzig's rule; after a run of degenerate pivots it switches to Bland's
// rule, which cannot cycle. Stopping at the pivot cap still returns a
// feasible point.
inline SolverOutput solve_simplex(const DenseMatrix& X, std::span<const int> y, const TrainConfig& cfg) {
    const std::size_t p = X.rows();
    const std::size_t d = X.cols();
    const std::size_t xi0 = 2 * d + 2;
    const std::size_t s0 = xi0 + p;
    const std::size_t n = s0 + p;
    const std::size_t width = n + 1;
    const double inv_p = 1.0 / static_cast<double>(p);

    // Rows 0..p-1 are constraints, row p holds reduced costs and −objective.
    std::vector<double> t((p + 1) * width, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return t[i * width + j]; };
    for (std::size_t i = 0; i < p; ++i) {
        const double yi = y[i];
        for (std::size_t j = 0; j < d; ++j) {
            at(i, j) = yi * X(i, j);
            at(i, d + j) = -yi * X(i, j);
        }
        at(i, 2 * d) = yi;
        at(i, 2 * d + 1) = -yi;
        at(i, xi0 + i) = 1.0;
        at(i, s0 + i) = -1.0;
        at(i, n) = 1.0;
    }
    for (std::size_t j = 0; j < 2 * d; ++j) at(p, j) = cfg.lambda;
    // Price out the basic ξ columns.
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < width; ++j)
            if (j < xi0 || j >= s0) at(p, j) -= inv_p * at(i, j);
    std::vector<std::size_t> basis(p);
    for (std::size_t i = 0; i < p; ++i) basis[i] = xi0 + i;

    constexpr double eps = 1e-11;
    constexpr int kDegenerateRun = 50;
    int degenerate = 0;
    SolverOutput out;
    while (out.iterations < cfg.max_iters) {
        const bool bland = degenerate >= kDegenerateRun;
        std::size_t entering = n;
        double most_negative = -eps;
        for (std::size_t j = 0; j < n; ++j) {
            if (at(p, j) < most_negative) {
                entering = j;
                if (bland) break;
                most_negative = at(p, j);
            }
        }
        if (entering == n) break;

        std::size_t leaving = p;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < p; ++i) {
            const double a = at(i, entering);
            if (a <= eps) continue;
            const double ratio = at(i, n) / a;
            bool take = ratio < best_ratio - 1e-14;
            if (!take && leaving < p && std::abs(ratio - best_ratio) <= 1e-14)
                take = bland ? basis[i] < basis[leaving] : a > at(leaving, entering);
            if (take) {
                best_ratio = std::min(ratio, best_ratio);
                leaving = i;
            }
        }
        if (leaving == p) throw NumericalError("ssvm simplex: unbounded direction in a bounded problem");
        degenerate = best_ratio <= 1e-14 ? degenerate + 1 : 0;

        double* prow = &t[leaving * width];
        const double piv = prow[entering];
        for (std::size_t j = 0; j < width; ++j) prow[j] /= piv;
        for (std::size_t i = 0; i <= p; ++i) {
            if (i == leaving) continue;
            double* row = &t[i * width];
            const double f = row[entering];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
        }
        basis[leaving] = entering;
        ++out.iterations;
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < p; ++i) x[basis[i]] = std::max(0.0, at(i, n));
    out.w.resize(d);
    for (std::size_t j = 0; j < d; ++j) out.w[j] = x[j] - x[d + j];
    out.b = x[2 * d] - x[2 * d + 1];
    return out;
}

}  // namespace detail

/// Trains a binary sparse SVM on rows of X with labels in {-1, +1}.
inline SsvmModel train_binary(const DenseMatrix& X_in, std::span<const int> y, const TrainConfig& cfg = {}) {
    cfg.validate();
    detail::check_training_data(X_in, y);
    const std::size_t p = X_in.rows();
    const std::size_t d = X_in.cols();

    SsvmModel model;
    model.lambda = cfg.lambda;
    model.tau = cfg.tau;

    DenseMatrix X = X_in;
    if (cfg.standardize) {
        model.feature_mean.assign(d, 0.0);
        model.feature_scale.assign(d, 1.0);
        for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < p; ++i) mean += X(i, j);
            mean /= static_cast<double>(p);
            double var = 0.0;
            for (std::size_t i = 0; i < p; ++i) var += (X(i, j) - mean) * (X(i, j) - mean);
            const double sd = std::sqrt(var / static_cast<double>(p));
            model.feature_mean[j] = mean;
            model.feature_scale[j] = sd > 0.0 ? sd : 1.0;
            for (std::size_t i = 0; i < p; ++i) X(i, j) = (X(i, j) - mean) / model.feature_scale[j];
        }
    }

    detail::SolverOutput sol;
    switch (cfg.solver) {
        case SsvmSolver::Simplex: sol = detail::solve_simplex(X, y, cfg); break;
        case SsvmSolver::Admm: sol = detail::solve_admm(X, y, cfg); break;
        case SsvmSolver::ProxSubgradient: sol = detail::solve_prox_subgradient(X, y, cfg); break;
    }

    // Refit the bias exactly for the final weights, then keep whichever of
    // the solver iterate and the all-zero model scores lower.
    std::vector<double> scores(p);
    for (std::size_t i = 0; i < p; ++i) scores[i] = dot(X.row(i), sol.w);
    const double refit = detail::best_bias(scores, y, sol.b);
    double obj = ssvm_objective(X, y, sol.w, sol.b, cfg.lambda);
    const double obj_refit = ssvm_objective(X, y, sol.w, refit, cfg.lambda);
    if (obj_refit < obj) {
        sol.b = refit;
        obj = obj_refit;
    }
    std::vector<double> zeros(d, 0.0);
    std::fill(scores.begin(), scores.end(), 0.0);
    const double b0 = detail::best_bias(scores, y, 0.0);
    const double obj0 = ssvm_objective(X, y, zeros, b0, cfg.lambda);
    if (obj0 < obj) {
        sol.w = zeros;
        sol.b = b0;
        obj = obj0;
    }

    model.weights = std::move(sol.w);
    model.bias = sol.b;
    model.objective = obj;
    model.iterations = sol.iterations;
    model.selected_dims = selected_dimensions(model);
    return model;
}

inline int predict_one(const SsvmModel& model, std::span<const double> x) {
    return model.decision(x) >= 0.0 ? 1 : -1;
}

/// sign(w·x + b) per row, with sign(0) = +1.
inline std::vector<int> predict(const SsvmModel& model, const DenseMatrix& X) {
    if (X.cols() != model.weights.size()) {
        throw ValidationError("predict: feature count " + std::to_string(X.cols()) + " does not match model (" +
                              std::to_string(model.weights.size()) + ")");
    }
    std::vector<int> out(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) out[i] = predict_one(model, X.row(i));
    return out;
}

/// One-vs-rest ensemble; classes sorted ascending, models[c] scores classes[c].
struct MulticlassModel {
    std::vector<int> classes;
    std::vector<SsvmModel> models;

    bool operator==(const MulticlassModel&) const = default;

    /// Union of the per-class selected dimensions.
    std::vector<std::size_t> selected_dims() const {
        std::vector<std::size_t> all;
        for (const auto& m : models) all.insert(all.end(), m.selected_dims.begin(), m.selected_dims.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        return all;
    }
};

/// With two classes a single binary problem is solved (classes[1] positive)
/// and models[0] is its mirror, so predictions match train_binary exactly.
inline MulticlassModel train_multiclass(const DenseMatrix& X, std::span<const int> labels, const TrainConfig& cfg = {}) {
    if (labels.size() != X.rows()) {
        throw ValidationError("train_multiclass: " + std::to_string(labels.size()) + " labels for " +
                              std::to_string(X.rows()) + " examples");
    }
    MulticlassModel mc;
    mc.classes.assign(labels.begin(), labels.end());
    std::sort(mc.classes.begin(), mc.classes.end());
    mc.classes.erase(std::unique(mc.classes.begin(), mc.classes.end()), mc.classes.end());
    if (mc.classes.size() < 2) throw ValidationError("train_multiclass: need at least 2 classes");

    auto relabel = [&](int positive) {
        std::vector<int> y(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == positive ? 1 : -1;
        return y;
    };
    if (mc.classes.size() == 2) {
        const auto y = relabel(mc.classes[1]);
        SsvmModel pos = train_binary(X, y, cfg);
        SsvmModel neg = pos;
        for (double& w : neg.weights) w = -w;
        neg.bias = -neg.bias;
        mc.models = {neg, pos};
        return mc;
    }
    for (int c : mc.classes) {
        const auto y = relabel(c);
        mc.models.push_back(train_binary(X, y, cfg));
    }
    return mc;
}

/// argmax_c (w_c·x + b_c), ties to the smallest class; binary ensembles use
/// the sign rule of the underlying binary model.
inline std::vector<int> predict_multiclass(const MulticlassModel& mc, const DenseMatrix& X) {
    std::vector<int> out(X.rows());
    if (mc.models.empty()) throw ValidationError("predict_multiclass: empty model");
    if (X.cols() != mc.models.front().weights.size()) {
        throw ValidationError("predict_multiclass: feature count " + std::to_string(X.cols()) +
                              " does not match model (" + std::to_string(mc.models.front().weights.size()) + ")");
    }
    for (std::size_t i = 0; i < X.rows(); ++i) {
        if (mc.classes.size() == 2) {
            out[i] = predict_one(mc.models[1], X.row(i)) > 0 ? mc.classes[1] : mc.classes[0];
            continue;
        }
        std::size_t best = 0;
        double best_score = mc.models[0].decision(X.row(i));
        for (std::size_t c = 1; c < mc.models.size(); ++c) {
            const double s = mc.models[c].decision(X.row(i));
            if (s > best_score) {
                best_score = s;
                best = c;
            }
        }
        out[i] = mc.classes[best];
    }
    return out;
}

}  // namespace grassmann

#endif  // GRASSMANN_SSVM_HPP
