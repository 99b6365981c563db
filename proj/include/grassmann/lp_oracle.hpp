#ifndef GRASSMANN_LP_ORACLE_HPP
#define GRASSMANN_LP_ORACLE_HPP

// Exact reference solver for the sparse SVM objective at desk scale.
//
// The l1-hinge problem is rewritten as the linear program
//     min  lambda * Σ(w⁺ + w⁻) + (1/p) Σ ξ
//     s.t. y_i (x_i·(w⁺ − w⁻) + b⁺ − b⁻) + ξ_i − s_i = 1,   all vars ≥ 0
// and solved by a dense tableau simplex with Bland's rule. The slack
// columns ξ form an identity, so ξ = 1 is a feasible starting basis and no
// phase one is needed.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "grassmann/error.hpp"
#include "grassmann/matrix.hpp"

namespace grassmann {

inline constexpr std::size_t kOracleMaxExamples = 60;
inline constexpr std::size_t kOracleMaxFeatures = 20;

struct LpSolution {
    double objective = 0.0;
    std::vector<double> weights;
    double bias = 0.0;
    int pivots = 0;
};

inline LpSolution lp_oracle_solve(const DenseMatrix& X, std::span<const int> y, double lambda) {
    const std::size_t p = X.rows();
    const std::size_t d = X.cols();
    if (p > kOracleMaxExamples || d > kOracleMaxFeatures) {
        throw ValidationError("lp_oracle: problem " + std::to_string(p) + "x" + std::to_string(d) +
                              " exceeds desk-scale cap " + std::to_string(kOracleMaxExamples) + "x" +
                              std::to_string(kOracleMaxFeatures));
    }
    if (y.size() != p) throw ValidationError("lp_oracle: label count does not match example count");
    if (!(lambda > 0.0)) throw ValidationError("lp_oracle: lambda must be positive");

    // Column layout: w⁺ [0,d), w⁻ [d,2d), b⁺ 2d, b⁻ 2d+1, ξ [2d+2, 2d+2+p), s after.
    const std::size_t xi0 = 2 * d + 2;
    const std::size_t s0 = xi0 + p;
    const std::size_t n = s0 + p;
    const double inv_p = 1.0 / static_cast<double>(p);

    std::vector<double> cost(n, 0.0);
    for (std::size_t j = 0; j < 2 * d; ++j) cost[j] = lambda;
    for (std::size_t i = 0; i < p; ++i) cost[xi0 + i] = inv_p;

    // Tableau rows: p constraint rows with rhs in the last column.
    std::vector<std::vector<double>> t(p, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
        const double yi = y[i];
        for (std::size_t j = 0; j < d; ++j) {
            t[i][j] = yi * X(i, j);
            t[i][d + j] = -yi * X(i, j);
        }
        t[i][2 * d] = yi;
        t[i][2 * d + 1] = -yi;
        t[i][xi0 + i] = 1.0;
        t[i][s0 + i] = -1.0;
        t[i][n] = 1.0;
    }
    std::vector<std::size_t> basis(p);
    for (std::size_t i = 0; i < p; ++i) basis[i] = xi0 + i;

    constexpr double eps = 1e-11;
    constexpr int max_pivots = 100000;
    LpSolution sol;
    for (;;) {
        // Reduced costs r_j = c_j − c_Bᵀ (column j of the current tableau).
        std::size_t entering = n;
        for (std::size_t j = 0; j < n; ++j) {
            double r = cost[j];
            for (std::size_t i = 0; i < p; ++i) r -= cost[basis[i]] * t[i][j];
            if (r < -eps) {
                entering = j;
                break;
            }
        }
        if (entering == n) break;

        std::size_t leaving = p;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < p; ++i) {
            if (t[i][entering] > eps) {
                const double ratio = t[i][n] / t[i][entering];
                if (ratio < best_ratio - 1e-14 ||
                    (std::abs(ratio - best_ratio) <= 1e-14 && leaving < p && basis[i] < basis[leaving])) {
                    best_ratio = ratio;
                    leaving = i;
                }
            }
        }
        if (leaving == p) throw NumericalError("lp_oracle: unbounded direction (objective is bounded below; tableau corrupt)");

        const double piv = t[leaving][entering];
        for (double& v : t[leaving]) v /= piv;
        for (std::size_t i = 0; i < p; ++i) {
            if (i == leaving) continue;
            const double f = t[i][entering];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[leaving][j];
        }
        basis[leaving] = entering;
        if (++sol.pivots > max_pivots) throw NumericalError("lp_oracle: pivot limit exceeded");
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < p; ++i) x[basis[i]] = t[i][n];
    sol.weights.resize(d);
    for (std::size_t j = 0; j < d; ++j) sol.weights[j] = x[j] - x[d + j];
    sol.bias = x[2 * d] - x[2 * d + 1];
    for (std::size_t j = 0; j < n; ++j) sol.objective += cost[j] * x[j];
    return sol;
}

/// Exact optimal value of the sparse SVM objective.
inline double lp_oracle(const DenseMatrix& X, std::span<const int> y, double lambda) {
    return lp_oracle_solve(X, y, lambda).objective;
}

}  // namespace grassmann

#endif  // GRASSMANN_LP_ORACLE_HPP
