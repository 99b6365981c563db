#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "grassmann/lp_oracle.hpp"
#include "grassmann/ssvm.hpp"
#include "test_support.hpp"

using namespace grassmann;
using grassmann::testing::random_binary_problem;

namespace {

const DenseMatrix kTwoPointX = DenseMatrix::from_rows({{-1}, {1}});
const std::vector<int> kTwoPointY = {-1, 1};

// With w = 0 the best bias is ±1 and every minority example pays a hinge of 2.
double zero_model_objective(const std::vector<int>& y) {
    const auto pos = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1)), neg = y.size() - pos;
    return 2.0 * static_cast<double>(std::min(pos, neg)) / static_cast<double>(y.size());
}

}  // namespace

TEST(TrainBinary, SeparableTwoPoints) {
    TrainConfig cfg;
    cfg.lambda = 0.01;
    auto m = train_binary(kTwoPointX, kTwoPointY, cfg);
    EXPECT_GT(m.weights[0], 0.0);
    EXPECT_EQ(predict(m, kTwoPointX), kTwoPointY);
    EXPECT_NEAR(m.objective, lp_oracle(kTwoPointX, kTwoPointY, 0.01), 1e-4);
}

TEST(TrainBinary, ConstantFeatureIsDropped) {
    const auto X = DenseMatrix::from_rows({{-1, 0.5}, {1, 0.5}});
    auto m = train_binary(X, kTwoPointY);
    EXPECT_LE(std::abs(m.weights[1]), m.tau * std::abs(m.weights[0]));
    EXPECT_EQ(m.selected_dims, (std::vector<std::size_t>{0}));
    const auto lp = lp_oracle_solve(X, kTwoPointY, 0.01);
    EXPECT_NEAR(lp.weights[1], 0.0, 1e-12);
    EXPECT_NEAR(m.objective, lp.objective, 1e-4);
}

TEST(TrainBinary, HugeLambdaGivesZeroWeights) {
    auto prob = random_binary_problem(3);
    TrainConfig cfg;
    cfg.lambda = 1e6;
    auto m = train_binary(prob.X, prob.y, cfg);
    for (double w : m.weights) EXPECT_EQ(w, 0.0);
    EXPECT_TRUE(m.selected_dims.empty());
    const auto pred = predict(m, prob.X);
    for (int v : pred) EXPECT_EQ(v, m.bias >= 0.0 ? 1 : -1);
}

TEST(TrainBinary, ObjectiveNeverWorseThanZeroModel) {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        auto prob = random_binary_problem(seed);
        TrainConfig cfg;
        cfg.lambda = prob.lambda;
        auto m = train_binary(prob.X, prob.y, cfg);
        EXPECT_LE(m.objective, zero_model_objective(prob.y) + 1e-12) << "seed " << seed;
        EXPECT_NEAR(m.objective, ssvm_objective(prob.X, prob.y, m.weights, m.bias, prob.lambda), 1e-12);
        EXPECT_EQ(m.weights.size(), prob.X.cols());
        EXPECT_EQ(m.selected_dims, selected_dimensions(m.weights, m.tau));
    }
}

TEST(TrainBinary, MatchesLpOracle) {
    for (std::uint64_t seed = 200; seed < 210; ++seed) {
        auto prob = random_binary_problem(seed);
        TrainConfig cfg;
        cfg.lambda = prob.lambda;
        auto m = train_binary(prob.X, prob.y, cfg);
        EXPECT_NEAR(m.objective, lp_oracle(prob.X, prob.y, prob.lambda), 1e-4) << "seed " << seed;
    }
}

TEST(TrainBinary, AdmmSolverIsCloseToOptimal) {
    for (std::uint64_t seed = 200; seed < 205; ++seed) {
        auto prob = random_binary_problem(seed);
        TrainConfig cfg;
        cfg.lambda = prob.lambda;
        cfg.solver = SsvmSolver::Admm;
        auto m = train_binary(prob.X, prob.y, cfg);
        EXPECT_NEAR(m.objective, lp_oracle(prob.X, prob.y, prob.lambda), 1e-2) << "seed " << seed;
    }
}

TEST(TrainBinary, SolverNamesRoundTrip) {
    for (auto s : {SsvmSolver::Simplex, SsvmSolver::Admm, SsvmSolver::ProxSubgradient}) EXPECT_EQ(parse_solver(to_string(s)), s);
    EXPECT_FALSE(parse_solver("newton"));
    EXPECT_EQ(TrainConfig{}.solver, SsvmSolver::Simplex);
}

TEST(TrainBinary, SubgradientSolverMakesProgress) {
    auto prob = random_binary_problem(7);
    TrainConfig cfg;
    cfg.lambda = prob.lambda;
    cfg.solver = SsvmSolver::ProxSubgradient;
    auto m = train_binary(prob.X, prob.y, cfg);
    EXPECT_NEAR(m.objective, lp_oracle(prob.X, prob.y, prob.lambda), 1e-2);
}

TEST(TrainBinary, SparsityGrowsWithLambda) {
    // Fixed data with 15 features, only 3 informative.
    double small = 0.0, large = 0.0;
    for (int run = 0; run < 20; ++run) {
        Rng rng(derive_seed(55, static_cast<std::uint64_t>(run)));
        DenseMatrix X(60, 15);
        std::vector<int> y(60);
        for (std::size_t i = 0; i < 60; ++i) {
            for (std::size_t j = 0; j < 15; ++j) X(i, j) = rng.normal();
            y[i] = X(i, 0) + 0.5 * X(i, 1) - 0.5 * X(i, 2) + 0.2 * rng.normal() >= 0 ? 1 : -1;
        }
        TrainConfig lo, hi;
        lo.lambda = 0.001;
        hi.lambda = 0.1;
        small += static_cast<double>(train_binary(X, y, lo).selected_dims.size());
        large += static_cast<double>(train_binary(X, y, hi).selected_dims.size());
    }
    EXPECT_LE(large, small);
}

TEST(TrainBinary, PermutingFeaturesPermutesWeights) {
    auto prob = random_binary_problem(11);
    const std::size_t d = prob.X.cols();
    std::vector<std::size_t> perm(d);
    for (std::size_t j = 0; j < d; ++j) perm[j] = d - 1 - j;
    DenseMatrix Xp(prob.X.rows(), d);
    for (std::size_t i = 0; i < prob.X.rows(); ++i)
        for (std::size_t j = 0; j < d; ++j) Xp(i, j) = prob.X(i, perm[j]);
    TrainConfig cfg;
    cfg.lambda = prob.lambda;
    auto a = train_binary(prob.X, prob.y, cfg);
    auto b = train_binary(Xp, prob.y, cfg);
    for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(b.weights[j], a.weights[perm[j]], 1e-6);
    EXPECT_NEAR(a.objective, b.objective, 1e-9);
}

TEST(TrainBinary, StandardizedModelPredictsRawFeatures) {
    auto prob = random_binary_problem(13);
    DenseMatrix X = prob.X;
    for (std::size_t i = 0; i < X.rows(); ++i) X(i, 0) = 100.0 * X(i, 0) + 5.0;
    TrainConfig cfg;
    cfg.standardize = true;
    auto m = train_binary(X, prob.y, cfg);
    EXPECT_EQ(m.feature_mean.size(), X.cols());
    std::size_t correct = 0;
    const auto pred = predict(m, X);
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == prob.y[i];
    EXPECT_GE(correct, pred.size() * 3 / 4);
}

TEST(TrainBinary, RejectsBadInput) {
    EXPECT_THROW(train_binary(kTwoPointX, std::vector<int>{0, 1}), ValidationError);
    EXPECT_THROW(train_binary(kTwoPointX, std::vector<int>{1}), ValidationError);
    TrainConfig cfg;
    cfg.lambda = -1.0;
    EXPECT_THROW(train_binary(kTwoPointX, kTwoPointY, cfg), ValidationError);
    cfg = {};
    cfg.tau = 1.5;
    EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Predict, Arithmetic) {
    SsvmModel m;
    m.weights = {1};
    EXPECT_EQ(predict(m, DenseMatrix::from_rows({{2}})), std::vector<int>{1});
    EXPECT_EQ(predict(m, DenseMatrix::from_rows({{0}})), std::vector<int>{1});
    m.weights = {1, -2};
    m.bias = 0.5;
    EXPECT_EQ(predict(m, DenseMatrix::from_rows({{1, 1}})), std::vector<int>{-1});
    EXPECT_THROW(predict(m, DenseMatrix::from_rows({{1}})), ValidationError);
}

TEST(SelectedDimensions, ZeroBasedIndices) {
    EXPECT_EQ(selected_dimensions(std::vector<double>{0, 5, 1e-9}, 1e-3), (std::vector<std::size_t>{1}));
    EXPECT_TRUE(selected_dimensions(std::vector<double>{0, 0, 0}, 1e-3).empty());
    EXPECT_EQ(selected_dimensions(std::vector<double>{1, 1}, 1e-3), (std::vector<std::size_t>{0, 1}));
}

TEST(Multiclass, TwoClassesReduceToBinary) {
    auto prob = random_binary_problem(17);
    std::vector<int> labels(prob.y.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = prob.y[i] > 0 ? 7 : 3;
    auto mc = train_multiclass(prob.X, labels);
    auto bin = train_binary(prob.X, prob.y);
    const auto pm = predict_multiclass(mc, prob.X);
    const auto pb = predict(bin, prob.X);
    ASSERT_EQ(mc.classes, (std::vector<int>{3, 7}));
    for (std::size_t i = 0; i < pm.size(); ++i) EXPECT_EQ(pm[i], pb[i] > 0 ? 7 : 3);
}

TEST(Multiclass, ThreeSeparatedBlobs) {
    Rng rng(19);
    const double centres[3][2] = {{0, 5}, {5, -3}, {-5, -3}};
    DenseMatrix X(90, 2);
    std::vector<int> y(90);
    for (std::size_t i = 0; i < 90; ++i) {
        const std::size_t c = i / 30;
        X(i, 0) = centres[c][0] + 0.5 * rng.normal();
        X(i, 1) = centres[c][1] + 0.5 * rng.normal();
        y[i] = static_cast<int>(c + 1);
    }
    auto mc = train_multiclass(X, y);
    EXPECT_EQ(predict_multiclass(mc, X), y);
    EXPECT_EQ(mc.models.size(), 3u);
}

TEST(Multiclass, DuplicatedClassLimitsAccuracy) {
    Rng rng(23);
    DenseMatrix X(60, 2);
    std::vector<int> y(60);
    for (std::size_t i = 0; i < 20; ++i) {
        X(i, 0) = rng.normal();
        X(i, 1) = rng.normal() + 4.0;
        // Class 2 repeats class 1's points exactly.
        X(i + 20, 0) = X(i, 0);
        X(i + 20, 1) = X(i, 1);
        X(i + 40, 0) = rng.normal() + 6.0;
        X(i + 40, 1) = rng.normal();
        y[i] = 1;
        y[i + 20] = 2;
        y[i + 40] = 3;
    }
    auto mc = train_multiclass(X, y);
    const auto pred = predict_multiclass(mc, X);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < 60; ++i) correct += pred[i] == y[i];
    EXPECT_LE(static_cast<double>(correct) / 60.0, 1.0 - 20.0 / 60.0 + 1e-12);
}

TEST(Multiclass, NeedsTwoClasses) {
    EXPECT_THROW(train_multiclass(kTwoPointX, std::vector<int>{1, 1}), ValidationError);
}

TEST(LpOracle, BalancedDataWithHugeLambda) {
    auto lp = lp_oracle_solve(kTwoPointX, kTwoPointY, 1e6);
    EXPECT_NEAR(lp.objective, 1.0, 1e-12);
    EXPECT_EQ(lp.weights[0], 0.0);
}

TEST(LpOracle, AlwaysFiniteAndCapped) {
    for (std::uint64_t seed = 300; seed < 305; ++seed) {
        auto prob = random_binary_problem(seed);
        EXPECT_TRUE(std::isfinite(lp_oracle(prob.X, prob.y, prob.lambda)));
    }
    EXPECT_THROW(lp_oracle(DenseMatrix(61, 2), std::vector<int>(61, 1), 0.1), ValidationError);
}

TEST(LpOracle, SolutionAttainsReportedObjective) {
    auto prob = random_binary_problem(31);
    auto lp = lp_oracle_solve(prob.X, prob.y, prob.lambda);
    EXPECT_NEAR(ssvm_objective(prob.X, prob.y, lp.weights, lp.bias, prob.lambda), lp.objective, 1e-9);
}
