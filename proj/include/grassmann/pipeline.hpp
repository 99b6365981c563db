#ifndef GRASSMANN_PIPELINE_HPP
#define GRASSMANN_PIPELINE_HPP

// End-to-end experiment: split pixels, sample same-class tall-skinny
// matrices, build Grassmann points, embed all of them jointly with classical
// MDS, then train a sparse SVM on the train rows and score the test rows.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grassmann/dataset.hpp"
#include "grassmann/error.hpp"
#include "grassmann/mds.hpp"
#include "grassmann/rng.hpp"
#include "grassmann/ssvm.hpp"
#include "grassmann/subspace.hpp"

namespace grassmann {

inline constexpr int kMaxRedraws = 50;

struct ExperimentConfig {
    std::size_t k = 5;
    std::size_t points_per_class = 100;
    MetricKind metric = MetricKind::Chordal;
    double train_fraction = 0.5;
    std::uint64_t seed = 0;
    TrainConfig ssvm;
    Construction construction = Construction::SVD;
    int runs = 10;
    CenteringPopulation centering = CenteringPopulation::AllLabeled;
    std::vector<int> classes;  // empty: every class in the dataset
    double eig_rel_tol = 1e-9;
    unsigned threads = 0;  // distance-matrix workers; results do not depend on it

    void validate() const {
        if (k == 0) throw ValidationError("k must be at least 1");
        if (points_per_class < 2) throw ValidationError("points_per_class must be at least 2");
        if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ValidationError("train_fraction must lie in (0, 1)");
        if (runs < 1) throw ValidationError("runs must be at least 1");
        if (!(eig_rel_tol > 0.0)) throw ValidationError("eig_rel_tol must be positive");
        ssvm.validate();
    }

    bool operator==(const ExperimentConfig& o) const {
        return k == o.k && points_per_class == o.points_per_class && metric == o.metric &&
               train_fraction == o.train_fraction && seed == o.seed && ssvm == o.ssvm &&
               construction == o.construction && runs == o.runs && centering == o.centering &&
               classes == o.classes && eig_rel_tol == o.eig_rel_tol;
    }
};

struct RunResult {
    int run = 0;
    std::uint64_t seed = 0;
    double accuracy = 0.0;           // percent, test subspaces
    double accuracy_selected = 0.0;  // percent, retrained on selected dims only
    std::size_t negative_count = 0;
    std::size_t selected_count = 0;
    std::size_t retained_dim = 0;
    double seconds = 0.0;
    std::vector<std::vector<std::size_t>> confusion;  // [true class][predicted class]

    bool operator==(const RunResult&) const = default;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<int> classes;
    std::vector<RunResult> runs;
    std::vector<std::string> warnings;
    double mean_accuracy = 0.0;
    double mean_accuracy_selected = 0.0;
    double mean_negative_count = 0.0;
    double mean_selected_count = 0.0;
    double mean_retained_dim = 0.0;
    double mean_seconds = 0.0;

    bool operator==(const ExperimentReport&) const = default;

    /// Recomputes the averaged columns from the per-run values.
    void summarize() {
        const double n = static_cast<double>(runs.size());
        mean_accuracy = mean_accuracy_selected = mean_negative_count = 0.0;
        mean_selected_count = mean_retained_dim = mean_seconds = 0.0;
        if (runs.empty()) return;
        for (const auto& r : runs) {
            mean_accuracy += r.accuracy;
            mean_accuracy_selected += r.accuracy_selected;
            mean_negative_count += static_cast<double>(r.negative_count);
            mean_selected_count += static_cast<double>(r.selected_count);
            mean_retained_dim += static_cast<double>(r.retained_dim);
            mean_seconds += r.seconds;
        }
        mean_accuracy /= n;
        mean_accuracy_selected /= n;
        mean_negative_count /= n;
        mean_selected_count /= n;
        mean_retained_dim /= n;
        mean_seconds /= n;
    }
};

/// Builds count_per_class points per class from k pixels drawn uniformly with
/// replacement out of that class's index set. Rank-deficient draws are redrawn
/// up to kMaxRedraws times. When `drawn` is non-null the pixel indices behind
/// every returned point are appended to it.
inline std::vector<SubspacePoint> sample_subspaces(const SpectralDataset& ds,
                                                   const std::map<int, std::vector<std::size_t>>& indices,
                                                   std::size_t k, std::size_t count_per_class, Split split_tag,
                                                   std::uint64_t seed, Construction method = Construction::SVD,
                                                   std::vector<std::vector<std::size_t>>* drawn = nullptr) {
    if (k == 0 || k > ds.bands()) {
        throw ValidationError("sample_subspaces: k=" + std::to_string(k) + " must lie in [1, " +
                              std::to_string(ds.bands()) + "]");
    }
    std::vector<SubspacePoint> points;
    points.reserve(indices.size() * count_per_class);
    for (const auto& [label, pool] : indices) {
        if (pool.empty()) throw ValidationError("sample_subspaces: class " + std::to_string(label) + " has no pixels");
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(label))));
        for (std::size_t c = 0; c < count_per_class; ++c) {
            for (int attempt = 0;; ++attempt) {
                std::vector<std::size_t> pick(k);
                for (auto& p : pick) p = pool[static_cast<std::size_t>(rng.below(pool.size()))];
                DenseMatrix Y(ds.bands(), k);
                for (std::size_t i = 0; i < ds.bands(); ++i)
                    for (std::size_t j = 0; j < k; ++j) Y(i, j) = ds.data(i, pick[j]);
                try {
                    points.push_back(make_point(Y, label, split_tag, method));
                    if (drawn) drawn->push_back(std::move(pick));
                    break;
                } catch (const RankDeficientError& e) {
                    if (attempt + 1 >= kMaxRedraws) {
                        throw NumericalError("sample_subspaces: class " + std::to_string(label) + " gave rank-deficient " +
                                             std::to_string(ds.bands()) + "x" + std::to_string(k) + " samples " +
                                             std::to_string(kMaxRedraws) + " times in a row (last rank " +
                                             std::to_string(e.rank()) + ")");
                    }
                }
            }
        }
    }
    return points;
}

/// Intermediate products of one run, exposed for the `embed` command and
/// for audits.
struct EmbeddedRun {
    PixelSplit split;
    DistanceMatrix distances;
    EmbeddingResult embedding;
    std::vector<std::vector<std::size_t>> drawn;  // pixel indices per point
};

namespace detail {

inline std::string stage_error(int run, const char* stage, const std::string& what) {
    return "run " + std::to_string(run) + ", stage " + stage + ": " + what;
}

// Rethrows with run/stage context, preserving the error category.
template <typename F>
auto with_stage(int run, const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(stage_error(run, stage, e.what()));
    } catch (const NumericalError& e) {
        throw NumericalError(stage_error(run, stage, e.what()));
    }
}

}  // namespace detail

/// Steps 1-3 of a run on a class-restricted dataset: split, center, sample
/// train then test subspaces, distance matrix, joint MDS.
inline EmbeddedRun embed_run(const SpectralDataset& ds, const ExperimentConfig& cfg, std::uint64_t run_seed,
                             int run_index = 1) {
    EmbeddedRun out;
    out.split = detail::with_stage(run_index, "split", [&] {
        return split_pixels(ds, cfg.train_fraction, derive_seed(run_seed, 0), cfg.k);
    });
    const SpectralDataset centered = detail::with_stage(run_index, "center", [&] {
        if (ds.centered) return ds;
        const auto train = out.split.all_train();
        return mean_center(ds, cfg.centering, train);
    });
    const std::size_t n_train = cfg.points_per_class / 2;
    const std::size_t n_test = cfg.points_per_class - n_train;
    auto points = detail::with_stage(run_index, "sample", [&] {
        auto pts = sample_subspaces(centered, out.split.train, cfg.k, n_train, Split::Train, derive_seed(run_seed, 1),
                                    cfg.construction, &out.drawn);
        auto test = sample_subspaces(centered, out.split.test, cfg.k, n_test, Split::Test, derive_seed(run_seed, 2),
                                     cfg.construction, &out.drawn);
        pts.insert(pts.end(), std::make_move_iterator(test.begin()), std::make_move_iterator(test.end()));
        return pts;
    });
    out.distances =
        detail::with_stage(run_index, "distances", [&] { return distance_matrix(points, cfg.metric, cfg.threads); });
    out.embedding = detail::with_stage(run_index, "mds", [&] { return classical_mds(out.distances, cfg.eig_rel_tol); });
    return out;
}

namespace detail {

inline DenseMatrix select_rows(const DenseMatrix& X, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols) {
    DenseMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = X(rows[i], cols[j]);
    return out;
}

inline double percent_correct(const std::vector<int>& truth, const std::vector<int>& pred) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) ok += truth[i] == pred[i];
    return truth.empty() ? 0.0 : 100.0 * static_cast<double>(ok) / static_cast<double>(truth.size());
}

}  // namespace detail

/// One complete run (index 1-based, seed = cfg.seed + run).
inline RunResult run_once(const SpectralDataset& ds, const ExperimentConfig& cfg, int run,
                          std::vector<std::string>* warnings = nullptr) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult r;
    r.run = run;
    r.seed = cfg.seed + static_cast<std::uint64_t>(run);

    EmbeddedRun er = embed_run(ds, cfg, r.seed, run);
    if (warnings) {
        for (const auto& w : er.split.warnings) warnings->push_back("run " + std::to_string(run) + ": " + w);
    }
    const auto& E = er.embedding;
    r.negative_count = E.negative_count;
    r.retained_dim = E.retained_dim;

    std::vector<std::size_t> train_rows, test_rows, all_cols(E.retained_dim);
    for (std::size_t j = 0; j < all_cols.size(); ++j) all_cols[j] = j;
    std::vector<int> y_train, y_test;
    for (std::size_t i = 0; i < E.size(); ++i) {
        if (E.splits[i] == Split::Train) {
            train_rows.push_back(i);
            y_train.push_back(E.labels[i]);
        } else {
            test_rows.push_back(i);
            y_test.push_back(E.labels[i]);
        }
    }

    detail::with_stage(run, "ssvm", [&] {
        const DenseMatrix X_train = detail::select_rows(E.coordinates, train_rows, all_cols);
        const DenseMatrix X_test = detail::select_rows(E.coordinates, test_rows, all_cols);
        const MulticlassModel model = train_multiclass(X_train, y_train, cfg.ssvm);
        const auto pred = predict_multiclass(model, X_test);
        r.accuracy = detail::percent_correct(y_test, pred);

        const auto& cls = model.classes;
        r.confusion.assign(cls.size(), std::vector<std::size_t>(cls.size(), 0));
        auto class_index = [&](int label) {
            return static_cast<std::size_t>(std::lower_bound(cls.begin(), cls.end(), label) - cls.begin());
        };
        for (std::size_t i = 0; i < y_test.size(); ++i) ++r.confusion[class_index(y_test[i])][class_index(pred[i])];

        const auto selected = model.selected_dims();
        r.selected_count = selected.size();
        if (selected.empty()) {
            r.accuracy_selected = r.accuracy;
        } else {
            const MulticlassModel reduced =
                train_multiclass(detail::select_rows(E.coordinates, train_rows, selected), y_train, cfg.ssvm);
            r.accuracy_selected = detail::percent_correct(
                y_test, predict_multiclass(reduced, detail::select_rows(E.coordinates, test_rows, selected)));
        }
        return 0;
    });
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Validates inputs, applies scene-wide centering (before restricting to the
/// selected classes) and selects the configured classes.
inline SpectralDataset prepare_dataset(const SpectralDataset& ds_in, const ExperimentConfig& cfg) {
    cfg.validate();
    ds_in.validate();
    if (cfg.k > ds_in.bands()) {
        throw ValidationError("k=" + std::to_string(cfg.k) + " exceeds the band count " + std::to_string(ds_in.bands()));
    }
    SpectralDataset ds = ds_in;
    if (cfg.centering == CenteringPopulation::AllLabeled && !ds.centered) {
        ds = mean_center(ds, CenteringPopulation::AllLabeled);
    }
    ds = select_classes(ds, cfg.classes);
    if (ds.classes().size() < 2) throw ValidationError("experiment needs at least 2 classes");
    return ds;
}

/// Runs cfg.runs independent repetitions and averages them.
inline ExperimentReport run_experiment(const SpectralDataset& ds_in, const ExperimentConfig& cfg) {
    const SpectralDataset ds = prepare_dataset(ds_in, cfg);
    ExperimentReport report;
    report.config = cfg;
    report.classes = ds.classes();
    for (int run = 1; run <= cfg.runs; ++run) report.runs.push_back(run_once(ds, cfg, run, &report.warnings));
    report.summarize();
    return report;
}

}  // namespace grassmann

#endif  // GRASSMANN_PIPELINE_HPP
