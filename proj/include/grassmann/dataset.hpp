#ifndef GRASSMANN_DATASET_HPP
#define GRASSMANN_DATASET_HPP

// Labeled spectral data: n bands x m pixels, one class label per pixel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "grassmann/error.hpp"
#include "grassmann/kernels.hpp"
#include "grassmann/matrix.hpp"
#include "grassmann/rng.hpp"

namespace grassmann {

struct SpectralDataset {
    DenseMatrix data;  // column j is the spectrum of pixel j
    std::vector<int> labels;
    std::map<int, std::string> class_names;
    bool centered = false;
    std::vector<double> mean;  // band means removed by mean_center

    std::size_t bands() const noexcept { return data.rows(); }
    std::size_t pixels() const noexcept { return data.cols(); }

    std::vector<int> classes() const {
        std::vector<int> c = labels;
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }

    void validate() const {
        if (data.empty()) throw ValidationError("dataset has no data");
        if (labels.size() != pixels()) {
            throw ValidationError("dataset has " + std::to_string(labels.size()) + " labels for " +
                                  std::to_string(pixels()) + " pixels");
        }
    }
};

/// Pixels restricted to the listed classes (all classes when empty).
inline SpectralDataset select_classes(const SpectralDataset& ds, std::span<const int> keep) {
    if (keep.empty()) return ds;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < ds.pixels(); ++j)
        if (std::find(keep.begin(), keep.end(), ds.labels[j]) != keep.end()) cols.push_back(j);
    for (int c : keep) {
        if (std::find(ds.labels.begin(), ds.labels.end(), c) == ds.labels.end()) {
            throw ValidationError("class " + std::to_string(c) + " has no pixels in the dataset");
        }
    }
    SpectralDataset out;
    out.data = DenseMatrix(ds.bands(), cols.size());
    for (std::size_t i = 0; i < ds.bands(); ++i)
        for (std::size_t jj = 0; jj < cols.size(); ++jj) out.data(i, jj) = ds.data(i, cols[jj]);
    for (std::size_t j : cols) out.labels.push_back(ds.labels[j]);
    for (int c : keep)
        if (auto it = ds.class_names.find(c); it != ds.class_names.end()) out.class_names.insert(*it);
    out.centered = ds.centered;
    out.mean = ds.mean;
    return out;
}

enum class CenteringPopulation { AllLabeled, TrainOnly };

/// Per-band mean over the population's pixels.
inline std::vector<double> band_means(const SpectralDataset& ds, std::span<const std::size_t> pixels) {
    if (pixels.empty()) throw ValidationError("mean_center: empty centering population");
    std::vector<double> mean(ds.bands(), 0.0);
    for (std::size_t i = 0; i < ds.bands(); ++i) {
        double s = 0.0;
        for (std::size_t j : pixels) s += ds.data(i, j);
        mean[i] = s / static_cast<double>(pixels.size());
    }
    return mean;
}

/// Subtracts the per-band mean of the chosen population from every pixel.
/// TrainOnly uses `train` as the population.
inline SpectralDataset mean_center(const SpectralDataset& ds, CenteringPopulation population,
                                   std::span<const std::size_t> train = {}) {
    if (ds.centered) throw ValidationError("mean_center: dataset is already centered");
    std::vector<std::size_t> all;
    if (population == CenteringPopulation::AllLabeled) {
        all.resize(ds.pixels());
        for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
        train = all;
    }
    for (std::size_t j : train)
        if (j >= ds.pixels()) throw ValidationError("mean_center: pixel index " + std::to_string(j) + " out of range");
    SpectralDataset out = ds;
    out.mean = band_means(ds, train);
    for (std::size_t i = 0; i < out.bands(); ++i) {
        auto row = out.data.row(i);
        for (double& v : row) v -= out.mean[i];
    }
    out.centered = true;
    return out;
}

/// Per-class pixel indices of a stratified train/test partition.
struct PixelSplit {
    std::map<int, std::vector<std::size_t>> train;
    std::map<int, std::vector<std::size_t>> test;
    std::vector<std::string> warnings;

    std::vector<std::size_t> all_train() const {
        std::vector<std::size_t> out;
        for (const auto& [c, idx] : train) out.insert(out.end(), idx.begin(), idx.end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Each class is shuffled independently and split with floor(fraction * size)
/// pixels going to train. Classes need at least 2k pixels.
inline PixelSplit split_pixels(const SpectralDataset& ds, double train_fraction, std::uint64_t seed,
                               std::size_t k = 1) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ValidationError("train_fraction must lie in (0, 1)");
    }
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t j = 0; j < ds.pixels(); ++j) by_class[ds.labels[j]].push_back(j);

    PixelSplit split;
    for (auto& [c, idx] : by_class) {
        const auto name = "class " + std::to_string(c);
        if (idx.size() < 2 * k) {
            throw ValidationError(name + " has " + std::to_string(idx.size()) + " pixels, need at least " +
                                  std::to_string(2 * k) + " for k=" + std::to_string(k));
        }
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(c))));
        rng.shuffle(idx);
        const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(idx.size())));
        if (n_train == 0 || n_train == idx.size()) {
            throw ValidationError(name + " is too small to split at fraction " + std::to_string(train_fraction));
        }
        std::vector<std::size_t> tr(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
        std::vector<std::size_t> te(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
        std::sort(tr.begin(), tr.end());
        std::sort(te.begin(), te.end());
        if (tr.size() < 5 * k || te.size() < 5 * k) {
            split.warnings.push_back(name + " has fewer than 5k pixels in a split (train " + std::to_string(tr.size()) +
                                     ", test " + std::to_string(te.size()) + ", k=" + std::to_string(k) + ")");
        }
        split.train[c] = std::move(tr);
        split.test[c] = std::move(te);
    }
    return split;
}

struct SyntheticSpec {
    std::size_t classes = 2;
    std::size_t class_dim = 5;
    std::size_t bands = 20;
    std::size_t pixels_per_class = 200;
    double sigma = 0.01;
    std::uint64_t seed = 0;
    // Optional subspace shared by every class, mixed in with this scale.
    std::size_t shared_dim = 0;
    double shared_scale = 1.0;
    // Coefficients are drawn uniformly from [offset, offset + 1).
    double coefficient_offset = -0.5;
    // Scale each pixel's coefficients by a brightness drawn from [0, 1), so
    // dark pixels are dominated by noise.
    bool vary_brightness = true;
};

/// Pixels of class c (labels 1..classes) are
///     brightness * (basis_c * coeffs + shared_scale * shared * shared_coeffs) + sigma * noise
/// with standard normal noise. All class bases and the shared basis are
/// mutually orthogonal and drawn from one random frame.
inline SpectralDataset make_synthetic(const SyntheticSpec& spec) {
    const std::size_t total_dim = spec.shared_dim + spec.classes * spec.class_dim;
    if (spec.classes == 0 || spec.class_dim == 0 || spec.pixels_per_class == 0 || spec.bands == 0) {
        throw ValidationError("make_synthetic: counts must be positive");
    }
    if (total_dim > spec.bands) {
        throw ValidationError("make_synthetic: " + std::to_string(total_dim) + " basis directions do not fit in " +
                              std::to_string(spec.bands) + " bands");
    }
    if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) throw ValidationError("make_synthetic: sigma must be >= 0");

    Rng rng(spec.seed);
    const DenseMatrix frame = random_orthonormal(spec.bands, total_dim, rng);
    SpectralDataset ds;
    ds.data = DenseMatrix(spec.bands, spec.classes * spec.pixels_per_class);
    std::vector<double> coeff(total_dim);
    std::size_t col = 0;
    for (std::size_t c = 0; c < spec.classes; ++c) {
        const std::size_t first = spec.shared_dim + c * spec.class_dim;
        for (std::size_t px = 0; px < spec.pixels_per_class; ++px, ++col) {
            std::fill(coeff.begin(), coeff.end(), 0.0);
            const double brightness = spec.vary_brightness ? rng.uniform() : 1.0;
            for (std::size_t s = 0; s < spec.shared_dim; ++s) coeff[s] = brightness * spec.shared_scale * (spec.coefficient_offset + rng.uniform());
            for (std::size_t s = 0; s < spec.class_dim; ++s) coeff[first + s] = brightness * (spec.coefficient_offset + rng.uniform());
            for (std::size_t i = 0; i < spec.bands; ++i) {
                double v = 0.0;
                for (std::size_t s = 0; s < total_dim; ++s) v += frame(i, s) * coeff[s];
                ds.data(i, col) = v + spec.sigma * rng.normal();
            }
            ds.labels.push_back(static_cast<int>(c + 1));
        }
        ds.class_names[static_cast<int>(c + 1)] = "class" + std::to_string(c + 1);
    }
    return ds;
}

}  // namespace grassmann

#endif  // GRASSMANN_DATASET_HPP
