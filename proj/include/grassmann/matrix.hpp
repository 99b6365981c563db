#ifndef GRASSMANN_MATRIX_HPP
#define GRASSMANN_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grassmann/error.hpp"

namespace grassmann {

/// Dense row-major matrix of doubles.
///
/// The validating constructors reject non-finite entries and zero
/// dimensions. A default-constructed matrix is 0x0 and only exists so the
/// type can live in containers.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
        check_shape();
    }

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        check_shape();
        if (data_.size() != rows_ * cols_) {
            throw ValidationError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                                  std::to_string(rows_ * cols_));
        }
        check_finite();
    }

    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        std::vector<double> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw ValidationError("ragged row list");
            data.insert(data.end(), row.begin(), row.end());
        }
        return DenseMatrix(r, c, std::move(data));
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const DenseMatrix&) const = default;

private:
    void check_shape() const {
        if (rows_ == 0 || cols_ == 0) {
            throw ValidationError("matrix dimensions must be positive, got " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
        }
    }

    void check_finite() const {
        for (std::size_t idx = 0; idx < data_.size(); ++idx) {
            if (!std::isfinite(data_[idx])) {
                throw ValidationError("non-finite matrix entry at (" + std::to_string(idx / cols_) + ", " +
                                      std::to_string(idx % cols_) + ")");
            }
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("multiply: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                              std::to_string(b.rows()) + ")");
    }
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto crow = c.row(i);
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const double ail = a(i, l);
            if (ail == 0.0) continue;
            auto brow = b.row(l);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += ail * brow[j];
        }
    }
    return c;
}

/// aᵀ·b without materializing the transpose.
inline DenseMatrix multiply_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw ValidationError("multiply_at_b: row counts differ (" + std::to_string(a.rows()) + " vs " +
                              std::to_string(b.rows()) + ")");
    }
    DenseMatrix c(a.cols(), b.cols());
    for (std::size_t l = 0; l < a.rows(); ++l) {
        auto arow = a.row(l);
        auto brow = b.row(l);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double ali = arow[i];
            if (ali == 0.0) continue;
            auto crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += ali * brow[j];
        }
    }
    return c;
}

inline double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

inline double max_abs(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.data()) s = std::max(s, std::abs(v));
    return s;
}

/// Largest |(MᵀM)_ij − δ_ij|.
inline double orthonormality_error(const DenseMatrix& m) {
    const DenseMatrix g = multiply_at_b(m, m);
    double err = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) err = std::max(err, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return err;
}

inline DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("subtract: shape mismatch");
    DenseMatrix c = a;
    auto cd = c.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
    return c;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace grassmann

#endif  // GRASSMANN_MATRIX_HPP
