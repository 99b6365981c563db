#ifndef GRASSMANN_ERROR_HPP
#define GRASSMANN_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grassmann {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimensions, non-finite values, parse failures,
/// invalid configuration. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed (non-convergence, degenerate spectrum,
/// rank deficiency). The CLI maps these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class RankDeficientError : public NumericalError {
public:
    RankDeficientError(std::size_t rank, std::size_t expected)
        : NumericalError("rank-deficient matrix: numerical rank " + std::to_string(rank) +
                         ", expected " + std::to_string(expected)),
          rank_(rank) {}

    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateEmbeddingError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace grassmann

#endif  // GRASSMANN_ERROR_HPP
