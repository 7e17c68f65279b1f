#pragma once

#include "fdrift/kernels.hpp"
#include "fdrift/smoother.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace fdrift {

struct CVReport {
    std::vector<double> candidates;  ///< ascending
    std::vector<double> mse;         ///< +inf for candidates whose fit degenerates
    double chosen = 0.0;
    std::size_t k = 10;
    std::uint64_t seed = 0;          ///< recorded for provenance; folds are contiguous
};

/// k contiguous index blocks of size floor(n/k) over 0-based rows, the last
/// block taking the remainder. Each pair is [begin, end).
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> contiguous_folds(std::size_t n, std::size_t k);

/// Trapezoidal approximation of int v(s)^2 ds on the grid.
[[nodiscard]] double trapezoid_sq_norm(std::span<const double> values, std::span<const double> grid);

/// `count` log-spaced bandwidths in [n^(-1/5)/3, n^(-1/5)], capped below 1/2.
[[nodiscard]] std::vector<double> default_bandwidth_grid(std::size_t n, std::size_t count = 10);

/// k-fold cross-validation of the bias-corrected estimator. For each
/// candidate h and fold S_i the estimator is refitted without the rows of
/// S_i and scored on the rows j in S_i with j/n in [h, 1-h]:
///   MSE_h = (1/(1-h/2)) * mean over scored rows of ||X_j - mu~_h^(i)(j/n)||_2^2.
/// A candidate whose fit degenerates anywhere scores +inf. The minimiser is
/// chosen, ties going to the larger bandwidth.
/// Throws Error(TooFewCurves) if n < 2k and Error(InvalidArgument) for k < 2,
/// an empty candidate list, or candidates outside (0, 1/2).
[[nodiscard]] CVReport cv_bandwidth(const FunctionalSeries& series, std::vector<double> candidates,
                                    std::size_t k = 10, std::uint64_t seed = 0,
                                    const Kernel& kernel = {}, std::size_t threads = 1);

}  // namespace fdrift
