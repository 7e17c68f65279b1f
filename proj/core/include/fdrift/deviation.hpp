#pragma once

#include "fdrift/benchmark.hpp"
#include "fdrift/matrix.hpp"
#include "fdrift/smoother.hpp"

#include <cstddef>
#include <vector>

namespace fdrift {

/// Position on the observation grid: row of t_grid, column of s_grid.
struct GridPoint {
    std::size_t t_pos = 0;
    std::size_t s_pos = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// d^(t, s) = mu~(t, s) - g^(s) on the trimmed observation grid.
struct DeviationSurface {
    Matrix values;
    std::vector<std::size_t> t_index;  ///< 1-based design index of each row
    std::vector<double> t_grid;
    std::vector<double> s_grid;
    std::size_t n = 0;
    double sup = 0.0;                  ///< max |d^| over the grid
    std::vector<GridPoint> argmax;     ///< every point attaining sup, row-major order
};

/// Builds a deviation surface from raw values and computes sup/argmax.
/// Used directly for oracle surfaces (exact means).
[[nodiscard]] DeviationSurface make_deviation_surface(Matrix values, std::vector<std::size_t> t_index,
                                                      std::vector<double> s_grid, std::size_t n);

/// Throws Error(ShapeMismatch) unless the benchmark matches the s-grid.
[[nodiscard]] DeviationSurface deviation_surface(const MeanSurface& surface,
                                                 const BenchmarkEstimate& bench);

struct ExtremalPoint {
    GridPoint at;
    double t = 0.0;
    bool plus = false;   ///< +d^ >= sup - rho
    bool minus = false;  ///< -d^ >= sup - rho
};

/// Grid points where |d^| comes within rho of its supremum, tagged by sign.
struct ExtremalSet {
    std::vector<ExtremalPoint> points;  ///< row-major order, each point once
    double rho = 0.0;

    [[nodiscard]] std::size_t plus_count() const noexcept;
    [[nodiscard]] std::size_t minus_count() const noexcept;
};

/// All points with +d^ >= sup - rho (tagged +) or -d^ >= sup - rho (tagged -).
/// Throws Error(InvalidArgument) for negative rho.
[[nodiscard]] ExtremalSet extremal_set(const DeviationSurface& dev, double rho);

/// 0.1 log(n) / sqrt(n h).
[[nodiscard]] double default_rho(std::size_t n, double h);

}  // namespace fdrift
