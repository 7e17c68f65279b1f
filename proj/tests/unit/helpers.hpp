#pragma once

#include "fdrift/dgp.hpp"
#include "fdrift/smoother.hpp"

#include <cstddef>
#include <functional>

namespace fdrift::test {

// Noiseless series X_j(s_i) = mu(j/n, s_i) on a uniform grid.
inline FunctionalSeries noiseless(std::size_t n, std::size_t points, const std::function<double(double, double)>& mu) {
    const auto grid = uniform_grid(points);
    Matrix x(n, points);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j + 1) / static_cast<double>(n);
        for (std::size_t i = 0; i < points; ++i) x(j, i) = mu(t, grid[i]);
    }
    return FunctionalSeries(std::move(x), grid);
}

}  // namespace fdrift::test
