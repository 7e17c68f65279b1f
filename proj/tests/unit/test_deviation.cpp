#include "fdrift/deviation.hpp"
#include "fdrift/dgp.hpp"
#include "fdrift/error.hpp"
#include "fdrift/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace fdrift {
namespace {

DeviationSurface from_function(std::size_t n, std::size_t lo, std::size_t hi, std::size_t points,
                               const std::function<double(double, double)>& d) {
    const auto grid = uniform_grid(points);
    Matrix values(hi - lo + 1, points);
    std::vector<std::size_t> idx;
    for (std::size_t j = lo; j <= hi; ++j) {
        idx.push_back(j);
        for (std::size_t i = 0; i < points; ++i) {
            values(j - lo, i) = d(static_cast<double>(j) / static_cast<double>(n), grid[i]);
        }
    }
    return make_deviation_surface(std::move(values), std::move(idx), grid, n);
}

DeviationSurface random_surface(std::uint64_t seed, std::size_t rows, std::size_t cols) {
    const CounterRng rng(seed);
    Matrix values(rows, cols);
    std::vector<std::size_t> idx(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        idx[r] = r + 1;
        for (std::size_t c = 0; c < cols; ++c) values(r, c) = rng.normal(r, c);
    }
    return make_deviation_surface(std::move(values), idx, uniform_grid(cols), rows);
}

TEST(Deviation, ZeroSurface) {
    const auto dev = from_function(50, 5, 45, 4, [](double, double) { return 0.0; });
    EXPECT_EQ(dev.sup, 0.0);
    // Every point ties at zero.
    EXPECT_EQ(dev.argmax.size(), 41u * 4u);
}

TEST(Deviation, SupMatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto dev = random_surface(seed, 30, 7);
        double brute = 0.0;
        for (std::size_t r = 0; r < 30; ++r)
            for (std::size_t c = 0; c < 7; ++c) brute = std::max(brute, std::abs(dev.values(r, c)));
        EXPECT_EQ(dev.sup, brute);
        ASSERT_FALSE(dev.argmax.empty());
        const auto p = dev.argmax.front();
        EXPECT_EQ(std::abs(dev.values(p.t_pos, p.s_pos)), brute);
    }
}

TEST(Deviation, ShapeMismatch) {
    MeanSurface surface;
    surface.values = Matrix(2, 3);
    surface.t_index = {1, 2};
    surface.t_grid = {0.5, 1.0};
    surface.s_grid = {0.0, 0.5, 1.0};
    surface.n = 2;
    BenchmarkEstimate bench;
    bench.values = {0.0, 0.0};
    try {
        (void)deviation_surface(surface, bench);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
    }
}

TEST(Deviation, ExtremalSetAtZeroIsArgmax) {
    const auto dev = random_surface(3, 25, 6);
    const auto ext = extremal_set(dev, 0.0);
    ASSERT_EQ(ext.points.size(), dev.argmax.size());
    for (std::size_t k = 0; k < ext.points.size(); ++k) EXPECT_EQ(ext.points[k].at, dev.argmax[k]);
}

TEST(Deviation, ExtremalSetMonotoneInRho) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto dev = random_surface(100 + seed, 20, 5);
        std::set<std::pair<std::size_t, std::size_t>> previous;
        for (double rho : {0.0, 0.1, 0.3, 0.7, 1.5, 10.0}) {
            const auto ext = extremal_set(dev, rho);
            ASSERT_FALSE(ext.points.empty());
            std::set<std::pair<std::size_t, std::size_t>> current;
            for (const auto& p : ext.points) current.insert({p.at.t_pos, p.at.s_pos});
            EXPECT_TRUE(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
            previous = std::move(current);
        }
    }
}

TEST(Deviation, LargeRhoPlusSideCoversNonNegativeRange) {
    const auto dev = random_surface(77, 20, 5);
    const auto ext = extremal_set(dev, 2.0 * dev.sup);
    std::size_t plus_expected = 0;
    for (double v : dev.values.data()) plus_expected += v >= -dev.sup ? 1 : 0;
    EXPECT_EQ(ext.plus_count(), plus_expected);
    EXPECT_EQ(ext.points.size(), dev.values.rows() * dev.values.cols());
}

TEST(Deviation, SymmetricSurfaceBalancedSigns) {
    const auto dev = from_function(100, 10, 90, 5, [](double t, double s) {
        // Integer offsets keep the values exactly antisymmetric about t = 1/2.
        return (std::round(t * 100.0) - 50.0) / 100.0 * (1.0 + s);
    });
    for (double rho : {0.0, 0.05, 0.2}) {
        const auto ext = extremal_set(dev, rho);
        EXPECT_EQ(ext.plus_count(), ext.minus_count()) << rho;
    }
}

TEST(Deviation, Mu1OracleExtremalSetHasNoMinusPoints) {
    const std::size_t n = 2000;
    const auto dev = from_function(n, 200, 1800, 201, [](double t, double s) { return mu1(t, s) - mu1(0.0, s); });
    const auto ext = extremal_set(dev, 0.01);
    EXPECT_EQ(ext.minus_count(), 0u);
    for (const auto& p : ext.points) {
        EXPECT_TRUE(p.plus);
        const double t = dev.t_grid[p.at.t_pos];
        const double s = dev.s_grid[p.at.s_pos];
        EXPECT_GE(mu1(t, s) - mu1(0.0, s), dev.sup - 0.01);
    }
}

TEST(Deviation, DefaultRho) {
    EXPECT_NEAR(default_rho(500, 0.2), 0.1 * std::log(500.0) / 10.0, 1e-15);
}

}  // namespace
}  // namespace fdrift
