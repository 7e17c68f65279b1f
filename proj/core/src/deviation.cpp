#include "fdrift/deviation.hpp"

#include "fdrift/error.hpp"

#include <cmath>

namespace fdrift {

DeviationSurface make_deviation_surface(Matrix values, std::vector<std::size_t> t_index,
                                        std::vector<double> s_grid, std::size_t n) {
    if (values.rows() != t_index.size() || values.cols() != s_grid.size() || values.empty()) {
        throw Error(ErrorKind::ShapeMismatch, "deviation values do not match the grid");
    }
    DeviationSurface dev;
    dev.values = std::move(values);
    dev.t_index = std::move(t_index);
    dev.s_grid = std::move(s_grid);
    dev.n = n;
    for (std::size_t j : dev.t_index) dev.t_grid.push_back(static_cast<double>(j) / static_cast<double>(n));

    double sup = 0.0;
    for (std::size_t r = 0; r < dev.values.rows(); ++r) {
        for (std::size_t i = 0; i < dev.values.cols(); ++i) {
            const double a = std::abs(dev.values(r, i));
            if (a > sup) {
                sup = a;
                dev.argmax.clear();
            }
            if (a == sup) dev.argmax.push_back({r, i});
        }
    }
    dev.sup = sup;
    return dev;
}

DeviationSurface deviation_surface(const MeanSurface& surface, const BenchmarkEstimate& bench) {
    if (bench.values.size() != surface.s_grid.size() || surface.values.cols() != surface.s_grid.size()) {
        throw Error(ErrorKind::ShapeMismatch, "benchmark and surface grids differ");
    }
    Matrix d(surface.values.rows(), surface.values.cols());
    for (std::size_t r = 0; r < d.rows(); ++r) {
        for (std::size_t i = 0; i < d.cols(); ++i) d(r, i) = surface.values(r, i) - bench.values[i];
    }
    return make_deviation_surface(std::move(d), surface.t_index, surface.s_grid, surface.n);
}

std::size_t ExtremalSet::plus_count() const noexcept {
    std::size_t c = 0;
    for (const auto& p : points) c += p.plus ? 1 : 0;
    return c;
}

std::size_t ExtremalSet::minus_count() const noexcept {
    std::size_t c = 0;
    for (const auto& p : points) c += p.minus ? 1 : 0;
    return c;
}

ExtremalSet extremal_set(const DeviationSurface& dev, double rho) {
    if (!(rho >= 0.0)) throw Error(ErrorKind::InvalidArgument, "rho must be nonnegative");
    ExtremalSet ext;
    ext.rho = rho;
    const double level = dev.sup - rho;
    for (std::size_t r = 0; r < dev.values.rows(); ++r) {
        for (std::size_t i = 0; i < dev.values.cols(); ++i) {
            const double d = dev.values(r, i);
            const bool plus = d >= level;
            const bool minus = -d >= level;
            if (plus || minus) ext.points.push_back({{r, i}, dev.t_grid[r], plus, minus});
        }
    }
    return ext;
}

double default_rho(std::size_t n, double h) {
    const double dn = static_cast<double>(n);
    return 0.1 * std::log(dn) / std::sqrt(dn * h);
}

}  // namespace fdrift
