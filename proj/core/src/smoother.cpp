#include "fdrift/smoother.hpp"

#include "fdrift/error.hpp"
#include "fdrift/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fdrift {

FunctionalSeries::FunctionalSeries(Matrix values, std::vector<double> s_grid,
                                   std::vector<std::string> labels)
    : values_(std::move(values)), s_grid_(std::move(s_grid)), labels_(std::move(labels)) {
    if (values_.rows() < 2 || values_.cols() < 2) {
        throw Error(ErrorKind::ShapeMismatch, "a functional series needs n >= 2 curves and N >= 2 points");
    }
    if (s_grid_.size() != values_.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "s_grid length differs from the number of columns");
    }
    if (!labels_.empty() && labels_.size() != values_.rows()) {
        throw Error(ErrorKind::ShapeMismatch, "label count differs from the number of curves");
    }
    for (std::size_t i = 0; i < s_grid_.size(); ++i) {
        const double s = s_grid_[i];
        if (!(s >= 0.0 && s <= 1.0) || (i > 0 && !(s > s_grid_[i - 1]))) {
            throw Error(ErrorKind::NonMonotoneGrid, "s_grid must be strictly increasing inside [0,1]");
        }
    }
    for (double v : values_.data()) {
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "series contains non-finite values");
    }
}

LocalWeights local_linear_window(double t, double h, std::size_t n, const Kernel& kernel,
                                 RowExclusion excluded) {
    if (!(h > 0.0) || n == 0) {
        throw Error(ErrorKind::InvalidArgument, "bandwidth must be positive and the design nonempty");
    }
    const double dn = static_cast<double>(n);
    // 1-based design indices that can carry kernel mass.
    const double lo_f = std::max(1.0, std::floor(dn * (t - h)));
    const double hi_f = std::min(dn, std::ceil(dn * (t + h)));
    LocalWeights out;
    if (lo_f > hi_f) {
        throw Error(ErrorKind::DegenerateDesign, "no design points within one bandwidth of t");
    }
    const auto lo = static_cast<std::size_t>(lo_f);
    const auto hi = static_cast<std::size_t>(hi_f);
    out.first = lo - 1;
    out.weights.assign(hi - lo + 1, 0.0);

    // Moments in units of h; the weights are invariant to this scaling.
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    std::vector<double> u(out.weights.size());
    for (std::size_t k = 0; k < out.weights.size(); ++k) {
        const std::size_t row = out.first + k;
        u[k] = (static_cast<double>(row + 1) / dn - t) / h;
        if (row >= excluded.begin && row < excluded.end) continue;
        const double kw = kernel(u[k]);
        out.weights[k] = kw;
        s0 += kw;
        s1 += kw * u[k];
        s2 += kw * u[k] * u[k];
    }
    const double det = s0 * s2 - s1 * s1;
    if (!(s0 > 0.0) || !(det > 1e-14 * s0)) {
        std::ostringstream msg;
        msg << "local linear design is degenerate at t=" << t << " h=" << h << " n=" << n;
        throw Error(ErrorKind::DegenerateDesign, msg.str());
    }
    for (std::size_t k = 0; k < out.weights.size(); ++k) {
        out.weights[k] *= (s2 - u[k] * s1) / det;
    }
    return out;
}

std::vector<double> local_linear_weights(double t, double h, std::size_t n, const Kernel& kernel) {
    const LocalWeights lw = local_linear_window(t, h, n, kernel);
    std::vector<double> dense(n, 0.0);
    std::copy(lw.weights.begin(), lw.weights.end(), dense.begin() + static_cast<std::ptrdiff_t>(lw.first));
    return dense;
}

LocalWeights bias_corrected_window(double t, double h, std::size_t n, const Kernel& kernel,
                                   RowExclusion excluded) {
    const LocalWeights narrow = local_linear_window(t, h / std::numbers::sqrt2, n, kernel, excluded);
    const LocalWeights wide = local_linear_window(t, h, n, kernel, excluded);
    LocalWeights out;
    out.first = std::min(narrow.first, wide.first);
    const std::size_t last = std::max(narrow.first + narrow.weights.size(), wide.first + wide.weights.size());
    out.weights.assign(last - out.first, 0.0);
    for (std::size_t k = 0; k < narrow.weights.size(); ++k) {
        out.weights[narrow.first - out.first + k] += 2.0 * narrow.weights[k];
    }
    for (std::size_t k = 0; k < wide.weights.size(); ++k) {
        out.weights[wide.first - out.first + k] -= wide.weights[k];
    }
    return out;
}

std::vector<double> apply_weights(const LocalWeights& w, const Matrix& values) {
    std::vector<double> out(values.cols(), 0.0);
    for (std::size_t k = 0; k < w.weights.size(); ++k) {
        const double wk = w.weights[k];
        if (wk == 0.0) continue;
        const auto row = values.row(w.first + k);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += wk * row[i];
    }
    return out;
}

std::vector<double> bias_corrected_at(const FunctionalSeries& series, double t, double h,
                                      const Kernel& kernel) {
    return apply_weights(bias_corrected_window(t, h, series.curves(), kernel), series.values());
}

std::vector<std::size_t> trimmed_design(std::size_t n, double h, Window window) {
    if (!(window.x0 < window.x1) || window.x0 < 0.0 || window.x1 > 1.0) {
        throw Error(ErrorKind::InvalidArgument, "window must satisfy 0 <= x0 < x1 <= 1");
    }
    const double dn = static_cast<double>(n);
    const double lo = std::max(window.x0, h);
    const double hi = std::min(window.x1, 1.0 - h);
    const double first = std::max(1.0, std::ceil(lo * dn - 1e-9));
    const double last = std::min(dn, std::floor(hi * dn + 1e-9));
    if (first > last) {
        throw Error(ErrorKind::EmptyWindow, "trimmed window [x0 v h, x1 ^ (1-h)] contains no design point");
    }
    std::vector<std::size_t> idx;
    for (auto j = static_cast<std::size_t>(first); j <= static_cast<std::size_t>(last); ++j) idx.push_back(j);
    return idx;
}

namespace {

template <class WeightFn>
MeanSurface build_surface(const FunctionalSeries& series, double h, Window window,
                          std::size_t threads, WeightFn&& weights_at) {
    if (!(h > 0.0 && h < 0.5)) {
        throw Error(ErrorKind::InvalidArgument, "bandwidth must lie in (0, 1/2)");
    }
    MeanSurface surface;
    surface.n = series.curves();
    surface.bandwidth = h;
    surface.s_grid = series.s_grid();
    surface.t_index = trimmed_design(surface.n, h, window);
    for (std::size_t j : surface.t_index) {
        surface.t_grid.push_back(static_cast<double>(j) / static_cast<double>(surface.n));
    }
    surface.values = Matrix(surface.t_grid.size(), series.points());
    parallel_for(surface.t_grid.size(), threads, [&](std::size_t r) {
        const std::vector<double> row = apply_weights(weights_at(surface.t_grid[r]), series.values());
        std::copy(row.begin(), row.end(), surface.values.row(r).begin());
    });
    return surface;
}

}  // namespace

MeanSurface bias_corrected_surface(const FunctionalSeries& series, double h, Window window,
                                   const Kernel& kernel, std::size_t threads) {
    const std::size_t n = series.curves();
    return build_surface(series, h, window, threads,
                         [&](double t) { return bias_corrected_window(t, h, n, kernel); });
}

MeanSurface local_linear_surface(const FunctionalSeries& series, double h, Window window,
                                 const Kernel& kernel, std::size_t threads) {
    const std::size_t n = series.curves();
    return build_surface(series, h, window, threads,
                         [&](double t) { return local_linear_window(t, h, n, kernel); });
}

ResidualMatrix residuals(const FunctionalSeries& series, const MeanSurface& surface, const Kernel& kernel) {
    if (surface.n != series.curves() || surface.s_grid != series.s_grid() ||
        surface.values.rows() != surface.t_index.size() || surface.t_index.empty()) {
        throw Error(ErrorKind::ShapeMismatch, "surface was not built from this series");
    }
    const std::size_t n = series.curves();
    const double dn = static_cast<double>(n);
    ResidualMatrix res{Matrix(n, series.points()), std::vector<bool>(n, false)};
    const auto& idx = surface.t_index;
    for (std::size_t row = 0; row < n; ++row) {
        const std::size_t j = row + 1;
        const auto x = series.values().row(row);
        auto out = res.values.row(row);
        const auto hit = std::lower_bound(idx.begin(), idx.end(), j);
        if (hit != idx.end() && *hit == j) {
            const auto fit = surface.values.row(static_cast<std::size_t>(hit - idx.begin()));
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] - fit[i];
            continue;
        }
        res.extrapolated[row] = true;
        std::vector<double> fit;
        try {
            fit = apply_weights(bias_corrected_window(static_cast<double>(j) / dn, surface.bandwidth, n, kernel),
                                series.values());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateDesign) throw;
            // Too few design points near the edge: fall back to the nearest fitted row.
            const auto near = surface.values.row(j < idx.front() ? 0 : idx.size() - 1);
            fit.assign(near.begin(), near.end());
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] - fit[i];
    }
    return res;
}

}  // namespace fdrift
