#include "fdrift/tuning.hpp"

#include "fdrift/error.hpp"
#include "fdrift/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdrift {

std::vector<std::pair<std::size_t, std::size_t>> contiguous_folds(std::size_t n, std::size_t k) {
    if (k == 0 || n < k) throw Error(ErrorKind::InvalidArgument, "need at least one row per fold");
    const std::size_t size = n / k;
    std::vector<std::pair<std::size_t, std::size_t>> folds;
    for (std::size_t i = 0; i < k; ++i) {
        folds.emplace_back(i * size, i + 1 == k ? n : (i + 1) * size);
    }
    return folds;
}

double trapezoid_sq_norm(std::span<const double> values, std::span<const double> grid) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        acc += 0.5 * (grid[i + 1] - grid[i]) * (values[i] * values[i] + values[i + 1] * values[i + 1]);
    }
    return acc;
}

std::vector<double> default_bandwidth_grid(std::size_t n, std::size_t count) {
    const double hi = std::pow(static_cast<double>(n), -0.2);
    const double lo = hi / 3.0;
    constexpr double cap = 0.49;
    std::vector<double> grid;
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = count == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        const double h = std::min(cap, lo * std::pow(hi / lo, frac));
        if (grid.empty() || h > grid.back()) grid.push_back(h);
    }
    return grid;
}

namespace {

struct FoldScore {
    double sum = 0.0;
    std::size_t count = 0;
    bool degenerate = false;
};

bool nearly_equal(double a, double b) {
    if (a == b) return true;
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)) + 1e-18;
}

}  // namespace

CVReport cv_bandwidth(const FunctionalSeries& series, std::vector<double> candidates, std::size_t k,
                      std::uint64_t seed, const Kernel& kernel, std::size_t threads) {
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "cross-validation needs k >= 2 folds");
    if (candidates.empty()) throw Error(ErrorKind::InvalidArgument, "no candidate bandwidths");
    const std::size_t n = series.curves();
    if (n < 2 * k) throw Error(ErrorKind::TooFewCurves, "cross-validation needs n >= 2k curves");
    std::sort(candidates.begin(), candidates.end());
    for (double h : candidates) {
        if (!(h > 0.0 && h < 0.5)) throw Error(ErrorKind::InvalidArgument, "candidate bandwidth outside (0, 1/2)");
    }

    const auto folds = contiguous_folds(n, k);
    std::vector<FoldScore> cells(candidates.size() * k);
    parallel_for(cells.size(), threads, [&](std::size_t cell) {
        const double h = candidates[cell / k];
        const auto [begin, end] = folds[cell % k];
        FoldScore& score = cells[cell];
        std::vector<double> diff(series.points());
        for (std::size_t row = begin; row < end; ++row) {
            const double t = series.time(row);
            if (t < h || t > 1.0 - h) continue;
            try {
                const auto w = bias_corrected_window(t, h, n, kernel, {begin, end});
                const auto fit = apply_weights(w, series.values());
                const auto x = series.values().row(row);
                for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = x[i] - fit[i];
                score.sum += trapezoid_sq_norm(diff, series.s_grid());
                ++score.count;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DegenerateDesign) throw;
                score.degenerate = true;
                return;
            }
        }
    });

    CVReport report;
    report.candidates = candidates;
    report.k = k;
    report.seed = seed;
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        double sum = 0.0;
        std::size_t count = 0;
        bool degenerate = false;
        for (std::size_t f = 0; f < k; ++f) {
            const FoldScore& s = cells[c * k + f];
            sum += s.sum;
            count += s.count;
            degenerate = degenerate || s.degenerate;
        }
        const double h = candidates[c];
        report.mse.push_back(degenerate || count == 0
                                 ? inf
                                 : sum / static_cast<double>(count) / (1.0 - h / 2.0));
    }
    // Ties go to the larger bandwidth, so scan from the top.
    std::size_t best = candidates.size() - 1;
    for (std::size_t c = candidates.size(); c-- > 0;) {
        const double v = report.mse[c];
        const double b = report.mse[best];
        if (v < b && !nearly_equal(v, b)) best = c;
    }
    report.chosen = candidates[best];
    return report;
}

}  // namespace fdrift
