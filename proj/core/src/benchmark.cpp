#include "fdrift/benchmark.hpp"

#include "fdrift/error.hpp"

#include <cmath>

namespace fdrift {

std::string_view to_string(BenchmarkKind kind) noexcept {
    switch (kind) {
        case BenchmarkKind::InitialMean: return "initial";
        case BenchmarkKind::PrefixAverage: return "prefix-mean";
        case BenchmarkKind::Fixed: return "fixed";
    }
    return "unknown";
}

double auxiliary_bandwidth(double h) { return std::pow(h, 5.0 / 6.0); }

BenchmarkEstimate benchmark_initial(const FunctionalSeries& series, double h, const Kernel& kernel) {
    if (!(h > 0.0 && h < 0.5)) {
        throw Error(ErrorKind::InvalidArgument, "bandwidth must lie in (0, 1/2)");
    }
    const double aux = auxiliary_bandwidth(h);
    return {bias_corrected_at(series, aux, aux, kernel), BenchmarkKind::InitialMean, aux};
}

BenchmarkEstimate benchmark_prefix_mean(const FunctionalSeries& series, double x0) {
    if (!(x0 > 0.0 && x0 < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "prefix length x0 must lie in (0,1)");
    }
    const double nx0 = static_cast<double>(series.curves()) * x0;
    const auto count = static_cast<std::size_t>(std::floor(nx0 + 1e-9));
    if (count == 0) {
        throw Error(ErrorKind::EmptyPrefix, "floor(x0 * n) is zero; the prefix holds no curves");
    }
    std::vector<double> g(series.points(), 0.0);
    for (std::size_t row = 0; row < count; ++row) {
        const auto x = series.values().row(row);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += x[i];
    }
    for (double& v : g) v /= nx0;
    return {std::move(g), BenchmarkKind::PrefixAverage, x0};
}

BenchmarkEstimate benchmark_fixed(std::vector<double> values, const FunctionalSeries& series) {
    if (values.size() != series.points()) {
        throw Error(ErrorKind::ShapeMismatch, "fixed benchmark length differs from the grid size");
    }
    return {std::move(values), BenchmarkKind::Fixed, 0.0};
}

}  // namespace fdrift
