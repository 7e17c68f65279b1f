#include "fdrift/dgp.hpp"

#include "fdrift/error.hpp"
#include "fdrift/parallel.hpp"
#include "fdrift/report.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fdrift {

namespace {

constexpr std::uint64_t kDgpTag = 0xD6B0;
constexpr std::uint64_t kRepTag = 0x5E9;

}  // namespace

double mu1(double t, double s) noexcept {
    const double base = s * (1.0 - s);
    if (t <= 0.125) return base;
    const double wave = 2.0 * std::sin(std::numbers::pi * (t - 0.25));
    if (t <= 0.625) return base + wave;
    return base + wave - 2.0 * s * (1.0 - s) * (t - 0.75);
}

double mu2_profile(double s) noexcept {
    if (s <= 0.0) return 0.0;
    const double ratio = (1.0 - s) / s;
    return 1.0 / (1.0 + ratio * ratio);
}

double mu2(double t, double s) noexcept {
    const double base = 4.0 + mu2_profile(s) + t * (1.0 - t);
    if (t < 0.25) return base;
    const double d = t - 0.25;
    return base + s * s * d * d;
}

std::string_view to_string(MeanModel m) noexcept {
    switch (m) {
        case MeanModel::Mu1: return "mu1";
        case MeanModel::Mu2: return "mu2";
        case MeanModel::Custom: return "custom";
    }
    return "unknown";
}

std::string_view to_string(ErrorModel e) noexcept {
    switch (e) {
        case ErrorModel::IidBridge: return "iid";
        case ErrorModel::MaBridge: return "ma";
    }
    return "unknown";
}

std::vector<double> uniform_grid(std::size_t points) {
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

double mean_value(const DgpSpec& spec, double t, double s) {
    switch (spec.mean) {
        case MeanModel::Mu1: return mu1(t, s);
        case MeanModel::Mu2: return mu2(t, s);
        case MeanModel::Custom: return spec.custom(t, s);
    }
    return 0.0;
}

void brownian_bridge(const CounterRng& rng, std::uint64_t stream, std::span<const double> grid,
                     std::span<double> out) {
    const std::size_t N = grid.size();
    std::vector<double> z(N > 0 ? N - 1 : 0);
    rng.normals(stream, z);
    out[0] = 0.0;
    for (std::size_t i = 1; i < N; ++i) {
        out[i] = out[i - 1] + std::sqrt(grid[i] - grid[i - 1]) * z[i - 1];
    }
    const double w1 = out[N - 1];
    for (std::size_t i = 0; i < N; ++i) out[i] -= grid[i] * w1;
    out[N - 1] = 0.0;
}

FunctionalSeries simulate_series(const DgpSpec& spec) {
    if (spec.n < 16 || spec.points < 2) {
        throw Error(ErrorKind::InvalidArgument, "simulation needs n >= 16 and at least 2 grid points");
    }
    if (spec.mean == MeanModel::Custom && !spec.custom) {
        throw Error(ErrorKind::InvalidArgument, "custom mean model without a function");
    }
    const std::vector<double> grid = uniform_grid(spec.points);
    const CounterRng rng(derive_seed(spec.seed, kDgpTag, 0));
    const std::size_t n = spec.n;
    const std::size_t N = spec.points;

    Matrix x(n, N);
    std::vector<double> previous(N), current(N);
    // Stream 0 is the extra bridge B_0 feeding the MA(1) start.
    brownian_bridge(rng, 0, grid, previous);
    const double ma_scale = 1.0 / std::sqrt(5.0);
    for (std::size_t row = 0; row < n; ++row) {
        brownian_bridge(rng, row + 1, grid, current);
        const double t = static_cast<double>(row + 1) / static_cast<double>(n);
        auto out = x.row(row);
        for (std::size_t i = 0; i < N; ++i) {
            const double eps = spec.errors == ErrorModel::IidBridge
                                   ? 0.5 * current[i]
                                   : ma_scale * (current[i] + 0.5 * previous[i]);
            out[i] = mean_value(spec, t, grid[i]) + eps;
        }
        std::swap(previous, current);
    }
    return FunctionalSeries(std::move(x), grid);
}

TestConfig study_config(MeanModel mean) {
    TestConfig config;
    config.bootstrap_reps = 200;
    if (mean == MeanModel::Mu2) {
        config.benchmark = BenchmarkKind::PrefixAverage;
        config.window = {0.25, 1.0};
    } else {
        config.benchmark = BenchmarkKind::InitialMean;
        config.window = {0.0, 1.0};
    }
    return config;
}

std::uint64_t study_rep_seed(std::uint64_t seed, std::size_t rep) noexcept {
    return derive_seed(seed, kRepTag, rep);
}

StudyResult rejection_study(const DgpSpec& spec, std::span<const double> deltas, double alpha, std::size_t reps,
                            std::size_t bootstrap_B, std::uint64_t seed, const TestConfig& base,
                            std::size_t threads) {
    if (reps < 1) throw Error(ErrorKind::InvalidArgument, "a study needs at least one rep");
    StudyResult result;
    result.rejected.assign(deltas.size(), std::vector<char>(reps, 0));
    result.d_inf_hat.assign(reps, 0.0);
    result.bandwidth.assign(reps, 0.0);

    parallel_for(reps, threads, [&](std::size_t rep) {
        DgpSpec rep_spec = spec;
        rep_spec.seed = study_rep_seed(seed, rep);
        const FunctionalSeries series = simulate_series(rep_spec);
        TestConfig config = base;
        config.seed = rep_spec.seed;
        config.bootstrap_reps = bootstrap_B;
        config.threads = 1;
        const Calibration cal = calibrate(series, config);
        result.d_inf_hat[rep] = cal.deviation.sup;
        result.bandwidth[rep] = cal.bandwidth;
        for (std::size_t d = 0; d < deltas.size(); ++d) {
            result.rejected[d][rep] = decide(cal, deltas[d], alpha).reject ? 1 : 0;
        }
    });

    for (std::size_t d = 0; d < deltas.size(); ++d) {
        std::size_t hits = 0;
        for (char c : result.rejected[d]) hits += c ? 1 : 0;
        result.rows.push_back({std::string(to_string(spec.mean)), std::string(to_string(spec.errors)), spec.n,
                               deltas[d], alpha, reps, bootstrap_B,
                               static_cast<double>(hits) / static_cast<double>(reps)});
    }
    return result;
}

std::string study_csv(std::span<const StudyRow> rows) {
    std::ostringstream out;
    out << "mean,errors,n,delta,alpha,reps,bootstrap_B,rejection_rate\n";
    for (const auto& r : rows) {
        out << r.mean << ',' << r.errors << ',' << r.n << ',' << format_number(r.delta) << ','
            << format_number(r.alpha) << ',' << r.reps << ',' << r.bootstrap_B << ','
            << format_number(r.rejection_rate) << '\n';
    }
    return out.str();
}

}  // namespace fdrift
