#pragma once

#include "fdrift/benchmark.hpp"
#include "fdrift/bootstrap.hpp"
#include "fdrift/deviation.hpp"
#include "fdrift/kernels.hpp"
#include "fdrift/smoother.hpp"
#include "fdrift/tuning.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fdrift {

struct TestConfig {
    std::optional<double> bandwidth;   ///< nullopt: k-fold cross-validation
    std::vector<double> cv_candidates; ///< empty: default_bandwidth_grid(n)
    std::size_t cv_folds = 10;
    Window window{};                   ///< monitoring interval; x0 is also the prefix length
    BenchmarkKind benchmark = BenchmarkKind::InitialMean;
    std::vector<double> fixed_benchmark;
    std::optional<std::pair<std::size_t, std::size_t>> blocks;  ///< (q, r); nullopt: automatic
    std::optional<double> rho;         ///< nullopt: default_rho(n, h)
    std::optional<double> delta_n;     ///< nullopt: default_rho(n, h)
    std::size_t bootstrap_reps = 1000;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    Kernel kernel{};
};

/// Per-location first exceedance times; nullopt means "never".
struct FirstTimeResult {
    std::vector<std::optional<double>> per_s;
    std::optional<double> global;
    double delta = 0.0;
    double delta_n = 0.0;
};

/// Everything the test needs that does not depend on the threshold Delta.
/// One calibration serves any number of thresholds.
struct Calibration {
    std::size_t n = 0;
    double bandwidth = 0.0;
    std::optional<CVReport> cv;
    Window window{};
    BenchmarkEstimate benchmark;
    DeviationSurface deviation;
    double rho = 0.0;
    double delta_n = 0.0;
    std::size_t extremal_points = 0;
    std::size_t extrapolated_rows = 0;
    BlockLengths blocks;
    std::size_t block_count = 0;
    std::size_t bootstrap_reps = 0;
    std::uint64_t seed = 0;
    std::vector<double> draws;         ///< replicate order
    double variance_diagnostic = 0.0;
    std::vector<std::string> warnings;
};

struct TestResult {
    double d_inf_hat = 0.0;
    double T = 0.0;
    double quantile = 0.0;
    bool reject = false;
    double p_value = 1.0;
    double delta_hat_alpha = 0.0;
    double delta = 0.0;
    double alpha = 0.0;
    FirstTimeResult first_time;

    // Configuration echo.
    std::size_t n = 0;
    double bandwidth = 0.0;
    std::size_t q = 0;
    std::size_t r = 0;
    std::size_t m = 0;
    double rho = 0.0;
    double delta_n = 0.0;
    std::size_t bootstrap_reps = 0;
    Window window{};
    BenchmarkKind benchmark = BenchmarkKind::InitialMean;
    std::uint64_t seed = 0;
    std::size_t extremal_points = 0;
    double variance_diagnostic = 0.0;
    std::vector<std::string> warnings;
};

/// Bandwidth, benchmark, deviation surface, extremal set, block lengths and
/// the B multiplier bootstrap draws. Residuals come from the bias-corrected
/// fit over the full admissible range [h, 1-h], independent of the window.
/// Throws Error(InvalidConfig) for inconsistent settings and propagates
/// errors from every stage.
[[nodiscard]] Calibration calibrate(const FunctionalSeries& series, const TestConfig& config);

/// T = sqrt(nh)(d^ - Delta), q* = bootstrap (1-alpha)-quantile, reject iff
/// T > q*, p = (1 + #{draws >= T})/(B + 1), plus the first-time estimate at Delta.
[[nodiscard]] TestResult decide(const Calibration& cal, double delta, double alpha);

/// calibrate() followed by decide().
[[nodiscard]] TestResult run_test(const FunctionalSeries& series, double delta, double alpha,
                                  const TestConfig& config);

/// max(0, d^ - q* / sqrt(nh)): the smallest threshold not rejected.
[[nodiscard]] double delta_hat_alpha(double d_inf_hat, double quantile, std::size_t n, double h);

/// Running-maximum estimator of the first time |d^(., s)| reaches Delta:
///   t^(s) = (x0 v h) + (1/n) #{y in t_grid : max_{t <= y} |d^(t,s)| < Delta - delta_n},
/// "never" when the running maximum stays below Delta - delta_n. The global
/// time is the minimum over finite entries.
[[nodiscard]] FirstTimeResult first_time_per_s(const DeviationSurface& dev, double delta, double delta_n,
                                               double x0, double h);

}  // namespace fdrift
