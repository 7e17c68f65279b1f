#include "fdrift/inference.hpp"

#include "fdrift/error.hpp"
#include "fdrift/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fdrift {

namespace {

constexpr std::uint64_t kBootstrapTag = 0xB0075724;

void validate(const FunctionalSeries& series, const TestConfig& config) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
    if (config.bandwidth && !(*config.bandwidth > 0.0 && *config.bandwidth < 0.5)) {
        fail("bandwidth must lie in (0, 1/2)");
    }
    const Window w = config.window;
    if (!(w.x0 >= 0.0 && w.x0 < w.x1 && w.x1 <= 1.0)) fail("window must satisfy 0 <= x0 < x1 <= 1");
    if (config.bootstrap_reps < 1) fail("bootstrap replicate count must be at least 1");
    if (config.rho && !(*config.rho >= 0.0)) fail("rho must be nonnegative");
    if (config.delta_n && !(*config.delta_n >= 0.0)) fail("delta_n must be nonnegative");
    if (config.benchmark == BenchmarkKind::PrefixAverage && !(w.x0 > 0.0)) {
        fail("the prefix-mean benchmark needs x0 > 0");
    }
    if (config.benchmark == BenchmarkKind::Fixed && config.fixed_benchmark.size() != series.points()) {
        fail("fixed benchmark needs one value per grid point");
    }
}

}  // namespace

Calibration calibrate(const FunctionalSeries& series, const TestConfig& config) {
    validate(series, config);
    Calibration cal;
    cal.n = series.curves();
    cal.window = config.window;
    cal.seed = config.seed;
    cal.bootstrap_reps = config.bootstrap_reps;

    if (config.bandwidth) {
        cal.bandwidth = *config.bandwidth;
    } else {
        auto grid = config.cv_candidates.empty() ? default_bandwidth_grid(cal.n) : config.cv_candidates;
        cal.cv = cv_bandwidth(series, std::move(grid), config.cv_folds, config.seed, config.kernel,
                              config.threads);
        cal.bandwidth = cal.cv->chosen;
    }
    const double h = cal.bandwidth;

    switch (config.benchmark) {
        case BenchmarkKind::InitialMean:
            cal.benchmark = benchmark_initial(series, h, config.kernel);
            break;
        case BenchmarkKind::PrefixAverage:
            cal.benchmark = benchmark_prefix_mean(series, config.window.x0);
            break;
        case BenchmarkKind::Fixed:
            cal.benchmark = benchmark_fixed(config.fixed_benchmark, series);
            break;
    }

    const MeanSurface surface = bias_corrected_surface(series, h, config.window, config.kernel, config.threads);
    cal.deviation = deviation_surface(surface, cal.benchmark);
    cal.rho = config.rho.value_or(default_rho(cal.n, h));
    cal.delta_n = config.delta_n.value_or(default_rho(cal.n, h));
    const ExtremalSet ext = extremal_set(cal.deviation, cal.rho);
    cal.extremal_points = ext.points.size();

    const MeanSurface full = bias_corrected_surface(series, h, Window{0.0, 1.0}, config.kernel, config.threads);
    const ResidualMatrix res = residuals(series, full, config.kernel);
    cal.extrapolated_rows =
        static_cast<std::size_t>(std::count(res.extrapolated.begin(), res.extrapolated.end(), true));

    if (config.blocks) {
        cal.blocks = {config.blocks->first, config.blocks->second, 0.0};
    } else {
        cal.blocks = select_block_lengths(res);
    }
    const BlockPlan plan = make_blocks(cal.n, cal.blocks.q, cal.blocks.r);
    cal.block_count = plan.m;

    const BlockSums sums(res, ext, plan, h, config.kernel);
    cal.draws = sums.draws(config.bootstrap_reps, derive_seed(config.seed, kBootstrapTag, 0), config.threads).values;
    cal.variance_diagnostic = sums.variance_diagnostic();
    const double floor = 1.0 / std::log(static_cast<double>(cal.n));
    if (cal.variance_diagnostic < floor) {
        std::ostringstream msg;
        msg << "bootstrap variance diagnostic " << cal.variance_diagnostic << " is below 1/log(n) = " << floor;
        cal.warnings.push_back(msg.str());
    }
    return cal;
}

double delta_hat_alpha(double d_inf_hat, double quantile, std::size_t n, double h) {
    return std::max(0.0, d_inf_hat - quantile / std::sqrt(static_cast<double>(n) * h));
}

TestResult decide(const Calibration& cal, double delta, double alpha) {
    if (!(delta >= 0.0)) throw Error(ErrorKind::InvalidConfig, "delta must be nonnegative");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidConfig, "alpha must lie in (0,1)");
    TestResult out;
    const double h = cal.bandwidth;
    const double root_nh = std::sqrt(static_cast<double>(cal.n) * h);
    out.d_inf_hat = cal.deviation.sup;
    out.T = root_nh * (out.d_inf_hat - delta);
    out.quantile = bootstrap_quantile(cal.draws, 1.0 - alpha);
    out.reject = out.T > out.quantile;
    const auto exceed = std::count_if(cal.draws.begin(), cal.draws.end(), [&](double d) { return d >= out.T; });
    out.p_value = (1.0 + static_cast<double>(exceed)) / (static_cast<double>(cal.draws.size()) + 1.0);
    out.delta_hat_alpha = delta_hat_alpha(out.d_inf_hat, out.quantile, cal.n, h);
    out.delta = delta;
    out.alpha = alpha;
    out.first_time = first_time_per_s(cal.deviation, delta, cal.delta_n, cal.window.x0, h);

    out.n = cal.n;
    out.bandwidth = h;
    out.q = cal.blocks.q;
    out.r = cal.blocks.r;
    out.m = cal.block_count;
    out.rho = cal.rho;
    out.delta_n = cal.delta_n;
    out.bootstrap_reps = cal.bootstrap_reps;
    out.window = cal.window;
    out.benchmark = cal.benchmark.kind;
    out.seed = cal.seed;
    out.extremal_points = cal.extremal_points;
    out.variance_diagnostic = cal.variance_diagnostic;
    out.warnings = cal.warnings;
    return out;
}

TestResult run_test(const FunctionalSeries& series, double delta, double alpha, const TestConfig& config) {
    if (!(delta >= 0.0)) throw Error(ErrorKind::InvalidConfig, "delta must be nonnegative");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidConfig, "alpha must lie in (0,1)");
    return decide(calibrate(series, config), delta, alpha);
}

FirstTimeResult first_time_per_s(const DeviationSurface& dev, double delta, double delta_n, double x0, double h) {
    FirstTimeResult out;
    out.delta = delta;
    out.delta_n = delta_n;
    const double level = delta - delta_n;
    const double start = std::max(x0, h);
    const double dn = static_cast<double>(dev.n);
    out.per_s.assign(dev.values.cols(), std::nullopt);
    for (std::size_t i = 0; i < dev.values.cols(); ++i) {
        double running = 0.0;
        std::size_t below = 0;
        bool reached = false;
        for (std::size_t r = 0; r < dev.values.rows(); ++r) {
            running = std::max(running, std::abs(dev.values(r, i)));
            if (running < level) {
                ++below;
            } else {
                reached = true;
            }
        }
        if (reached) out.per_s[i] = start + static_cast<double>(below) / dn;
    }
    for (const auto& v : out.per_s) {
        if (v && (!out.global || *v < *out.global)) out.global = v;
    }
    return out;
}

}  // namespace fdrift
