#include "fdrift/dgp.hpp"
#include "fdrift/error.hpp"
#include "fdrift/inference.hpp"
#include "fdrift/io.hpp"
#include "fdrift/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace fdrift;

struct InputOptions {
    std::string path;
    bool long_layout = false;
    double max_missing = 0.10;
};

struct PipelineOptions {
    std::string benchmark = "initial";
    double x0 = 0.0;
    double x1 = 1.0;
    std::string bandwidth = "cv";
    std::string blocks = "auto";
    std::optional<double> rho;
    std::optional<double> delta_n;
    std::size_t boot = 1000;
    std::uint64_t seed = 0;
    std::size_t folds = 10;
};

std::size_t default_threads() {
    if (const char* env = std::getenv("FDRIFT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

void add_input(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--input", in.path, "Wide CSV: label column, then numeric grid headers")->required();
    cmd->add_flag("--long", in.long_layout, "Input holds label,s,value triples");
    cmd->add_option("--max-missing", in.max_missing, "Drop rows with a larger missing fraction")
        ->check(CLI::Range(0.0, 1.0));
}

void add_pipeline(CLI::App* cmd, PipelineOptions& p) {
    cmd->add_option("--benchmark", p.benchmark, "Reference curve")
        ->check(CLI::IsMember({"initial", "prefix-mean"}));
    cmd->add_option("--x0", p.x0, "Window start; prefix length for prefix-mean");
    cmd->add_option("--x1", p.x1, "Window end");
    cmd->add_option("--bandwidth", p.bandwidth, "Bandwidth in (0, 1/2) or 'cv'");
    cmd->add_option("--blocks", p.blocks, "Block lengths Q,R or 'auto'");
    cmd->add_option("--rho", p.rho, "Extremal-set tolerance");
    cmd->add_option("--boot", p.boot, "Bootstrap replicates")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", p.seed, "Random seed");
    cmd->add_option("--folds", p.folds, "Cross-validation folds");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidConfig, "cannot read " + what + " from '" + s + "'");
}

std::size_t to_count(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used == s.size()) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidConfig, "cannot read " + what + " from '" + s + "'");
}

std::vector<double> to_doubles(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(to_double(item, what));
    return out;
}

TestConfig make_config(const PipelineOptions& p, std::size_t threads) {
    TestConfig config;
    config.benchmark = p.benchmark == "prefix-mean" ? BenchmarkKind::PrefixAverage : BenchmarkKind::InitialMean;
    config.window = {p.x0, p.x1};
    if (p.bandwidth != "cv") config.bandwidth = to_double(p.bandwidth, "bandwidth");
    if (p.blocks != "auto") {
        const auto parts = split_list(p.blocks);
        if (parts.size() != 2) throw Error(ErrorKind::InvalidConfig, "--blocks expects Q,R");
        config.blocks = std::make_pair(to_count(parts[0], "block length"), to_count(parts[1], "block gap"));
    }
    config.rho = p.rho;
    config.delta_n = p.delta_n;
    config.bootstrap_reps = p.boot;
    config.seed = p.seed;
    config.cv_folds = p.folds;
    config.threads = threads;
    return config;
}

LoadedSeries load(const InputOptions& in) {
    LoadedSeries loaded = load_csv(in.path, in.long_layout ? CsvLayout::Long : CsvLayout::Wide, in.max_missing);
    if (loaded.report.dropped_rows > 0) {
        std::cerr << "note: dropped " << loaded.report.dropped_rows << " rows with more than "
                  << in.max_missing * 100.0 << "% missing\n";
    }
    return loaded;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text(path, text);
    }
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detect and date relevant gradual changes in functional time series"};
    app.require_subcommand(1);
    std::size_t threads = default_threads();
    app.add_option("--threads", threads, "Worker threads (default: FDRIFT_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    InputOptions test_in;
    PipelineOptions test_p;
    double test_delta = 0.0;
    double test_alpha = 0.1;
    std::string test_out;
    auto* test = app.add_subcommand("test", "Test H0: d_inf <= delta against H1: d_inf > delta");
    add_input(test, test_in);
    add_pipeline(test, test_p);
    test->add_option("--delta", test_delta, "Relevance threshold")->required();
    test->add_option("--alpha", test_alpha, "Nominal level");
    test->add_option("--delta-n", test_p.delta_n, "First-time slack");
    test->add_option("--out", test_out, "Output JSON (stdout if omitted)");
    test->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    InputOptions ft_in;
    PipelineOptions ft_p;
    double ft_delta = 0.0;
    double ft_alpha = 0.1;
    std::string ft_out;
    std::string ft_csv;
    auto* first = app.add_subcommand("first-time", "Estimate the first time the deviation reaches delta");
    add_input(first, ft_in);
    add_pipeline(first, ft_p);
    first->add_option("--delta", ft_delta, "Relevance threshold")->required();
    first->add_option("--alpha", ft_alpha, "Nominal level");
    first->add_option("--delta-n", ft_p.delta_n, "First-time slack");
    first->add_option("--out", ft_out, "Output JSON (stdout if omitted)");
    first->add_option("--csv", ft_csv, "Per-location CSV s,t_star");
    first->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    InputOptions bw_in;
    std::string bw_grid;
    std::size_t bw_folds = 10;
    std::uint64_t bw_seed = 0;
    std::string bw_out;
    auto* bandwidth = app.add_subcommand("bandwidth", "Select the bandwidth by contiguous k-fold cross-validation");
    add_input(bandwidth, bw_in);
    bandwidth->add_option("--grid", bw_grid, "Comma-separated candidates (default: log grid)");
    bandwidth->add_option("--folds", bw_folds, "Number of folds");
    bandwidth->add_option("--seed", bw_seed, "Seed recorded in the report");
    bandwidth->add_option("--out", bw_out, "Output JSON (stdout if omitted)");
    bandwidth->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string sim_mean = "mu1";
    std::string sim_errors = "iid";
    std::size_t sim_n = 500;
    std::size_t sim_points = 101;
    std::size_t sim_reps = 100;
    std::string sim_deltas = "2";
    double sim_alpha = 0.1;
    std::size_t sim_boot = 200;
    std::uint64_t sim_seed = 0;
    std::string sim_bandwidth = "cv";
    std::string sim_out;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo rejection rates on synthetic data");
    simulate->add_option("--mean", sim_mean, "Mean surface")->check(CLI::IsMember({"mu1", "mu2"}));
    simulate->add_option("--errors", sim_errors, "Error process")->check(CLI::IsMember({"iid", "ma"}));
    simulate->add_option("--n", sim_n, "Curves per series");
    simulate->add_option("--points", sim_points, "Grid points per curve");
    simulate->add_option("--reps", sim_reps, "Simulation runs")->check(CLI::PositiveNumber);
    simulate->add_option("--deltas", sim_deltas, "Comma-separated thresholds");
    simulate->add_option("--alpha", sim_alpha, "Nominal level");
    simulate->add_option("--boot", sim_boot, "Bootstrap replicates")->check(CLI::PositiveNumber);
    simulate->add_option("--bandwidth", sim_bandwidth, "Bandwidth in (0, 1/2) or 'cv'");
    simulate->add_option("--seed", sim_seed, "Random seed");
    simulate->add_option("--out", sim_out, "Output CSV (stdout if omitted)");
    simulate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    InputOptions sf_in;
    PipelineOptions sf_p;
    std::string sf_out;
    auto* surface = app.add_subcommand("surface", "Plot-ready mean and deviation surface");
    add_input(surface, sf_in);
    add_pipeline(surface, sf_p);
    surface->add_option("--out", sf_out, "Output CSV (stdout if omitted)");
    surface->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: Usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*test) {
            const LoadedSeries data = load(test_in);
            const TestResult r = run_test(data.series, test_delta, test_alpha, make_config(test_p, threads));
            print_warnings(r.warnings);
            emit(test_out, test_result_json(r, data.series.labels()));
        } else if (*first) {
            const LoadedSeries data = load(ft_in);
            const TestResult r = run_test(data.series, ft_delta, ft_alpha, make_config(ft_p, threads));
            print_warnings(r.warnings);
            emit(ft_out, first_time_json(r.first_time, data.series.s_grid(), data.series.curves(),
                                         data.series.labels()));
            if (!ft_csv.empty()) write_text(ft_csv, first_time_csv(r.first_time, data.series.s_grid()));
        } else if (*bandwidth) {
            const LoadedSeries data = load(bw_in);
            std::vector<double> grid = bw_grid.empty() ? default_bandwidth_grid(data.series.curves())
                                                       : to_doubles(bw_grid, "bandwidth grid");
            const CVReport report = cv_bandwidth(data.series, std::move(grid), bw_folds, bw_seed, Kernel{}, threads);
            emit(bw_out, cv_report_json(report));
        } else if (*simulate) {
            DgpSpec spec;
            spec.mean = sim_mean == "mu2" ? MeanModel::Mu2 : MeanModel::Mu1;
            spec.errors = sim_errors == "ma" ? ErrorModel::MaBridge : ErrorModel::IidBridge;
            spec.n = sim_n;
            spec.points = sim_points;
            TestConfig base = study_config(spec.mean);
            if (sim_bandwidth != "cv") base.bandwidth = to_double(sim_bandwidth, "bandwidth");
            const auto deltas = to_doubles(sim_deltas, "threshold list");
            const StudyResult study =
                rejection_study(spec, deltas, sim_alpha, sim_reps, sim_boot, sim_seed, base, threads);
            emit(sim_out, study_csv(study.rows));
        } else if (*surface) {
            const LoadedSeries data = load(sf_in);
            const TestConfig config = make_config(sf_p, threads);
            const double h = config.bandwidth
                                 ? *config.bandwidth
                                 : cv_bandwidth(data.series, default_bandwidth_grid(data.series.curves()),
                                                config.cv_folds, config.seed, config.kernel, threads)
                                       .chosen;
            const BenchmarkEstimate bench = config.benchmark == BenchmarkKind::PrefixAverage
                                                ? benchmark_prefix_mean(data.series, config.window.x0)
                                                : benchmark_initial(data.series, h, config.kernel);
            const MeanSurface mu = bias_corrected_surface(data.series, h, config.window, config.kernel, threads);
            emit(sf_out, surface_csv(mu, bench));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
