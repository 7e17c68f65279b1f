#include "fdrift/report.hpp"

#include "fdrift/error.hpp"

#include "json.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace fdrift {

using nlohmann::ordered_json;

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) throw Error(ErrorKind::InvalidArgument, "number formatting failed");
    return std::string(buf.data(), ptr);
}

std::string label_at(double t, std::size_t n, std::span<const std::string> labels) {
    if (labels.empty() || n == 0) return {};
    const double j = std::ceil(t * static_cast<double>(n) - 1e-9);
    const auto idx = static_cast<std::size_t>(std::clamp(j, 1.0, static_cast<double>(n))) - 1;
    return idx < labels.size() ? labels[idx] : std::string{};
}

namespace {

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json first_time_object(const FirstTimeResult& r, std::size_t n, std::span<const std::string> labels) {
    ordered_json out;
    out["global"] = optional_number(r.global);
    ordered_json per_s = ordered_json::array();
    for (const auto& v : r.per_s) per_s.push_back(optional_number(v));
    out["per_s"] = std::move(per_s);
    if (!labels.empty()) {
        out["global_label"] = r.global ? ordered_json(label_at(*r.global, n, labels)) : ordered_json(nullptr);
        ordered_json per_label = ordered_json::array();
        for (const auto& v : r.per_s) {
            per_label.push_back(v ? ordered_json(label_at(*v, n, labels)) : ordered_json(nullptr));
        }
        out["per_s_label"] = std::move(per_label);
    }
    return out;
}

}  // namespace

std::string test_result_json(const TestResult& r, std::span<const std::string> labels) {
    ordered_json out;
    out["d_inf"] = r.d_inf_hat;
    out["T"] = r.T;
    out["quantile"] = r.quantile;
    out["reject"] = r.reject;
    out["p_value"] = r.p_value;
    out["delta_hat_alpha"] = r.delta_hat_alpha;
    out["first_time"] = first_time_object(r.first_time, r.n, labels);
    ordered_json config;
    config["delta"] = r.delta;
    config["alpha"] = r.alpha;
    config["n"] = r.n;
    config["bandwidth"] = r.bandwidth;
    config["benchmark"] = std::string(to_string(r.benchmark));
    config["x0"] = r.window.x0;
    config["x1"] = r.window.x1;
    config["q"] = r.q;
    config["r"] = r.r;
    config["m"] = r.m;
    config["rho"] = r.rho;
    config["delta_n"] = r.delta_n;
    config["bootstrap_reps"] = r.bootstrap_reps;
    config["seed"] = r.seed;
    config["extremal_points"] = r.extremal_points;
    config["variance_diagnostic"] = r.variance_diagnostic;
    out["config"] = std::move(config);
    out["warnings"] = r.warnings;
    return out.dump(2) + "\n";
}

std::string first_time_json(const FirstTimeResult& r, std::span<const double> s_grid, std::size_t n,
                            std::span<const std::string> labels) {
    ordered_json out;
    out["delta"] = r.delta;
    out["delta_n"] = r.delta_n;
    out["global"] = optional_number(r.global);
    if (!labels.empty()) {
        out["global_label"] = r.global ? ordered_json(label_at(*r.global, n, labels)) : ordered_json(nullptr);
    }
    ordered_json per_s = ordered_json::array();
    for (std::size_t i = 0; i < r.per_s.size(); ++i) {
        ordered_json entry;
        entry["s"] = i < s_grid.size() ? s_grid[i] : 0.0;
        entry["t_star"] = optional_number(r.per_s[i]);
        if (!labels.empty()) {
            entry["label"] = r.per_s[i] ? ordered_json(label_at(*r.per_s[i], n, labels)) : ordered_json(nullptr);
        }
        per_s.push_back(std::move(entry));
    }
    out["per_s"] = std::move(per_s);
    return out.dump(2) + "\n";
}

std::string first_time_csv(const FirstTimeResult& r, std::span<const double> s_grid) {
    std::string out = "s,t_star\n";
    for (std::size_t i = 0; i < r.per_s.size() && i < s_grid.size(); ++i) {
        out += format_number(s_grid[i]) + ",";
        if (r.per_s[i]) out += format_number(*r.per_s[i]);
        out += "\n";
    }
    return out;
}

std::string cv_report_json(const CVReport& report) {
    ordered_json out;
    out["candidates"] = report.candidates;
    ordered_json mse = ordered_json::array();
    for (double v : report.mse) mse.push_back(std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr));
    out["mse"] = std::move(mse);
    out["chosen"] = report.chosen;
    out["k"] = report.k;
    out["seed"] = report.seed;
    return out.dump(2) + "\n";
}

std::string surface_csv(const MeanSurface& surface, const BenchmarkEstimate& benchmark) {
    if (benchmark.values.size() != surface.s_grid.size()) {
        throw Error(ErrorKind::ShapeMismatch, "benchmark and surface grids differ in length");
    }
    std::string out = "t,s,mu_tilde,g_hat,deviation\n";
    for (std::size_t r = 0; r < surface.values.rows(); ++r) {
        const std::string t = format_number(surface.t_grid[r]);
        for (std::size_t i = 0; i < surface.s_grid.size(); ++i) {
            const double mu = surface.values(r, i);
            const double g = benchmark.values[i];
            out += t + "," + format_number(surface.s_grid[i]) + "," + format_number(mu) + "," + format_number(g) +
                   "," + format_number(mu - g) + "\n";
        }
    }
    return out;
}

}  // namespace fdrift
