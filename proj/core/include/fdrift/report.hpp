#pragma once

#include "fdrift/benchmark.hpp"
#include "fdrift/deviation.hpp"
#include "fdrift/inference.hpp"
#include "fdrift/smoother.hpp"
#include "fdrift/tuning.hpp"

#include <span>
#include <string>

namespace fdrift {

/// Shortest decimal text that reads back to the same double.
[[nodiscard]] std::string format_number(double value);

/// {"d_inf","T","quantile","reject","p_value","delta_hat_alpha",
///  "first_time":{"global","per_s"},"config":{...},"warnings":[...]}.
/// "never" is written as null. With curve labels, first-time entries also
/// carry the label of the curve at which the time falls.
[[nodiscard]] std::string test_result_json(const TestResult& result, std::span<const std::string> labels = {});

/// {"delta","delta_n","global","per_s":[{"s","t_star"}...]} plus labels as above.
[[nodiscard]] std::string first_time_json(const FirstTimeResult& result, std::span<const double> s_grid,
                                          std::size_t n, std::span<const std::string> labels = {});

/// `s,t_star` with an empty field for "never".
[[nodiscard]] std::string first_time_csv(const FirstTimeResult& result, std::span<const double> s_grid);

/// {"candidates","mse","chosen","k","seed"}; infinite scores become null.
[[nodiscard]] std::string cv_report_json(const CVReport& report);

/// Long table `t,s,mu_tilde,g_hat,deviation` over the surface grid.
[[nodiscard]] std::string surface_csv(const MeanSurface& surface, const BenchmarkEstimate& benchmark);

/// Label of the curve whose time index j/n is the first not below t, or an
/// empty string when labels are absent.
[[nodiscard]] std::string label_at(double t, std::size_t n, std::span<const std::string> labels);

}  // namespace fdrift
