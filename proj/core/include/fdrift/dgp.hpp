#pragma once

#include "fdrift/inference.hpp"
#include "fdrift/rng.hpp"
#include "fdrift/smoother.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdrift {

/// Three-branch mean surface with cuts at t = 1/8 and t = 5/8:
///   s(1-s)                                      t <= 1/8
///   s(1-s) + 2 sin(pi(t-1/4))                   1/8 < t <= 5/8
///   s(1-s) + 2 sin(pi(t-1/4)) - 2s(1-s)(t-3/4)  t > 5/8
[[nodiscard]] double mu1(double t, double s) noexcept;

/// f(s) = 1 / (1 + ((1-s)/s)^2) on (0,1], with f(0) = 0.
[[nodiscard]] double mu2_profile(double s) noexcept;

/// 4 + f(s) + t(1-t), plus s^2 (t-1/4)^2 for t >= 1/4.
[[nodiscard]] double mu2(double t, double s) noexcept;

enum class MeanModel { Mu1, Mu2, Custom };
enum class ErrorModel {
    IidBridge,  ///< eps_j = B_j / 2
    MaBridge,   ///< eps_j = (B_j + B_{j-1}/2) / sqrt(5)
};

[[nodiscard]] std::string_view to_string(MeanModel m) noexcept;
[[nodiscard]] std::string_view to_string(ErrorModel e) noexcept;

struct DgpSpec {
    MeanModel mean = MeanModel::Mu1;
    std::function<double(double, double)> custom;  ///< used when mean == Custom
    ErrorModel errors = ErrorModel::IidBridge;
    std::size_t n = 500;
    std::size_t points = 101;
    std::uint64_t seed = 0;
};

/// points equispaced values 0, 1/(points-1), ..., 1.
[[nodiscard]] std::vector<double> uniform_grid(std::size_t points);

/// Mean of the spec's model at (t, s).
[[nodiscard]] double mean_value(const DgpSpec& spec, double t, double s);

/// Brownian bridge B(s_i) = W(s_i) - s_i W(1) on a grid starting at 0 and
/// ending at 1, W built from Gaussian increments of stream `stream`.
/// B(0) = B(1) = 0 exactly.
void brownian_bridge(const CounterRng& rng, std::uint64_t stream, std::span<const double> grid,
                     std::span<double> out);

/// X_j(s_i) = mu(j/n, s_i) + eps_j(s_i) on a uniform grid of spec.points.
/// Throws Error(InvalidArgument) for n < 16, points < 2 or a Custom model
/// without a function.
[[nodiscard]] FunctionalSeries simulate_series(const DgpSpec& spec);

/// Benchmark and window used for the model in the simulation study:
/// Mu1 against the initial mean on [0,1], Mu2 against the average over
/// [0,1/4] on [1/4,1].
[[nodiscard]] TestConfig study_config(MeanModel mean);

struct StudyRow {
    std::string mean;
    std::string errors;
    std::size_t n = 0;
    double delta = 0.0;
    double alpha = 0.0;
    std::size_t reps = 0;
    std::size_t bootstrap_B = 0;
    double rejection_rate = 0.0;
};

struct StudyResult {
    std::vector<StudyRow> rows;                 ///< one per delta, in input order
    std::vector<std::vector<char>> rejected;    ///< [delta][rep]
    std::vector<double> d_inf_hat;              ///< per rep
    std::vector<double> bandwidth;              ///< per rep
};

/// Monte-Carlo rejection rates. Rep k simulates with seed
/// derive_seed(seed, tag, k) and calibrates once; every threshold is then
/// decided from the same calibration. Reps run in parallel; the result does
/// not depend on `threads`.
[[nodiscard]] StudyResult rejection_study(const DgpSpec& spec, std::span<const double> deltas, double alpha,
                                          std::size_t reps, std::size_t bootstrap_B, std::uint64_t seed,
                                          const TestConfig& base, std::size_t threads = 1);

/// Seed of rep k in rejection_study.
[[nodiscard]] std::uint64_t study_rep_seed(std::uint64_t seed, std::size_t rep) noexcept;

/// CSV with header mean,errors,n,delta,alpha,reps,bootstrap_B,rejection_rate.
[[nodiscard]] std::string study_csv(std::span<const StudyRow> rows);

}  // namespace fdrift
