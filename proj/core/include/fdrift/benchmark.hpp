#pragma once

#include "fdrift/kernels.hpp"
#include "fdrift/smoother.hpp"

#include <string_view>
#include <vector>

namespace fdrift {

enum class BenchmarkKind {
    InitialMean,    ///< g(s) = mu(0, s)
    PrefixAverage,  ///< g(s) = (1/x0) int_0^x0 mu(t, s) dt
    Fixed,          ///< user-supplied curve, passed through unchanged
};

[[nodiscard]] std::string_view to_string(BenchmarkKind kind) noexcept;

struct BenchmarkEstimate {
    std::vector<double> values;  ///< g^(s_i)
    BenchmarkKind kind = BenchmarkKind::InitialMean;
    /// Auxiliary bandwidth for InitialMean, x0 for PrefixAverage, 0 for Fixed.
    double parameter = 0.0;
};

/// Auxiliary (oversmoothing) bandwidth h^(5/6) used for the initial mean.
[[nodiscard]] double auxiliary_bandwidth(double h);

/// Bias-corrected local linear estimate with bandwidth h~ = h^(5/6),
/// evaluated at t0 = h~.
[[nodiscard]] BenchmarkEstimate benchmark_initial(const FunctionalSeries& series, double h,
                                                  const Kernel& kernel = {});

/// (1/(n x0)) * sum_{j=1}^{floor(x0 n)} X_j(s). The divisor is n*x0, not
/// floor(n*x0). Throws Error(EmptyPrefix) when floor(x0 n) = 0.
[[nodiscard]] BenchmarkEstimate benchmark_prefix_mean(const FunctionalSeries& series, double x0);

/// Wraps a known benchmark curve. Throws Error(ShapeMismatch) unless it has
/// one value per grid point.
[[nodiscard]] BenchmarkEstimate benchmark_fixed(std::vector<double> values,
                                                const FunctionalSeries& series);

}  // namespace fdrift
