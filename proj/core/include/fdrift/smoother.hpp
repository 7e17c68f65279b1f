#pragma once

#include "fdrift/kernels.hpp"
#include "fdrift/matrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fdrift {

/// n curves observed on a common grid of N points in [0,1]. Row j (0-based)
/// is the curve at time (j+1)/n.
class FunctionalSeries {
public:
    FunctionalSeries() = default;

    /// Throws Error(ShapeMismatch) on inconsistent sizes or n < 2, N < 2,
    /// Error(NonMonotoneGrid) unless s_grid is strictly increasing in [0,1],
    /// and Error(InvalidArgument) on non-finite values.
    FunctionalSeries(Matrix values, std::vector<double> s_grid,
                     std::vector<std::string> labels = {});

    [[nodiscard]] std::size_t curves() const noexcept { return values_.rows(); }
    [[nodiscard]] std::size_t points() const noexcept { return values_.cols(); }
    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& s_grid() const noexcept { return s_grid_; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Design time of 0-based row j.
    [[nodiscard]] double time(std::size_t row) const noexcept {
        return static_cast<double>(row + 1) / static_cast<double>(curves());
    }

    friend bool operator==(const FunctionalSeries&, const FunctionalSeries&) = default;

private:
    Matrix values_;
    std::vector<double> s_grid_;
    std::vector<std::string> labels_;
};

/// Monitoring interval [x0, x1] within [0,1].
struct Window {
    double x0 = 0.0;
    double x1 = 1.0;
};

/// Local linear weights restricted to the rows where they can be nonzero.
/// weights[k] multiplies 0-based row first + k.
struct LocalWeights {
    std::size_t first = 0;
    std::vector<double> weights;
};

/// Half-open range of 0-based rows removed from the design (leave-fold-out).
struct RowExclusion {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Closed-form local linear weights at time t over design points j/n,
/// j = 1..n:
///   w_j = K_h(j/n - t) [S2 - (j/n - t) S1] / (S0 S2 - S1^2),
///   S_l = sum_j K_h(j/n - t) (j/n - t)^l,  K_h(u) = K(u/h).
/// Throws Error(DegenerateDesign) when S0 S2 - S1^2 <= 1e-14 S0 h^2.
[[nodiscard]] LocalWeights local_linear_window(double t, double h, std::size_t n,
                                               const Kernel& kernel = {},
                                               RowExclusion excluded = {});

/// Dense variant of local_linear_window, one weight per design point.
[[nodiscard]] std::vector<double> local_linear_weights(double t, double h, std::size_t n,
                                                       const Kernel& kernel = {});

/// Weights of the jackknife combination 2 mu_{h/sqrt2} - mu_h.
[[nodiscard]] LocalWeights bias_corrected_window(double t, double h, std::size_t n,
                                                 const Kernel& kernel = {},
                                                 RowExclusion excluded = {});

/// sum_k w[k] * X_{first+k}(s_i) for every grid column i.
[[nodiscard]] std::vector<double> apply_weights(const LocalWeights& w, const Matrix& values);

/// Bias-corrected estimate at an arbitrary time t (one value per s_i).
[[nodiscard]] std::vector<double> bias_corrected_at(const FunctionalSeries& series, double t,
                                                    double h, const Kernel& kernel = {});

/// Estimated mean on the boundary-trimmed design grid
/// t in {j/n} intersected with [x0 v h, x1 ^ (1-h)].
struct MeanSurface {
    Matrix values;                     ///< |t_grid| x N
    std::vector<std::size_t> t_index;  ///< 1-based design index j of each row
    std::vector<double> t_grid;        ///< j/n
    std::vector<double> s_grid;
    double bandwidth = 0.0;
    std::size_t n = 0;                 ///< length of the source series
};

/// 1-based design indices inside [x0 v h, x1 ^ (1-h)]. Throws
/// Error(EmptyWindow) if no design point falls inside.
[[nodiscard]] std::vector<std::size_t> trimmed_design(std::size_t n, double h, Window window);

/// mu~_h = 2 mu^_{h/sqrt2} - mu^_h on the trimmed grid. Weight vectors are
/// computed once per t and applied to all N columns. Rows may be computed in
/// parallel; the result does not depend on `threads`.
[[nodiscard]] MeanSurface bias_corrected_surface(const FunctionalSeries& series, double h,
                                                 Window window, const Kernel& kernel = {},
                                                 std::size_t threads = 1);

/// Uncorrected local linear estimate mu^_h on the trimmed grid.
[[nodiscard]] MeanSurface local_linear_surface(const FunctionalSeries& series, double h,
                                               Window window, const Kernel& kernel = {},
                                               std::size_t threads = 1);

struct ResidualMatrix {
    Matrix values;                  ///< n x N
    std::vector<bool> extrapolated; ///< row outside the surface's t_grid
};

/// eps^_j(s_i) = X_j(s_i) - mu~(j/n, s_i). Rows whose time lies outside the
/// surface's t_grid are fitted with boundary weights at j/n (the nearest
/// fitted row if even those are degenerate) and flagged.
/// Throws Error(ShapeMismatch) if the surface does not match the series.
[[nodiscard]] ResidualMatrix residuals(const FunctionalSeries& series, const MeanSurface& surface,
                                       const Kernel& kernel = {});

}  // namespace fdrift
