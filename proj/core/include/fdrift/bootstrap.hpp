#pragma once

#include "fdrift/deviation.hpp"
#include "fdrift/kernels.hpp"
#include "fdrift/matrix.hpp"
#include "fdrift/smoother.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fdrift {

/// Large blocks I_l = {(l-1)(q+r)+1, ..., (l-1)(q+r)+q}, l = 1..m, separated
/// by small blocks of length r; m = floor(n/(q+r)). Indices are 1-based.
struct BlockPlan {
    std::size_t n = 0;
    std::size_t q = 0;
    std::size_t r = 0;
    std::size_t m = 0;
    std::vector<std::size_t> starts;  ///< first index of each I_l

    /// 0-based block containing 1-based index j, or m if j lies in no I_l.
    [[nodiscard]] std::size_t block_of(std::size_t j) const noexcept;
};

/// Throws Error(InvalidBlocks) unless 2(q+r) < n and q > r >= 1.
[[nodiscard]] BlockPlan make_blocks(std::size_t n, std::size_t q, std::size_t r);

struct BootstrapDraws {
    std::vector<double> values;  ///< one statistic per replicate, in replicate order
    std::size_t B = 0;
    std::uint64_t seed = 0;
};

/// Block sums A_l(t,s) = sum_{j in I_l} eps^_j(s) K*((j/n - t)/h) for every
/// extremal point, precomputed once so that each multiplier replicate costs
/// one |ext| x m matrix-vector product.
class BlockSums {
public:
    /// Throws Error(EmptyExtremalSet) for an empty set and
    /// Error(ShapeMismatch) if the plan does not match the residual rows.
    BlockSums(const ResidualMatrix& res, const ExtremalSet& ext, const BlockPlan& plan, double h,
              const Kernel& kernel = {});

    [[nodiscard]] std::size_t points() const noexcept { return sums_.rows(); }
    [[nodiscard]] std::size_t blocks() const noexcept { return sums_.cols(); }
    [[nodiscard]] const Matrix& sums() const noexcept { return sums_; }

    /// 1 / sqrt(m q h).
    [[nodiscard]] double scale() const noexcept { return scale_; }

    /// max over points of |scale * sum_l nu_l A_l|. Throws Error(ShapeMismatch)
    /// unless multipliers.size() == m.
    [[nodiscard]] double statistic(std::span<const double> multipliers) const;

    /// B replicates with standard normal multipliers; replicate b uses
    /// nu_l = CounterRng(seed).normal(b, l), so draws are identical for any
    /// thread count and replicate b can be reproduced alone.
    [[nodiscard]] BootstrapDraws draws(std::size_t B, std::uint64_t seed, std::size_t threads = 1) const;

    /// Conditional variance (mqh)^{-1} sum_l A_l^2 of the multiplier sum at a point.
    [[nodiscard]] double conditional_variance(std::size_t point) const;

    /// max over points of (nh)^{-1} sum_l A_l^2; small values signal a
    /// degenerate bootstrap variance.
    [[nodiscard]] double variance_diagnostic() const;

private:
    Matrix sums_;
    double scale_ = 0.0;
    double nh_ = 0.0;
};

/// One multiplier draw computed from scratch.
[[nodiscard]] double bootstrap_draw(const ResidualMatrix& res, const ExtremalSet& ext,
                                    const BlockPlan& plan, double h,
                                    std::span<const double> multipliers, const Kernel& kernel = {});

/// Order statistic of rank ceil(level * B). Throws Error(InvalidArgument)
/// for an empty sample or a level outside (0,1].
[[nodiscard]] double bootstrap_quantile(std::span<const double> draws, double level);

/// AR(1) coefficient of z fitted to the autocovariance recursion
/// gamma(k) = rho * gamma(k-1), k = 1..max_lag, with quadratic spectral
/// weights w(k/max_lag). Returns 0 for a constant series.
[[nodiscard]] double tapered_ar1_coefficient(std::span<const double> z, std::size_t max_lag);

/// max(floor(n^(1/5)), ceil((2|rho|/(1-rho^2))^(2/5) n^(1/5))), |rho| capped at 0.97.
[[nodiscard]] std::size_t plugin_block_length(double rho_hat, std::size_t n);

struct BlockLengths {
    std::size_t q = 0;
    std::size_t r = 0;
    double rho_hat = 0.0;
};

/// r = ceil(n^(1/10)); q from the AR(1) plug-in on the s-averaged residual
/// series, clamped to keep 2(q+r) < n and q > r. Throws
/// Error(SeriesTooShort) for n < 16.
[[nodiscard]] BlockLengths select_block_lengths(const ResidualMatrix& res);

}  // namespace fdrift
