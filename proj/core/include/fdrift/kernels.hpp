#pragma once

#include <memory>
#include <vector>

namespace fdrift {

/// Triweight kernel (35/32)(1-x^2)^3 on [-1,1]; C^2 on the whole real line.
[[nodiscard]] double triweight(double x) noexcept;

/// Jackknife kernel induced by 2*mu_{h/sqrt2} - mu_h:
/// K*(x) = 2*sqrt(2)*K(sqrt(2)*x) - K(x) with K the triweight.
[[nodiscard]] double triweight_star(double x) noexcept;

/// Quadratic spectral weight
///   w(x) = 25/(12 pi^2 x^2) * (sin(6 pi x/5)/(6 pi x/5) - cos(6 pi x/5)),
/// with w(0) = 1.
[[nodiscard]] double qs_weight(double x) noexcept;

/// A smoothing kernel supported on [-1,1]. Either the triweight default or a
/// user table of values on a uniform node grid over [-1,1], interpolated
/// linearly and renormalised to unit integral.
class Kernel {
public:
    enum class Kind { Triweight, Table };

    /// Triweight.
    Kernel() = default;

    [[nodiscard]] static Kernel triweight() { return Kernel{}; }

    /// `values` holds K at 2M+1 equispaced nodes -1 = x_0 < ... < x_2M = 1.
    /// Requires an odd count >= 3, zero end values, symmetry and a positive
    /// centre value. Throws Error(InvalidArgument) otherwise.
    [[nodiscard]] static Kernel from_table(std::vector<double> values);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

    [[nodiscard]] double operator()(double x) const noexcept {
        return kind_ == Kind::Triweight ? fdrift::triweight(x) : table_eval(x);
    }

    /// K*(x) = 2 sqrt(2) K(sqrt(2) x) - K(x).
    [[nodiscard]] double star(double x) const noexcept;

private:
    [[nodiscard]] double table_eval(double x) const noexcept;

    Kind kind_ = Kind::Triweight;
    std::shared_ptr<const std::vector<double>> table_;
};

}  // namespace fdrift
