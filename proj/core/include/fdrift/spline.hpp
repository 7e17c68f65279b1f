#pragma once

#include <span>
#include <vector>

namespace fdrift {

/// Natural cubic interpolating spline. Outside the knot range the spline is
/// continued linearly with the end slopes. Two knots give the chord, one knot
/// a constant.
class NaturalSpline {
public:
    /// Knots must be strictly increasing; throws Error(InvalidArgument)
    /// otherwise or when no knots are given.
    NaturalSpline(std::span<const double> x, std::span<const double> y);

    [[nodiscard]] double operator()(double x) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  ///< second derivatives at the knots
};

}  // namespace fdrift
