#include "fdrift/kernels.hpp"

#include "fdrift/error.hpp"

#include <cmath>
#include <numbers>

namespace fdrift {

double triweight(double x) noexcept {
    const double u = 1.0 - x * x;
    if (u <= 0.0) return 0.0;
    return 35.0 / 32.0 * u * u * u;
}

double triweight_star(double x) noexcept {
    return 2.0 * std::numbers::sqrt2 * triweight(std::numbers::sqrt2 * x) - triweight(x);
}

double qs_weight(double x) noexcept {
    const double z = 6.0 * std::numbers::pi * x / 5.0;
    const double z2 = z * z;
    if (std::abs(z) < 1e-2) {
        // 3/z^2 * (z^2/3 - z^4/30 + z^6/840 - ...)
        return 1.0 - z2 / 10.0 + z2 * z2 / 280.0 - z2 * z2 * z2 / 15120.0;
    }
    return 3.0 / z2 * (std::sin(z) / z - std::cos(z));
}

Kernel Kernel::from_table(std::vector<double> values) {
    const std::size_t count = values.size();
    if (count < 3 || count % 2 == 0) {
        throw Error(ErrorKind::InvalidArgument, "kernel table needs an odd number (>= 3) of nodes");
    }
    if (values.front() != 0.0 || values.back() != 0.0) {
        throw Error(ErrorKind::InvalidArgument, "kernel table must vanish at -1 and 1");
    }
    for (std::size_t i = 0; i < count / 2; ++i) {
        const double a = values[i];
        const double b = values[count - 1 - i];
        if (!std::isfinite(a) || std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) {
            throw Error(ErrorKind::InvalidArgument, "kernel table is not symmetric");
        }
    }
    if (!(values[count / 2] > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "kernel table must be positive at 0");
    }
    // Trapezoidal integral is exact for the piecewise-linear interpolant.
    const double step = 2.0 / static_cast<double>(count - 1);
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < count; ++i) integral += 0.5 * step * (values[i] + values[i + 1]);
    if (!(integral > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "kernel table has non-positive integral");
    }
    for (double& v : values) v /= integral;

    Kernel k;
    k.kind_ = Kind::Table;
    k.table_ = std::make_shared<const std::vector<double>>(std::move(values));
    return k;
}

double Kernel::table_eval(double x) const noexcept {
    if (!(x > -1.0 && x < 1.0)) return 0.0;
    const auto& v = *table_;
    // The table is symmetric; evaluating at -|x| keeps k(x) == k(-x) exactly.
    const double pos = (1.0 - std::abs(x)) * 0.5 * static_cast<double>(v.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    const double frac = pos - static_cast<double>(i);
    return v[i] + frac * (v[i + 1] - v[i]);
}

double Kernel::star(double x) const noexcept {
    return 2.0 * std::numbers::sqrt2 * (*this)(std::numbers::sqrt2 * x) - (*this)(x);
}

}  // namespace fdrift
