#include "fdrift/spline.hpp"

#include "fdrift/error.hpp"

#include <algorithm>

namespace fdrift {

NaturalSpline::NaturalSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
    if (x.empty() || x.size() != y.size()) {
        throw Error(ErrorKind::InvalidArgument, "spline needs matching, non-empty knot and value arrays");
    }
    for (std::size_t i = 1; i < x_.size(); ++i) {
        if (!(x_[i] > x_[i - 1])) throw Error(ErrorKind::InvalidArgument, "spline knots must increase strictly");
    }
    const std::size_t k = x_.size();
    if (k < 3) return;

    // Tridiagonal system for the interior second derivatives (Thomas algorithm).
    const std::size_t inner = k - 2;
    std::vector<double> diag(inner), upper(inner), rhs(inner);
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        diag[i - 1] = 2.0 * (h0 + h1);
        upper[i - 1] = h1;
        rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < inner; ++i) {
        const double lower = x_[i + 1] - x_[i];
        const double factor = lower / diag[i - 1];
        diag[i] -= factor * upper[i - 1];
        rhs[i] -= factor * rhs[i - 1];
    }
    for (std::size_t i = inner; i-- > 0;) {
        const double next = i + 1 < inner ? m_[i + 2] : 0.0;
        m_[i + 1] = (rhs[i] - upper[i] * next) / diag[i];
    }
}

double NaturalSpline::operator()(double x) const {
    const std::size_t k = x_.size();
    if (k == 1) return y_[0];
    auto slope_at = [&](std::size_t seg, bool right_end) {
        const double h = x_[seg + 1] - x_[seg];
        const double chord = (y_[seg + 1] - y_[seg]) / h;
        return right_end ? chord + h * (2.0 * m_[seg + 1] + m_[seg]) / 6.0
                         : chord - h * (2.0 * m_[seg] + m_[seg + 1]) / 6.0;
    };
    if (x <= x_.front()) return y_.front() + (x - x_.front()) * slope_at(0, false);
    if (x >= x_.back()) return y_.back() + (x - x_.back()) * slope_at(k - 2, true);

    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t seg = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[seg + 1] - x_[seg];
    const double a = (x_[seg + 1] - x) / h;
    const double b = (x - x_[seg]) / h;
    return a * y_[seg] + b * y_[seg + 1] +
           ((a * a * a - a) * m_[seg] + (b * b * b - b) * m_[seg + 1]) * h * h / 6.0;
}

}  // namespace fdrift
