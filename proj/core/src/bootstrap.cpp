#include "fdrift/bootstrap.hpp"

#include "fdrift/error.hpp"
#include "fdrift/parallel.hpp"
#include "fdrift/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace fdrift {

std::size_t BlockPlan::block_of(std::size_t j) const noexcept {
    if (j == 0 || q + r == 0) return m;
    const std::size_t l = (j - 1) / (q + r);
    if (l >= m) return m;
    return (j - 1) % (q + r) < q ? l : m;
}

BlockPlan make_blocks(std::size_t n, std::size_t q, std::size_t r) {
    if (!(r >= 1 && q > r && 2 * (q + r) < n)) {
        std::ostringstream msg;
        msg << "block lengths q=" << q << " r=" << r << " violate q > r >= 1 and 2(q+r) < n=" << n;
        throw Error(ErrorKind::InvalidBlocks, msg.str());
    }
    BlockPlan plan{n, q, r, n / (q + r), {}};
    for (std::size_t l = 0; l < plan.m; ++l) plan.starts.push_back(l * (q + r) + 1);
    return plan;
}

BlockSums::BlockSums(const ResidualMatrix& res, const ExtremalSet& ext, const BlockPlan& plan, double h,
                     const Kernel& kernel) {
    if (ext.points.empty()) throw Error(ErrorKind::EmptyExtremalSet, "extremal set is empty");
    const std::size_t n = res.values.rows();
    if (plan.n != n) throw Error(ErrorKind::ShapeMismatch, "block plan built for a different n");
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "bandwidth must be positive");

    const double dn = static_cast<double>(n);
    scale_ = 1.0 / std::sqrt(static_cast<double>(plan.m * plan.q) * h);
    nh_ = dn * h;
    sums_ = Matrix(ext.points.size(), plan.m);

    // Points sharing t reuse the kernel column; ext is in row-major order.
    double cached_t = -1.0;
    std::size_t lo = 1, hi = 0;
    std::vector<double> kstar;
    for (std::size_t p = 0; p < ext.points.size(); ++p) {
        const auto& pt = ext.points[p];
        if (pt.t != cached_t) {
            cached_t = pt.t;
            lo = static_cast<std::size_t>(std::max(1.0, std::floor(dn * (pt.t - h))));
            hi = static_cast<std::size_t>(std::min(dn, std::ceil(dn * (pt.t + h))));
            kstar.assign(hi >= lo ? hi - lo + 1 : 0, 0.0);
            for (std::size_t j = lo; j <= hi; ++j) {
                kstar[j - lo] = kernel.star((static_cast<double>(j) / dn - pt.t) / h);
            }
        }
        auto row = sums_.row(p);
        for (std::size_t j = lo; j <= hi; ++j) {
            const std::size_t l = plan.block_of(j);
            if (l >= plan.m) continue;
            row[l] += res.values(j - 1, pt.at.s_pos) * kstar[j - lo];
        }
    }
}

double BlockSums::statistic(std::span<const double> multipliers) const {
    if (multipliers.size() != blocks()) {
        throw Error(ErrorKind::ShapeMismatch, "multiplier count differs from the block count");
    }
    double best = 0.0;
    for (std::size_t p = 0; p < points(); ++p) {
        const auto a = sums_.row(p);
        double acc = 0.0;
        for (std::size_t l = 0; l < a.size(); ++l) acc += multipliers[l] * a[l];
        best = std::max(best, std::abs(acc));
    }
    return best * scale_;
}

BootstrapDraws BlockSums::draws(std::size_t B, std::uint64_t seed, std::size_t threads) const {
    BootstrapDraws out{std::vector<double>(B, 0.0), B, seed};
    const CounterRng rng(seed);
    const std::size_t m = blocks();
    // Replicates are processed in fixed chunks so each row of the sum matrix
    // is streamed once per chunk. Every dot product is accumulated over l in
    // order, so chunking does not affect the bits.
    constexpr std::size_t kChunk = 8;
    const std::size_t chunks = (B + kChunk - 1) / kChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t b0 = c * kChunk;
        const std::size_t width = std::min(kChunk, B - b0);
        std::vector<double> nu(kChunk * m, 0.0);
        for (std::size_t k = 0; k < width; ++k) {
            rng.normals(b0 + k, std::span<double>(nu.data() + k * m, m));
        }
        std::array<double, kChunk> best{};
        for (std::size_t p = 0; p < points(); ++p) {
            const auto a = sums_.row(p);
            std::array<double, kChunk> acc{};
            for (std::size_t l = 0; l < m; ++l) {
                const double al = a[l];
                for (std::size_t k = 0; k < kChunk; ++k) acc[k] += nu[k * m + l] * al;
            }
            for (std::size_t k = 0; k < kChunk; ++k) best[k] = std::max(best[k], std::abs(acc[k]));
        }
        for (std::size_t k = 0; k < width; ++k) out.values[b0 + k] = best[k] * scale_;
    });
    return out;
}

double BlockSums::conditional_variance(std::size_t point) const {
    double ss = 0.0;
    for (double a : sums_.row(point)) ss += a * a;
    return ss * scale_ * scale_;
}

double BlockSums::variance_diagnostic() const {
    double best = 0.0;
    for (std::size_t p = 0; p < points(); ++p) {
        double ss = 0.0;
        for (double a : sums_.row(p)) ss += a * a;
        best = std::max(best, ss / nh_);
    }
    return best;
}

double bootstrap_draw(const ResidualMatrix& res, const ExtremalSet& ext, const BlockPlan& plan, double h,
                      std::span<const double> multipliers, const Kernel& kernel) {
    return BlockSums(res, ext, plan, h, kernel).statistic(multipliers);
}

double bootstrap_quantile(std::span<const double> draws, double level) {
    if (draws.empty()) throw Error(ErrorKind::InvalidArgument, "no bootstrap draws");
    if (!(level > 0.0 && level <= 1.0)) throw Error(ErrorKind::InvalidArgument, "quantile level outside (0,1]");
    std::vector<double> sorted(draws.begin(), draws.end());
    std::sort(sorted.begin(), sorted.end());
    const double B = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(level * B - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

double tapered_ar1_coefficient(std::span<const double> z, std::size_t max_lag) {
    const std::size_t n = z.size();
    max_lag = std::max<std::size_t>(1, std::min(max_lag, n > 1 ? n - 1 : 1));
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> gamma(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j + k < n; ++j) acc += (z[j] - mean) * (z[j + k] - mean);
        gamma[k] = acc / static_cast<double>(n);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        const double w = qs_weight(static_cast<double>(k) / static_cast<double>(max_lag));
        num += w * gamma[k] * gamma[k - 1];
        den += w * gamma[k - 1] * gamma[k - 1];
    }
    return den > 0.0 ? num / den : 0.0;
}

std::size_t plugin_block_length(double rho_hat, std::size_t n) {
    const double dn = static_cast<double>(n);
    const double root5 = std::pow(dn, 0.2);
    const auto floor_q = static_cast<std::size_t>(std::floor(root5 + 1e-9));
    const double rho = std::min(std::abs(rho_hat), 0.97);
    if (rho == 0.0) return floor_q;
    const double alpha = 2.0 * rho / (1.0 - rho * rho);
    const auto q = static_cast<std::size_t>(std::ceil(std::pow(alpha, 0.4) * root5 - 1e-9));
    return std::max(floor_q, q);
}

BlockLengths select_block_lengths(const ResidualMatrix& res) {
    const std::size_t n = res.values.rows();
    if (n < 16) throw Error(ErrorKind::SeriesTooShort, "block-length selection needs n >= 16");
    const double dn = static_cast<double>(n);
    BlockLengths out;
    out.r = static_cast<std::size_t>(std::ceil(std::pow(dn, 0.1) - 1e-9));
    const auto q0 = static_cast<std::size_t>(std::floor(std::pow(dn, 0.2) + 1e-9));

    std::vector<double> z(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (double v : res.values.row(j)) acc += v;
        z[j] = acc / static_cast<double>(res.values.cols());
    }
    out.rho_hat = tapered_ar1_coefficient(z, q0);
    out.q = std::max(plugin_block_length(out.rho_hat, n), out.r + 1);
    while (2 * (out.q + out.r) >= n && out.q > out.r + 1) --out.q;
    return out;
}

}  // namespace fdrift
