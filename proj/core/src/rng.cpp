#include "fdrift/rng.hpp"

#include <cmath>
#include <numbers>

namespace fdrift {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_unit(std::uint32_t a, std::uint32_t b) noexcept {
    const std::uint64_t bits = (static_cast<std::uint64_t>(a >> 5) << 26) | (b >> 6);
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) noexcept {
    return mix64(mix64(mix64(seed) ^ tag) ^ index);
}

std::array<std::uint32_t, 4> CounterRng::block(std::uint64_t stream, std::uint64_t pair) const noexcept {
    return philox4x32({static_cast<std::uint32_t>(pair), static_cast<std::uint32_t>(pair >> 32),
                       static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
                      {static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)});
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t index) const noexcept {
    const auto b = block(stream, index / 2);
    return index % 2 == 0 ? to_unit(b[0], b[1]) : to_unit(b[2], b[3]);
}

double CounterRng::normal(std::uint64_t stream, std::uint64_t index) const noexcept {
    const auto b = block(stream, index / 2);
    const double radius = std::sqrt(-2.0 * std::log(to_unit(b[0], b[1])));
    const double angle = 2.0 * std::numbers::pi * to_unit(b[2], b[3]);
    return index % 2 == 0 ? radius * std::cos(angle) : radius * std::sin(angle);
}

void CounterRng::normals(std::uint64_t stream, std::span<double> out) const noexcept {
    for (std::size_t k = 0; k < out.size(); k += 2) {
        const auto b = block(stream, k / 2);
        const double radius = std::sqrt(-2.0 * std::log(to_unit(b[0], b[1])));
        const double angle = 2.0 * std::numbers::pi * to_unit(b[2], b[3]);
        out[k] = radius * std::cos(angle);
        if (k + 1 < out.size()) out[k + 1] = radius * std::sin(angle);
    }
}

}  // namespace fdrift
