#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace fdrift {

/// Philox4x32-10 block function (Salmon et al., Random123).
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                                      std::array<std::uint32_t, 2> key) noexcept;

/// splitmix64 finaliser.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Independent 64-bit key for (seed, domain tag, index).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                        std::uint64_t index) noexcept;

/// Stateless generator: every variate is a pure function of
/// (key, stream, index), so any subset can be regenerated in isolation and
/// parallel consumers never share state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    /// Uniform on the open interval (0,1), 53-bit resolution.
    [[nodiscard]] double uniform(std::uint64_t stream, std::uint64_t index) const noexcept;

    /// Standard normal via Box-Muller on one Philox block per index pair.
    [[nodiscard]] double normal(std::uint64_t stream, std::uint64_t index) const noexcept;

    /// out[k] = normal(stream, k).
    void normals(std::uint64_t stream, std::span<double> out) const noexcept;

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

private:
    [[nodiscard]] std::array<std::uint32_t, 4> block(std::uint64_t stream,
                                                     std::uint64_t pair) const noexcept;

    std::uint64_t key_;
};

}  // namespace fdrift
