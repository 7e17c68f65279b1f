#include "fdrift/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace fdrift {
namespace {

// Known-answer vectors published with the Random123 library (kat_vectors).
TEST(Rng, PhiloxKnownAnswers) {
    using Block = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}), (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, DeriveSeedSeparatesInputs) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s)
        for (std::uint64_t t = 0; t < 4; ++t)
            for (std::uint64_t i = 0; i < 16; ++i) seen.insert(derive_seed(s, t, i));
    EXPECT_EQ(seen.size(), 4u * 4u * 16u);
    EXPECT_EQ(derive_seed(5, 6, 7), derive_seed(5, 6, 7));
}

TEST(Rng, UniformInOpenInterval) {
    const CounterRng rng(42);
    for (std::uint64_t k = 0; k < 10000; ++k) {
        const double u = rng.uniform(3, k);
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Rng, NormalsAreAddressable) {
    const CounterRng rng(7);
    std::vector<double> out(33);
    rng.normals(5, out);
    for (std::size_t k = 0; k < out.size(); ++k) EXPECT_EQ(out[k], rng.normal(5, k));
}

TEST(Rng, NormalMoments) {
    const CounterRng rng(2024);
    const std::size_t count = 200000;
    std::vector<double> z(count);
    rng.normals(0, z);
    double m1 = 0.0, m2 = 0.0, m4 = 0.0;
    for (double v : z) {
        m1 += v;
        m2 += v * v;
        m4 += v * v * v * v;
    }
    m1 /= count;
    m2 /= count;
    m4 /= count;
    EXPECT_NEAR(m1, 0.0, 4.0 / std::sqrt(count));
    EXPECT_NEAR(m2, 1.0, 4.0 * std::sqrt(2.0 / count));
    EXPECT_NEAR(m4, 3.0, 4.0 * std::sqrt(96.0 / count));
}

TEST(Rng, StreamsDiffer) {
    const CounterRng rng(1);
    EXPECT_NE(rng.normal(0, 0), rng.normal(1, 0));
    EXPECT_NE(CounterRng(1).normal(0, 0), CounterRng(2).normal(0, 0));
}

}  // namespace
}  // namespace fdrift
