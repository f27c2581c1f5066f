#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "insider/error.hpp"
#include "insider/sampling.hpp"
#include "insider/special_functions.hpp"

using namespace insider;

TEST(Philox, KnownAnswerVectors) {
    // Random123 reference vectors for philox4x32-10.
    using A4 = std::array<std::uint32_t, 4>;
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                            {0xffffffff, 0xffffffff}),
              (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                            {0xa4093822, 0x299f31d0}),
              (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, UniformIsStrictlyInsideUnitInterval) {
    const RngStream s(3);
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double u = s.uniform(i);
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(StandardNormal, DeterministicInSeedAndIndex) {
    const double a = standard_normal(RngStream(42), 7);
    const double b = standard_normal(RngStream(42), 7);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
    EXPECT_NE(standard_normal(RngStream(42), 8), a);
    EXPECT_NE(standard_normal(RngStream(43), 7), a);
}

TEST(StandardNormal, MomentsOverAMillionDraws) {
    const RngStream s(2024);
    const int n = 1'000'000;
    double sum = 0.0;
    double sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = standard_normal(s, i);
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    EXPECT_NEAR(mean, 0.0, 0.004);
    EXPECT_NEAR(var, 1.0, 0.006);
}

TEST(StandardNormal, KolmogorovSmirnov) {
    const RngStream s(99);
    const int n = 100000;
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = standard_normal(s, i);
    std::sort(z.begin(), z.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = normal_cdf(z[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    EXPECT_LT(d, 1.95 / std::sqrt(static_cast<double>(n)));
}

TEST(StandardNormal, ChunkedDrawingGivesIdenticalValues) {
    const RngStream s(5);
    const std::uint64_t n = 10000;
    std::vector<double> one_pass(n);
    for (std::uint64_t i = 0; i < n; ++i) one_pass[i] = standard_normal(s, i);
    for (std::uint64_t chunks : {2u, 3u, 7u, 64u}) {
        std::vector<double> chunked;
        const std::uint64_t size = (n + chunks - 1) / chunks;
        // Visit chunks back to front to make order irrelevant.
        std::vector<std::vector<double>> parts(chunks);
        for (std::uint64_t c = chunks; c-- > 0;) {
            for (std::uint64_t i = c * size; i < std::min(n, (c + 1) * size); ++i) {
                parts[c].push_back(standard_normal(s, i));
            }
        }
        for (auto& part : parts) chunked.insert(chunked.end(), part.begin(), part.end());
        ASSERT_EQ(std::memcmp(chunked.data(), one_pass.data(), n * sizeof(double)), 0) << chunks;
    }
}

TEST(BrownianTerminal, Scaling) {
    const RngStream s(8);
    EXPECT_EQ(brownian_terminal(s, 3, 1.0).terminal_value, standard_normal(s, 3));
    EXPECT_EQ(brownian_terminal(s, 3, 4.0).terminal_value, 2.0 * standard_normal(s, 3));
    EXPECT_TRUE(brownian_terminal(s, 3, 4.0).increments.empty());
}

TEST(BrownianTerminal, VarianceMatchesHorizon) {
    const RngStream s(10);
    const int n = 1'000'000;
    double sum = 0.0;
    double sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double b = brownian_terminal(s, i, 2.0).terminal_value;
        sum += b;
        sumsq += b * b;
    }
    const double mean = sum / n;
    EXPECT_NEAR(sumsq / n - mean * mean, 2.0, 0.012);
}

TEST(BrownianIncrements, SingleStepEqualsTerminalDraw) {
    const RngStream s(12);
    const BrownianDraw d = brownian_increments(s, 17, 3.0, 1);
    ASSERT_EQ(d.increments.size(), 1u);
    EXPECT_EQ(d.increments[0], brownian_terminal(s, 17, 3.0).terminal_value);
    EXPECT_EQ(d.terminal_value, d.increments[0]);
}

TEST(BrownianIncrements, LayoutAndSum) {
    const RngStream s(13);
    const std::uint64_t steps = 8;
    const BrownianDraw d = brownian_increments(s, 5, 2.0, steps);
    double sum = 0.0;
    for (std::uint64_t k = 0; k < steps; ++k) {
        EXPECT_EQ(d.increments[k], std::sqrt(2.0 / 8.0) * standard_normal(s, 5 * steps + k));
        sum += d.increments[k];
    }
    EXPECT_NEAR(sum, d.terminal_value, 1e-12 * std::sqrt(2.0));
}

TEST(BrownianIncrements, TerminalVarianceOnFineGrid) {
    const RngStream s(14);
    const int n = 100000;
    std::vector<double> buf(256);
    double sum = 0.0;
    double sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double b = fill_brownian_increments(s, i, 1.0, buf);
        sum += b;
        sumsq += b * b;
    }
    const double mean = sum / n;
    EXPECT_NEAR(sumsq / n - mean * mean, 1.0, 0.02);
}

TEST(BrownianIncrements, IncrementVariance) {
    const RngStream s(15);
    const int n = 20000;
    const std::uint64_t steps = 16;
    double sumsq = 0.0;
    std::vector<double> buf(steps);
    for (int i = 0; i < n; ++i) {
        fill_brownian_increments(s, i, 2.0, buf);
        for (double x : buf) sumsq += x * x;
    }
    // 320000 squared increments with mean T / n_steps = 0.125.
    EXPECT_NEAR(sumsq / (n * steps), 0.125, 0.125 * 4 * std::sqrt(2.0 / (n * steps)));
}

TEST(BrownianIncrements, IndexOverflow) {
    const RngStream s(1);
    const std::uint64_t huge = std::numeric_limits<std::uint64_t>::max() / 4;
    try {
        brownian_increments(s, huge, 1.0, 16);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IndexOverflow);
    }
    // The last admissible path still works.
    const std::uint64_t last = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) / 16 - 1;
    EXPECT_NO_THROW(brownian_increments(s, last, 1.0, 16));
}
