#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "insider/closed_form.hpp"
#include "insider/error.hpp"
#include "insider/montecarlo.hpp"
#include "insider/special_functions.hpp"
#include "insider/wealth_samplers.hpp"

using namespace insider;

namespace {

MarketParams P(double m, double rho, double mu, double sigma, double t) {
    return validate_params(m, rho, mu, sigma, t);
}

BrownianDraw at(double b) { return BrownianDraw{b, {}}; }

const MarketParams kRef = P(1, 0, 0.5, 1, 1);  // threshold a = 0

// Parameter grid covering all three regimes.
std::vector<MarketParams> grid() {
    return {P(1, 0, 0.5, 1, 1),      P(1, 0.05, 0.1, 0.2, 1),  P(2, 0.03, 0.08, 0.3, 2),
            P(0.5, 0.02, 0.15, 0.5, 5), P(1, 0.1, 0.05, 0.2, 2), P(1, 0.08, 0.02, 0.4, 1),
            P(3, 0.15, 0.0, 0.6, 0.5), P(1, 0.05, 0.05, 0.2, 1), P(1, 0.07, 0.07, 0.8, 3),
            P(1, 0, 0, 1, 1)};
}

}  // namespace

TEST(HonestTerminalWealth, Examples) {
    const MarketParams p = P(1, 0.05, 0.02, 0.2, 1);  // mu = sigma^2 / 2
    EXPECT_DOUBLE_EQ(honest_terminal_wealth(p, {0, 1}, at(0.0)).value, 1.0);
    const MarketParams q = P(1, 0.05, 0.1, 0.2, 2);
    for (double b : {-3.0, 0.0, 2.5}) {
        EXPECT_NEAR(honest_terminal_wealth(q, {1, 0}, at(b)).value, 1.1051709180756477, 1e-15);
    }
    EXPECT_NEAR(honest_terminal_wealth(P(1, 0.05, 0.1, 0.2, 1), {0, 1}, at(0.5)).value,
                1.1972173631218102, 1e-15);
}

TEST(HonestTerminalWealth, Overflow) {
    EXPECT_THROW(honest_terminal_wealth(P(1, 0, 0.1, 5, 1), {0, 1}, at(200.0)), Error);
}

TEST(ForwardInsider, Examples) {
    const MarketParams p = P(2, 0.05, 0.1, 0.3, 1.5);
    const double a = indicator_threshold(p);
    EXPECT_DOUBLE_EQ(forward_insider_terminal_wealth(p, at(a - 1)).value, 2 * std::exp(0.075));
    EXPECT_DOUBLE_EQ(forward_insider_terminal_wealth(p, at(a)).value, 2 * std::exp(0.075));
    EXPECT_NEAR(forward_insider_terminal_wealth(kRef, at(0.3)).value, 1.3498588075760032, 1e-15);
}

TEST(ForwardInsider, AlwaysPositive) {
    const RngStream s(4);
    for (std::uint64_t i = 0; i < 10000; ++i) {
        EXPECT_GT(forward_insider_terminal_wealth(kRef, brownian_terminal(s, i, 1.0)).value, 0.0);
    }
}

TEST(SkorokhodSample, ThreeZones) {
    const MarketParams p = P(1.5, 0.05, 0.1, 0.4, 2);
    const double a = indicator_threshold(p);
    const double shift = p.volatility * p.horizon;
    EXPECT_DOUBLE_EQ(skorokhod_unbiased_sample(p, at(a - 1)).value, 1.5 * std::exp(0.1));
    EXPECT_EQ(skorokhod_unbiased_sample(p, at(a + shift / 2)).value, 0.0);
    EXPECT_EQ(skorokhod_unbiased_sample(p, at(a + shift)).value, 0.0);
    const double b = a + shift + 1;
    EXPECT_DOUBLE_EQ(skorokhod_unbiased_sample(p, at(b)).value,
                     1.5 * std::exp((0.1 - 0.08) * 2 + 0.4 * b));
}

TEST(SkorokhodFactorized, DegenerateAllAboveThreshold) {
    // a < -9 sqrt(T): every draw lies above it (the stream never exceeds ~8.3 sigma).
    const MarketParams p = P(1, 0.0, 3.0, 0.3, 1);
    ASSERT_LT(indicator_threshold(p), -9.0);
    const RngStream s(3);
    const std::uint64_t n = 5000;
    const MCEstimate est = skorokhod_factorized_estimate(p, s, n);
    double g = 0.0;
    for (std::uint64_t i = n; i < 2 * n; ++i) {
        g += std::exp((3.0 - 0.045) + 0.3 * brownian_terminal(s, i, 1.0).terminal_value);
    }
    EXPECT_NEAR(est.mean, g / n, 1e-12 * est.mean);
}

TEST(SkorokhodFactorized, BadSampleCount) {
    EXPECT_THROW(skorokhod_factorized_estimate(kRef, RngStream(1), 1), Error);
}

TEST(SkorokhodFactorized, MarginalMatchesBond) {
    const MarketParams p = P(1, 0.05, 0.05, 0.2, 1);
    const MCEstimate est = skorokhod_factorized_estimate(p, RngStream(77), 1'000'000);
    EXPECT_LE(std::abs(z_score(est, std::exp(0.05))), 3.0);
}

TEST(SkorokhodFactorized, ReferencePoint) {
    const MCEstimate est = skorokhod_factorized_estimate(kRef, RngStream(1), 1'000'000);
    EXPECT_LE(std::abs(est.mean - 1.3243606353500641), 3 * est.std_error);
    EXPECT_NEAR(est.std_error * std::sqrt(1e6), est.sample_stddev, 1e-12 * est.sample_stddev);
}

TEST(Unbiasedness, ForwardAndSkorokhodSamplersAcrossRegimes) {
    const std::uint64_t n = 1'000'000;
    std::uint64_t seed = 500;
    for (const MarketParams& p : grid()) {
        const MCEstimate fwd = estimate_mean(Trader::ForwardInsider, p, n, seed);
        const MCEstimate sk = estimate_mean(Trader::SkorokhodUnbiased, p, n, seed + 1);
        EXPECT_LE(std::abs(z_score(fwd, forward_expected_wealth(p))), 3.0);
        EXPECT_LE(std::abs(z_score(sk, skorokhod_expected_wealth(p))), 3.0);

        const MCEstimate fac = skorokhod_factorized_estimate(p, RngStream(seed + 2), n);
        EXPECT_LE(std::abs(sk.mean - fac.mean), 3 * std::hypot(sk.std_error, fac.std_error));

        const double a = indicator_threshold(p);
        const double rt = std::sqrt(p.horizon);
        const double q = normal_cdf((a + p.volatility * p.horizon) / rt) - normal_cdf(a / rt);
        EXPECT_LE(std::abs(sk.zero_fraction - q), 3 * std::sqrt(q * (1 - q) / n) + 1e-15);
        seed += 10;
    }
}

TEST(HonestSampler, DeterministicWithoutStock) {
    const MarketParams p = P(2, 0.05, 0.1, 0.7, 3);
    const RngStream s(9);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        EXPECT_EQ(honest_terminal_wealth(p, {2, 0}, brownian_terminal(s, i, 3)).value,
                  2 * std::exp(0.05 * 3));
    }
}

TEST(ForwardEuler, AllZeroIncrementsSelectBond) {
    const MarketParams p = P(1, 0.05, 0.02, 0.2, 1);  // a = (0.05 - 0.02 + 0.02)/0.2 > 0
    ASSERT_GE(indicator_threshold(p), 0.0);
    const EulerSample s = forward_euler_terminal(p, std::vector<double>(10, 0.0));
    EXPECT_DOUBLE_EQ(s.sample.value, std::exp(0.05));
    EXPECT_FALSE(s.clamped);
}

TEST(ForwardEuler, SingleStepProduct) {
    const std::vector<double> inc{0.4};
    const EulerSample s = forward_euler_terminal(kRef, inc);
    EXPECT_DOUBLE_EQ(s.sample.value, 1 + 0.5 + 0.4);
}

TEST(ForwardEuler, ClampsNegativeStockLeg) {
    // b_T > a overall but one step drives the stock below zero.
    const MarketParams p = P(1, 0, 0.5, 1, 1);
    const std::vector<double> inc{-2.0, 3.0};
    const EulerSample s = forward_euler_terminal(p, inc);
    EXPECT_TRUE(s.clamped);
    EXPECT_EQ(s.sample.value, 0.0);
}

TEST(ForwardEuler, RequiresIncrements) {
    EXPECT_THROW(forward_euler_terminal(kRef, std::vector<double>{}), Error);
}

TEST(ForwardEuler, WeakErrorAtFineGrid) {
    const EulerEstimate e = estimate_forward_euler(kRef, 256, 100'000, 31);
    const double reference = forward_expected_wealth(kRef);
    EXPECT_LE(std::abs(e.estimate.mean - reference),
              std::max(3 * e.estimate.std_error, 0.02 * reference));
}
