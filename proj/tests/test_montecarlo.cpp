#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "insider/closed_form.hpp"
#include "insider/error.hpp"
#include "insider/montecarlo.hpp"

using namespace insider;

namespace {

MarketParams P(double m, double rho, double mu, double sigma, double t) {
    return validate_params(m, rho, mu, sigma, t);
}

bool bitwise_equal(const MCEstimate& a, const MCEstimate& b) {
    return a.n == b.n && a.seed == b.seed &&
           std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0 &&
           std::memcmp(&a.sample_stddev, &b.sample_stddev, sizeof(double)) == 0 &&
           std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0 &&
           std::memcmp(&a.zero_fraction, &b.zero_fraction, sizeof(double)) == 0;
}

const MarketParams kRef = P(1, 0, 0.5, 1, 1);

}  // namespace

TEST(MomentAccumulator, MergeMatchesSequential) {
    MomentAccumulator all, left, right;
    for (int i = 0; i < 1000; ++i) {
        const double x = std::sin(i * 0.37) * 5 + i * 1e-3;
        all.add(x);
        (i < 400 ? left : right).add(x);
    }
    const MomentAccumulator merged = merge(left, right);
    EXPECT_EQ(merged.count, all.count);
    EXPECT_NEAR(merged.mean, all.mean, 1e-13);
    EXPECT_NEAR(merged.variance(), all.variance(), 1e-12);
    EXPECT_EQ(merge(MomentAccumulator{}, left).mean, left.mean);
}

TEST(EstimateMean, ChunkCountDoesNotChangeBits) {
    for (Trader t : {Trader::HonestOptimal, Trader::ForwardInsider, Trader::SkorokhodUnbiased}) {
        const MCEstimate one = estimate_mean(t, kRef, 200'000, 42, 1);
        for (unsigned chunks : {2u, 3u, 8u, 17u}) {
            EXPECT_TRUE(bitwise_equal(one, estimate_mean(t, kRef, 200'000, 42, chunks)))
                << to_string(t) << " chunks=" << chunks;
        }
    }
}

TEST(EstimateMean, HalvesMergeToFullRangeBitwise) {
    const std::uint64_t n = 64 * kBlockSize;
    const auto full = accumulate_range(Trader::ForwardInsider, kRef, {}, 7, 0, n, 1);
    const auto lo = accumulate_range(Trader::ForwardInsider, kRef, {}, 7, 0, n / 2, 3);
    const auto hi = accumulate_range(Trader::ForwardInsider, kRef, {}, 7, n / 2, n, 2);
    const auto merged = merge(lo, hi);
    EXPECT_EQ(merged.count, full.count);
    EXPECT_EQ(std::memcmp(&merged.mean, &full.mean, sizeof(double)), 0);
    EXPECT_EQ(std::memcmp(&merged.m2, &full.m2, sizeof(double)), 0);
}

TEST(EstimateMean, DeterministicHonestBond) {
    const MarketParams p = P(3, 0.04, 0.09, 0.5, 2);
    const Allocation bond_only{3, 0};
    const MCEstimate est = estimate_mean(Trader::HonestFixed, p, 10'000, 1, 1, bond_only);
    EXPECT_EQ(est.sample_stddev, 0.0);
    EXPECT_EQ(est.mean, 3 * std::exp(0.08));
    EXPECT_EQ(z_score(est, honest_expected_wealth(p, bond_only)), 0.0);
}

TEST(EstimateMean, ForwardInsiderAtReference) {
    const MCEstimate est = estimate_mean(Trader::ForwardInsider, kRef, 1'000'000, 2024, 4);
    EXPECT_LE(std::abs(est.mean - forward_expected_wealth(kRef)), 3 * est.std_error);
}

TEST(EstimateMean, EstimateInvariants) {
    const MCEstimate est = estimate_mean(Trader::SkorokhodUnbiased, kRef, 100'000, 5);
    EXPECT_NEAR(est.std_error * std::sqrt(1e5), est.sample_stddev, 1e-12 * est.sample_stddev);
    EXPECT_NEAR(est.ci95_halfwidth / est.std_error, 1.959964, 1e-9);
    EXPECT_GT(est.zero_fraction, 0.0);
    EXPECT_EQ(est.seed, 5u);
}

TEST(EstimateMean, ZeroFractionOnlyForSkorokhod) {
    for (Trader t : {Trader::HonestOptimal, Trader::ForwardInsider}) {
        EXPECT_EQ(estimate_mean(t, kRef, 50'000, 6).zero_fraction, 0.0);
    }
}

TEST(EstimateMean, Errors) {
    EXPECT_THROW(estimate_mean(Trader::ForwardInsider, kRef, 1, 1), Error);
    EXPECT_THROW(estimate_mean(Trader::HonestFixed, kRef, 100, 1), Error);  // no allocation
    EXPECT_THROW(estimate_mean(Trader::ForwardInsider, kRef, 100, 1, 0), Error);
    try {
        parse_trader("oracle");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownTrader);
    }
    EXPECT_EQ(parse_trader("skorokhod"), Trader::SkorokhodUnbiased);
}

TEST(EstimateMean, OverflowInsideWorkerPropagates) {
    const MarketParams wild = P(1, 0, 708, 1, 1);
    EXPECT_THROW(estimate_mean(Trader::ForwardInsider, wild, 100'000, 1, 4), Error);
}

TEST(EulerEstimate, ChunkCountDoesNotChangeBits) {
    const EulerEstimate one = estimate_forward_euler(kRef, 16, 50'000, 3, 1);
    const EulerEstimate many = estimate_forward_euler(kRef, 16, 50'000, 3, 8);
    EXPECT_TRUE(bitwise_equal(one.estimate, many.estimate));
    EXPECT_EQ(one.clamp_count, many.clamp_count);
}

TEST(ZScore, Cases) {
    MCEstimate est;
    est.mean = 1.01;
    est.std_error = 0.005;
    EXPECT_NEAR(z_score(est, 1.00), 2.0, 1e-12);
    EXPECT_EQ(z_score(est, 1.01), 0.0);
    est.std_error = 0.0;
    EXPECT_EQ(z_score(est, 1.01), 0.0);
    try {
        z_score(est, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateEstimate);
    }
}
