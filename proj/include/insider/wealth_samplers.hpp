#pragma once

#include <cstdint>
#include <span>

#include "insider/estimate.hpp"
#include "insider/market_model.hpp"
#include "insider/sampling.hpp"

namespace insider {

enum class Trader {
    HonestFixed,        // buy-and-hold with a caller-supplied allocation
    HonestOptimal,      // buy-and-hold with honest_optimal_allocation()
    ForwardInsider,     // exact forward-integral insider
    SkorokhodUnbiased,  // Gaussian-translation sample of the Skorokhod insider
};

std::string_view to_string(Trader trader);

/// Accepts the names produced by to_string(Trader); throws
/// Error{UnknownTrader} otherwise.
Trader parse_trader(std::string_view name);

struct WealthSample {
    double value;  // one realization of S(T)
    Trader trader;
    double b_T;
};

/// M0 e^{rho T} + M1 exp((mu - sigma^2/2) T + sigma B_T).
WealthSample honest_terminal_wealth(const MarketParams& p, const Allocation& a,
                                    const BrownianDraw& b);

/// All wealth goes to the bond when B_T <= a and to the stock otherwise;
/// the stock leg follows the classical GBM solution.
WealthSample forward_insider_terminal_wealth(const MarketParams& p, const BrownianDraw& b);

/// Skorokhod insider sample from the translation form of the Wick product:
///   M 1{B_T <= a} e^{rho T} + M 1{B_T - sigma T > a} exp((mu - sigma^2/2) T + sigma B_T).
/// The indicators are not complementary; on a < B_T <= a + sigma T the
/// sample is exactly 0. Unbiased for skorokhod_expected_wealth().
WealthSample skorokhod_unbiased_sample(const MarketParams& p, const BrownianDraw& b);

/// Estimates the Skorokhod expectation through the factorization
///   E[S_1(T)] = M Pr{B_T > a} E[exp((mu - sigma^2/2) T + sigma B_T)].
/// The probability uses draws 0..n-1, the exponential moment draws n..2n-1.
/// The standard error comes from the delta method: binomial variance of the
/// probability (shared by the bond and stock terms) plus the sample variance
/// of the exponential factor.
MCEstimate skorokhod_factorized_estimate(const MarketParams& p, const RngStream& s,
                                         std::uint64_t n);

struct EulerSample {
    WealthSample sample;
    bool clamped;  // the stock leg went negative and was held at 0
};

/// Explicit Euler for the forward SDE with anticipating initial value.
/// The indicator is taken from the sum of the increments; the bond leg is
/// exact. Requires at least one increment.
EulerSample forward_euler_terminal(const MarketParams& p, std::span<const double> increments);
EulerSample forward_euler_terminal(const MarketParams& p, const BrownianDraw& b);

}  // namespace insider
