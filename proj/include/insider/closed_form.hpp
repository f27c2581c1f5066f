#pragma once

#include "insider/market_model.hpp"

namespace insider {

/// Expected terminal wealth of an honest (adapted) buy-and-hold trader:
/// M0 e^{rho T} + M1 e^{mu T}. Throws Error{Overflow} when an exponent
/// leaves the double range (rho T or mu T > 709).
double honest_expected_wealth(const MarketParams& p, const Allocation& a);

/// Bull -> (0, M); Bear and Marginal -> (M, 0). In the Marginal regime any
/// split gives the same expectation; (M, 0) is a convention.
Allocation honest_optimal_allocation(const MarketParams& p) noexcept;

/// Insider whose stock leg solves the Skorokhod-interpreted SDE:
///   M Phi(a/sqrt T) e^{rho T} + M (1 - Phi(a/sqrt T)) e^{mu T}
/// with a = indicator_threshold(p).
double skorokhod_expected_wealth(const MarketParams& p);

/// Insider whose stock leg solves the forward-integral SDE:
///   M Phi(a/sqrt T) e^{rho T} + M Phi(sigma sqrt T - a/sqrt T) e^{mu T}.
double forward_expected_wealth(const MarketParams& p);

/// The same two expectations written with erf, exactly as the textbook
/// closed forms read:
///   (M/2){1 + erf(c)} e^{rho T} + (M/2){1 -+ erf(.)} e^{mu T},
///   c = (sigma^2 + 2 rho - 2 mu) sqrt T / (2 sqrt 2 sigma).
/// Kept for reports and for cross-checking the Phi parametrization.
double skorokhod_expected_wealth_erf_form(const MarketParams& p);
double forward_expected_wealth_erf_form(const MarketParams& p);

/// Signed differences skorokhod - honest_optimal and forward - honest_optimal,
/// evaluated in a cancellation-free form so their signs stay resolvable when
/// the three expectations agree to more digits than a double carries.
struct OrderingGaps {
    double skorokhod_minus_honest;
    double forward_minus_honest;
};

OrderingGaps ordering_gaps(const MarketParams& p);

struct OrderingFlags {
    /// Bull/Bear: skorokhod < honest. Marginal: skorokhod == honest within
    /// 1e-12 relative.
    bool skorokhod_vs_honest;
    /// honest < forward, in every regime.
    bool honest_below_forward;
    /// Marginal only: the first flag encodes an equality rather than a
    /// strict inequality.
    bool equality_expected;

    bool all() const noexcept { return skorokhod_vs_honest && honest_below_forward; }
};

struct ClosedFormReport {
    MarketParams params;
    Regime regime;
    Allocation honest_allocation;
    double honest_optimal;
    double skorokhod;
    double forward;
    OrderingGaps gaps;
    OrderingFlags ordering;
};

ClosedFormReport compare_closed_form(const MarketParams& p);

/// Strict orderings come from the signs of the gaps; the Marginal equality
/// is checked on the values themselves (1e-12 relative).
OrderingFlags check_ordering(Regime regime, double honest, double skorokhod,
                             const OrderingGaps& gaps);

}  // namespace insider
