#pragma once

#include <string_view>

namespace insider {

/// Market quintuple: total initial wealth, bond rate, stock drift,
/// stock volatility and horizon. Construct through validate_params().
struct MarketParams {
    double total_wealth;  // M
    double bond_rate;     // rho
    double stock_drift;   // mu
    double volatility;    // sigma
    double horizon;       // T

    /// True when both rates are strictly positive. Zero rates are admitted
    /// for degenerate test cases and reported as outside that hypothesis.
    bool rates_strictly_positive() const noexcept {
        return bond_rate > 0.0 && stock_drift > 0.0;
    }
};

/// Honest trader's split of the initial wealth between bond and stock.
struct Allocation {
    double bond_wealth;   // M0
    double stock_wealth;  // M1
};

enum class Regime { Bull, Bear, Marginal };

std::string_view to_string(Regime regime);

/// Checks finiteness first, then positivity of M, sigma, T and
/// non-negativity of the two rates. Throws insider::Error.
MarketParams validate_params(double total_wealth, double bond_rate, double stock_drift,
                             double volatility, double horizon);

/// Validates an allocation against params: both legs >= 0 and summing to M
/// within 1e-12 relative.
Allocation make_allocation(const MarketParams& p, double bond_wealth, double stock_wealth);

/// Threshold a = (rho - mu + sigma^2/2) T / sigma such that the stock ends
/// above the bond (both started at 1) exactly when B_T > a.
double indicator_threshold(const MarketParams& p) noexcept;

/// Exact floating-point comparison of mu against rho.
Regime classify_regime(const MarketParams& p) noexcept;

}  // namespace insider
