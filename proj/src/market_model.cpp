#include "insider/market_model.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "insider/error.hpp"

namespace insider {

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Bull: return "bull";
        case Regime::Bear: return "bear";
        case Regime::Marginal: return "marginal";
    }
    return "unknown";
}

MarketParams validate_params(double total_wealth, double bond_rate, double stock_drift,
                             double volatility, double horizon) {
    const std::array<std::pair<const char*, double>, 5> fields{{
        {"M", total_wealth},
        {"rho", bond_rate},
        {"mu", stock_drift},
        {"sigma", volatility},
        {"T", horizon},
    }};
    for (const auto& [name, value] : fields) {
        if (!std::isfinite(value)) {
            throw Error(ErrorCode::NotFinite, name, std::string(name) + " must be finite");
        }
    }
    for (const auto& [name, value] : {fields[0], fields[3], fields[4]}) {
        if (value <= 0.0) {
            throw Error(ErrorCode::NonPositive, name, std::string(name) + " must be > 0");
        }
    }
    for (const auto& [name, value] : {fields[1], fields[2]}) {
        if (value < 0.0) {
            throw Error(ErrorCode::NegativeRate, name, std::string(name) + " must be >= 0");
        }
    }
    return MarketParams{total_wealth, bond_rate, stock_drift, volatility, horizon};
}

Allocation make_allocation(const MarketParams& p, double bond_wealth, double stock_wealth) {
    if (!std::isfinite(bond_wealth) || !std::isfinite(stock_wealth)) {
        throw Error(ErrorCode::NotFinite, "allocation", "allocation must be finite");
    }
    if (bond_wealth < 0.0 || stock_wealth < 0.0) {
        throw Error(ErrorCode::InvalidSpec, "allocation", "allocation legs must be >= 0");
    }
    const double sum = bond_wealth + stock_wealth;
    if (std::abs(sum - p.total_wealth) > 1e-12 * p.total_wealth) {
        throw Error(ErrorCode::InvalidSpec, "allocation",
                    "allocation must sum to the total wealth M");
    }
    return Allocation{bond_wealth, stock_wealth};
}

double indicator_threshold(const MarketParams& p) noexcept {
    const double s = p.volatility;
    return (p.bond_rate - p.stock_drift + 0.5 * s * s) * p.horizon / s;
}

Regime classify_regime(const MarketParams& p) noexcept {
    if (p.stock_drift > p.bond_rate) return Regime::Bull;
    if (p.bond_rate > p.stock_drift) return Regime::Bear;
    return Regime::Marginal;
}

}  // namespace insider
