#include "insider/wealth_samplers.hpp"

#include <cmath>
#include <string>

#include "insider/error.hpp"

namespace insider {

namespace {

constexpr double kMaxExponent = 709.0;

double checked_exp(double exponent, const char* what) {
    if (exponent > kMaxExponent) {
        throw Error(ErrorCode::Overflow, what,
                    std::string(what) + " exponent exceeds the double range");
    }
    return std::exp(exponent);
}

double bond_growth(const MarketParams& p) {
    return checked_exp(p.bond_rate * p.horizon, "bond");
}

double stock_growth(const MarketParams& p, double b_T) {
    const double s = p.volatility;
    return checked_exp((p.stock_drift - 0.5 * s * s) * p.horizon + s * b_T, "stock");
}

}  // namespace

std::string_view to_string(Trader trader) {
    switch (trader) {
        case Trader::HonestFixed: return "honest-fixed";
        case Trader::HonestOptimal: return "honest-optimal";
        case Trader::ForwardInsider: return "forward";
        case Trader::SkorokhodUnbiased: return "skorokhod";
    }
    return "unknown";
}

Trader parse_trader(std::string_view name) {
    for (Trader t : {Trader::HonestFixed, Trader::HonestOptimal, Trader::ForwardInsider,
                     Trader::SkorokhodUnbiased}) {
        if (name == to_string(t)) return t;
    }
    throw Error(ErrorCode::UnknownTrader, "trader", "unknown trader '" + std::string(name) + "'");
}

WealthSample honest_terminal_wealth(const MarketParams& p, const Allocation& a,
                                    const BrownianDraw& b) {
    double value = 0.0;
    if (a.bond_wealth != 0.0) value += a.bond_wealth * bond_growth(p);
    if (a.stock_wealth != 0.0) value += a.stock_wealth * stock_growth(p, b.terminal_value);
    return {value, Trader::HonestFixed, b.terminal_value};
}

WealthSample forward_insider_terminal_wealth(const MarketParams& p, const BrownianDraw& b) {
    const double a = indicator_threshold(p);
    const double b_T = b.terminal_value;
    const double value = b_T <= a ? p.total_wealth * bond_growth(p)
                                  : p.total_wealth * stock_growth(p, b_T);
    return {value, Trader::ForwardInsider, b_T};
}

WealthSample skorokhod_unbiased_sample(const MarketParams& p, const BrownianDraw& b) {
    const double a = indicator_threshold(p);
    const double b_T = b.terminal_value;
    double value = 0.0;
    if (b_T <= a) value += p.total_wealth * bond_growth(p);
    if (b_T - p.volatility * p.horizon > a) value += p.total_wealth * stock_growth(p, b_T);
    return {value, Trader::SkorokhodUnbiased, b_T};
}

MCEstimate skorokhod_factorized_estimate(const MarketParams& p, const RngStream& s,
                                         std::uint64_t n) {
    if (n < 2) {
        throw Error(ErrorCode::BadSampleCount, "n", "an estimate needs at least 2 samples");
    }
    const double a = indicator_threshold(p);
    std::uint64_t above = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (brownian_terminal(s, i, p.horizon).terminal_value > a) ++above;
    }
    MomentAccumulator stock;
    for (std::uint64_t i = n; i < 2 * n; ++i) {
        stock.add(stock_growth(p, brownian_terminal(s, i, p.horizon).terminal_value));
    }

    const double m = p.total_wealth;
    const double bond = bond_growth(p);
    const double nn = static_cast<double>(n);
    const double prob = static_cast<double>(above) / nn;
    const double g = stock.mean;

    MCEstimate est;
    est.n = n;
    est.mean = m * (1.0 - prob) * bond + m * prob * g;
    const double d_prob = m * (g - bond);
    const double d_g = m * prob;
    const double variance =
        d_prob * d_prob * prob * (1.0 - prob) / nn + d_g * d_g * stock.variance() / nn;
    est.std_error = std::sqrt(variance);
    est.sample_stddev = est.std_error * std::sqrt(nn);
    est.ci95_halfwidth = kZ95 * est.std_error;
    est.seed = s.seed();
    return est;
}

EulerSample forward_euler_terminal(const MarketParams& p, std::span<const double> increments) {
    if (increments.empty()) {
        throw Error(ErrorCode::InvalidSpec, "increments",
                    "forward Euler needs at least one increment");
    }
    double b_T = 0.0;
    for (double db : increments) b_T += db;

    const double a = indicator_threshold(p);
    if (b_T <= a) {
        return {{p.total_wealth * bond_growth(p), Trader::ForwardInsider, b_T}, false};
    }
    const double dt = p.horizon / static_cast<double>(increments.size());
    const double drift = p.stock_drift * dt;
    double stock = p.total_wealth;
    bool clamped = false;
    for (double db : increments) {
        stock *= 1.0 + drift + p.volatility * db;
        if (stock < 0.0) {
            stock = 0.0;
            clamped = true;
            break;
        }
    }
    return {{stock, Trader::ForwardInsider, b_T}, clamped};
}

EulerSample forward_euler_terminal(const MarketParams& p, const BrownianDraw& b) {
    return forward_euler_terminal(p, std::span<const double>(b.increments));
}

}  // namespace insider
