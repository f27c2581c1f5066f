#include "insider/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "insider/error.hpp"
#include "insider/special_functions.hpp"

namespace insider {

namespace {

constexpr double kMaxExponent = 709.0;

double growth(double rate, double horizon, const char* field) {
    const double exponent = rate * horizon;
    if (exponent > kMaxExponent) {
        throw Error(ErrorCode::Overflow, field,
                    std::string(field) + " * T exceeds the double exponent range");
    }
    return std::exp(exponent);
}

// a / sqrt(T), the standardized threshold on B_T.
double standardized_threshold(const MarketParams& p) {
    const double z = indicator_threshold(p) / std::sqrt(p.horizon);
#ifdef INSIDER_MUTATE_ERF_SIGN
    // Sanity mutant for the verification harness: the sign of the erf
    // argument is flipped. Never defined in regular builds.
    return -z;
#else
    return z;
#endif
}

}  // namespace

double honest_expected_wealth(const MarketParams& p, const Allocation& a) {
    const double bond = growth(p.bond_rate, p.horizon, "rho");
    const double stock = growth(p.stock_drift, p.horizon, "mu");
    return a.bond_wealth * bond + a.stock_wealth * stock;
}

Allocation honest_optimal_allocation(const MarketParams& p) noexcept {
    if (classify_regime(p) == Regime::Bull) return {0.0, p.total_wealth};
    return {p.total_wealth, 0.0};
}

// Both insider values are assembled as honest optimum plus a cancellation-free
// gap. Summing the two Phi terms directly can land an ulp on the wrong side of
// the honest value when one of the probabilities rounds to 1.
double skorokhod_expected_wealth(const MarketParams& p) {
    return honest_expected_wealth(p, honest_optimal_allocation(p)) +
           ordering_gaps(p).skorokhod_minus_honest;
}

double forward_expected_wealth(const MarketParams& p) {
    return honest_expected_wealth(p, honest_optimal_allocation(p)) +
           ordering_gaps(p).forward_minus_honest;
}

double skorokhod_expected_wealth_erf_form(const MarketParams& p) {
    const double bond = growth(p.bond_rate, p.horizon, "rho");
    const double stock = growth(p.stock_drift, p.horizon, "mu");
    const double s = p.volatility;
    const double c = (s * s + 2.0 * p.bond_rate - 2.0 * p.stock_drift) * std::sqrt(p.horizon) /
                     (2.0 * std::numbers::sqrt2 * s);
    const double half = 0.5 * p.total_wealth;
    return half * (1.0 + erf(c)) * bond + half * (1.0 - erf(c)) * stock;
}

double forward_expected_wealth_erf_form(const MarketParams& p) {
    const double bond = growth(p.bond_rate, p.horizon, "rho");
    const double stock = growth(p.stock_drift, p.horizon, "mu");
    const double s = p.volatility;
    const double denom = 2.0 * std::numbers::sqrt2 * s;
    const double root_t = std::sqrt(p.horizon);
    const double c_bond = (s * s + 2.0 * p.bond_rate - 2.0 * p.stock_drift) * root_t / denom;
    const double c_stock = (s * s - 2.0 * p.bond_rate + 2.0 * p.stock_drift) * root_t / denom;
    const double half = 0.5 * p.total_wealth;
    return half * (1.0 + erf(c_bond)) * bond + half * (1.0 + erf(c_stock)) * stock;
}

OrderingGaps ordering_gaps(const MarketParams& p) {
    const double bond = growth(p.bond_rate, p.horizon, "rho");
    growth(p.stock_drift, p.horizon, "mu");
    const double z = standardized_threshold(p);
    const double s = p.volatility * std::sqrt(p.horizon);
    const double m = p.total_wealth;
    // e^{mu T} - e^{rho T}, exact in sign and accurate for close rates.
    const double spread = bond * std::expm1((p.stock_drift - p.bond_rate) * p.horizon);
    const double stock = bond + spread;
    if (classify_regime(p) == Regime::Bull) {
        // honest = M e^{mu T}
        return {-m * normal_cdf(z) * spread,
                m * (normal_cdf(z) * bond - normal_cdf(z - s) * stock)};
    }
    // honest = M e^{rho T}
    return {m * normal_cdf(-z) * spread,
            m * (normal_cdf(s - z) * stock - normal_cdf(-z) * bond)};
}

OrderingFlags check_ordering(Regime regime, double honest, double skorokhod,
                             const OrderingGaps& gaps) {
    OrderingFlags flags{};
    flags.honest_below_forward = gaps.forward_minus_honest > 0.0;
    if (regime == Regime::Marginal) {
        flags.equality_expected = true;
        flags.skorokhod_vs_honest = std::abs(skorokhod - honest) <= 1e-12 * std::abs(honest);
    } else {
        flags.equality_expected = false;
        flags.skorokhod_vs_honest = gaps.skorokhod_minus_honest < 0.0;
    }
    return flags;
}

ClosedFormReport compare_closed_form(const MarketParams& p) {
    ClosedFormReport report{};
    report.params = p;
    report.regime = classify_regime(p);
    report.honest_allocation = honest_optimal_allocation(p);
    report.honest_optimal = honest_expected_wealth(p, report.honest_allocation);
    report.gaps = ordering_gaps(p);
    report.skorokhod = report.honest_optimal + report.gaps.skorokhod_minus_honest;
    report.forward = report.honest_optimal + report.gaps.forward_minus_honest;
    report.ordering = check_ordering(report.regime, report.honest_optimal, report.skorokhod,
                                     report.gaps);
    return report;
}

}  // namespace insider
