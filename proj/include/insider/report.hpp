#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "insider/closed_form.hpp"
#include "insider/estimate.hpp"
#include "insider/market_model.hpp"
#include "insider/montecarlo.hpp"

namespace insider {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// One closed-form vs Monte Carlo comparison at a single parameter point.
/// The ordering verdict depends on the closed forms only.
struct ComparisonRow {
    MarketParams params{};
    Regime regime = Regime::Marginal;
    std::optional<std::string> error;  // set when the row could not be evaluated

    ClosedFormReport closed{};
    MCEstimate honest{};
    MCEstimate skorokhod{};
    MCEstimate forward{};
    double z_honest = 0.0;
    double z_skorokhod = 0.0;
    double z_forward = 0.0;

    bool valid() const noexcept { return !error.has_value(); }
    bool ordering_pass() const noexcept { return valid() && closed.ordering.all(); }
};

/// Throws on invalid input (validation errors propagate).
ComparisonRow run_compare(const MarketParams& p, std::uint64_t n, std::uint64_t seed,
                          unsigned chunks = 1);

enum class SweepField { Rho, Mu, Sigma, T };

std::string_view to_string(SweepField field);
SweepField parse_sweep_field(std::string_view name);

struct SweepSpec {
    MarketParams base{};
    SweepField field = SweepField::Sigma;
    std::vector<double> grid;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Applies `value` to the swept field and re-validates.
MarketParams with_field(const MarketParams& base, SweepField field, double value);

/// One row per grid point, point i seeded with seed + i. Every grid value
/// is validated before any work; an Overflow at a point marks that row
/// invalid instead of aborting.
std::vector<ComparisonRow> run_sweep(const SweepSpec& spec, unsigned chunks = 1);

struct ConvergenceRow {
    std::uint64_t n_steps = 0;
    MCEstimate estimate{};
    double closed_form = 0.0;
    double abs_bias = 0.0;
    std::uint64_t clamp_count = 0;
};

/// Forward Euler bias table; every level uses the same seed.
std::vector<ConvergenceRow> run_convergence(const MarketParams& p,
                                            const std::vector<std::uint64_t>& steps,
                                            std::uint64_t n, std::uint64_t seed,
                                            unsigned chunks = 1);

// Formatting. Reals are printed with 17 significant digits.
std::string format_real(double x);

inline constexpr std::string_view kComparisonCsvHeader =
    "M,rho,mu,sigma,T,regime,cf_honest,cf_skorokhod,cf_forward,mc_honest,mc_honest_se,"
    "mc_sk,mc_sk_se,mc_rs,mc_rs_se,z_honest,z_sk,z_rs,ordering_pass,zero_fraction";

struct ReportMetadata {
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::optional<std::string> timestamp;  // omitted when empty
};

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);
void write_comparison_json(std::ostream& out, const std::vector<ComparisonRow>& rows,
                           const ReportMetadata& meta);

void write_closed_form_csv(std::ostream& out, const ClosedFormReport& report);
void write_closed_form_json(std::ostream& out, const ClosedFormReport& report,
                            const ReportMetadata& meta);

void write_convergence_csv(std::ostream& out, const MarketParams& p,
                           const std::vector<ConvergenceRow>& rows);
void write_convergence_json(std::ostream& out, const MarketParams& p,
                            const std::vector<ConvergenceRow>& rows, const ReportMetadata& meta);

// Input parsing shared by the CLI.

/// Decimal or 0x-prefixed hexadecimal 64-bit seed.
std::uint64_t parse_seed(std::string_view text);

/// Comma-separated reals, e.g. "0.1,0.2,0.4".
std::vector<double> parse_real_list(std::string_view text);

/// Comma-separated positive integers.
std::vector<std::uint64_t> parse_count_list(std::string_view text);

/// Flat `key = value` lines; blank lines and lines starting with '#' are
/// skipped. Keys are returned in file order.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in);

}  // namespace insider
