#include "insider/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "insider/error.hpp"

namespace insider {

using json = nlohmann::ordered_json;

ComparisonRow run_compare(const MarketParams& p, std::uint64_t n, std::uint64_t seed,
                          unsigned chunks) {
    ComparisonRow row;
    row.params = p;
    row.regime = classify_regime(p);
    row.closed = compare_closed_form(p);
    row.honest = estimate_mean(Trader::HonestOptimal, p, n, seed, chunks);
    row.skorokhod = estimate_mean(Trader::SkorokhodUnbiased, p, n, seed, chunks);
    row.forward = estimate_mean(Trader::ForwardInsider, p, n, seed, chunks);
    row.z_honest = z_score(row.honest, row.closed.honest_optimal);
    row.z_skorokhod = z_score(row.skorokhod, row.closed.skorokhod);
    row.z_forward = z_score(row.forward, row.closed.forward);
    return row;
}

std::string_view to_string(SweepField field) {
    switch (field) {
        case SweepField::Rho: return "rho";
        case SweepField::Mu: return "mu";
        case SweepField::Sigma: return "sigma";
        case SweepField::T: return "T";
    }
    return "unknown";
}

SweepField parse_sweep_field(std::string_view name) {
    for (SweepField f : {SweepField::Rho, SweepField::Mu, SweepField::Sigma, SweepField::T}) {
        if (name == to_string(f)) return f;
    }
    throw Error(ErrorCode::InvalidSpec, "sweep-field",
                "sweep field must be one of rho, mu, sigma, T");
}

MarketParams with_field(const MarketParams& base, SweepField field, double value) {
    MarketParams p = base;
    switch (field) {
        case SweepField::Rho: p.bond_rate = value; break;
        case SweepField::Mu: p.stock_drift = value; break;
        case SweepField::Sigma: p.volatility = value; break;
        case SweepField::T: p.horizon = value; break;
    }
    return validate_params(p.total_wealth, p.bond_rate, p.stock_drift, p.volatility, p.horizon);
}

std::vector<ComparisonRow> run_sweep(const SweepSpec& spec, unsigned chunks) {
    if (spec.grid.empty()) {
        throw Error(ErrorCode::InvalidSpec, "grid", "sweep grid is empty");
    }
    std::vector<MarketParams> points;
    points.reserve(spec.grid.size());
    for (double v : spec.grid) points.push_back(with_field(spec.base, spec.field, v));

    std::vector<ComparisonRow> rows;
    rows.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        try {
            rows.push_back(run_compare(points[i], spec.samples, spec.seed + i, chunks));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Overflow) throw;
            ComparisonRow invalid;
            invalid.params = points[i];
            invalid.regime = classify_regime(points[i]);
            invalid.error = e.what();
            rows.push_back(std::move(invalid));
        }
    }
    return rows;
}

std::vector<ConvergenceRow> run_convergence(const MarketParams& p,
                                            const std::vector<std::uint64_t>& steps,
                                            std::uint64_t n, std::uint64_t seed,
                                            unsigned chunks) {
    if (n < 2) {
        throw Error(ErrorCode::BadSampleCount, "n", "an estimate needs at least 2 samples");
    }
    if (steps.empty()) {
        throw Error(ErrorCode::InvalidSpec, "steps", "no step counts given");
    }
    for (std::uint64_t s : steps) {
        if (s < 1) throw Error(ErrorCode::InvalidSpec, "steps", "step counts must be >= 1");
    }
    const double reference = forward_expected_wealth(p);
    std::vector<ConvergenceRow> rows;
    for (std::uint64_t s : steps) {
        const EulerEstimate e = estimate_forward_euler(p, s, n, seed, chunks);
        rows.push_back({s, e.estimate, reference, std::abs(e.estimate.mean - reference),
                        e.clamp_count});
    }
    return rows;
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

const char* bool_text(bool b) { return b ? "true" : "false"; }

void write_params_csv(std::ostream& out, const MarketParams& p) {
    out << format_real(p.total_wealth) << ',' << format_real(p.bond_rate) << ','
        << format_real(p.stock_drift) << ',' << format_real(p.volatility) << ','
        << format_real(p.horizon);
}

json params_json(const MarketParams& p) {
    json j;
    j["M"] = p.total_wealth;
    j["rho"] = p.bond_rate;
    j["mu"] = p.stock_drift;
    j["sigma"] = p.volatility;
    j["T"] = p.horizon;
    return j;
}

json metadata_json(const ReportMetadata& meta) {
    json j;
    j["seed"] = meta.seed;
    j["samples"] = meta.samples;
    j["tool_version"] = std::string(kToolVersion);
    if (meta.timestamp) j["timestamp"] = *meta.timestamp;
    return j;
}

}  // namespace

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << kComparisonCsvHeader << '\n';
    for (const ComparisonRow& r : rows) {
        write_params_csv(out, r.params);
        out << ',' << to_string(r.regime);
        if (!r.valid()) {
            out << ",,,,,,,,,,,,,invalid,\n";
            continue;
        }
        for (double v : {r.closed.honest_optimal, r.closed.skorokhod, r.closed.forward,
                         r.honest.mean, r.honest.std_error, r.skorokhod.mean,
                         r.skorokhod.std_error, r.forward.mean, r.forward.std_error,
                         r.z_honest, r.z_skorokhod, r.z_forward}) {
            out << ',' << format_real(v);
        }
        out << ',' << bool_text(r.ordering_pass()) << ',' << format_real(r.skorokhod.zero_fraction)
            << '\n';
    }
}

void write_comparison_json(std::ostream& out, const std::vector<ComparisonRow>& rows,
                           const ReportMetadata& meta) {
    json doc;
    doc["metadata"] = metadata_json(meta);
    json list = json::array();
    for (const ComparisonRow& r : rows) {
        json j = params_json(r.params);
        j["regime"] = std::string(to_string(r.regime));
        j["rates_strictly_positive"] = r.params.rates_strictly_positive();
        j["valid"] = r.valid();
        if (!r.valid()) {
            j["error"] = *r.error;
            list.push_back(std::move(j));
            continue;
        }
        j["cf_honest"] = r.closed.honest_optimal;
        j["cf_skorokhod"] = r.closed.skorokhod;
        j["cf_forward"] = r.closed.forward;
        j["mc_honest"] = r.honest.mean;
        j["mc_honest_se"] = r.honest.std_error;
        j["mc_sk"] = r.skorokhod.mean;
        j["mc_sk_se"] = r.skorokhod.std_error;
        j["mc_rs"] = r.forward.mean;
        j["mc_rs_se"] = r.forward.std_error;
        j["z_honest"] = r.z_honest;
        j["z_sk"] = r.z_skorokhod;
        j["z_rs"] = r.z_forward;
        j["ordering_pass"] = r.ordering_pass();
        j["zero_fraction"] = r.skorokhod.zero_fraction;
        list.push_back(std::move(j));
    }
    doc["rows"] = std::move(list);
    out << doc.dump(2) << '\n';
}

void write_closed_form_csv(std::ostream& out, const ClosedFormReport& r) {
    out << "M,rho,mu,sigma,T,regime,threshold,cf_honest,cf_skorokhod,cf_forward,"
           "cf_skorokhod_erf,cf_forward_erf,ordering_pass,rates_strictly_positive\n";
    write_params_csv(out, r.params);
    out << ',' << to_string(r.regime) << ',' << format_real(indicator_threshold(r.params)) << ','
        << format_real(r.honest_optimal) << ',' << format_real(r.skorokhod) << ','
        << format_real(r.forward) << ',' << format_real(skorokhod_expected_wealth_erf_form(r.params))
        << ',' << format_real(forward_expected_wealth_erf_form(r.params)) << ','
        << bool_text(r.ordering.all()) << ',' << bool_text(r.params.rates_strictly_positive())
        << '\n';
}

void write_closed_form_json(std::ostream& out, const ClosedFormReport& r,
                            const ReportMetadata& meta) {
    json doc;
    doc["metadata"] = metadata_json(meta);
    json j = params_json(r.params);
    j["regime"] = std::string(to_string(r.regime));
    j["threshold"] = indicator_threshold(r.params);
    j["honest_allocation"] = {{"M0", r.honest_allocation.bond_wealth},
                              {"M1", r.honest_allocation.stock_wealth}};
    j["cf_honest"] = r.honest_optimal;
    j["cf_skorokhod"] = r.skorokhod;
    j["cf_forward"] = r.forward;
    j["cf_skorokhod_erf"] = skorokhod_expected_wealth_erf_form(r.params);
    j["cf_forward_erf"] = forward_expected_wealth_erf_form(r.params);
    j["ordering"] = {{"skorokhod_vs_honest", r.ordering.skorokhod_vs_honest},
                     {"honest_below_forward", r.ordering.honest_below_forward},
                     {"equality_expected", r.ordering.equality_expected}};
    j["ordering_pass"] = r.ordering.all();
    j["rates_strictly_positive"] = r.params.rates_strictly_positive();
    doc["result"] = std::move(j);
    out << doc.dump(2) << '\n';
}

void write_convergence_csv(std::ostream& out, const MarketParams& p,
                           const std::vector<ConvergenceRow>& rows) {
    out << "M,rho,mu,sigma,T,n_steps,samples,mean,stderr,cf_forward,abs_bias,clamp_count\n";
    for (const ConvergenceRow& r : rows) {
        write_params_csv(out, p);
        out << ',' << r.n_steps << ',' << r.estimate.n << ',' << format_real(r.estimate.mean) << ','
            << format_real(r.estimate.std_error) << ',' << format_real(r.closed_form) << ','
            << format_real(r.abs_bias) << ',' << r.clamp_count << '\n';
    }
}

void write_convergence_json(std::ostream& out, const MarketParams& p,
                            const std::vector<ConvergenceRow>& rows, const ReportMetadata& meta) {
    json doc;
    doc["metadata"] = metadata_json(meta);
    doc["params"] = params_json(p);
    json list = json::array();
    for (const ConvergenceRow& r : rows) {
        list.push_back({{"n_steps", r.n_steps},
                        {"samples", r.estimate.n},
                        {"mean", r.estimate.mean},
                        {"stderr", r.estimate.std_error},
                        {"cf_forward", r.closed_form},
                        {"abs_bias", r.abs_bias},
                        {"clamp_count", r.clamp_count}});
    }
    doc["rows"] = std::move(list);
    out << doc.dump(2) << '\n';
}

std::uint64_t parse_seed(std::string_view text) {
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
        base = 16;
    }
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidSpec, "seed",
                    "seed must be a decimal or 0x-prefixed hex 64-bit integer");
    }
    return value;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto comma = text.find(',');
        parts.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return parts;
}

}  // namespace

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> values;
    for (std::string_view part : split_commas(text)) {
        // std::from_chars for double is unavailable in older libstdc++.
        const std::string s(part);
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size()) {
            throw Error(ErrorCode::InvalidSpec, "grid", "cannot parse '" + s + "' as a real");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<std::uint64_t> parse_count_list(std::string_view text) {
    std::vector<std::uint64_t> values;
    for (std::string_view part : split_commas(text)) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || v == 0) {
            throw Error(ErrorCode::InvalidSpec, "steps",
                        "cannot parse '" + std::string(part) + "' as a positive integer");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos || trim(view.substr(0, eq)).empty()) {
            throw Error(ErrorCode::InvalidSpec, "config",
                        "config line " + std::to_string(line_no) + " is not 'key = value'");
        }
        entries.emplace_back(std::string(trim(view.substr(0, eq))),
                             std::string(trim(view.substr(eq + 1))));
    }
    return entries;
}

}  // namespace insider
