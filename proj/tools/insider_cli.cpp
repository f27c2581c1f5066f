// Command-line front end: closed-form, compare, sweep, convergence, verify.
//
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 verification
// failure.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "insider/closed_form.hpp"
#include "insider/error.hpp"
#include "insider/market_model.hpp"
#include "insider/report.hpp"
#include "insider/verify.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitVerifyFailed = 3;

struct Options {
    double m = 1.0;
    double rho = 0.05;
    double mu = 0.1;
    double sigma = 0.2;
    double t = 1.0;
    std::uint64_t samples = 1'000'000;
    std::string seed = std::to_string(insider::kArchivedSeed);
    unsigned chunks = 1;
    std::string format = "csv";
    std::string out;
    bool no_timestamp = false;
    std::string sweep_field = "sigma";
    std::string grid;
    std::string steps = "16,64,256";
    std::string criteria;
};

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Finds --config FILE / --config=FILE and turns its entries into
// "--key=value" tokens placed ahead of the real arguments, so that flags on
// the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) {
        throw insider::Error(insider::ErrorCode::InvalidSpec, "config",
                             "cannot open config file '" + path + "'");
    }
    std::vector<std::string> tokens;
    for (const auto& [key, value] : insider::parse_config(in)) {
        if (key == "config") continue;
        tokens.push_back("--" + key + "=" + value);
    }
    tokens.insert(tokens.end(), args.begin(), args.end());
    return tokens;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
        throw insider::Error(insider::ErrorCode::InvalidSpec, "out",
                             "cannot open output file '" + opt.out + "'");
    }
    file << text;
}

insider::ReportMetadata metadata(const Options& opt, std::uint64_t seed) {
    insider::ReportMetadata meta{seed, opt.samples, std::nullopt};
    if (!opt.no_timestamp) meta.timestamp = utc_timestamp();
    return meta;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expected terminal wealth of honest and insider traders under Ito, Skorokhod "
                 "and forward-integral models"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1, 1);

    Options opt;
    std::string config_path;
    app.add_option("--config", config_path, "flat 'key = value' file; flags override it");
    app.add_option("--M", opt.m, "total initial wealth");
    app.add_option("--rho", opt.rho, "bond rate");
    app.add_option("--mu", opt.mu, "stock drift");
    app.add_option("--sigma", opt.sigma, "stock volatility");
    app.add_option("--T", opt.t, "horizon");
    app.add_option("--samples", opt.samples, "Monte Carlo sample count");
    app.add_option("--seed", opt.seed, "64-bit seed, decimal or 0x-hex");
    app.add_option("--chunks", opt.chunks, "worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out, "output file (default stdout)");
    app.add_flag("--no-timestamp", opt.no_timestamp, "omit the JSON timestamp");
    app.add_option("--sweep-field", opt.sweep_field, "sweep: one of rho, mu, sigma, T");
    app.add_option("--grid", opt.grid, "sweep: comma-separated values");
    app.add_option("--steps", opt.steps, "convergence: comma-separated step counts");
    app.add_option("--criteria", opt.criteria, "verify: comma-separated criterion ids");

    auto* closed = app.add_subcommand("closed-form", "closed-form expectations and ordering");
    auto* compare = app.add_subcommand("compare", "closed forms vs Monte Carlo at one point");
    auto* sweep = app.add_subcommand("sweep", "compare over a grid of one parameter");
    auto* convergence = app.add_subcommand("convergence", "forward Euler bias vs step count");
    auto* verify = app.add_subcommand("verify", "run the acceptance battery");
    for (auto* sub : {closed, compare, sweep, convergence, verify}) sub->fallthrough();

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const insider::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const std::uint64_t seed = insider::parse_seed(opt.seed);
        std::ostringstream out;

        if (*verify) {
            insider::VerifyConfig config;
            config.seed = seed;
            config.workers = opt.chunks;
            config.samples = opt.samples;
            std::vector<int> ids;
            if (!opt.criteria.empty()) {
                for (std::uint64_t id : insider::parse_count_list(opt.criteria)) {
                    ids.push_back(static_cast<int>(id));
                }
            }
            const auto results = insider::run_verify(config, ids);
            emit(opt, insider::format_verify_report(results));
            for (const auto& r : results) {
                if (!r.passed) return kExitVerifyFailed;
            }
            return 0;
        }

        const insider::MarketParams p =
            insider::validate_params(opt.m, opt.rho, opt.mu, opt.sigma, opt.t);
        const bool json = opt.format == "json";

        if (*closed) {
            const auto report = insider::compare_closed_form(p);
            if (json) {
                insider::write_closed_form_json(out, report, metadata(opt, seed));
            } else {
                insider::write_closed_form_csv(out, report);
            }
        } else if (*compare) {
            const std::vector<insider::ComparisonRow> rows{
                insider::run_compare(p, opt.samples, seed, opt.chunks)};
            if (json) {
                insider::write_comparison_json(out, rows, metadata(opt, seed));
            } else {
                insider::write_comparison_csv(out, rows);
            }
        } else if (*sweep) {
            insider::SweepSpec spec;
            spec.base = p;
            spec.field = insider::parse_sweep_field(opt.sweep_field);
            spec.grid = insider::parse_real_list(opt.grid);
            spec.samples = opt.samples;
            spec.seed = seed;
            const auto rows = insider::run_sweep(spec, opt.chunks);
            if (json) {
                insider::write_comparison_json(out, rows, metadata(opt, seed));
            } else {
                insider::write_comparison_csv(out, rows);
            }
        } else if (*convergence) {
            const auto rows = insider::run_convergence(
                p, insider::parse_count_list(opt.steps), opt.samples, seed, opt.chunks);
            if (json) {
                insider::write_convergence_json(out, p, rows, metadata(opt, seed));
            } else {
                insider::write_convergence_csv(out, p, rows);
            }
        }
        emit(opt, out.str());
    } catch (const insider::Error& e) {
        std::cerr << "error: " << insider::to_string(e.code());
        if (!e.field().empty()) std::cerr << " (" << e.field() << ")";
        std::cerr << ": " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
