#include "cli.hpp"

#include "colorpart/analysis.hpp"
#include "colorpart/asymptotic.hpp"
#include "colorpart/error.hpp"
#include "colorpart/exact.hpp"
#include "colorpart/oracles.hpp"
#include "colorpart/selfcheck.hpp"
#include "colorpart/spec.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace colorpart::cli {

namespace {

struct RunConfig {
    std::string spec_text;
    std::string spec_json;
    unsigned precision_bits = Precision::kDefaultBits;
    std::string format = "csv";
    std::string output;

    // exact
    std::uint64_t n_max = 0;
    std::string method = "divisor";
    std::uint64_t budget = kDefaultFoldBudget;

    // asymptotic / compare / fit
    std::vector<std::uint64_t> n_list;
    std::string n_geom;
    std::optional<double> slope_max;

    // regions
    std::uint64_t n = 0;
    std::string eta = "4/5";

    // quadform
    unsigned k = 8;
    unsigned trials = 1000;
    std::uint64_t rng_seed = 0;

    // selftest
    std::vector<int> only;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OracleMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ColoredSpec resolve_spec(const RunConfig& config) {
    if (!config.spec_text.empty() && !config.spec_json.empty()) {
        throw UsageError("give either --spec or --spec-json, not both");
    }
    if (!config.spec_json.empty()) return ColoredSpec::from_json(config.spec_json);
    if (config.spec_text.empty()) throw UsageError("a spec is required (--spec or --spec-json)");
    return ColoredSpec::parse(config.spec_text);
}

Precision resolve_precision(const RunConfig& config) {
    if (config.precision_bits < Precision::kMinBits) {
        throw UsageError("--precision-bits must be at least " + std::to_string(Precision::kMinBits));
    }
    return Precision{config.precision_bits};
}

std::vector<std::uint64_t> resolve_ns(const RunConfig& config) {
    std::vector<std::uint64_t> ns = config.n_list;
    if (!config.n_geom.empty()) {
        const auto colon = config.n_geom.find(':');
        if (colon == std::string::npos) throw UsageError("--n-geom expects lo:hi");
        try {
            const auto lo = std::stoull(config.n_geom.substr(0, colon));
            const auto hi = std::stoull(config.n_geom.substr(colon + 1));
            const auto grid = geometric_grid(lo, hi);
            ns.insert(ns.end(), grid.begin(), grid.end());
        } catch (const std::logic_error&) {
            throw UsageError("--n-geom expects lo:hi with positive integers");
        }
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.empty()) throw UsageError("no sample points; use --n or --n-geom");
    if (ns.front() == 0) throw UsageError("sample points must be >= 1");
    return ns;
}

int digits_for(Precision prec) { return static_cast<int>(std::floor(prec.bits * std::log10(2.0))); }

// -- subcommands -------------------------------------------------------------

int cmd_exact(const RunConfig& config, std::ostream& out) {
    const auto spec = resolve_spec(config);
    const auto max_n = static_cast<std::size_t>(config.n_max);
    const auto& method = config.method;

    std::vector<mpz_class> coeffs;
    if (method == "divisor") {
        coeffs = g_series_divisor(spec, max_n).coeffs;
    } else if (method == "euler") {
        coeffs = g_series_euler(spec, max_n).coeffs;
    } else if (method == "convolution" || method == "all") {
        const auto ptable = partition_table(max_n);
        for (std::size_t n = 0; n <= max_n; ++n) {
            coeffs.push_back(g_via_tuple_convolution(spec, n, ptable, config.budget));
        }
        if (method == "all") {
            const auto divisor = g_series_divisor(spec, max_n);
            const auto euler = g_series_euler(spec, max_n);
            for (std::size_t n = 0; n <= max_n; ++n) {
                if (divisor[n] != euler[n] || divisor[n] != coeffs[n]) {
                    throw OracleMismatch("methods disagree at n = " + std::to_string(n) + ": divisor " +
                                         divisor[n].get_str() + ", euler " + euler[n].get_str() + ", convolution " +
                                         coeffs[n].get_str());
                }
            }
        }
    } else {
        throw UsageError("unknown --method '" + method + "'");
    }

    if (config.format == "csv") {
        write_series_csv(out, coeffs);
    } else if (config.format == "raw") {
        write_series_raw(out, coeffs);
    } else if (config.format == "json") {
        nlohmann::ordered_json doc;
        doc["spec"] = nlohmann::ordered_json::parse(spec.to_json());
        doc["method"] = method;
        auto values = nlohmann::ordered_json::array();
        for (const auto& c : coeffs) values.push_back(c.get_str());
        doc["coeffs"] = std::move(values);
        out << doc.dump(2) << '\n';
    } else {
        throw UsageError("exact supports --format csv, raw or json");
    }
    return kOk;
}

int cmd_asymptotic(const RunConfig& config, std::ostream& out) {
    const auto spec = resolve_spec(config);
    const auto prec = resolve_precision(config);
    const auto consts = constants(spec, prec);
    const int digits = digits_for(prec);
    std::vector<std::uint64_t> ns = config.n_list;
    std::sort(ns.begin(), ns.end());
    if (!ns.empty() && ns.front() == 0) throw UsageError("ln M(n) needs n >= 1");

    if (config.format == "json") {
        nlohmann::ordered_json doc;
        doc["spec"] = nlohmann::ordered_json::parse(spec.to_json());
        doc["a"] = consts.a.get_str();
        doc["d"] = consts.d.get_str();
        doc["c"] = consts.c.to_string(digits);
        doc["exp_coeff"] = consts.exp_coeff.to_string(digits);
        auto rows = nlohmann::ordered_json::array();
        for (const auto n : ns) {
            nlohmann::ordered_json row;
            row["n"] = n;
            row["ln_main"] = ln_main_term(consts, n, prec).to_string(digits);
            rows.push_back(std::move(row));
        }
        doc["main_term"] = std::move(rows);
        out << doc.dump(2) << '\n';
    } else if (config.format == "csv") {
        out << "a=" << consts.a.get_str() << '\n'
            << "d=" << consts.d.get_str() << '\n'
            << "c=" << consts.c.to_string(digits) << '\n'
            << "exp_coeff=" << consts.exp_coeff.to_string(digits) << '\n';
        if (!ns.empty()) {
            out << "n,ln_main\n";
            for (const auto n : ns) out << n << ',' << ln_main_term(consts, n, prec).to_string(digits) << '\n';
        }
    } else {
        throw UsageError("asymptotic supports --format csv or json");
    }
    return kOk;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err, bool fit) {
    const auto spec = resolve_spec(config);
    const auto prec = resolve_precision(config);
    const auto ns = resolve_ns(config);
    const auto rows = comparison_table(spec, ns, prec);

    if (!fit) {
        if (config.format == "csv") {
            write_comparison_csv(out, rows);
        } else if (config.format == "json") {
            write_comparison_json(out, rows);
        } else {
            throw UsageError("compare supports --format csv or json");
        }
        return kOk;
    }

    const auto result = fit_error_exponent(rows);
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    if (config.format == "csv") {
        out << "slope,intercept,r_squared,n_min,n_max,points\n";
        std::ostringstream line;
        line.precision(10);
        line << result.slope << ',' << result.intercept << ',' << result.r_squared << ',' << result.n_min << ','
             << result.n_max << ',' << result.points;
        out << line.str() << '\n';
    } else if (config.format == "json") {
        nlohmann::ordered_json doc;
        doc["spec"] = nlohmann::ordered_json::parse(spec.to_json());
        doc["slope"] = result.slope;
        doc["intercept"] = result.intercept;
        doc["r_squared"] = result.r_squared;
        doc["n_min"] = result.n_min;
        doc["n_max"] = result.n_max;
        doc["points"] = result.points;
        std::ostringstream rows_json;
        write_comparison_json(rows_json, rows);
        doc["rows"] = nlohmann::ordered_json::parse(rows_json.str());
        out << doc.dump(2) << '\n';
    } else {
        throw UsageError("fit supports --format csv or json");
    }
    if (config.slope_max && result.slope > *config.slope_max) {
        err << "slope " << result.slope << " exceeds --assert-slope-max " << *config.slope_max << '\n';
        return kAssertionFailed;
    }
    return kOk;
}

int cmd_regions(const RunConfig& config, std::ostream& out) {
    const auto spec = resolve_spec(config);
    const auto prec = resolve_precision(config);
    if (config.n == 0) throw UsageError("--n must be >= 1");
    const auto eta = parse_rational(config.eta);
    const auto ptable = partition_table(config.n);
    const auto report = region_split(spec, config.n, eta, ptable, config.budget, prec);
    if (config.format != "json" && config.format != "csv") throw UsageError("regions emits JSON");
    write_region_report_json(out, report);
    return kOk;
}

int cmd_quadform(const RunConfig& config, std::ostream& out) {
    if (config.k < 1) throw UsageError("--k must be >= 1");
    std::mt19937_64 rng(config.rng_seed);
    std::uniform_int_distribution<unsigned> pick_k(1, config.k);
    std::uniform_real_distribution<double> pick_log(std::log(0.1), std::log(10.0));
    constexpr double kTol = 1e-9;
    out << "TAP version 13\n1.." << config.trials << '\n';
    bool all_ok = true;
    for (unsigned trial = 1; trial <= config.trials; ++trial) {
        QuadFormSpec q{std::exp(pick_log(rng)), {}};
        const unsigned k = pick_k(rng);
        for (unsigned i = 0; i < k; ++i) q.a_rest.push_back(std::exp(pick_log(rng)));
        const double closed = det_closed_form(q);
        const double elim = oracle::elimination_determinant(quadform_matrix(q));
        const double det_err = std::abs(closed - elim) / std::abs(elim);
        const double integral = gaussian_quadform_integral(q);
        const double expected = std::pow(std::numbers::pi, k / 2.0);
        const double factor_err = std::abs(integral * std::sqrt(closed) - expected) / expected;
        const bool ok = det_err < kTol && factor_err < kTol;
        all_ok = all_ok && ok;
        std::ostringstream line;
        line.precision(3);
        line << (ok ? "ok " : "not ok ") << trial << " - k=" << k << " det rel_err " << det_err
             << " factorization rel_err " << factor_err;
        out << line.str() << '\n';
    }
    return all_ok ? kOk : kAssertionFailed;
}

int cmd_selftest(const RunConfig& config, std::ostream& out) {
    selfcheck::Options options;
    options.seed = config.rng_seed;
    options.precision = resolve_precision(config);
    const auto results = selfcheck::run_all(config.only, options);
    selfcheck::write_tap(out, results);
    const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    return ok ? kOk : kAssertionFailed;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::TooLarge:
        case ErrorCode::BudgetExceeded: return kBudget;
        default: return kUsage;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    if (const char* env = std::getenv("COLORPART_PRECISION_BITS"); env != nullptr && *env != '\0') {
        try {
            config.precision_bits = static_cast<unsigned>(std::stoul(env));
        } catch (const std::logic_error&) {
            err << "error: COLORPART_PRECISION_BITS must be an integer\n";
            return kUsage;
        }
    }

    CLI::App app{"Exact values and leading-term asymptotics of colored partition functions", "colorpart"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--spec", config.spec_text, "Spec in compact form, e.g. \"s=1,3;l=2,2\"");
    app.add_option("--spec-json", config.spec_json, "Spec as JSON, e.g. {\"s\":[1,3],\"l\":[2,2]}");
    app.add_option("--precision-bits", config.precision_bits, "Significand bits (>= 64)")
        ->capture_default_str();
    app.add_option("--format", config.format, "csv, json, raw or tap");
    app.add_option("--output,-o", config.output, "Write to this file instead of stdout");

    auto* exact = app.add_subcommand("exact", "Exact g(0..n_max)");
    exact->add_option("--n-max", config.n_max, "Largest n")->required();
    exact->add_option("--method", config.method, "divisor, euler, convolution or all")
        ->check(CLI::IsMember({"divisor", "euler", "convolution", "all"}));
    exact->add_option("--budget", config.budget, "Fold-step cap for the convolution method");

    auto* asymptotic = app.add_subcommand("asymptotic", "Leading-term constants and ln M(n)");
    asymptotic->add_option("--n", config.n_list, "Values of n for ln M(n)")->delimiter(',');

    auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--n", config.n_list, "Explicit n values")->delimiter(',');
        sub->add_option("--n-geom", config.n_geom, "Geometric grid lo:hi (doubling)");
    };
    auto* compare = app.add_subcommand("compare", "Exact versus main term");
    add_sampling(compare);
    auto* fit = app.add_subcommand("fit", "Fit the decay exponent of the relative error");
    add_sampling(fit);
    fit->add_option("--assert-slope-max", config.slope_max, "Exit 1 when the fitted slope exceeds this");

    auto* regions = app.add_subcommand("regions", "Split the tuple sum into near-saddle and tail parts");
    regions->add_option("--n", config.n, "n")->required();
    regions->add_option("--eta", config.eta, "Box exponent, e.g. 4/5 or 0.8")->capture_default_str();
    regions->add_option("--budget", config.budget, "Tuple enumeration cap");

    auto* quadform = app.add_subcommand("quadform", "Determinant and Gaussian-integral identities (TAP)");
    quadform->add_option("--k", config.k, "Largest dimension")->capture_default_str();
    quadform->add_option("--trials", config.trials, "Random forms")->capture_default_str();
    quadform->add_option("--rng-seed", config.rng_seed, "Seed")->capture_default_str();

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance battery (TAP)");
    selftest->add_option("--only", config.only, "Criterion ids to run")->delimiter(',');
    selftest->add_option("--rng-seed", config.rng_seed, "Seed")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    std::ofstream file;
    if (!config.output.empty()) {
        file.open(config.output);
        if (!file) {
            err << "error: cannot open " << config.output << '\n';
            return kUsage;
        }
    }
    std::ostream& sink = config.output.empty() ? out : file;

    try {
        if (*exact) return cmd_exact(config, sink);
        if (*asymptotic) return cmd_asymptotic(config, sink);
        if (*compare) return cmd_compare(config, sink, err, false);
        if (*fit) return cmd_compare(config, sink, err, true);
        if (*regions) return cmd_regions(config, sink);
        if (*quadform) return cmd_quadform(config, sink);
        if (*selftest) return cmd_selftest(config, sink);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const OracleMismatch& e) {
        err << "error: OracleMismatch: " << e.what() << '\n';
        return kOracleMismatch;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return kUsage;
}

}  // namespace colorpart::cli
