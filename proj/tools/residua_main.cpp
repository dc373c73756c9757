#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "residua/ar.hpp"
#include "residua/document.hpp"
#include "residua/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundOrClassFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitConjectureViolation = 3;

std::vector<std::string> split_tokens(const std::string& text, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == delim) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Coefficient lists are comma separated; under --locale-comma the list
// separator becomes ';' (or whitespace) and ',' is the decimal mark.
std::vector<double> parse_alpha_list(const std::string& text, bool locale_comma) {
    std::string normalized = text;
    char delim = ',';
    if (locale_comma) {
        std::replace(normalized.begin(), normalized.end(), ' ', ';');
        std::replace(normalized.begin(), normalized.end(), ',', '.');
        delim = ';';
    }
    std::vector<double> alpha;
    for (const std::string& token : split_tokens(normalized, delim)) {
        if (token.empty()) continue;
        try {
            std::size_t pos = 0;
            const double v = std::stod(token, &pos);
            if (pos != token.size()) throw std::invalid_argument(token);
            alpha.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse coefficient \"" + token + "\"");
        }
    }
    if (alpha.empty()) {
        throw std::invalid_argument("empty coefficient list");
    }
    return alpha;
}

std::vector<residua::PExponent> parse_p_list(const std::string& text) {
    std::vector<residua::PExponent> ps;
    for (const std::string& token : split_tokens(text, ',')) {
        if (token.empty()) continue;
        const auto p = residua::parse_p(token);
        if (!p) {
            throw std::invalid_argument("cannot parse norm exponent \"" + token +
                                        "\" (expected integer >= 1 or \"inf\")");
        }
        ps.push_back(*p);
    }
    if (ps.empty()) {
        throw std::invalid_argument("empty norm exponent list");
    }
    return ps;
}

struct AnalyzeArgs {
    std::string alpha;
    std::string p_list = "1,2,inf";
    bool oracle = false;
    bool json = false;
    bool text = false;
    bool locale_comma = false;
    int points = 256;
    double radius_factor = 0.25;
};

int run_analyze(const AnalyzeArgs& args) {
    const std::vector<double> alpha = parse_alpha_list(args.alpha, args.locale_comma);
    residua::AnalyzeOptions options;
    options.ps = parse_p_list(args.p_list);
    options.with_quadrature = args.oracle;
    options.quadrature.points_per_circle = args.points;
    options.quadrature.radius_factor = args.radius_factor;

    const residua::RationalOperator op(alpha);
    const residua::OperatorAnalysis analysis = residua::analyze_operator(op, options);
    const residua::AnalysisDocument doc = residua::make_analysis_document(analysis);
    std::cout << (args.json ? residua::to_json_string(doc)
                            : residua::render_text(doc));
    if (!args.json) std::cout.flush();
    return residua::exit_code_for(analysis);
}

struct FitArgs {
    std::string csv;
    std::string column = "0";
    bool log = false;
    int diff = 0;
    std::optional<int> order;
    std::optional<int> auto_order;
    std::string criterion = "aic";
    std::optional<int> arch;
    bool json = false;
    bool text = false;
    bool locale_comma = false;
};

int run_fit(const FitArgs& args) {
    residua::CsvOptions csv_options;
    csv_options.column = args.column;
    csv_options.decimal_comma = args.locale_comma;
    residua::TimeSeries ts = residua::load_csv(args.csv, csv_options);
    const long rows_loaded = static_cast<long>(ts.size());

    if (args.log) ts = residua::log_transform(ts);
    if (args.diff > 0) ts = residua::difference(ts, args.diff);

    residua::FitDocument doc;
    doc.tool_name = "residua";
    doc.tool_version = residua::version;
    doc.timestamp = residua::utc_timestamp_now();
    doc.input = {args.csv,      args.column,
                 args.locale_comma, ts.transform_log,
                 rows_loaded,   static_cast<long>(ts.size())};

    residua::Criterion criterion = residua::Criterion::aic;
    if (args.criterion == "bic") {
        criterion = residua::Criterion::bic;
    } else if (args.criterion != "aic") {
        throw std::invalid_argument("unknown criterion \"" + args.criterion + "\"");
    }

    int order = 0;
    if (args.auto_order) {
        residua::OrderSelection sel;
        sel.criterion = args.criterion;
        sel.max_order = *args.auto_order;
        sel.criterion_values =
            residua::order_criterion_values(ts, *args.auto_order, criterion);
        sel.selected = residua::select_order(ts, *args.auto_order, criterion);
        order = sel.selected;
        doc.selection = sel;
    } else if (args.order) {
        order = *args.order;
    } else {
        throw std::invalid_argument("one of --order or --auto-order is required");
    }
    if (order < 1) {
        throw std::invalid_argument(
            "selected order is 0: no autoregressive structure to analyze");
    }

    if (ts.size() <= 10 * static_cast<std::size_t>(order)) {
        doc.warnings.push_back("series length " + std::to_string(ts.size()) +
                               " is short for order " + std::to_string(order) +
                               " (want > 10x)");
    }

    residua::ARFit fit = residua::fit_ols(ts, order, /*with_intercept=*/true);
    fit.diff_order = args.diff;
    doc.fit = residua::summarize(fit, static_cast<long>(ts.size()));

    const residua::DiagnosticReport diag = residua::stationarity_verdict(fit);
    doc.analysis = diag.analysis;

    if (args.arch) {
        const residua::TimeSeries resid = residua::fit_residuals(fit, ts);
        const residua::ARFit afit = residua::arch_fit(resid, *args.arch);
        residua::ArchSection arch;
        arch.fit = residua::summarize(afit, static_cast<long>(resid.size()));
        arch.analysis = residua::stationarity_verdict(afit).analysis;
        doc.arch = arch;
    }

    std::cout << (args.json ? residua::to_json_string(doc)
                            : residua::render_text(doc));
    return residua::exit_code_for(doc);
}

struct ConjectureArgs {
    int nmax = 4;
    long trials = 1000;
    std::uint64_t seed = 42;
    std::string p_list = "1,2,inf";
    bool json = false;
    bool text = false;
};

int run_conjecture(const ConjectureArgs& args) {
    const std::vector<residua::PExponent> ps = parse_p_list(args.p_list);
    const residua::ScanReport report =
        residua::conjecture_scan(args.nmax, args.trials, ps, args.seed);
    const residua::ScanDocument doc = residua::make_scan_document(report);
    std::cout << (args.json ? residua::to_json_string(doc)
                            : residua::render_text(doc));
    return residua::exit_code_for(doc);
}

struct OracleArgs {
    std::string alpha;
    int points = 256;
    double radius_factor = 0.25;
    bool locale_comma = false;
};

int run_oracle(const OracleArgs& args) {
    const std::vector<double> alpha = parse_alpha_list(args.alpha, args.locale_comma);
    const residua::RationalOperator op(alpha);
    const residua::RootSet poles = residua::find_poles(op);
    const residua::ResidueVector analytic = residua::residues_analytic(op, poles);
    residua::QuadratureConfig qcfg;
    qcfg.points_per_circle = args.points;
    qcfg.radius_factor = args.radius_factor;
    const residua::ResidueVector quad = residua::residues_quadrature(op, poles, qcfg);

    double deviation = 0.0;
    std::printf("%-4s %-50s %-50s\n", "#", "analytic", "quadrature");
    for (std::size_t i = 0; i < analytic.values.size(); ++i) {
        char a[64];
        char q[64];
        std::snprintf(a, sizeof(a), "%.17g %+.17gi", analytic.values[i].real(),
                      analytic.values[i].imag());
        std::snprintf(q, sizeof(q), "%.17g %+.17gi", quad.values[i].real(),
                      quad.values[i].imag());
        std::printf("%-4zu %-50s %-50s\n", i + 1, a, q);
        deviation = std::max(deviation, std::abs(analytic.values[i] - quad.values[i]));
    }
    std::printf("max |analytic - quadrature| = %.17g\n", deviation);
    return deviation < 1e-8 ? kExitOk : kExitBoundOrClassFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"residue-vector diagnostics for reciprocal-polynomial operators"};
    app.set_version_flag("--version", residua::version);
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "class membership, residues, and norm bounds for coefficients");
    analyze->add_option("--alpha", analyze_args.alpha,
                        "comma-separated coefficients a1,...,an")->required();
    analyze->add_option("--p", analyze_args.p_list, "norm exponents (default 1,2,inf)");
    analyze->add_flag("--oracle", analyze_args.oracle,
                      "add the contour-quadrature residue cross-check");
    analyze->add_flag("--json", analyze_args.json, "machine-readable output");
    analyze->add_flag("--text", analyze_args.text, "human-readable output (default)");
    analyze->add_flag("--locale-comma", analyze_args.locale_comma,
                      "decimal commas; list separator becomes ';'");
    analyze->add_option("--points", analyze_args.points, "quadrature points per circle");
    analyze->add_option("--radius-factor", analyze_args.radius_factor,
                        "quadrature circle radius as a fraction of the pole gap");

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "fit an AR model and diagnose it");
    fit->add_option("--csv", fit_args.csv, "input file")->required();
    fit->add_option("--column", fit_args.column, "column name or zero-based index");
    fit->add_flag("--log", fit_args.log, "log-transform first");
    fit->add_option("--diff", fit_args.diff, "difference d times after any log");
    fit->add_option("--order", fit_args.order, "fixed autoregressive order");
    fit->add_option("--auto-order", fit_args.auto_order,
                    "select order 0..max by information criterion");
    fit->add_option("--criterion", fit_args.criterion, "aic or bic (default aic)");
    fit->add_option("--arch", fit_args.arch,
                    "also fit this order on the squared residuals");
    fit->add_flag("--json", fit_args.json, "machine-readable output");
    fit->add_flag("--text", fit_args.text, "human-readable output (default)");
    fit->add_flag("--locale-comma", fit_args.locale_comma,
                  "decimal commas in the input file");

    ConjectureArgs conjecture_args;
    CLI::App* conjecture = app.add_subcommand(
        "conjecture", "Monte Carlo check of the norm lower bounds");
    conjecture->add_option("--nmax", conjecture_args.nmax, "largest degree");
    conjecture->add_option("--trials", conjecture_args.trials, "trials per degree");
    conjecture->add_option("--seed", conjecture_args.seed, "random seed");
    conjecture->add_option("--p", conjecture_args.p_list, "norm exponents");
    conjecture->add_flag("--json", conjecture_args.json, "machine-readable output");
    conjecture->add_flag("--text", conjecture_args.text, "human-readable output");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "analytic vs contour-quadrature residues, side by side");
    oracle->add_option("--alpha", oracle_args.alpha, "coefficients")->required();
    oracle->add_option("--points", oracle_args.points, "quadrature points per circle");
    oracle->add_option("--radius-factor", oracle_args.radius_factor,
                       "circle radius as a fraction of the pole gap");
    oracle->add_flag("--locale-comma", oracle_args.locale_comma,
                     "decimal commas in --alpha");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_args);
        if (fit->parsed()) return run_fit(fit_args);
        if (conjecture->parsed()) return run_conjecture(conjecture_args);
        if (oracle->parsed()) return run_oracle(oracle_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
