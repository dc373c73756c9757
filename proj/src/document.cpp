#include "residua/document.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "residua/version.hpp"

namespace residua {

namespace {

using ojson = nlohmann::ordered_json;

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string complex_text(const Complex& z) {
    const double im = z.imag();
    return g17(z.real()) + (im < 0.0 ? " - " : " + ") + g17(std::abs(im)) + "i";
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

// Doubles that can legitimately be infinite are stored as the strings
// "inf" / "-inf"; plain JSON numbers cannot represent them.
ojson dump_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double load_double(const ojson& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw std::runtime_error("unexpected string where a number was expected");
    }
    return j.get<double>();
}

ojson dump_complex(const Complex& z) {
    return ojson{{"re", z.real()}, {"im", z.imag()}};
}

Complex load_complex(const ojson& j) {
    return Complex{j.at("re").get<double>(), j.at("im").get<double>()};
}

ojson dump_p(const PExponent& p) {
    if (p.is_inf) return "inf";
    return p.value;
}

PExponent load_p(const ojson& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return PExponent::inf();
        throw std::runtime_error("bad norm exponent in document");
    }
    return PExponent::finite(j.get<int>());
}

ojson dump_simplicity(const SimplicityVerdict& v) {
    return ojson{{"simple", v.simple},
                 {"min_separation", dump_double(v.min_separation)},
                 {"separation_threshold", v.separation_threshold},
                 {"closest_pair", {v.closest_pair_first, v.closest_pair_second}},
                 {"min_derivative_magnitude", dump_double(v.min_derivative_magnitude)},
                 {"limiting_root", v.limiting_root}};
}

SimplicityVerdict load_simplicity(const ojson& j) {
    SimplicityVerdict v;
    v.simple = j.at("simple").get<bool>();
    v.min_separation = load_double(j.at("min_separation"));
    v.separation_threshold = j.at("separation_threshold").get<double>();
    v.closest_pair_first = j.at("closest_pair").at(0).get<int>();
    v.closest_pair_second = j.at("closest_pair").at(1).get<int>();
    v.min_derivative_magnitude = load_double(j.at("min_derivative_magnitude"));
    v.limiting_root = j.at("limiting_root").get<int>();
    return v;
}

ojson dump_class_report(const ClassReport& r) {
    return ojson{
        {"condition_i",
         {{"pass", r.condition_i.pass},
          {"coefficient_sum", r.condition_i.coefficient_sum},
          {"margin", r.condition_i.margin}}},
        {"condition_ii",
         {{"pass", r.condition_ii.pass},
          {"min_pole_modulus", r.condition_ii.min_pole_modulus},
          {"modulus_margin", r.condition_ii.modulus_margin},
          {"simplicity", dump_simplicity(r.condition_ii.simplicity)}}},
        {"in_class", r.in_class}};
}

ClassReport load_class_report(const ojson& j) {
    ClassReport r;
    const ojson& ci = j.at("condition_i");
    r.condition_i.pass = ci.at("pass").get<bool>();
    r.condition_i.coefficient_sum = ci.at("coefficient_sum").get<double>();
    r.condition_i.margin = ci.at("margin").get<double>();
    const ojson& cii = j.at("condition_ii");
    r.condition_ii.pass = cii.at("pass").get<bool>();
    r.condition_ii.min_pole_modulus = cii.at("min_pole_modulus").get<double>();
    r.condition_ii.modulus_margin = cii.at("modulus_margin").get<double>();
    r.condition_ii.simplicity = load_simplicity(cii.at("simplicity"));
    r.in_class = j.at("in_class").get<bool>();
    return r;
}

ojson dump_residue_vector(const ResidueVector& rv) {
    ojson values = ojson::array();
    for (const Complex& c : rv.values) values.push_back(dump_complex(c));
    return ojson{{"method", to_string(rv.method)}, {"values", values}};
}

ResidueVector load_residue_vector(const ojson& j) {
    ResidueVector rv;
    const std::string m = j.at("method").get<std::string>();
    if (m == "analytic") {
        rv.method = ResidueMethod::analytic;
    } else if (m == "quadrature") {
        rv.method = ResidueMethod::quadrature;
    } else if (m == "closed_form") {
        rv.method = ResidueMethod::closed_form;
    } else {
        throw std::runtime_error("unknown residue method: " + m);
    }
    for (const ojson& v : j.at("values")) rv.values.push_back(load_complex(v));
    return rv;
}

ojson dump_bound_report(const BoundReport& r) {
    ojson entries = ojson::array();
    for (const BoundEntry& e : r.per_p) {
        entries.push_back(ojson{{"p", dump_p(e.p)},
                                {"norm_value", e.norm_value},
                                {"lower_bound", e.lower_bound},
                                {"margin", e.margin},
                                {"holds", e.holds}});
    }
    return ojson{{"n", r.n},
                 {"in_class_context", r.in_class_context},
                 {"advisory", r.advisory()},
                 {"per_p", entries}};
}

BoundReport load_bound_report(const ojson& j) {
    BoundReport r;
    r.n = j.at("n").get<int>();
    r.in_class_context = j.at("in_class_context").get<bool>();
    for (const ojson& e : j.at("per_p")) {
        BoundEntry be;
        be.p = load_p(e.at("p"));
        be.norm_value = e.at("norm_value").get<double>();
        be.lower_bound = e.at("lower_bound").get<double>();
        be.margin = e.at("margin").get<double>();
        be.holds = e.at("holds").get<bool>();
        r.per_p.push_back(be);
    }
    return r;
}

std::string verdict_key(StationarityVerdict v) {
    switch (v) {
        case StationarityVerdict::in_class: return "in_class";
        case StationarityVerdict::outside_class: return "outside_class";
        case StationarityVerdict::non_stationary: return "non_stationary";
    }
    return "unknown";
}

StationarityVerdict load_verdict(const std::string& s) {
    if (s == "in_class") return StationarityVerdict::in_class;
    if (s == "outside_class") return StationarityVerdict::outside_class;
    if (s == "non_stationary") return StationarityVerdict::non_stationary;
    throw std::runtime_error("unknown verdict: " + s);
}

ojson dump_analysis(const OperatorAnalysis& a) {
    ojson poles = ojson::array();
    for (const PoleRow& p : a.poles) {
        poles.push_back(ojson{{"value", dump_complex(p.value)},
                              {"modulus", p.modulus},
                              {"derivative_magnitude", p.derivative_magnitude}});
    }
    ojson residues = ojson::array();
    for (const ResidueVector& rv : a.residues) residues.push_back(dump_residue_vector(rv));
    ojson j{{"n", static_cast<int>(a.alpha.size())},
            {"alpha", a.alpha},
            {"class_report", dump_class_report(a.class_report)},
            {"poles", poles},
            {"residues", residues},
            {"verdict", verdict_key(a.verdict)}};
    j["bounds"] = a.bounds ? dump_bound_report(*a.bounds) : ojson(nullptr);
    j["max_quadrature_deviation"] =
        a.max_quadrature_deviation ? ojson(*a.max_quadrature_deviation) : ojson(nullptr);
    return j;
}

OperatorAnalysis load_analysis(const ojson& j) {
    OperatorAnalysis a;
    a.alpha = j.at("alpha").get<std::vector<double>>();
    a.class_report = load_class_report(j.at("class_report"));
    for (const ojson& p : j.at("poles")) {
        PoleRow row;
        row.value = load_complex(p.at("value"));
        row.modulus = p.at("modulus").get<double>();
        row.derivative_magnitude = p.at("derivative_magnitude").get<double>();
        a.poles.push_back(row);
    }
    for (const ojson& rv : j.at("residues")) a.residues.push_back(load_residue_vector(rv));
    if (!j.at("bounds").is_null()) a.bounds = load_bound_report(j.at("bounds"));
    if (!j.at("max_quadrature_deviation").is_null()) {
        a.max_quadrature_deviation = j.at("max_quadrature_deviation").get<double>();
    }
    a.verdict = load_verdict(j.at("verdict").get<std::string>());
    return a;
}

ojson dump_fit_summary(const FitSummary& f) {
    return ojson{{"phi", f.phi},
                 {"intercept", f.intercept},
                 {"noise_variance", f.noise_variance},
                 {"order", f.order},
                 {"diff_order", f.diff_order},
                 {"method", f.method},
                 {"n_observations", f.n_observations}};
}

FitSummary load_fit_summary(const ojson& j) {
    FitSummary f;
    f.phi = j.at("phi").get<std::vector<double>>();
    f.intercept = j.at("intercept").get<double>();
    f.noise_variance = j.at("noise_variance").get<double>();
    f.order = j.at("order").get<int>();
    f.diff_order = j.at("diff_order").get<int>();
    f.method = j.at("method").get<std::string>();
    f.n_observations = j.at("n_observations").get<long>();
    return f;
}

ojson dump_scan_report(const ScanReport& r) {
    ojson ps = ojson::array();
    for (const PExponent& p : r.ps) ps.push_back(dump_p(p));
    ojson cells = ojson::array();
    for (const ScanCell& c : r.cells) {
        cells.push_back(ojson{
            {"n", c.n}, {"p", dump_p(c.p)}, {"min_margin", dump_double(c.min_margin)}});
    }
    ojson violations = ojson::array();
    for (const ScanViolation& v : r.violations) {
        violations.push_back(ojson{{"n", v.n},
                                   {"trial", v.trial},
                                   {"alpha", v.alpha},
                                   {"p", dump_p(v.p)},
                                   {"norm_value", v.norm_value},
                                   {"lower_bound", v.lower_bound}});
    }
    return ojson{{"n_max", r.n_max},
                 {"trials_per_n", r.trials_per_n},
                 {"seed", r.seed},
                 {"ps", ps},
                 {"trials", r.trials},
                 {"accepted", r.accepted},
                 {"rejected", r.rejected},
                 {"min_pole_modulus", dump_double(r.min_pole_modulus)},
                 {"max_abs_residue_sum", r.max_abs_residue_sum},
                 {"cells", cells},
                 {"violations", violations}};
}

ScanReport load_scan_report(const ojson& j) {
    ScanReport r;
    r.n_max = j.at("n_max").get<int>();
    r.trials_per_n = j.at("trials_per_n").get<long>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const ojson& p : j.at("ps")) r.ps.push_back(load_p(p));
    r.trials = j.at("trials").get<long>();
    r.accepted = j.at("accepted").get<long>();
    r.rejected = j.at("rejected").get<long>();
    r.min_pole_modulus = load_double(j.at("min_pole_modulus"));
    r.max_abs_residue_sum = j.at("max_abs_residue_sum").get<double>();
    for (const ojson& c : j.at("cells")) {
        r.cells.push_back({c.at("n").get<int>(), load_p(c.at("p")),
                           load_double(c.at("min_margin"))});
    }
    for (const ojson& v : j.at("violations")) {
        r.violations.push_back({v.at("n").get<int>(), v.at("trial").get<long>(),
                                v.at("alpha").get<std::vector<double>>(),
                                load_p(v.at("p")), v.at("norm_value").get<double>(),
                                v.at("lower_bound").get<double>()});
    }
    return r;
}

ojson dump_csv_echo(const CsvEcho& e) {
    return ojson{{"path", e.path},
                 {"column", e.column},
                 {"decimal_comma", e.decimal_comma},
                 {"transforms", e.transforms},
                 {"rows_loaded", e.rows_loaded},
                 {"rows_used", e.rows_used}};
}

CsvEcho load_csv_echo(const ojson& j) {
    CsvEcho e;
    e.path = j.at("path").get<std::string>();
    e.column = j.at("column").get<std::string>();
    e.decimal_comma = j.at("decimal_comma").get<bool>();
    e.transforms = j.at("transforms").get<std::vector<std::string>>();
    e.rows_loaded = j.at("rows_loaded").get<long>();
    e.rows_used = j.at("rows_used").get<long>();
    return e;
}

void render_analysis_block(std::ostringstream& out, const OperatorAnalysis& a) {
    out << "operator: n = " << a.alpha.size() << ", alpha = [";
    for (std::size_t i = 0; i < a.alpha.size(); ++i) {
        if (i) out << ", ";
        out << g17(a.alpha[i]);
    }
    out << "]\n";

    const ClassReport& cr = a.class_report;
    out << "condition (I):  " << (cr.condition_i.pass ? "PASS" : "FAIL")
        << "  sum |alpha| = " << g17(cr.condition_i.coefficient_sum)
        << "  margin = " << g17(cr.condition_i.margin) << "\n";
    out << "condition (II): " << (cr.condition_ii.pass ? "PASS" : "FAIL")
        << "  min |pole| = " << g17(cr.condition_ii.min_pole_modulus)
        << "  margin = " << g17(cr.condition_ii.modulus_margin)
        << "  simple poles: " << yesno(cr.condition_ii.simplicity.simple) << "\n";
    const SimplicityVerdict& sv = cr.condition_ii.simplicity;
    out << "  min separation = " << g17(sv.min_separation)
        << "  threshold = " << g17(sv.separation_threshold)
        << "  min |P'| = " << g17(sv.min_derivative_magnitude) << "\n";
    out << "in class: " << yesno(cr.in_class) << "\n";

    out << "poles:\n";
    for (std::size_t i = 0; i < a.poles.size(); ++i) {
        out << "  #" << (i + 1) << "  " << complex_text(a.poles[i].value)
            << "  |z| = " << g17(a.poles[i].modulus)
            << "  |P'(z)| = " << g17(a.poles[i].derivative_magnitude) << "\n";
    }

    for (const ResidueVector& rv : a.residues) {
        out << "residues (" << to_string(rv.method) << "):\n";
        for (std::size_t i = 0; i < rv.values.size(); ++i) {
            out << "  #" << (i + 1) << "  " << complex_text(rv.values[i]) << "\n";
        }
    }
    if (a.max_quadrature_deviation) {
        out << "max |quadrature - analytic| = " << g17(*a.max_quadrature_deviation)
            << "\n";
    }

    if (a.bounds) {
        out << "norms and lower bounds (analytic residues"
            << (a.bounds->advisory() ? ", advisory: class conditions unmet" : "")
            << "):\n";
        for (const BoundEntry& e : a.bounds->per_p) {
            out << "  p = " << to_string(e.p) << "  norm = " << g17(e.norm_value)
                << "  bound = " << g17(e.lower_bound)
                << "  margin = " << g17(e.margin) << "  holds: " << yesno(e.holds)
                << "\n";
        }
    } else {
        out << "norms and lower bounds: unavailable (poles not numerically simple)\n";
    }
    out << "verdict: " << to_string(a.verdict) << "\n";
}

void render_fit_summary(std::ostringstream& out, const FitSummary& f,
                        const char* title) {
    out << title << ": order = " << f.order << ", method = " << f.method;
    if (f.diff_order > 0) out << ", differencing = " << f.diff_order;
    out << "\n  phi = [";
    for (std::size_t i = 0; i < f.phi.size(); ++i) {
        if (i) out << ", ";
        out << g17(f.phi[i]);
    }
    out << "]\n  intercept = " << g17(f.intercept)
        << "\n  noise variance = " << g17(f.noise_variance)
        << "\n  observations used = " << f.n_observations << "\n";
}

void render_header(std::ostringstream& out, const std::string& name,
                   const std::string& version, const std::string& timestamp) {
    out << "tool: " << name << " " << version << "\n";
    out << "timestamp: " << timestamp << "\n";
}

}  // namespace

FitSummary summarize(const ARFit& fit, long n_observations) {
    FitSummary f;
    f.phi = fit.phi;
    f.intercept = fit.intercept;
    f.noise_variance = fit.noise_variance;
    f.order = fit.order;
    f.diff_order = fit.diff_order;
    f.method = to_string(fit.method);
    f.n_observations = n_observations;
    return f;
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

AnalysisDocument make_analysis_document(const OperatorAnalysis& analysis) {
    return AnalysisDocument{"residua", residua::version, utc_timestamp_now(),
                            analysis};
}

ScanDocument make_scan_document(const ScanReport& report) {
    return ScanDocument{"residua", residua::version, utc_timestamp_now(), report};
}

std::string to_json_string(const AnalysisDocument& doc, int indent) {
    ojson j{{"tool", {{"name", doc.tool_name}, {"version", doc.tool_version}}},
            {"timestamp", doc.timestamp},
            {"analysis", dump_analysis(doc.analysis)}};
    return j.dump(indent);
}

std::string to_json_string(const FitDocument& doc, int indent) {
    ojson j{{"tool", {{"name", doc.tool_name}, {"version", doc.tool_version}}},
            {"timestamp", doc.timestamp},
            {"input", dump_csv_echo(doc.input)},
            {"fit", dump_fit_summary(doc.fit)}};
    j["selection"] = doc.selection
                         ? ojson{{"criterion", doc.selection->criterion},
                                 {"max_order", doc.selection->max_order},
                                 {"selected", doc.selection->selected},
                                 {"criterion_values", doc.selection->criterion_values}}
                         : ojson(nullptr);
    j["warnings"] = doc.warnings;
    j["analysis"] = dump_analysis(doc.analysis);
    j["arch"] = doc.arch ? ojson{{"fit", dump_fit_summary(doc.arch->fit)},
                                 {"analysis", dump_analysis(doc.arch->analysis)}}
                         : ojson(nullptr);
    return j.dump(indent);
}

std::string to_json_string(const ScanDocument& doc, int indent) {
    ojson j{{"tool", {{"name", doc.tool_name}, {"version", doc.tool_version}}},
            {"timestamp", doc.timestamp},
            {"scan", dump_scan_report(doc.report)}};
    return j.dump(indent);
}

AnalysisDocument analysis_document_from_json(const std::string& text) {
    const ojson j = ojson::parse(text);
    AnalysisDocument doc;
    doc.tool_name = j.at("tool").at("name").get<std::string>();
    doc.tool_version = j.at("tool").at("version").get<std::string>();
    doc.timestamp = j.at("timestamp").get<std::string>();
    doc.analysis = load_analysis(j.at("analysis"));
    return doc;
}

FitDocument fit_document_from_json(const std::string& text) {
    const ojson j = ojson::parse(text);
    FitDocument doc;
    doc.tool_name = j.at("tool").at("name").get<std::string>();
    doc.tool_version = j.at("tool").at("version").get<std::string>();
    doc.timestamp = j.at("timestamp").get<std::string>();
    doc.input = load_csv_echo(j.at("input"));
    doc.fit = load_fit_summary(j.at("fit"));
    if (!j.at("selection").is_null()) {
        OrderSelection sel;
        sel.criterion = j.at("selection").at("criterion").get<std::string>();
        sel.max_order = j.at("selection").at("max_order").get<int>();
        sel.selected = j.at("selection").at("selected").get<int>();
        sel.criterion_values =
            j.at("selection").at("criterion_values").get<std::vector<double>>();
        doc.selection = sel;
    }
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
    doc.analysis = load_analysis(j.at("analysis"));
    if (!j.at("arch").is_null()) {
        ArchSection arch;
        arch.fit = load_fit_summary(j.at("arch").at("fit"));
        arch.analysis = load_analysis(j.at("arch").at("analysis"));
        doc.arch = arch;
    }
    return doc;
}

ScanDocument scan_document_from_json(const std::string& text) {
    const ojson j = ojson::parse(text);
    ScanDocument doc;
    doc.tool_name = j.at("tool").at("name").get<std::string>();
    doc.tool_version = j.at("tool").at("version").get<std::string>();
    doc.timestamp = j.at("timestamp").get<std::string>();
    doc.report = load_scan_report(j.at("scan"));
    return doc;
}

std::string render_text(const AnalysisDocument& doc) {
    std::ostringstream out;
    render_header(out, doc.tool_name, doc.tool_version, doc.timestamp);
    render_analysis_block(out, doc.analysis);
    return out.str();
}

std::string render_text(const FitDocument& doc) {
    std::ostringstream out;
    render_header(out, doc.tool_name, doc.tool_version, doc.timestamp);
    out << "input: " << doc.input.path << " column \"" << doc.input.column << "\""
        << (doc.input.decimal_comma ? " (decimal comma)" : "") << "\n";
    out << "  rows loaded = " << doc.input.rows_loaded
        << ", after transforms = " << doc.input.rows_used << "\n";
    if (!doc.input.transforms.empty()) {
        out << "  transforms:";
        for (const std::string& t : doc.input.transforms) out << " " << t;
        out << "\n";
    }
    for (const std::string& w : doc.warnings) out << "warning: " << w << "\n";
    if (doc.selection) {
        out << "order selection (" << doc.selection->criterion
            << "): selected = " << doc.selection->selected
            << ", max = " << doc.selection->max_order << "\n";
        for (std::size_t s = 0; s < doc.selection->criterion_values.size(); ++s) {
            out << "  order " << s << ": "
                << g17(doc.selection->criterion_values[s]) << "\n";
        }
    }
    render_fit_summary(out, doc.fit, "fit");
    render_analysis_block(out, doc.analysis);
    if (doc.arch) {
        out << "--- conditional heteroskedasticity (squared residuals) ---\n";
        render_fit_summary(out, doc.arch->fit, "arch fit");
        render_analysis_block(out, doc.arch->analysis);
    }
    return out.str();
}

std::string render_text(const ScanDocument& doc) {
    std::ostringstream out;
    render_header(out, doc.tool_name, doc.tool_version, doc.timestamp);
    const ScanReport& r = doc.report;
    out << "scan: n_max = " << r.n_max << ", trials_per_n = " << r.trials_per_n
        << ", seed = " << r.seed << ", p = {";
    for (std::size_t i = 0; i < r.ps.size(); ++i) {
        if (i) out << ", ";
        out << to_string(r.ps[i]);
    }
    out << "}\n";
    out << "trials = " << r.trials << ", accepted = " << r.accepted
        << ", rejected = " << r.rejected << "\n";
    out << "min pole modulus over accepted draws = " << g17(r.min_pole_modulus)
        << "\n";
    out << "max |sum of residues| for n >= 2 = " << g17(r.max_abs_residue_sum)
        << "\n";
    out << "min margin per (n, p):\n";
    for (const ScanCell& c : r.cells) {
        out << "  n = " << c.n << "  p = " << to_string(c.p) << "  margin = "
            << g17(c.min_margin) << "\n";
    }
    if (r.violations.empty()) {
        out << "violations: none\n";
    } else {
        out << "violations:\n";
        for (const ScanViolation& v : r.violations) {
            out << "  n = " << v.n << " trial = " << v.trial << " p = "
                << to_string(v.p) << " norm = " << g17(v.norm_value)
                << " bound = " << g17(v.lower_bound) << " alpha = [";
            for (std::size_t i = 0; i < v.alpha.size(); ++i) {
                if (i) out << ", ";
                out << g17(v.alpha[i]);
            }
            out << "]\n";
        }
    }
    return out.str();
}

int exit_code_for(const FitDocument& doc) {
    if (doc.analysis.verdict != StationarityVerdict::in_class) return 1;
    if (!doc.analysis.bounds || !doc.analysis.bounds->all_hold()) return 1;
    return 0;
}

int exit_code_for(const ScanDocument& doc) {
    return doc.report.violations.empty() ? 0 : 3;
}

}  // namespace residua
