#include <string>

#include <doctest.h>
#include <json.hpp>

#include "residua/document.hpp"

using residua::AnalysisDocument;
using residua::AnalyzeOptions;
using residua::FitDocument;
using residua::OperatorAnalysis;
using residua::PExponent;
using residua::RationalOperator;
using residua::ScanDocument;

namespace {

OperatorAnalysis ipc_analysis(bool with_quadrature = false) {
    AnalyzeOptions options;
    options.with_quadrature = with_quadrature;
    return residua::analyze_operator(RationalOperator({0.584, 0.203494}), options);
}

}  // namespace

TEST_CASE("analysis documents round-trip through JSON") {
    SUBCASE("in-class with quadrature") {
        const AnalysisDocument doc = residua::make_analysis_document(ipc_analysis(true));
        const std::string text = residua::to_json_string(doc);
        CHECK(residua::analysis_document_from_json(text) == doc);
    }
    SUBCASE("advisory out-of-class") {
        const AnalysisDocument doc = residua::make_analysis_document(
            residua::analyze_operator(RationalOperator({2.0, -3.0})));
        const std::string text = residua::to_json_string(doc);
        CHECK(residua::analysis_document_from_json(text) == doc);
        CHECK(doc.analysis.bounds.has_value());
        CHECK(doc.analysis.bounds->advisory());
    }
    SUBCASE("repeated pole, no bound report") {
        const AnalysisDocument doc = residua::make_analysis_document(
            residua::analyze_operator(RationalOperator({0.6, -0.09})));
        CHECK_FALSE(doc.analysis.bounds.has_value());
        CHECK(doc.analysis.residues.empty());
        const std::string text = residua::to_json_string(doc);
        CHECK(residua::analysis_document_from_json(text) == doc);
    }
}

TEST_CASE("scan documents round-trip through JSON") {
    const std::vector<PExponent> ps{PExponent::finite(1), PExponent::inf()};
    const ScanDocument doc =
        residua::make_scan_document(residua::conjecture_scan(2, 25, ps, 5));
    const std::string text = residua::to_json_string(doc);
    CHECK(residua::scan_document_from_json(text) == doc);
}

TEST_CASE("fit documents round-trip through JSON") {
    FitDocument doc;
    doc.tool_name = "residua";
    doc.tool_version = "0.1.0";
    doc.timestamp = "2026-01-01T00:00:00Z";
    doc.input = {"series.csv", "y", false, {"log", "diff(1)"}, 512, 511};
    residua::ARFit fit;
    fit.phi = {0.584, 0.203494};
    fit.order = 2;
    fit.intercept = 0.01;
    fit.noise_variance = 0.98;
    fit.method = residua::FitMethod::ols;
    doc.fit = residua::summarize(fit, 511);
    doc.selection = residua::OrderSelection{"aic", 4, 2, {10.0, 5.0, 1.0, 1.5, 2.0}};
    doc.warnings = {"series length 511 is short for order 2 (want > 10x)"};
    doc.analysis = ipc_analysis();
    residua::ArchSection arch;
    arch.fit = residua::summarize(fit, 509);
    arch.analysis = ipc_analysis();
    doc.arch = arch;

    const std::string text = residua::to_json_string(doc);
    CHECK(residua::fit_document_from_json(text) == doc);
}

TEST_CASE("reference values survive serialization digit-for-digit") {
    const AnalysisDocument doc = residua::make_analysis_document(ipc_analysis());
    const AnalysisDocument back =
        residua::analysis_document_from_json(residua::to_json_string(doc));
    REQUIRE_FALSE(back.analysis.residues.empty());
    CHECK(back.analysis.residues[0].values[0].real() ==
          doc.analysis.residues[0].values[0].real());
    const double fixture = 0.798284224250679;
    nlohmann::json j = fixture;
    CHECK(nlohmann::json::parse(j.dump()).get<double>() == fixture);
}

TEST_CASE("complex values serialize as re/im objects") {
    const AnalysisDocument doc = residua::make_analysis_document(ipc_analysis());
    const auto j = nlohmann::json::parse(residua::to_json_string(doc));
    const auto& pole = j.at("analysis").at("poles").at(0).at("value");
    CHECK(pole.contains("re"));
    CHECK(pole.contains("im"));
}

TEST_CASE("exit codes follow document content") {
    CHECK(residua::exit_code_for(ipc_analysis()) == 0);
    CHECK(residua::exit_code_for(
              residua::analyze_operator(RationalOperator({2.0, -3.0}))) == 1);
    CHECK(residua::exit_code_for(
              residua::analyze_operator(RationalOperator({0.6, -0.09}))) == 1);

    FitDocument fit_doc;
    fit_doc.analysis = ipc_analysis();
    CHECK(residua::exit_code_for(fit_doc) == 0);
    fit_doc.analysis = residua::analyze_operator(RationalOperator({2.0, -3.0}));
    CHECK(residua::exit_code_for(fit_doc) == 1);

    ScanDocument scan_doc = residua::make_scan_document(
        residua::conjecture_scan(1, 10, std::vector<PExponent>{PExponent::finite(2)}, 3));
    CHECK(residua::exit_code_for(scan_doc) == 0);
    scan_doc.report.violations.push_back(
        {1, 0, {0.5}, PExponent::finite(2), 0.4, 1.0});
    CHECK(residua::exit_code_for(scan_doc) == 3);
}

TEST_CASE("identical analyses serialize identically") {
    const OperatorAnalysis a = ipc_analysis(true);
    const OperatorAnalysis b = ipc_analysis(true);
    CHECK(a == b);
    AnalysisDocument da{"residua", "0.1.0", "t", a};
    AnalysisDocument db{"residua", "0.1.0", "t", b};
    CHECK(residua::to_json_string(da) == residua::to_json_string(db));
    CHECK(residua::render_text(da) == residua::render_text(db));
}
