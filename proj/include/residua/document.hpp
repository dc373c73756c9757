#ifndef RESIDUA_DOCUMENT_HPP
#define RESIDUA_DOCUMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "residua/analysis.hpp"
#include "residua/ar.hpp"
#include "residua/norms.hpp"

namespace residua {

struct FitSummary {
    std::vector<double> phi;
    double intercept = 0.0;
    double noise_variance = 0.0;
    int order = 0;
    int diff_order = 0;
    std::string method;
    long n_observations = 0;

    bool operator==(const FitSummary&) const = default;
};

FitSummary summarize(const ARFit& fit, long n_observations);

struct OrderSelection {
    std::string criterion;
    int max_order = 0;
    int selected = 0;
    std::vector<double> criterion_values;  // orders 0..max_order

    bool operator==(const OrderSelection&) const = default;
};

struct CsvEcho {
    std::string path;
    std::string column;
    bool decimal_comma = false;
    std::vector<std::string> transforms;
    long rows_loaded = 0;
    long rows_used = 0;

    bool operator==(const CsvEcho&) const = default;
};

struct AnalysisDocument {
    std::string tool_name;
    std::string tool_version;
    std::string timestamp;
    OperatorAnalysis analysis;

    bool operator==(const AnalysisDocument&) const = default;
};

struct ArchSection {
    FitSummary fit;
    OperatorAnalysis analysis;

    bool operator==(const ArchSection&) const = default;
};

struct FitDocument {
    std::string tool_name;
    std::string tool_version;
    std::string timestamp;
    CsvEcho input;
    FitSummary fit;
    std::optional<OrderSelection> selection;
    std::vector<std::string> warnings;
    OperatorAnalysis analysis;
    std::optional<ArchSection> arch;

    bool operator==(const FitDocument&) const = default;
};

struct ScanDocument {
    std::string tool_name;
    std::string tool_version;
    std::string timestamp;
    ScanReport report;

    bool operator==(const ScanDocument&) const = default;
};

AnalysisDocument make_analysis_document(const OperatorAnalysis& analysis);
ScanDocument make_scan_document(const ScanReport& report);

/// ISO-8601 UTC wall-clock time.
std::string utc_timestamp_now();

// JSON serialization. Complex numbers are emitted as {re, im} objects;
// doubles keep full round-trip precision (up to 17 significant digits).
std::string to_json_string(const AnalysisDocument& doc, int indent = 2);
std::string to_json_string(const FitDocument& doc, int indent = 2);
std::string to_json_string(const ScanDocument& doc, int indent = 2);

AnalysisDocument analysis_document_from_json(const std::string& text);
FitDocument fit_document_from_json(const std::string& text);
ScanDocument scan_document_from_json(const std::string& text);

std::string render_text(const AnalysisDocument& doc);
std::string render_text(const FitDocument& doc);
std::string render_text(const ScanDocument& doc);

/// 0 when the fit verdict is in-class and every bound holds, else 1.
int exit_code_for(const FitDocument& doc);

/// 0 with no violations, 3 otherwise.
int exit_code_for(const ScanDocument& doc);

}  // namespace residua

#endif  // RESIDUA_DOCUMENT_HPP
