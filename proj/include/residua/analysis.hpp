#ifndef RESIDUA_ANALYSIS_HPP
#define RESIDUA_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "residua/norms.hpp"
#include "residua/rational.hpp"

namespace residua {

struct PoleRow {
    Complex value;
    double modulus = 0.0;
    double derivative_magnitude = 0.0;  // |P'(z)| at the pole

    bool operator==(const PoleRow&) const = default;
};

enum class StationarityVerdict {
    in_class,        // class conditions hold
    outside_class,   // roots outside the unit circle, class conditions unmet
    non_stationary,  // some root on or inside the unit circle
};

std::string to_string(StationarityVerdict v);

struct AnalyzeOptions {
    std::vector<PExponent> ps = {PExponent::finite(1), PExponent::finite(2),
                                 PExponent::inf()};
    bool with_quadrature = false;
    QuadratureConfig quadrature;
    RootConfig roots;
};

/// Everything the reports need about one operator: class membership,
/// pole table, residue vectors by method, and the bound report. Residues
/// and bounds are absent when the poles are not numerically simple.
struct OperatorAnalysis {
    std::vector<double> alpha;
    ClassReport class_report;
    std::vector<PoleRow> poles;
    std::vector<ResidueVector> residues;  // analytic, closed_form (n <= 2), quadrature
    std::optional<BoundReport> bounds;    // from the analytic residues
    std::optional<double> max_quadrature_deviation;
    StationarityVerdict verdict = StationarityVerdict::non_stationary;

    bool operator==(const OperatorAnalysis&) const = default;
};

OperatorAnalysis analyze_operator(const RationalOperator& op,
                                  const AnalyzeOptions& options = {});

/// Exit status shared by the command-line driver: 0 when the operator is
/// in class and every requested bound holds, 1 otherwise.
int exit_code_for(const OperatorAnalysis& analysis);

}  // namespace residua

#endif  // RESIDUA_ANALYSIS_HPP
