#include "residua/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace residua {

std::string to_string(StationarityVerdict v) {
    switch (v) {
        case StationarityVerdict::in_class:
            return "stationary (class conditions hold)";
        case StationarityVerdict::outside_class:
            return "stationary (roots outside unit circle, class conditions unmet)";
        case StationarityVerdict::non_stationary:
            return "non-stationary";
    }
    return "unknown";
}

OperatorAnalysis analyze_operator(const RationalOperator& op,
                                  const AnalyzeOptions& options) {
    OperatorAnalysis out;
    out.alpha = op.alpha();

    const RootSet poles = find_poles(op, options.roots);
    out.class_report = check_class(op, poles);

    const Polynomial dp = op.denominator().derivative();
    out.poles.reserve(poles.roots.size());
    for (const Complex& z : poles.roots) {
        out.poles.push_back({z, std::abs(z), std::abs(dp.eval(z))});
    }

    if (out.class_report.in_class) {
        out.verdict = StationarityVerdict::in_class;
    } else if (out.class_report.condition_ii.min_pole_modulus > 1.0) {
        out.verdict = StationarityVerdict::outside_class;
    } else {
        out.verdict = StationarityVerdict::non_stationary;
    }

    if (out.class_report.condition_ii.simplicity.simple) {
        const ResidueVector analytic = residues_analytic(op, poles);
        out.residues.push_back(analytic);
        if (op.degree() <= 2) {
            out.residues.push_back(residues_closed_form(op));
        }
        if (options.with_quadrature) {
            const ResidueVector quad =
                residues_quadrature(op, poles, options.quadrature);
            double dev = 0.0;
            for (std::size_t i = 0; i < quad.values.size(); ++i) {
                dev = std::max(dev, std::abs(quad.values[i] - analytic.values[i]));
            }
            out.max_quadrature_deviation = dev;
            out.residues.push_back(quad);
        }
        out.bounds = verify_bounds(analytic, out.class_report, options.ps);
    }
    return out;
}

int exit_code_for(const OperatorAnalysis& analysis) {
    if (!analysis.class_report.in_class) return 1;
    if (!analysis.bounds || !analysis.bounds->all_hold()) return 1;
    return 0;
}

}  // namespace residua
