#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "residua/ar.hpp"
#include "residua/document.hpp"
#include "residua/version.hpp"

namespace py = pybind11;

namespace {

residua::PExponent p_from_object(const py::handle& obj) {
    if (py::isinstance<py::str>(obj)) {
        const auto parsed = residua::parse_p(obj.cast<std::string>());
        if (!parsed) {
            throw py::value_error("norm exponent must be an integer >= 1 or 'inf'");
        }
        return *parsed;
    }
    if (py::isinstance<py::int_>(obj)) {
        return residua::PExponent::finite(obj.cast<int>());
    }
    if (py::isinstance<py::float_>(obj)) {
        const double v = obj.cast<double>();
        if (std::isinf(v)) return residua::PExponent::inf();
    }
    throw py::value_error("norm exponent must be an integer >= 1 or 'inf'");
}

std::vector<residua::PExponent> p_list_from_object(const py::iterable& ps) {
    std::vector<residua::PExponent> out;
    for (const py::handle& item : ps) out.push_back(p_from_object(item));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    using namespace residua;

    m.doc() = "Residue vectors of reciprocal-polynomial operators and "
              "autoregressive stationarity diagnostics";
    m.attr("__version__") = residua::version;

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init<std::vector<Complex>>(), py::arg("coeffs"))
        .def_property_readonly("degree", &Polynomial::degree)
        .def_property_readonly("coefficients", &Polynomial::coefficients)
        .def("eval", &Polynomial::eval, py::arg("z"))
        .def("derivative", &Polynomial::derivative)
        .def("cauchy_root_bound", &Polynomial::cauchy_root_bound);

    py::class_<RootConfig>(m, "RootConfig")
        .def(py::init<>())
        .def_readwrite("max_iterations", &RootConfig::max_iterations)
        .def_readwrite("tolerance", &RootConfig::tolerance);

    py::class_<RootSet>(m, "RootSet")
        .def_readonly("roots", &RootSet::roots)
        .def_readonly("residual_magnitudes", &RootSet::residual_magnitudes)
        .def_readonly("min_separation", &RootSet::min_separation)
        .def_readonly("iterations_used", &RootSet::iterations_used);

    py::class_<SimplicityVerdict>(m, "SimplicityVerdict")
        .def_readonly("simple", &SimplicityVerdict::simple)
        .def_readonly("min_separation", &SimplicityVerdict::min_separation)
        .def_readonly("separation_threshold", &SimplicityVerdict::separation_threshold)
        .def_readonly("min_derivative_magnitude",
                      &SimplicityVerdict::min_derivative_magnitude)
        .def_readonly("limiting_root", &SimplicityVerdict::limiting_root);

    m.def("find_roots", &find_roots, py::arg("polynomial"),
          py::arg("config") = RootConfig{});
    m.def("separation_report", &separation_report, py::arg("roots"),
          py::arg("polynomial"));

    py::class_<RationalOperator>(m, "RationalOperator")
        .def(py::init<std::vector<double>>(), py::arg("alpha"))
        .def_property_readonly("degree", &RationalOperator::degree)
        .def_property_readonly("alpha", &RationalOperator::alpha)
        .def_property_readonly("denominator", &RationalOperator::denominator)
        .def("eval", &RationalOperator::eval, py::arg("z"));

    py::class_<ConditionIReport>(m, "ConditionIReport")
        .def_readonly("passed", &ConditionIReport::pass)
        .def_readonly("coefficient_sum", &ConditionIReport::coefficient_sum)
        .def_readonly("margin", &ConditionIReport::margin);

    py::class_<ConditionIIReport>(m, "ConditionIIReport")
        .def_readonly("passed", &ConditionIIReport::pass)
        .def_readonly("min_pole_modulus", &ConditionIIReport::min_pole_modulus)
        .def_readonly("modulus_margin", &ConditionIIReport::modulus_margin)
        .def_readonly("simplicity", &ConditionIIReport::simplicity);

    py::class_<ClassReport>(m, "ClassReport")
        .def_readonly("condition_i", &ClassReport::condition_i)
        .def_readonly("condition_ii", &ClassReport::condition_ii)
        .def_readonly("in_class", &ClassReport::in_class);

    py::enum_<ResidueMethod>(m, "ResidueMethod")
        .value("analytic", ResidueMethod::analytic)
        .value("quadrature", ResidueMethod::quadrature)
        .value("closed_form", ResidueMethod::closed_form);

    py::class_<ResidueVector>(m, "ResidueVector")
        .def_readonly("values", &ResidueVector::values)
        .def_readonly("method", &ResidueVector::method);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("points_per_circle", &QuadratureConfig::points_per_circle)
        .def_readwrite("radius_factor", &QuadratureConfig::radius_factor);

    m.def("find_poles", &find_poles, py::arg("op"), py::arg("config") = RootConfig{});
    m.def("check_class", &check_class, py::arg("op"), py::arg("poles"));
    m.def("residues_analytic", &residues_analytic, py::arg("op"), py::arg("poles"));
    m.def("residues_closed_form", &residues_closed_form, py::arg("op"));
    m.def("residues_quadrature", &residues_quadrature, py::arg("op"), py::arg("poles"),
          py::arg("config") = QuadratureConfig{});

    m.def("p_norm", [](const std::vector<Complex>& v, int p) { return p_norm(v, p); },
          py::arg("values"), py::arg("p"));
    m.def("inf_norm",
          [](const std::vector<Complex>& v) { return inf_norm(v); },
          py::arg("values"));
    m.def(
        "theorem_lower_bound",
        [](int n, const py::object& p) { return theorem_lower_bound(n, p_from_object(p)); },
        py::arg("n"), py::arg("p"));

    py::class_<BoundEntry>(m, "BoundEntry")
        .def_property_readonly("p",
                               [](const BoundEntry& e) { return to_string(e.p); })
        .def_readonly("norm_value", &BoundEntry::norm_value)
        .def_readonly("lower_bound", &BoundEntry::lower_bound)
        .def_readonly("margin", &BoundEntry::margin)
        .def_readonly("holds", &BoundEntry::holds);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("n", &BoundReport::n)
        .def_readonly("in_class_context", &BoundReport::in_class_context)
        .def_readonly("per_p", &BoundReport::per_p)
        .def_property_readonly("advisory", &BoundReport::advisory)
        .def("all_hold", &BoundReport::all_hold);

    m.def(
        "verify_bounds",
        [](const ResidueVector& rv, const ClassReport& cls, const py::iterable& ps) {
            const auto parsed = p_list_from_object(ps);
            return verify_bounds(rv, cls, parsed);
        },
        py::arg("residues"), py::arg("class_report"), py::arg("ps"));

    py::class_<SandwichReport>(m, "SandwichReport")
        .def_readonly("inf_norm_value", &SandwichReport::inf_norm_value)
        .def_readonly("two_norm_value", &SandwichReport::two_norm_value)
        .def_readonly("scaled_inf_norm", &SandwichReport::scaled_inf_norm)
        .def_readonly("holds", &SandwichReport::holds);

    m.def("sandwich_check",
          [](const std::vector<Complex>& v) { return sandwich_check(v); },
          py::arg("values"));

    py::class_<ScanCell>(m, "ScanCell")
        .def_readonly("n", &ScanCell::n)
        .def_property_readonly("p", [](const ScanCell& c) { return to_string(c.p); })
        .def_readonly("min_margin", &ScanCell::min_margin);

    py::class_<ScanViolation>(m, "ScanViolation")
        .def_readonly("n", &ScanViolation::n)
        .def_readonly("trial", &ScanViolation::trial)
        .def_readonly("alpha", &ScanViolation::alpha)
        .def_property_readonly("p",
                               [](const ScanViolation& v) { return to_string(v.p); })
        .def_readonly("norm_value", &ScanViolation::norm_value)
        .def_readonly("lower_bound", &ScanViolation::lower_bound);

    py::class_<ScanReport>(m, "ScanReport")
        .def_readonly("n_max", &ScanReport::n_max)
        .def_readonly("trials_per_n", &ScanReport::trials_per_n)
        .def_readonly("seed", &ScanReport::seed)
        .def_readonly("trials", &ScanReport::trials)
        .def_readonly("accepted", &ScanReport::accepted)
        .def_readonly("rejected", &ScanReport::rejected)
        .def_readonly("min_pole_modulus", &ScanReport::min_pole_modulus)
        .def_readonly("max_abs_residue_sum", &ScanReport::max_abs_residue_sum)
        .def_readonly("cells", &ScanReport::cells)
        .def_readonly("violations", &ScanReport::violations);

    m.def(
        "conjecture_scan",
        [](int n_max, long trials_per_n, const py::iterable& ps, std::uint64_t seed) {
            const auto parsed = p_list_from_object(ps);
            return conjecture_scan(n_max, trials_per_n, parsed, seed);
        },
        py::arg("n_max"), py::arg("trials_per_n"), py::arg("ps"), py::arg("seed"));

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init([](std::vector<double> values) {
                 return make_series(std::move(values));
             }),
             py::arg("values"))
        .def_readonly("values", &TimeSeries::values)
        .def_readonly("transform_log", &TimeSeries::transform_log)
        .def("__len__", &TimeSeries::size);

    m.def(
        "load_csv",
        [](const std::filesystem::path& path, const std::string& column,
           bool decimal_comma) {
            return load_csv(path, CsvOptions{column, decimal_comma, '\0'});
        },
        py::arg("path"), py::arg("column") = "0", py::arg("decimal_comma") = false);
    m.def("log_transform", &log_transform, py::arg("series"));
    m.def("difference", &difference, py::arg("series"), py::arg("d") = 1);
    m.def("acf", &acf, py::arg("series"), py::arg("max_lag"));
    m.def("pacf", &pacf, py::arg("series"), py::arg("max_lag"));
    m.def("simulate_ar", &simulate_ar, py::arg("phi"), py::arg("intercept"),
          py::arg("n"), py::arg("seed"));
    m.def("simulate_arch", &simulate_arch, py::arg("alpha0"), py::arg("alpha"),
          py::arg("n"), py::arg("seed"));

    py::enum_<FitMethod>(m, "FitMethod")
        .value("yule_walker", FitMethod::yule_walker)
        .value("ols", FitMethod::ols);

    py::class_<ARFit>(m, "ARFit")
        .def_readonly("phi", &ARFit::phi)
        .def_readonly("intercept", &ARFit::intercept)
        .def_readonly("noise_variance", &ARFit::noise_variance)
        .def_readonly("order", &ARFit::order)
        .def_readonly("diff_order", &ARFit::diff_order)
        .def_readonly("method", &ARFit::method);

    m.def("fit_yule_walker", &fit_yule_walker, py::arg("series"), py::arg("order"));
    m.def("fit_ols", &fit_ols, py::arg("series"), py::arg("order"),
          py::arg("with_intercept") = true);
    m.def(
        "select_order",
        [](const TimeSeries& ts, int max_order, const std::string& criterion) {
            if (criterion == "aic") return select_order(ts, max_order, Criterion::aic);
            if (criterion == "bic") return select_order(ts, max_order, Criterion::bic);
            throw py::value_error("criterion must be 'aic' or 'bic'");
        },
        py::arg("series"), py::arg("max_order"), py::arg("criterion") = "aic");
    m.def("model_mean", &model_mean, py::arg("fit"));
    m.def("operator_from_fit", &operator_from_fit, py::arg("fit"));
    m.def("fit_residuals", &fit_residuals, py::arg("fit"), py::arg("series"));
    m.def("arch_fit", &arch_fit, py::arg("residual_series"), py::arg("order"));

    py::enum_<StationarityVerdict>(m, "StationarityVerdict")
        .value("in_class", StationarityVerdict::in_class)
        .value("outside_class", StationarityVerdict::outside_class)
        .value("non_stationary", StationarityVerdict::non_stationary);

    py::class_<PoleRow>(m, "PoleRow")
        .def_readonly("value", &PoleRow::value)
        .def_readonly("modulus", &PoleRow::modulus)
        .def_readonly("derivative_magnitude", &PoleRow::derivative_magnitude);

    py::class_<OperatorAnalysis>(m, "OperatorAnalysis")
        .def_readonly("alpha", &OperatorAnalysis::alpha)
        .def_readonly("class_report", &OperatorAnalysis::class_report)
        .def_readonly("poles", &OperatorAnalysis::poles)
        .def_readonly("residues", &OperatorAnalysis::residues)
        .def_readonly("bounds", &OperatorAnalysis::bounds)
        .def_readonly("max_quadrature_deviation",
                      &OperatorAnalysis::max_quadrature_deviation)
        .def_readonly("verdict", &OperatorAnalysis::verdict)
        .def("to_json", [](const OperatorAnalysis& a) {
            return to_json_string(make_analysis_document(a));
        });

    m.def(
        "analyze_operator",
        [](const RationalOperator& op, const py::iterable& ps, bool with_quadrature,
           int points, double radius_factor) {
            AnalyzeOptions options;
            options.ps = p_list_from_object(ps);
            options.with_quadrature = with_quadrature;
            options.quadrature.points_per_circle = points;
            options.quadrature.radius_factor = radius_factor;
            return analyze_operator(op, options);
        },
        py::arg("op"), py::arg("ps") = py::make_tuple(1, 2, "inf"),
        py::arg("with_quadrature") = false, py::arg("points") = 256,
        py::arg("radius_factor") = 0.25);

    py::class_<DiagnosticReport>(m, "DiagnosticReport")
        .def_readonly("analysis", &DiagnosticReport::analysis)
        .def_readonly("verdict", &DiagnosticReport::verdict);

    m.def("stationarity_verdict", &stationarity_verdict, py::arg("fit"));
}
