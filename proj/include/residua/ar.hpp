#ifndef RESIDUA_AR_HPP
#define RESIDUA_AR_HPP

#include <string>
#include <vector>

#include "residua/analysis.hpp"
#include "residua/timeseries.hpp"

namespace residua {

enum class FitMethod { yule_walker, ols };

std::string to_string(FitMethod m);

struct ARFit {
    std::vector<double> phi;
    double intercept = 0.0;
    double noise_variance = 0.0;  // residual mean square
    int order = 0;                // phi.size()
    int diff_order = 0;           // differencing applied upstream (metadata)
    FitMethod method = FitMethod::yule_walker;
};

/// Durbin-Levinson solve of the Toeplitz system on autocovariances
/// c_0..c_order; returns the AR coefficients. Exposed for testability.
std::vector<double> solve_yule_walker(std::span<const double> autocov, int order);

/// Yule-Walker fit on biased autocovariances of the mean-centered series;
/// the intercept is recovered as mean * (1 - sum phi).
ARFit fit_yule_walker(const TimeSeries& ts, int order);

/// Least-squares regression of y_t on its lags, optionally with a
/// constant, via the normal equations.
ARFit fit_ols(const TimeSeries& ts, int order, bool with_intercept = true);

enum class Criterion { aic, bic };

std::string to_string(Criterion c);

/// Argmin over orders 0..max_order of N ln(sigma^2) + penalty, fitted by
/// Yule-Walker; ties break toward the smaller order.
int select_order(const TimeSeries& ts, int max_order, Criterion criterion);

/// Per-order criterion values, as computed by select_order.
std::vector<double> order_criterion_values(const TimeSeries& ts, int max_order,
                                           Criterion criterion);

/// Process mean intercept / (1 - sum phi).
double model_mean(const ARFit& fit);

/// The model's reciprocal-polynomial operator with coefficients phi.
RationalOperator operator_from_fit(const ARFit& fit);

/// In-sample one-step residuals y_t - intercept - sum phi_j y_{t-j}.
TimeSeries fit_residuals(const ARFit& fit, const TimeSeries& ts);

/// AR fit of the squared series by least squares with intercept; the
/// conditional-heteroskedasticity model on residuals.
ARFit arch_fit(const TimeSeries& residual_series, int order);

struct DiagnosticReport {
    OperatorAnalysis analysis;
    StationarityVerdict verdict = StationarityVerdict::non_stationary;
};

/// Full stationarity diagnostic of a fitted model: class membership of
/// the operator, residues when the poles are simple, and norm bounds at
/// p in {1, 2, inf}.
DiagnosticReport stationarity_verdict(const ARFit& fit);

}  // namespace residua

#endif  // RESIDUA_AR_HPP
