#include "residua/ar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace residua {

namespace {

double sample_mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Biased autocovariances c_0..c_max_lag of the mean-centered series.
std::vector<double> autocovariances(const TimeSeries& ts, int max_lag) {
    const std::size_t n = ts.size();
    const double mean = sample_mean(ts.values);
    std::vector<double> c(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            acc += (ts.values[t] - mean) *
                   (ts.values[t - static_cast<std::size_t>(k)] - mean);
        }
        c[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
    }
    return c;
}

double residual_mean_square(const TimeSeries& ts, std::span<const double> phi,
                            double intercept) {
    const std::size_t n = ts.size();
    const std::size_t s = phi.size();
    double rss = 0.0;
    for (std::size_t t = s; t < n; ++t) {
        double pred = intercept;
        for (std::size_t j = 0; j < s; ++j) pred += phi[j] * ts.values[t - j - 1];
        const double e = ts.values[t] - pred;
        rss += e * e;
    }
    return rss / static_cast<double>(n - s);
}

// Cholesky solve of the (symmetric positive definite) normal equations.
std::vector<double> solve_spd(std::vector<std::vector<double>> a,
                              std::vector<double> b) {
    const std::size_t n = b.size();
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a[i][i];
    const double floor = 1e-13 * std::max(trace, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
            if (i == j) {
                if (s <= floor) {
                    throw std::runtime_error("singular design matrix");
                }
                a[i][i] = std::sqrt(s);
            } else {
                a[i][j] = s / a[j][j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * b[k];
        b[i] = s / a[i][i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[k][i] * b[k];
        b[i] = s / a[i][i];
    }
    return b;
}

void require_variation(const TimeSeries& ts) {
    const double first = ts.values.front();
    for (double v : ts.values) {
        if (v != first) return;
    }
    throw std::invalid_argument("constant series");
}

}  // namespace

std::string to_string(FitMethod m) {
    return m == FitMethod::yule_walker ? "yule_walker" : "ols";
}

std::string to_string(Criterion c) { return c == Criterion::aic ? "aic" : "bic"; }

std::vector<double> solve_yule_walker(std::span<const double> autocov, int order) {
    if (order < 0) {
        throw std::invalid_argument("order must be >= 0");
    }
    if (autocov.size() < static_cast<std::size_t>(order) + 1) {
        throw std::invalid_argument("need autocovariances up to the requested order");
    }
    if (autocov[0] <= 0.0) {
        throw std::invalid_argument("constant series");
    }
    std::vector<double> phi;
    double var = autocov[0];
    for (int k = 1; k <= order; ++k) {
        double num = autocov[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) {
            num -= phi[static_cast<std::size_t>(j - 1)] *
                   autocov[static_cast<std::size_t>(k - j)];
        }
        if (var <= 0.0) {
            throw std::runtime_error("Toeplitz system is numerically singular");
        }
        const double kappa = num / var;
        std::vector<double> next(static_cast<std::size_t>(k));
        for (int j = 1; j < k; ++j) {
            next[static_cast<std::size_t>(j - 1)] =
                phi[static_cast<std::size_t>(j - 1)] -
                kappa * phi[static_cast<std::size_t>(k - 1 - j)];
        }
        next[static_cast<std::size_t>(k - 1)] = kappa;
        var *= (1.0 - kappa * kappa);
        phi = std::move(next);
    }
    return phi;
}

ARFit fit_yule_walker(const TimeSeries& ts, int order) {
    if (order < 0) {
        throw std::invalid_argument("order must be >= 0");
    }
    if (ts.size() <= static_cast<std::size_t>(order)) {
        throw std::invalid_argument("series shorter than the requested order");
    }
    ARFit fit;
    fit.method = FitMethod::yule_walker;
    fit.order = order;
    const double mean = sample_mean(ts.values);
    if (order == 0) {
        fit.intercept = mean;
        fit.noise_variance = residual_mean_square(ts, {}, mean);
        return fit;
    }
    require_variation(ts);
    const std::vector<double> c = autocovariances(ts, order);
    fit.phi = solve_yule_walker(c, order);
    double phi_sum = 0.0;
    for (double p : fit.phi) phi_sum += p;
    fit.intercept = mean * (1.0 - phi_sum);
    fit.noise_variance = residual_mean_square(ts, fit.phi, fit.intercept);
    return fit;
}

ARFit fit_ols(const TimeSeries& ts, int order, bool with_intercept) {
    if (order < 0) {
        throw std::invalid_argument("order must be >= 0");
    }
    if (ts.size() <= static_cast<std::size_t>(order)) {
        throw std::invalid_argument("series shorter than the requested order");
    }
    ARFit fit;
    fit.method = FitMethod::ols;
    fit.order = order;
    if (order == 0) {
        fit.intercept = with_intercept ? sample_mean(ts.values) : 0.0;
        fit.noise_variance = residual_mean_square(ts, {}, fit.intercept);
        return fit;
    }
    require_variation(ts);

    const std::size_t n = ts.size();
    const std::size_t s = static_cast<std::size_t>(order);
    const std::size_t k = s + (with_intercept ? 1 : 0);
    std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
    std::vector<double> rhs(k, 0.0);

    // Row for time t: [1?, y_{t-1}, ..., y_{t-s}] with target y_t.
    for (std::size_t t = s; t < n; ++t) {
        std::vector<double> row(k);
        std::size_t idx = 0;
        if (with_intercept) row[idx++] = 1.0;
        for (std::size_t j = 0; j < s; ++j) row[idx++] = ts.values[t - j - 1];
        for (std::size_t i = 0; i < k; ++i) {
            rhs[i] += row[i] * ts.values[t];
            for (std::size_t j = 0; j <= i; ++j) gram[i][j] += row[i] * row[j];
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) gram[i][j] = gram[j][i];
    }

    const std::vector<double> beta = solve_spd(std::move(gram), std::move(rhs));
    std::size_t idx = 0;
    fit.intercept = with_intercept ? beta[idx++] : 0.0;
    fit.phi.assign(beta.begin() + static_cast<long>(idx), beta.end());
    fit.noise_variance = residual_mean_square(ts, fit.phi, fit.intercept);
    return fit;
}

std::vector<double> order_criterion_values(const TimeSeries& ts, int max_order,
                                           Criterion criterion) {
    if (max_order < 0) {
        throw std::invalid_argument("max_order must be >= 0");
    }
    const double n = static_cast<double>(ts.size());
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(max_order) + 1);
    for (int s = 0; s <= max_order; ++s) {
        const ARFit fit = fit_yule_walker(ts, s);
        if (fit.noise_variance <= 0.0) {
            throw std::runtime_error(
                "zero residual variance at order " + std::to_string(s));
        }
        const double penalty = criterion == Criterion::aic
                                   ? 2.0 * s
                                   : static_cast<double>(s) * std::log(n);
        values.push_back(n * std::log(fit.noise_variance) + penalty);
    }
    return values;
}

int select_order(const TimeSeries& ts, int max_order, Criterion criterion) {
    const std::vector<double> ic = order_criterion_values(ts, max_order, criterion);
    int best = 0;
    for (int s = 1; s <= max_order; ++s) {
        if (ic[static_cast<std::size_t>(s)] < ic[static_cast<std::size_t>(best)]) {
            best = s;
        }
    }
    return best;
}

double model_mean(const ARFit& fit) {
    double phi_sum = 0.0;
    for (double p : fit.phi) phi_sum += p;
    const double denom = 1.0 - phi_sum;
    if (std::abs(denom) <= 1e-12) {
        throw std::invalid_argument("unit root: mean undefined");
    }
    return fit.intercept / denom;
}

RationalOperator operator_from_fit(const ARFit& fit) {
    if (fit.order < 1) {
        throw std::invalid_argument("operator needs a fitted order >= 1");
    }
    if (fit.phi.back() == 0.0) {
        throw std::invalid_argument(
            "leading coefficient is zero; refit at a lower order");
    }
    return RationalOperator(fit.phi);
}

TimeSeries fit_residuals(const ARFit& fit, const TimeSeries& ts) {
    const std::size_t s = fit.phi.size();
    if (ts.size() <= s) {
        throw std::invalid_argument("series shorter than the fitted order");
    }
    std::vector<double> e;
    e.reserve(ts.size() - s);
    for (std::size_t t = s; t < ts.size(); ++t) {
        double pred = fit.intercept;
        for (std::size_t j = 0; j < s; ++j) pred += fit.phi[j] * ts.values[t - j - 1];
        e.push_back(ts.values[t] - pred);
    }
    return make_series(std::move(e));
}

ARFit arch_fit(const TimeSeries& residual_series, int order) {
    if (order < 1) {
        throw std::invalid_argument("arch order must be >= 1");
    }
    std::vector<double> squared;
    squared.reserve(residual_series.size());
    for (double v : residual_series.values) squared.push_back(v * v);
    const TimeSeries sq{std::move(squared), {}};
    const double first = sq.values.front();
    if (std::all_of(sq.values.begin(), sq.values.end(),
                    [first](double v) { return v == first; })) {
        throw std::invalid_argument("no conditional heteroskedasticity signal");
    }
    return fit_ols(sq, order, /*with_intercept=*/true);
}

DiagnosticReport stationarity_verdict(const ARFit& fit) {
    const RationalOperator op = operator_from_fit(fit);
    DiagnosticReport report;
    report.analysis = analyze_operator(op);
    report.verdict = report.analysis.verdict;
    return report;
}

}  // namespace residua
