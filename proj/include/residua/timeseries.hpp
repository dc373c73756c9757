#ifndef RESIDUA_TIMESERIES_HPP
#define RESIDUA_TIMESERIES_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace residua {

struct TimeSeries {
    std::vector<double> values;
    std::vector<std::string> transform_log;  // e.g. "log", "diff(1)"

    std::size_t size() const noexcept { return values.size(); }
};

/// Validates finiteness and non-emptiness.
TimeSeries make_series(std::vector<double> values);

struct CsvOptions {
    std::string column;         // header name, or decimal index
    bool decimal_comma = false; // accept "0,5" style cells
    char delimiter = '\0';      // '\0' = ',' normally, ';' under decimal_comma
};

/// One numeric column from a delimited text file. The column is selected
/// by zero-based index or by header name; with an index selector a
/// non-numeric first row is treated as a header. Blank lines are skipped;
/// an unparseable cell reports its line number.
TimeSeries load_csv(const std::filesystem::path& path, const CsvOptions& options);

TimeSeries log_transform(const TimeSeries& ts);

/// d-fold first difference; shortens the series by d.
TimeSeries difference(const TimeSeries& ts, int d);

/// Sample autocorrelations for lags 0..max_lag, from mean-centered
/// autocovariances with divisor N. acf[0] is 1.
std::vector<double> acf(const TimeSeries& ts, int max_lag);

/// Partial autocorrelations for lags 1..max_lag via the Durbin-Levinson
/// recursion on the sample acf.
std::vector<double> pacf(const TimeSeries& ts, int max_lag);

/// Simulated AR path y_t = intercept + sum phi_j y_{t-j} + e_t with
/// standard normal e_t, zero pre-samples, and a 100-step burn-in.
TimeSeries simulate_ar(const std::vector<double>& phi, double intercept, long n,
                       std::uint64_t seed);

/// Simulated ARCH path a_t = e_t * sqrt(alpha0 + sum alpha_j a_{t-j}^2),
/// standard normal e_t, 100-step burn-in.
TimeSeries simulate_arch(double alpha0, const std::vector<double>& alpha, long n,
                         std::uint64_t seed);

}  // namespace residua

#endif  // RESIDUA_TIMESERIES_HPP
