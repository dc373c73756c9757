#include "residua/timeseries.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "residua/rng.hpp"

namespace residua {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

std::optional<double> parse_cell(std::string cell, bool decimal_comma) {
    if (decimal_comma) {
        std::replace(cell.begin(), cell.end(), ',', '.');
    }
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

double sample_mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

TimeSeries make_series(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("time series must contain at least one value");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("time series contains a non-finite value");
        }
    }
    return TimeSeries{std::move(values), {}};
}

TimeSeries load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path.string());
    }
    const char delim =
        options.delimiter != '\0' ? options.delimiter
                                  : (options.decimal_comma ? ';' : ',');

    int column_index = -1;
    bool index_selector = false;
    {
        std::size_t pos = 0;
        try {
            const int idx = std::stoi(options.column, &pos);
            if (pos == options.column.size() && idx >= 0) {
                column_index = idx;
                index_selector = true;
            }
        } catch (const std::exception&) {
            // name selector
        }
    }

    std::vector<double> values;
    std::string line;
    long line_number = 0;
    bool header_resolved = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split(line, delim);

        if (!header_resolved) {
            header_resolved = true;
            if (!index_selector) {
                const auto it =
                    std::find(cells.begin(), cells.end(), trim(options.column));
                if (it == cells.end()) {
                    throw std::runtime_error("column \"" + options.column +
                                             "\" not found in header (line " +
                                             std::to_string(line_number) + ")");
                }
                column_index = static_cast<int>(it - cells.begin());
                continue;  // header row consumed
            }
            // Index selector: treat a non-numeric first row as a header.
            if (column_index < static_cast<int>(cells.size()) &&
                !parse_cell(cells[static_cast<std::size_t>(column_index)],
                            options.decimal_comma)) {
                continue;
            }
        }

        if (column_index >= static_cast<int>(cells.size())) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": no column " + std::to_string(column_index));
        }
        const std::string& cell = cells[static_cast<std::size_t>(column_index)];
        const std::optional<double> v = parse_cell(cell, options.decimal_comma);
        if (!v) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": cannot parse \"" + cell + "\" as a number");
        }
        values.push_back(*v);
    }
    if (values.empty()) {
        throw std::runtime_error("selected column is empty: " + path.string());
    }
    return make_series(std::move(values));
}

TimeSeries log_transform(const TimeSeries& ts) {
    TimeSeries out;
    out.values.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts.values[i] <= 0.0) {
            throw std::invalid_argument(
                "log transform requires strictly positive values (index " +
                std::to_string(i) + ")");
        }
        out.values.push_back(std::log(ts.values[i]));
    }
    out.transform_log = ts.transform_log;
    out.transform_log.emplace_back("log");
    return out;
}

TimeSeries difference(const TimeSeries& ts, int d) {
    if (d < 1) {
        throw std::invalid_argument("difference order must be >= 1");
    }
    if (ts.size() <= static_cast<std::size_t>(d)) {
        throw std::invalid_argument("series too short to difference " +
                                    std::to_string(d) + " times");
    }
    std::vector<double> v = ts.values;
    for (int round = 0; round < d; ++round) {
        std::vector<double> next(v.size() - 1);
        for (std::size_t i = 1; i < v.size(); ++i) next[i - 1] = v[i] - v[i - 1];
        v = std::move(next);
    }
    TimeSeries out{std::move(v), ts.transform_log};
    out.transform_log.emplace_back("diff(" + std::to_string(d) + ")");
    return out;
}

std::vector<double> acf(const TimeSeries& ts, int max_lag) {
    const std::size_t n = ts.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw std::invalid_argument("max_lag must satisfy 0 <= max_lag < length");
    }
    const double mean = sample_mean(ts.values);
    double c0 = 0.0;
    for (double v : ts.values) c0 += (v - mean) * (v - mean);
    c0 /= static_cast<double>(n);
    if (c0 <= 0.0) {
        throw std::invalid_argument("constant series");
    }
    std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1, 0.0);
    rho[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            ck += (ts.values[t] - mean) * (ts.values[t - static_cast<std::size_t>(k)] - mean);
        }
        ck /= static_cast<double>(n);
        rho[static_cast<std::size_t>(k)] = ck / c0;
    }
    return rho;
}

std::vector<double> pacf(const TimeSeries& ts, int max_lag) {
    if (max_lag < 1) {
        throw std::invalid_argument("pacf needs max_lag >= 1");
    }
    const std::vector<double> rho = acf(ts, max_lag);

    // Durbin-Levinson on the autocorrelations; the reflection coefficient
    // at each order is the partial autocorrelation.
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_lag));
    std::vector<double> phi_prev;
    double var = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = rho[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) {
            num -= phi_prev[static_cast<std::size_t>(j - 1)] *
                   rho[static_cast<std::size_t>(k - j)];
        }
        if (var <= 0.0) {
            throw std::runtime_error("degenerate autocorrelation sequence in pacf");
        }
        const double kappa = num / var;
        std::vector<double> phi(static_cast<std::size_t>(k));
        for (int j = 1; j < k; ++j) {
            phi[static_cast<std::size_t>(j - 1)] =
                phi_prev[static_cast<std::size_t>(j - 1)] -
                kappa * phi_prev[static_cast<std::size_t>(k - 1 - j)];
        }
        phi[static_cast<std::size_t>(k - 1)] = kappa;
        var *= (1.0 - kappa * kappa);
        out.push_back(kappa);
        phi_prev = std::move(phi);
    }
    return out;
}

TimeSeries simulate_ar(const std::vector<double>& phi, double intercept, long n,
                       std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("simulation length must be >= 1");
    }
    constexpr long kBurnIn = 100;
    SplitMix64 rng(seed);
    const long total = n + kBurnIn;
    std::vector<double> y(static_cast<std::size_t>(total), 0.0);
    for (long t = 0; t < total; ++t) {
        double v = intercept + rng.normal();
        for (std::size_t j = 0; j < phi.size(); ++j) {
            const long lag = t - static_cast<long>(j) - 1;
            if (lag >= 0) v += phi[j] * y[static_cast<std::size_t>(lag)];
        }
        y[static_cast<std::size_t>(t)] = v;
    }
    return make_series(std::vector<double>(y.end() - n, y.end()));
}

TimeSeries simulate_arch(double alpha0, const std::vector<double>& alpha, long n,
                         std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("simulation length must be >= 1");
    }
    if (alpha0 <= 0.0) {
        throw std::invalid_argument("arch simulation needs alpha0 > 0");
    }
    constexpr long kBurnIn = 100;
    SplitMix64 rng(seed);
    const long total = n + kBurnIn;
    std::vector<double> a(static_cast<std::size_t>(total), 0.0);
    for (long t = 0; t < total; ++t) {
        double var = alpha0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            const long lag = t - static_cast<long>(j) - 1;
            if (lag >= 0) {
                const double prev = a[static_cast<std::size_t>(lag)];
                var += alpha[j] * prev * prev;
            }
        }
        a[static_cast<std::size_t>(t)] = rng.normal() * std::sqrt(std::max(var, 0.0));
    }
    return make_series(std::vector<double>(a.end() - n, a.end()));
}

}  // namespace residua
