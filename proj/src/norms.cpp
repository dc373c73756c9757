#include "residua/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "residua/rng.hpp"

namespace residua {

std::string to_string(const PExponent& p) {
    return p.is_inf ? "inf" : std::to_string(p.value);
}

std::optional<PExponent> parse_p(const std::string& token) {
    if (token == "inf" || token == "Inf" || token == "INF" || token == "oo") {
        return PExponent::inf();
    }
    try {
        std::size_t pos = 0;
        const int v = std::stoi(token, &pos);
        if (pos != token.size() || v < 1) return std::nullopt;
        return PExponent::finite(v);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

double p_norm(std::span<const Complex> v, int p) {
    if (v.empty()) {
        throw std::invalid_argument("p-norm of empty vector");
    }
    if (p < 1) {
        throw std::invalid_argument("p-norm requires p >= 1");
    }
    double scale = 0.0;
    for (const Complex& x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    double acc = 0.0;
    for (const Complex& x : v) {
        acc += std::pow(std::abs(x) / scale, static_cast<double>(p));
    }
    return scale * std::pow(acc, 1.0 / static_cast<double>(p));
}

double inf_norm(std::span<const Complex> v) {
    if (v.empty()) {
        throw std::invalid_argument("maximum norm of empty vector");
    }
    double m = 0.0;
    for (const Complex& x : v) m = std::max(m, std::abs(x));
    return m;
}

double theorem_lower_bound(int n, const PExponent& p) {
    if (n < 1) {
        throw std::invalid_argument("lower bound requires n >= 1");
    }
    if (p.is_inf) return 1.0 / static_cast<double>(n);
    if (p.value < 1) {
        throw std::invalid_argument("lower bound requires p >= 1");
    }
    const double exponent =
        static_cast<double>(p.value - 1) / static_cast<double>(p.value);
    return std::pow(1.0 / static_cast<double>(n), exponent);
}

bool BoundReport::all_hold() const {
    return std::all_of(per_p.begin(), per_p.end(),
                       [](const BoundEntry& e) { return e.holds; });
}

BoundReport verify_bounds(const ResidueVector& rv, const ClassReport& cls,
                          std::span<const PExponent> ps) {
    if (rv.values.empty()) {
        throw std::invalid_argument("bound check needs a non-empty residue vector");
    }
    if (ps.empty()) {
        throw std::invalid_argument("bound check needs at least one norm exponent");
    }
    BoundReport report;
    report.n = static_cast<int>(rv.values.size());
    report.in_class_context = cls.in_class;
    report.per_p.reserve(ps.size());
    for (const PExponent& p : ps) {
        BoundEntry e;
        e.p = p;
        e.norm_value = p.is_inf ? inf_norm(rv.values) : p_norm(rv.values, p.value);
        e.lower_bound = theorem_lower_bound(report.n, p);
        e.margin = e.norm_value - e.lower_bound;
        e.holds = e.margin > 0.0;
        report.per_p.push_back(e);
    }
    return report;
}

SandwichReport sandwich_check(std::span<const Complex> v) {
    if (v.empty()) {
        throw std::invalid_argument("sandwich check of empty vector");
    }
    SandwichReport r;
    r.inf_norm_value = inf_norm(v);
    r.two_norm_value = p_norm(v, 2);
    r.scaled_inf_norm = std::sqrt(static_cast<double>(v.size())) * r.inf_norm_value;
    r.left_holds = r.inf_norm_value <= r.two_norm_value;
    r.right_holds = r.two_norm_value <= r.scaled_inf_norm;
    r.holds = r.left_holds && r.right_holds;
    return r;
}

ScanReport conjecture_scan(int n_max, long trials_per_n,
                           std::span<const PExponent> ps, std::uint64_t seed) {
    if (n_max < 1) {
        throw std::invalid_argument("scan requires n_max >= 1");
    }
    if (trials_per_n < 1) {
        throw std::invalid_argument("scan requires trials_per_n >= 1");
    }
    if (ps.empty()) {
        throw std::invalid_argument("scan requires at least one norm exponent");
    }

    ScanReport report;
    report.n_max = n_max;
    report.trials_per_n = trials_per_n;
    report.seed = seed;
    report.ps.assign(ps.begin(), ps.end());
    report.min_pole_modulus = std::numeric_limits<double>::infinity();

    for (int n = 1; n <= n_max; ++n) {
        std::vector<double> min_margin(ps.size(),
                                       std::numeric_limits<double>::infinity());
        for (long trial = 0; trial < trials_per_n; ++trial) {
            ++report.trials;
            SplitMix64 rng = SplitMix64::for_stream(
                seed, static_cast<std::uint64_t>(n),
                static_cast<std::uint64_t>(trial));

            const double u = rng.uniform01();
            std::vector<double> weights(static_cast<std::size_t>(n));
            double weight_sum = 0.0;
            for (double& w : weights) {
                w = -std::log(rng.uniform01_open());
                weight_sum += w;
            }
            std::vector<double> alpha(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                const double mag = u * weights[static_cast<std::size_t>(j)] / weight_sum;
                alpha[static_cast<std::size_t>(j)] = rng.next_bool() ? -mag : mag;
            }
            if (alpha.back() == 0.0) {
                ++report.rejected;
                continue;
            }

            RootSet poles;
            ClassReport cls;
            try {
                const RationalOperator op(alpha);
                poles = find_poles(op);
                cls = check_class(op, poles);
                if (!cls.in_class) {
                    ++report.rejected;
                    continue;
                }
                ++report.accepted;

                for (const Complex& z : poles.roots) {
                    report.min_pole_modulus =
                        std::min(report.min_pole_modulus, std::abs(z));
                }

                const ResidueVector rv = residues_analytic(op, poles);
                if (n >= 2) {
                    Complex sum{0.0, 0.0};
                    for (const Complex& c : rv.values) sum += c;
                    report.max_abs_residue_sum =
                        std::max(report.max_abs_residue_sum, std::abs(sum));
                }

                for (std::size_t pi = 0; pi < ps.size(); ++pi) {
                    const PExponent& p = ps[pi];
                    const double norm_value =
                        p.is_inf ? inf_norm(rv.values) : p_norm(rv.values, p.value);
                    const double bound = theorem_lower_bound(n, p);
                    const double margin = norm_value - bound;
                    min_margin[pi] = std::min(min_margin[pi], margin);
                    if (margin <= 0.0) {
                        report.violations.push_back(
                            {n, trial, alpha, p, norm_value, bound});
                    }
                }
            } catch (const RootFindingError&) {
                ++report.rejected;
                continue;
            }
        }
        for (std::size_t pi = 0; pi < ps.size(); ++pi) {
            report.cells.push_back({n, ps[pi], min_margin[pi]});
        }
    }
    return report;
}

}  // namespace residua
