#include "residua/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace residua {

namespace {

Polynomial denominator_of(const std::vector<double>& alpha) {
    std::vector<Complex> c(alpha.size() + 1);
    c[0] = Complex{1.0, 0.0};
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        c[j + 1] = Complex{-alpha[j], 0.0};
    }
    return Polynomial(std::move(c));
}

constexpr double kSimpleDerivativeFloor = 1e-10;

}  // namespace

RationalOperator::RationalOperator(std::vector<double> alpha)
    : alpha_(std::move(alpha)), denom_(denominator_of(alpha_)) {
    if (alpha_.empty()) {
        throw std::invalid_argument("operator needs at least one coefficient");
    }
    if (alpha_.back() == 0.0) {
        throw std::invalid_argument("alpha_n = 0: degree ill-defined");
    }
}

std::string to_string(ResidueMethod m) {
    switch (m) {
        case ResidueMethod::analytic: return "analytic";
        case ResidueMethod::quadrature: return "quadrature";
        case ResidueMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

void sort_canonical(RootSet& rs) {
    const std::size_t n = rs.roots.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&rs](std::size_t a, std::size_t b) {
        return std::abs(rs.roots[a]) > std::abs(rs.roots[b]);
    });
    // Conjugate pairs converge to moduli that differ in the last ulps, so
    // ties are resolved per near-equal group: ascending argument within
    // any run whose moduli agree to 1e-9 relative.
    std::size_t begin = 0;
    while (begin < n) {
        const double head = std::abs(rs.roots[order[begin]]);
        std::size_t end = begin + 1;
        while (end < n &&
               head - std::abs(rs.roots[order[end]]) <= 1e-9 * (1.0 + head)) {
            ++end;
        }
        std::stable_sort(order.begin() + static_cast<long>(begin),
                         order.begin() + static_cast<long>(end),
                         [&rs](std::size_t a, std::size_t b) {
                             return std::arg(rs.roots[a]) < std::arg(rs.roots[b]);
                         });
        begin = end;
    }
    RootSet sorted = rs;
    for (std::size_t i = 0; i < n; ++i) {
        sorted.roots[i] = rs.roots[order[i]];
        sorted.residual_magnitudes[i] = rs.residual_magnitudes[order[i]];
    }
    rs = std::move(sorted);
}

RootSet find_poles(const RationalOperator& op, const RootConfig& cfg) {
    RootSet rs = find_roots(op.denominator(), cfg);
    sort_canonical(rs);
    return rs;
}

ClassReport check_class(const RationalOperator& op, const RootSet& poles) {
    ClassReport report;

    double sum = 0.0;
    for (double a : op.alpha()) sum += std::abs(a);
    report.condition_i.coefficient_sum = sum;
    report.condition_i.margin = 1.0 - sum;
    report.condition_i.pass = sum < 1.0;

    double min_mod = std::numeric_limits<double>::infinity();
    for (const Complex& z : poles.roots) min_mod = std::min(min_mod, std::abs(z));
    report.condition_ii.min_pole_modulus = min_mod;
    report.condition_ii.modulus_margin = min_mod - 1.0;
    report.condition_ii.simplicity = separation_report(poles, op.denominator());
    report.condition_ii.pass =
        report.condition_ii.simplicity.simple && min_mod > 1.0 + 1e-9;

    report.in_class = report.condition_i.pass && report.condition_ii.pass;
    return report;
}

ResidueVector residues_analytic(const RationalOperator& op, const RootSet& poles) {
    if (!separation_report(poles, op.denominator()).simple) {
        throw std::runtime_error(
            "pole not numerically simple; residue formula invalid");
    }
    const Polynomial dp = op.denominator().derivative();
    ResidueVector rv;
    rv.method = ResidueMethod::analytic;
    rv.values.reserve(poles.roots.size());
    for (const Complex& z : poles.roots) {
        const Complex dpz = dp.eval(z);
        if (std::abs(dpz) <= kSimpleDerivativeFloor) {
            throw std::runtime_error(
                "pole not numerically simple; residue formula invalid");
        }
        rv.values.push_back(1.0 / dpz);
    }
    return rv;
}

ResidueVector residues_factored(const RationalOperator& op, const RootSet& poles) {
    const double an = op.alpha().back();
    ResidueVector rv;
    rv.method = ResidueMethod::analytic;
    rv.values.reserve(poles.roots.size());
    for (std::size_t j = 0; j < poles.roots.size(); ++j) {
        Complex prod{1.0, 0.0};
        for (std::size_t k = 0; k < poles.roots.size(); ++k) {
            if (k == j) continue;
            prod *= poles.roots[j] - poles.roots[k];
        }
        const Complex denom = -an * prod;
        if (denom == Complex{0.0, 0.0}) {
            throw std::runtime_error(
                "pole not numerically simple; residue formula invalid");
        }
        rv.values.push_back(1.0 / denom);
    }
    return rv;
}

ClosedForm closed_form(const RationalOperator& op) {
    const std::vector<double>& a = op.alpha();
    ClosedForm cf;
    if (op.degree() == 1) {
        cf.poles = {Complex{1.0 / a[0], 0.0}};
        cf.residues = {Complex{-1.0 / a[0], 0.0}};
        return cf;
    }
    if (op.degree() == 2) {
        const double disc = a[0] * a[0] + 4.0 * a[1];
        if (disc == 0.0) {
            throw std::invalid_argument("double pole: discriminant is zero");
        }
        const Complex sq = std::sqrt(Complex{disc, 0.0});
        const Complex a1{a[0], 0.0};
        const double two_a2 = -2.0 * a[1];
        cf.poles = {(a1 + sq) / two_a2, (a1 - sq) / two_a2};
        cf.residues = {1.0 / sq, -1.0 / sq};
        return cf;
    }
    throw std::invalid_argument("no closed form implemented for degree > 2");
}

ResidueVector residues_closed_form(const RationalOperator& op) {
    ResidueVector rv;
    rv.method = ResidueMethod::closed_form;
    rv.values = closed_form(op).residues;
    return rv;
}

ResidueVector residues_quadrature(const RationalOperator& op, const RootSet& poles,
                                  const QuadratureConfig& cfg) {
    if (cfg.points_per_circle < 8) {
        throw std::invalid_argument("insufficient quadrature resolution: need >= 8 points");
    }
    const SimplicityVerdict verdict = separation_report(poles, op.denominator());
    if (!verdict.simple) {
        throw std::invalid_argument("quadrature requires numerically simple poles");
    }

    const std::size_t n = poles.roots.size();
    ResidueVector rv;
    rv.method = ResidueMethod::quadrature;
    rv.values.reserve(n);

    const int m = cfg.points_per_circle;
    for (std::size_t j = 0; j < n; ++j) {
        const Complex center = poles.roots[j];
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            nearest = std::min(nearest, std::abs(center - poles.roots[k]));
        }
        const double radius = (n == 1) ? cfg.radius_factor * std::abs(center)
                                       : cfg.radius_factor * nearest;
        if (radius <= 0.0) {
            throw std::invalid_argument("quadrature circle has nonpositive radius");
        }
        if (n > 1 && radius >= nearest) {
            throw std::invalid_argument(
                "quadrature circle would enclose a second pole");
        }

        // (1/2(pi)i) contour integral of f over the circle, trapezoidal in
        // the angle: (r/m) * sum f(z_j + r e^{i t_k}) e^{i t_k}. Summation
        // order is fixed so results do not depend on scheduling.
        Complex acc{0.0, 0.0};
        for (int k = 0; k < m; ++k) {
            const double t = 2.0 * std::numbers::pi * k / m;
            const Complex unit{std::cos(t), std::sin(t)};
            acc += op.eval(center + radius * unit) * unit;
        }
        rv.values.push_back(acc * (radius / static_cast<double>(m)));
    }
    return rv;
}

}  // namespace residua
