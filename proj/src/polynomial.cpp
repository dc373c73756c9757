#include "residua/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace residua {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double residual_scale(double mod_z, int degree) {
    return std::pow(1.0 + mod_z, degree);
}

// Noise floor for evaluating p at z: eps * sum |c_k| max(1,|z|)^k.
double eval_noise(const std::vector<Complex>& c, Complex z) {
    const double m = std::max(1.0, std::abs(z));
    double s = 0.0;
    double zk = 1.0;
    for (const Complex& ck : c) {
        s += std::abs(ck) * zk;
        zk *= m;
    }
    return kEps * s;
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("polynomial needs at least one coefficient");
    }
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{0.0, 0.0}) {
        coeffs_.pop_back();
    }
    if (coeffs_.size() == 1 && coeffs_[0] == Complex{0.0, 0.0}) {
        throw std::invalid_argument("zero polynomial has no defined degree");
    }
}

Polynomial Polynomial::from_real(std::span<const double> coeffs) {
    std::vector<Complex> c;
    c.reserve(coeffs.size());
    for (double x : coeffs) c.emplace_back(x, 0.0);
    return Polynomial(std::move(c));
}

Complex Polynomial::eval(Complex z) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) {
        throw std::invalid_argument("derivative of constant has no roots to analyze");
    }
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return Polynomial(std::move(d));
}

double Polynomial::cauchy_root_bound() const {
    if (degree() < 1) {
        throw std::invalid_argument("root bound requires degree >= 1");
    }
    const Complex lead = coeffs_.back();
    double best = 0.0;
    for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) {
        best = std::max(best, std::abs(coeffs_[k] / lead));
    }
    return 1.0 + best;
}

RootSet find_roots(const Polynomial& p, const RootConfig& cfg) {
    const int d = p.degree();
    if (d < 1) {
        throw std::invalid_argument("root finding requires degree >= 1");
    }
    if (cfg.max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be positive");
    }

    const std::vector<Complex>& c = p.coefficients();
    const Polynomial dp = p.derivative();

    RootSet rs;
    rs.roots.resize(static_cast<std::size_t>(d));

    if (d == 1) {
        rs.roots[0] = -c[0] / c[1];
        rs.residual_magnitudes = {std::abs(p.eval(rs.roots[0]))};
        rs.min_separation = std::numeric_limits<double>::infinity();
        rs.iterations_used = 0;
        return rs;
    }

    const double radius = p.cauchy_root_bound();
    for (int k = 0; k < d; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / d + 0.7;
        rs.roots[static_cast<std::size_t>(k)] =
            radius * Complex{std::cos(theta), std::sin(theta)};
    }

    // Aberth-Ehrlich sweeps with in-place updates; run to step stagnation
    // so root clusters contract as far as double precision allows.
    std::vector<Complex>& z = rs.roots;
    int sweeps = 0;
    for (; sweeps < cfg.max_iterations; ++sweeps) {
        double max_rel_step = 0.0;
        for (int i = 0; i < d; ++i) {
            const Complex zi = z[static_cast<std::size_t>(i)];
            const Complex pz = p.eval(zi);
            const Complex dpz = dp.eval(zi);
            if (dpz == Complex{0.0, 0.0}) {
                z[static_cast<std::size_t>(i)] += 1e-8 * (1.0 + std::abs(zi));
                max_rel_step = 1.0;
                continue;
            }
            const Complex w = pz / dpz;
            Complex sum{0.0, 0.0};
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                const Complex diff = zi - z[static_cast<std::size_t>(j)];
                if (diff == Complex{0.0, 0.0}) continue;
                sum += 1.0 / diff;
            }
            const Complex denom = 1.0 - w * sum;
            const Complex step = (denom == Complex{0.0, 0.0}) ? w : w / denom;
            z[static_cast<std::size_t>(i)] = zi - step;
            max_rel_step = std::max(
                max_rel_step,
                std::abs(step) / (1.0 + std::abs(z[static_cast<std::size_t>(i)])));
        }
        if (max_rel_step < 4.0 * kEps) {
            ++sweeps;
            break;
        }
    }
    rs.iterations_used = sweeps;

    // Newton polish, kept only when the residual improves.
    for (int i = 0; i < d; ++i) {
        for (int step = 0; step < 2; ++step) {
            Complex& zi = z[static_cast<std::size_t>(i)];
            const Complex pz = p.eval(zi);
            const Complex dpz = dp.eval(zi);
            if (dpz == Complex{0.0, 0.0}) break;
            const Complex cand = zi - pz / dpz;
            if (std::abs(p.eval(cand)) < std::abs(pz)) {
                zi = cand;
            } else {
                break;
            }
        }
    }

    // Collapse clusters that behave like a single multiple root: the
    // cluster centroid must fit the polynomial as well as the members do,
    // which separates true multiple roots from merely close simple ones.
    double max_mod = 0.0;
    for (const Complex& zi : z) max_mod = std::max(max_mod, std::abs(zi));
    const double cluster_radius = 1e-6 * std::max(1.0, max_mod);

    std::vector<int> parent(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&parent](int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    };
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            if (std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) <=
                cluster_radius) {
                parent[static_cast<std::size_t>(find(i))] = find(j);
            }
        }
    }
    for (int rep = 0; rep < d; ++rep) {
        std::vector<int> members;
        for (int i = 0; i < d; ++i) {
            if (find(i) == rep && find(rep) == rep) members.push_back(i);
        }
        if (members.size() < 2) continue;
        Complex centroid{0.0, 0.0};
        double max_res = 0.0;
        for (int i : members) {
            centroid += z[static_cast<std::size_t>(i)];
            max_res = std::max(max_res, std::abs(p.eval(z[static_cast<std::size_t>(i)])));
        }
        centroid /= static_cast<double>(members.size());
        if (std::abs(p.eval(centroid)) <= 8.0 * (max_res + eval_noise(c, centroid))) {
            for (int i : members) z[static_cast<std::size_t>(i)] = centroid;
        }
    }

    rs.residual_magnitudes.resize(static_cast<std::size_t>(d));
    bool converged = true;
    for (int i = 0; i < d; ++i) {
        const double res = std::abs(p.eval(z[static_cast<std::size_t>(i)]));
        rs.residual_magnitudes[static_cast<std::size_t>(i)] = res;
        if (res > cfg.tolerance *
                      residual_scale(std::abs(z[static_cast<std::size_t>(i)]), d)) {
            converged = false;
        }
    }

    rs.min_separation = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            rs.min_separation = std::min(
                rs.min_separation,
                std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]));
        }
    }

    if (!converged) {
        throw RootFindingError(
            "root iteration did not reach the residual tolerance after " +
                std::to_string(sweeps) + " sweeps",
            rs);
    }
    return rs;
}

SimplicityVerdict separation_report(const RootSet& rs, const Polynomial& p) {
    SimplicityVerdict v;
    const int d = static_cast<int>(rs.roots.size());
    const Polynomial dp = p.derivative();

    double max_mod = 0.0;
    for (const Complex& z : rs.roots) max_mod = std::max(max_mod, std::abs(z));
    v.separation_threshold = 1e-8 * max_mod;

    v.min_separation = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double dist = std::abs(rs.roots[static_cast<std::size_t>(i)] -
                                         rs.roots[static_cast<std::size_t>(j)]);
            if (dist < v.min_separation) {
                v.min_separation = dist;
                v.closest_pair_first = i;
                v.closest_pair_second = j;
            }
        }
    }

    v.min_derivative_magnitude = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) {
        const double mag = std::abs(dp.eval(rs.roots[static_cast<std::size_t>(i)]));
        if (mag < v.min_derivative_magnitude) {
            v.min_derivative_magnitude = mag;
            v.limiting_root = i;
        }
    }

    const bool separated = d < 2 || v.min_separation > v.separation_threshold;
    v.simple = separated && v.min_derivative_magnitude > 1e-10;
    return v;
}

}  // namespace residua
