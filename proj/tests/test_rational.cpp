#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "residua/rational.hpp"
#include "residua/rng.hpp"

using residua::ClassReport;
using residua::Complex;
using residua::QuadratureConfig;
using residua::RationalOperator;
using residua::ResidueVector;
using residua::RootSet;
using residua::SplitMix64;

namespace {

// Random coefficients with sum of magnitudes u < 1: condition (I) holds
// by construction.
std::vector<double> random_condition_i_alpha(SplitMix64& rng, int n) {
    const double u = rng.uniform01();
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : w) {
        x = -std::log(rng.uniform01_open());
        sum += x;
    }
    std::vector<double> alpha(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double mag = u * w[static_cast<std::size_t>(j)] / sum;
        alpha[static_cast<std::size_t>(j)] = rng.next_bool() ? -mag : mag;
    }
    if (alpha.back() == 0.0) alpha.back() = 1e-3;
    return alpha;
}

// Match each closed-form pole to the nearest pole of the root set and
// return the closed-form residues permuted into that order.
std::vector<Complex> align_closed_form(const residua::ClosedForm& cf,
                                       const RootSet& poles) {
    std::vector<Complex> aligned(poles.roots.size());
    for (std::size_t i = 0; i < poles.roots.size(); ++i) {
        std::size_t best = 0;
        double best_dist = 1e300;
        for (std::size_t j = 0; j < cf.poles.size(); ++j) {
            const double d = std::abs(poles.roots[i] - cf.poles[j]);
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        aligned[i] = cf.residues[best];
    }
    return aligned;
}

}  // namespace

TEST_CASE("operator construction") {
    CHECK(RationalOperator({0.599419}).degree() == 1);
    CHECK(RationalOperator({2.0, -3.0}).degree() == 2);  // class check fails later
    CHECK_THROWS_AS(RationalOperator({0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(RationalOperator(std::vector<double>{}), std::invalid_argument);

    const RationalOperator op({0.584, 0.203494});
    CHECK(op.denominator().coefficients()[0] == Complex{1.0, 0.0});
    CHECK(op.denominator().coefficients()[1] == Complex{-0.584, 0.0});
}

TEST_CASE("canonical pole order is descending modulus, ascending argument") {
    const RationalOperator op({0.584, 0.203494});
    const RootSet poles = residua::find_poles(op);
    REQUIRE(poles.roots.size() == 2);
    CHECK(std::abs(poles.roots[0]) > std::abs(poles.roots[1]));

    const RationalOperator cx({2.0, -3.0});
    const RootSet cpoles = residua::find_poles(cx);
    CHECK(std::arg(cpoles.roots[0]) < std::arg(cpoles.roots[1]));
}

TEST_CASE("class membership fixtures") {
    SUBCASE("inside the class") {
        const RationalOperator op({0.584, 0.203494});
        const ClassReport r = residua::check_class(op, residua::find_poles(op));
        CHECK(r.condition_i.pass);
        CHECK(r.condition_i.coefficient_sum == doctest::Approx(0.787494));
        CHECK(r.condition_i.margin == doctest::Approx(0.212506));
        CHECK(r.condition_ii.pass);
        CHECK(r.in_class);
    }
    SUBCASE("both conditions violated") {
        const RationalOperator op({2.0, -3.0});
        const ClassReport r = residua::check_class(op, residua::find_poles(op));
        CHECK_FALSE(r.condition_i.pass);
        CHECK(r.condition_i.coefficient_sum == doctest::Approx(5.0));
        CHECK_FALSE(r.condition_ii.pass);
        CHECK(r.condition_ii.min_pole_modulus ==
              doctest::Approx(1.0 / std::sqrt(3.0)));
        CHECK_FALSE(r.in_class);
    }
    SUBCASE("the boundary sum is not inside") {
        const RationalOperator op({0.5, 0.5});
        const ClassReport r = residua::check_class(op, residua::find_poles(op));
        CHECK_FALSE(r.condition_i.pass);
        CHECK(r.condition_i.coefficient_sum == 1.0);
        CHECK_FALSE(r.in_class);
    }
}

TEST_CASE("analytic residues on the reference operators") {
    SUBCASE("degree one") {
        const RationalOperator op({0.599419});
        const ResidueVector rv = residua::residues_analytic(op, residua::find_poles(op));
        REQUIRE(rv.values.size() == 1);
        CHECK(std::abs(rv.values[0] - Complex{-1.6682821198527240, 0.0}) < 1e-12);
    }
    SUBCASE("degree two") {
        const RationalOperator op({0.584, 0.203494});
        const ResidueVector rv = residua::residues_analytic(op, residua::find_poles(op));
        REQUIRE(rv.values.size() == 2);
        CHECK(std::abs(rv.values[0] - Complex{0.93047132084174556, 0.0}) < 1e-10);
        CHECK(std::abs(rv.values[1] - Complex{-0.93047132084174556, 0.0}) < 1e-10);
    }
    SUBCASE("degree four") {
        // Frozen from a high-precision evaluation of 1/P'(z_j) at the roots
        // of 1 - 0.128940z - 0.116899z^2 - 0.153156z^3 - 0.169289z^4.
        const RationalOperator op({0.128940, 0.116899, 0.153156, 0.169289});
        const ResidueVector rv = residua::residues_analytic(op, residua::find_poles(op));
        REQUIRE(rv.values.size() == 4);
        const std::vector<Complex> expected{
            {0.37108026091819470, 0.0},
            {0.026604990651002204, 0.36565060367909005},
            {0.026604990651002204, -0.36565060367909005},
            {-0.42429024222019911, 0.0}};
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(rv.values[i] - expected[i]) < 1e-12);
        }
    }
    SUBCASE("degree four with negated coefficients") {
        // Same magnitudes, flipped signs: this operator owns the reference
        // residue vector published for the conditional-variance example.
        const RationalOperator op({-0.128940, -0.116899, -0.153156, -0.169289});
        const ResidueVector rv = residua::residues_analytic(op, residua::find_poles(op));
        REQUIRE(rv.values.size() == 4);
        const std::vector<Complex> expected{
            {0.291604006704114, 0.300154215080589},
            {0.291604006704114, -0.300154215080589},
            {-0.291604006704114, 0.241806751480026},
            {-0.291604006704114, -0.241806751480026}};
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(std::abs(rv.values[i] - expected[i]) < 1e-9);
        }
    }
    SUBCASE("out-of-class counterexample") {
        const RationalOperator op({2.0, -3.0});
        const ResidueVector rv = residua::residues_analytic(op, residua::find_poles(op));
        const double q = std::sqrt(2.0) / 4.0;
        CHECK(std::abs(rv.values[0] - Complex{0.0, q}) < 1e-10);
        CHECK(std::abs(rv.values[1] - Complex{0.0, -q}) < 1e-10);
    }
    SUBCASE("repeated pole refuses the formula") {
        const RationalOperator op({0.6, -0.09});  // (1 - 0.3z)^2
        const RootSet poles = residua::find_poles(op);
        CHECK_THROWS_AS(residua::residues_analytic(op, poles), std::runtime_error);
    }
}

TEST_CASE("closed forms for degree one and two") {
    SUBCASE("degree one") {
        const ResidueVector rv = residua::residues_closed_form(RationalOperator({0.599419}));
        CHECK(std::abs(rv.values[0] - Complex{-1.6682821198527240, 0.0}) < 1e-12);
    }
    SUBCASE("degree two plus-branch first") {
        const ResidueVector rv =
            residua::residues_closed_form(RationalOperator({0.584, 0.203494}));
        CHECK(std::abs(rv.values[0] - Complex{0.93047132084174556, 0.0}) < 1e-10);
        CHECK(std::abs(rv.values[1] - Complex{-0.93047132084174556, 0.0}) < 1e-10);
    }
    SUBCASE("vanishing discriminant is rejected") {
        CHECK_THROWS_AS(residua::residues_closed_form(RationalOperator({0.6, -0.09})),
                        std::invalid_argument);
    }
    SUBCASE("no closed form beyond degree two") {
        CHECK_THROWS_AS(
            residua::residues_closed_form(RationalOperator({0.1, 0.1, 0.1})),
            std::invalid_argument);
    }
}

TEST_CASE("closed form matches the analytic residues after pole alignment") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 2);
        const std::vector<double> alpha = random_condition_i_alpha(rng, n);
        const RationalOperator op(alpha);
        if (n == 2 && std::abs(alpha[0] * alpha[0] + 4.0 * alpha[1]) < 1e-6) continue;
        const RootSet poles = residua::find_poles(op);
        if (!residua::separation_report(poles, op.denominator()).simple) continue;
        const ResidueVector analytic = residua::residues_analytic(op, poles);
        const std::vector<Complex> aligned =
            align_closed_form(residua::closed_form(op), poles);
        for (std::size_t i = 0; i < analytic.values.size(); ++i) {
            CHECK(std::abs(analytic.values[i] - aligned[i]) <=
                  1e-10 * (1.0 + std::abs(aligned[i])));
        }
    }
}

TEST_CASE("factored product form agrees with 1/P'") {
    SplitMix64 rng(909);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        const RationalOperator op(random_condition_i_alpha(rng, n));
        const RootSet poles = residua::find_poles(op);
        const ResidueVector a = residua::residues_analytic(op, poles);
        const ResidueVector f = residua::residues_factored(op, poles);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            CHECK(std::abs(a.values[i] - f.values[i]) <=
                  1e-9 * (1.0 + std::abs(a.values[i])));
        }
    }
}

TEST_CASE("quadrature residues") {
    SUBCASE("simple closed-form check") {
        const RationalOperator op({0.5});
        const ResidueVector rv =
            residua::residues_quadrature(op, residua::find_poles(op));
        CHECK(std::abs(rv.values[0] - Complex{-2.0, 0.0}) < 1e-10);
    }
    SUBCASE("reference fixtures at defaults") {
        for (const std::vector<double>& alpha :
             {std::vector<double>{0.599419}, std::vector<double>{0.584, 0.203494}}) {
            const RationalOperator op(alpha);
            const RootSet poles = residua::find_poles(op);
            const ResidueVector analytic = residua::residues_analytic(op, poles);
            const ResidueVector quad = residua::residues_quadrature(op, poles);
            for (std::size_t i = 0; i < analytic.values.size(); ++i) {
                CHECK(std::abs(analytic.values[i] - quad.values[i]) < 1e-8);
            }
        }
    }
    SUBCASE("too few points") {
        const RationalOperator op({0.5});
        QuadratureConfig cfg;
        cfg.points_per_circle = 4;
        CHECK_THROWS_AS(residua::residues_quadrature(op, residua::find_poles(op), cfg),
                        std::invalid_argument);
    }
    SUBCASE("a circle reaching the next pole is rejected") {
        const RationalOperator op({0.584, 0.203494});
        QuadratureConfig cfg;
        cfg.radius_factor = 1.0;
        CHECK_THROWS_AS(residua::residues_quadrature(op, residua::find_poles(op), cfg),
                        std::invalid_argument);
    }
}

TEST_CASE("condition (I) forces every pole outside the unit circle") {
    // Triangle inequality: at a root, 1 = |sum a_j z^j| <= sum |a_j| |z|^j,
    // which is impossible for |z| <= 1 when sum |a_j| < 1. Checked over a
    // large random sample rather than trusted.
    SplitMix64 rng(1010);
    int checked = 0;
    while (checked < 10000) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 8);
        const RationalOperator op(random_condition_i_alpha(rng, n));
        const RootSet poles = residua::find_poles(op);
        ++checked;
        for (const Complex& z : poles.roots) {
            CHECK(std::abs(z) > 1.0);
        }
    }
}

TEST_CASE("residues of real operators come in conjugate pairs") {
    SplitMix64 rng(1111);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        const RationalOperator op(random_condition_i_alpha(rng, n));
        const RootSet poles = residua::find_poles(op);
        const ResidueVector rv = residua::residues_analytic(op, poles);
        for (const Complex& c : rv.values) {
            double best = 1e300;
            for (const Complex& d : rv.values) {
                best = std::min(best, std::abs(std::conj(c) - d));
            }
            CHECK(best < 1e-9 * (1.0 + std::abs(c)));
        }
    }
}

TEST_CASE("residues sum to zero for degree at least two") {
    // Identity of 1/P regardless of class membership.
    SplitMix64 rng(1212);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        std::vector<double> alpha = random_condition_i_alpha(rng, n);
        if (trial % 2 == 0) {
            for (double& a : alpha) a *= 4.0;  // out of class half the time
        }
        const RationalOperator op(alpha);
        const RootSet poles = residua::find_poles(op);
        if (!residua::separation_report(poles, op.denominator()).simple) continue;
        const ResidueVector rv = residua::residues_analytic(op, poles);
        Complex sum{0.0, 0.0};
        for (const Complex& c : rv.values) sum += c;
        CHECK(std::abs(sum) < 1e-9);
    }
}
