#ifndef RESIDUA_RATIONAL_HPP
#define RESIDUA_RATIONAL_HPP

#include <string>
#include <vector>

#include "residua/polynomial.hpp"

namespace residua {

/// The reciprocal-polynomial operator f(z) = 1 / (1 - a_1 z - ... - a_n z^n)
/// with real coefficients and a_n != 0.
class RationalOperator {
public:
    explicit RationalOperator(std::vector<double> alpha);

    int degree() const noexcept { return static_cast<int>(alpha_.size()); }
    const std::vector<double>& alpha() const noexcept { return alpha_; }

    /// Denominator polynomial 1 - a_1 z - ... - a_n z^n.
    const Polynomial& denominator() const noexcept { return denom_; }

    Complex eval(Complex z) const { return 1.0 / denom_.eval(z); }

private:
    std::vector<double> alpha_;
    Polynomial denom_;
};

struct ConditionIReport {
    bool pass = false;
    double coefficient_sum = 0.0;  // sum |a_j|
    double margin = 0.0;           // 1 - sum |a_j|

    bool operator==(const ConditionIReport&) const = default;
};

struct ConditionIIReport {
    bool pass = false;
    double min_pole_modulus = 0.0;
    double modulus_margin = 0.0;  // min |z_j| - 1
    SimplicityVerdict simplicity;

    bool operator==(const ConditionIIReport&) const = default;
};

struct ClassReport {
    ConditionIReport condition_i;
    ConditionIIReport condition_ii;
    bool in_class = false;

    bool operator==(const ClassReport&) const = default;
};

enum class ResidueMethod { analytic, quadrature, closed_form };

std::string to_string(ResidueMethod m);

struct ResidueVector {
    std::vector<Complex> values;  // index-aligned with the pole set
    ResidueMethod method = ResidueMethod::analytic;

    bool operator==(const ResidueVector&) const = default;
};

struct QuadratureConfig {
    int points_per_circle = 256;
    double radius_factor = 0.25;  // fraction of the nearest-pole distance
};

/// Poles of op in canonical order: descending modulus, ties broken by
/// ascending argument. Residual metadata stays aligned with the sort.
RootSet find_poles(const RationalOperator& op, const RootConfig& cfg = {});

/// Sort an existing root set into the canonical pole order.
void sort_canonical(RootSet& rs);

/// Membership check for the operator class: condition (I) is a strict
/// coefficient-sum bound, condition (II) requires simple poles strictly
/// outside the unit circle (modulus above 1 + 1e-9).
ClassReport check_class(const RationalOperator& op, const RootSet& poles);

/// Residues c_j = 1/P'(z_j) at each pole. Requires numerically simple
/// poles (|P'(z_j)| > 1e-10).
ResidueVector residues_analytic(const RationalOperator& op, const RootSet& poles);

/// Cross-check form 1 / (-a_n * prod_{k != j} (z_j - z_k)).
ResidueVector residues_factored(const RationalOperator& op, const RootSet& poles);

/// Closed forms for degree 1 and 2, paired with poles in the
/// plus-discriminant-branch-first order.
struct ClosedForm {
    std::vector<Complex> poles;
    std::vector<Complex> residues;
};

ClosedForm closed_form(const RationalOperator& op);
ResidueVector residues_closed_form(const RationalOperator& op);

/// Independent residue estimates by the m-point trapezoidal rule on a
/// circle around each pole with radius radius_factor times the distance
/// to the nearest other pole (radius_factor * |z| for degree 1). The rule
/// converges geometrically for this integrand.
ResidueVector residues_quadrature(const RationalOperator& op, const RootSet& poles,
                                  const QuadratureConfig& cfg = {});

}  // namespace residua

#endif  // RESIDUA_RATIONAL_HPP
