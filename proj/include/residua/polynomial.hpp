#ifndef RESIDUA_POLYNOMIAL_HPP
#define RESIDUA_POLYNOMIAL_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace residua {

using Complex = std::complex<double>;

/// Univariate polynomial with complex coefficients, stored in ascending
/// power order. Trailing zero coefficients are trimmed at construction so
/// the leading coefficient is always nonzero.
class Polynomial {
public:
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial from_real(std::span<const double> coeffs);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }

    /// Horner evaluation of sum c_k z^k.
    Complex eval(Complex z) const;

    /// Term-by-term derivative. Degree-0 input is an error: there is
    /// nothing left to analyze.
    Polynomial derivative() const;

    /// Cauchy bound 1 + max_k |c_k / c_d|: every root has modulus below it.
    double cauchy_root_bound() const;

private:
    std::vector<Complex> coeffs_;
};

struct RootConfig {
    int max_iterations = 200;
    double tolerance = 1e-12;  // relative residual |P(z)| / (1+|z|)^degree
};

struct RootSet {
    std::vector<Complex> roots;
    std::vector<double> residual_magnitudes;  // |P(z_j)| per root
    double min_separation = 0.0;              // +inf for a single root
    int iterations_used = 0;
};

/// Thrown when the root iteration fails to meet the residual tolerance;
/// carries the best iterates so the caller can still inspect them.
class RootFindingError : public std::runtime_error {
public:
    RootFindingError(std::string message, RootSet best)
        : std::runtime_error(std::move(message)), best_effort(std::move(best)) {}

    RootSet best_effort;
};

struct SimplicityVerdict {
    bool simple = false;
    double min_separation = 0.0;
    double separation_threshold = 0.0;       // 1e-8 * max|root|
    int closest_pair_first = -1;             // -1,-1 when degree 1
    int closest_pair_second = -1;
    double min_derivative_magnitude = 0.0;   // min_j |P'(z_j)|
    int limiting_root = -1;                  // argmin |P'(z_j)|

    bool operator==(const SimplicityVerdict&) const = default;
};

/// All roots of p by Aberth-Ehrlich simultaneous iteration started on the
/// Cauchy-bound circle, with Newton polishing. Root clusters that are
/// numerically indistinguishable from a multiple root are collapsed onto
/// their centroid, which keeps repeated roots detectable downstream.
RootSet find_roots(const Polynomial& p, const RootConfig& cfg = {});

/// Simplicity verdict: pairwise separation above 1e-8 * max|root| and
/// |P'(z_j)| above 1e-10 at every root.
SimplicityVerdict separation_report(const RootSet& rs, const Polynomial& p);

}  // namespace residua

#endif  // RESIDUA_POLYNOMIAL_HPP
