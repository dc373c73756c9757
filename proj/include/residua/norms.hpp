#ifndef RESIDUA_NORMS_HPP
#define RESIDUA_NORMS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "residua/rational.hpp"

namespace residua {

/// Norm exponent: an integer p >= 1 or infinity.
struct PExponent {
    bool is_inf = false;
    int value = 2;  // ignored when is_inf

    static PExponent finite(int p) { return {false, p}; }
    static PExponent inf() { return {true, 0}; }

    bool operator==(const PExponent&) const = default;
};

std::string to_string(const PExponent& p);
std::optional<PExponent> parse_p(const std::string& token);

/// (sum |v_j|^p)^(1/p), scaled by the largest magnitude to avoid overflow.
double p_norm(std::span<const Complex> v, int p);

/// max_j |v_j|.
double inf_norm(std::span<const Complex> v);

/// Lower bound on the residue-vector norm for an in-class operator of
/// degree n: (1/n)^((p-1)/p) for finite p, 1/n for the maximum norm.
double theorem_lower_bound(int n, const PExponent& p);

struct BoundEntry {
    PExponent p;
    double norm_value = 0.0;
    double lower_bound = 0.0;
    double margin = 0.0;  // norm_value - lower_bound
    bool holds = false;   // margin > 0

    bool operator==(const BoundEntry&) const = default;
};

struct BoundReport {
    int n = 0;
    bool in_class_context = false;  // false means the report is advisory
    std::vector<BoundEntry> per_p;

    bool advisory() const { return !in_class_context; }
    bool all_hold() const;

    bool operator==(const BoundReport&) const = default;
};

BoundReport verify_bounds(const ResidueVector& rv, const ClassReport& cls,
                          std::span<const PExponent> ps);

struct SandwichReport {
    double inf_norm_value = 0.0;
    double two_norm_value = 0.0;
    double scaled_inf_norm = 0.0;  // sqrt(n) * inf norm
    bool left_holds = false;       // inf <= two
    bool right_holds = false;      // two <= sqrt(n) * inf
    bool holds = false;
};

SandwichReport sandwich_check(std::span<const Complex> v);

struct ScanCell {
    int n = 0;
    PExponent p;
    double min_margin = 0.0;

    bool operator==(const ScanCell&) const = default;
};

struct ScanViolation {
    int n = 0;
    long trial = 0;
    std::vector<double> alpha;
    PExponent p;
    double norm_value = 0.0;
    double lower_bound = 0.0;

    bool operator==(const ScanViolation&) const = default;
};

struct ScanReport {
    int n_max = 0;
    long trials_per_n = 0;
    std::uint64_t seed = 0;
    std::vector<PExponent> ps;
    long trials = 0;    // accepted + rejected
    long accepted = 0;
    long rejected = 0;  // draws failing class membership or root convergence
    double min_pole_modulus = 0.0;       // over accepted draws
    double max_abs_residue_sum = 0.0;    // over accepted draws with n >= 2
    std::vector<ScanCell> cells;         // min margin per (n, p)
    std::vector<ScanViolation> violations;

    bool operator==(const ScanReport&) const = default;
};

/// Monte Carlo sweep over random in-class operators. Coefficient
/// magnitudes are u * s with u uniform on (0,1) and s a uniform point of
/// the positive simplex, signs independent, so condition (I) holds by
/// construction. Draws failing the membership check are counted, not
/// raised. Deterministic for a given seed: the stream for each trial is
/// derived from (seed, n, trial index).
ScanReport conjecture_scan(int n_max, long trials_per_n,
                           std::span<const PExponent> ps, std::uint64_t seed);

}  // namespace residua

#endif  // RESIDUA_NORMS_HPP
