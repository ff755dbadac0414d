#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "natanzon/potential.hpp"

namespace natanzon {

// One bound level from the quantization condition
//   (g1 - sigma1 eps) / (2 sqrt(g2 - sigma2 eps)) + sqrt(eta - c0 eps) = -(2n + 1).
struct EnergyLevel {
    int n = 0;
    double epsilon = 0.0;
    double residual = 0.0;  // |lhs + (2n+1)| at epsilon
    bool valid = false;
    bool threshold = false;        // sqrt(eta - c0 eps) == 0: marginally bound
    double omega_root = 0.0;       // sqrt(g2 - sigma2 eps)
    double centrifugal_root = 0.0; // sqrt(eta - c0 eps)
};

// Tolerance on |residual| for a root to count as a level.
inline constexpr double kLevelResidualTolerance = 1e-9;

// lhs + (2n+1) with principal square roots. Throws DomainError when
// g2 - sigma2 eps <= 0 or eta - c0 eps < 0.
double quantization_residual(const NatanzonParams& params, double epsilon, int n);

// Coefficients [c4, c3, c2, c1, c0] (highest power first) of a polynomial in
// epsilon whose real roots contain every solution of the quantization
// condition. When sigma2 = 0 and/or c0 = 0 the square roots of the constant
// radicands are kept and only the remaining radical is squared away, so the
// degree drops (linear / quadratic) and the unused leading entries are exact
// zeros; otherwise the condition is squared twice into a quartic.
std::array<double, 5> quartic_coefficients(const NatanzonParams& params, int n);

// Real roots of c4 x^4 + ... + c0 (leading zeros allowed), ascending.
std::vector<double> real_polynomial_roots(std::span<const double, 5> coefficients);

// Unique admissible root for quantum number n, or nullopt when none survives
// the branch filter. Throws MultipleRootsError if two distinct roots survive.
std::optional<EnergyLevel> solve_level(const NatanzonParams& params, int n);

// Levels n = 0..n_max, stopping at the first absent one.
std::vector<EnergyLevel> spectrum(const NatanzonParams& params, int n_max);

// Closed-form levels of the three degenerate families. Throws DomainError
// when params do not match the kind's zero pattern or the branch condition
// for a bound level fails.
double closed_form_spectrum(SpecialCase kind, const NatanzonParams& params, int n);

} // namespace natanzon
