#pragma once

#include <complex>

#include "natanzon/potential.hpp"
#include "natanzon/spectrum.hpp"

namespace natanzon {

struct ReducedIndices {
    double p = 0.0;           // (g1 - sigma1 eps) / (4 sqrt(g2 - sigma2 eps))
    double mu = 0.5;          // 1/2 + sqrt(eta - c0 eps)
    double omega_arg = 0.0;   // sqrt(g2 - sigma2 eps), scale of the Whittaker argument
    double gamma_index = 0.0; // mu/2 - 1/4
};

// Throws DomainError unless g2 - sigma2 eps > 0 and eta - c0 eps >= 0.
ReducedIndices reduced_indices(const NatanzonParams& params, double epsilon);

// p + mu/2 + 1/4; equals -n exactly at the n-th level.
double gamma_argument(const NatanzonParams& params, double epsilon);

// Distance below which green_function refuses to evaluate next to a pole.
inline constexpr double kPoleGuard = 1e-12;

struct GreensValue {
    double r = 0.0;
    double r_prime = 0.0;
    double epsilon = 0.0;
    std::complex<double> value;
    ReducedIndices indices;
};

// Closed-form Green's function, normalized so that (H - eps) G = -i delta(r - r'),
// i.e. i G(r, r') is the kernel of (H - eps)^{-1}. The derivative in r jumps by
// +i across r = r'. W carries the larger of h(r), h(r'), so the result is
// symmetric bit for bit. Throws PoleError within kPoleGuard of a pole.
GreensValue green_function(const NatanzonParams& params, const CoordinateMap& map, double r, double r_prime,
                           double epsilon);

// |gamma_argument(level.epsilon) + level.n|
double pole_check(const NatanzonParams& params, const EnergyLevel& level);

// (1/sinh q) exp(-(x + x')/2 coth q) I_{mu - 1/2}(sqrt(x x') / sinh q), the
// real Euclidean propagator core in rescaled variables. Switches to log space
// for q < 0.05 or a large Bessel argument.
double euclidean_kernel(double x, double x_prime, double q, double mu);
// Natural log of the same quantity, always computed in log space.
double log_euclidean_kernel(double x, double x_prime, double q, double mu);

struct KernelIdentityResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
};

// Laplace-transform identity
//   int_0^inf e^{-2pq} K(x, y, q; mu = 2 gamma + 1/2) dq
//     = Gamma(p + gamma + 1/2) / (Gamma(2 gamma + 1) sqrt(x y)) M_{-p,gamma}(x) W_{-p,gamma}(y)
// with the left side by adaptive Gauss-Kronrod quadrature. Requires y > x > 0,
// gamma > 0, p + gamma + 1/2 > 0 (DomainError otherwise). QuadratureError if
// the estimated quadrature error exceeds 1e-8 relative.
KernelIdentityResult kernel_identity_check(double x, double y, double gamma, double p);

} // namespace natanzon
