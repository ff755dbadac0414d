#include "natanzon/green.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "natanzon/errors.hpp"
#include "natanzon/specfun.hpp"

namespace natanzon {

namespace {

double log_sinh(double q) {
    if (q > 20.0) return q - std::log(2.0) + std::log1p(-std::exp(-2.0 * q));
    return std::log(std::sinh(q));
}

void require_kernel_domain(double x, double x_prime, double q, double mu) {
    if (!(q > 0.0)) throw DomainError("euclidean_kernel: q must be > 0");
    if (!(x > 0.0) || !(x_prime > 0.0)) throw DomainError("euclidean_kernel: x, x' must be > 0");
    if (!(mu >= 0.5)) throw DomainError("euclidean_kernel: mu must be >= 1/2");
}

} // namespace

ReducedIndices reduced_indices(const NatanzonParams& p, double epsilon) {
    const double b = p.g2() - p.sigma2() * epsilon;
    const double c = p.eta() - p.c0() * epsilon;
    if (!(b > 0.0)) throw DomainError("reduced_indices: g2 - sigma2*eps must be > 0");
    if (!(c >= 0.0)) throw DomainError("reduced_indices: eta - c0*eps must be >= 0");
    ReducedIndices out;
    out.omega_arg = std::sqrt(b);
    out.p = (p.g1() - p.sigma1() * epsilon) / (4.0 * out.omega_arg);
    out.mu = 0.5 + std::sqrt(c);
    out.gamma_index = out.mu / 2.0 - 0.25;
    return out;
}

double gamma_argument(const NatanzonParams& params, double epsilon) {
    const ReducedIndices ri = reduced_indices(params, epsilon);
    return ri.p + ri.mu / 2.0 + 0.25;
}

GreensValue green_function(const NatanzonParams& params, const CoordinateMap& map, double r, double r_prime,
                           double epsilon) {
    const ReducedIndices ri = reduced_indices(params, epsilon);
    const double ga = ri.p + ri.mu / 2.0 + 0.25;
    if (ga <= 0.5 && std::abs(ga - std::round(ga)) < kPoleGuard)
        throw PoleError("green_function: epsilon sits on a pole (gamma argument " + std::to_string(ga) + ")");

    const double r_big = std::max(r, r_prime);
    const double r_small = std::min(r, r_prime);
    const double h_big = map.h_of_r(r_big);
    const double h_small = map.h_of_r(r_small);

    const double geometric = std::sqrt(std::sqrt(radicand(params, h_big) * radicand(params, h_small)) / (h_big * h_small));
    const double m = sf::whittaker_M(-ri.p, ri.gamma_index, ri.omega_arg * h_small);
    const double w = sf::whittaker_W(-ri.p, ri.gamma_index, ri.omega_arg * h_big);
    const double omega_tilde = ri.omega_arg / 2.0;

    int sign_num = 1;
    int sign_den = 1;
    const double log_ratio = sf::log_gamma(ga, &sign_num) - sf::log_gamma(ri.mu + 0.5, &sign_den);
    const double real_part = sign_num * sign_den * std::exp(log_ratio) * geometric * m * w / (4.0 * omega_tilde);

    GreensValue out;
    out.r = r;
    out.r_prime = r_prime;
    out.epsilon = epsilon;
    out.indices = ri;
    // 1/(4i w) = -i/(4w)
    out.value = std::complex<double>(0.0, -real_part);
    return out;
}

double pole_check(const NatanzonParams& params, const EnergyLevel& level) {
    return std::abs(gamma_argument(params, level.epsilon) + level.n);
}

double log_euclidean_kernel(double x, double x_prime, double q, double mu) {
    require_kernel_domain(x, x_prime, q, mu);
    const double ls = log_sinh(q);
    const double log_z = 0.5 * (std::log(x) + std::log(x_prime)) - ls;
    const double nu = mu - 0.5;
    // Leading term of the series once z^2 is negligible (and z may underflow).
    const double log_i = log_z < -40.0 ? nu * (log_z - std::log(2.0)) - sf::log_gamma(nu + 1.0)
                                        : sf::log_bessel_I(nu, std::exp(log_z));
    return -ls - 0.5 * (x + x_prime) / std::tanh(q) + log_i;
}

double euclidean_kernel(double x, double x_prime, double q, double mu) {
    require_kernel_domain(x, x_prime, q, mu);
    const double s = std::sinh(q);
    const double z = std::sqrt(x * x_prime) / s;
    if (q < 0.05 || z > 500.0 || x + x_prime > 500.0 || !std::isfinite(s))
        return std::exp(log_euclidean_kernel(x, x_prime, q, mu));
    return std::exp(-0.5 * (x + x_prime) / std::tanh(q)) * sf::bessel_I(mu - 0.5, z) / s;
}

KernelIdentityResult kernel_identity_check(double x, double y, double gamma, double p) {
    if (!(x > 0.0)) throw DomainError("kernel_identity_check: x must be > 0");
    if (!(y > x)) throw DomainError("kernel_identity_check: requires y > x");
    if (!(gamma > 0.0)) throw DomainError("kernel_identity_check: requires gamma > 0");
    if (!(p + gamma + 0.5 > 0.0)) throw DomainError("kernel_identity_check: requires p + gamma + 1/2 > 0");

    const double mu = 2.0 * gamma + 0.5;
    auto integrand = [&](double q) {
        if (q <= 0.0) return 0.0;  // e^{-(sqrt y - sqrt x)^2 / 2q} -> 0
        if (!std::isfinite(q)) return 0.0;
        return std::exp(-2.0 * p * q + log_euclidean_kernel(x, y, q, mu));
    };

    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double err_head = 0.0;
    double err_tail = 0.0;
    double l1_head = 0.0;
    double l1_tail = 0.0;
    const double split = 1.0;
    const double head = GK::integrate(integrand, 0.0, split, 15, 1e-13, &err_head, &l1_head);
    const double tail =
        GK::integrate(integrand, split, std::numeric_limits<double>::infinity(), 15, 1e-13, &err_tail, &l1_tail);
    const double lhs = head + tail;
    if (!std::isfinite(lhs) || err_head + err_tail > 1e-8 * std::abs(lhs))
        throw QuadratureError("kernel_identity_check: quadrature error estimate " +
                              std::to_string(err_head + err_tail) + " exceeds 1e-8 relative");

    int sign = 1;
    const double log_pref = sf::log_gamma(p + gamma + 0.5, &sign) - sf::log_gamma(2.0 * gamma + 1.0) -
                            0.5 * std::log(x * y);
    const double rhs = std::exp(log_pref) * sf::whittaker_M(-p, gamma, x) * sf::whittaker_W(-p, gamma, y);

    KernelIdentityResult out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.rel_err = std::abs(lhs - rhs) / std::abs(rhs);
    return out;
}

} // namespace natanzon
