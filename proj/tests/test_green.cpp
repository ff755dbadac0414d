#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "natanzon/errors.hpp"
#include "natanzon/green.hpp"
#include "natanzon/oracle.hpp"
#include "natanzon/spectrum.hpp"

using namespace natanzon;

namespace {

double rel(double a, double b) { return a == b ? 0.0 : std::abs(a - b) / std::abs(b); }

const NatanzonParams kOsc = NatanzonParams::oscillator(0, 1, 1, 0.25);
const NatanzonParams kCoul = NatanzonParams::coulomb(-2, 0, 1, 1);
const NatanzonParams kMorse = NatanzonParams::morse(-6, 1, 1, 0);

} // namespace

TEST_CASE("reduced indices") {
    const ReducedIndices osc = reduced_indices(kOsc, 0.0);
    CHECK(osc.p == 0.0);
    CHECK(osc.mu == 1.0);
    CHECK(osc.omega_arg == 1.0);
    CHECK(osc.gamma_index == 0.25);

    const ReducedIndices coul = reduced_indices(kCoul, -1.0);
    CHECK(coul.omega_arg == 1.0);
    CHECK(coul.p == -0.5);
    CHECK(coul.mu == 1.5);  // 1/2 + sqrt(eta - c0 eps) with eta = 1, c0 = 0

    const NatanzonParams g(-3, 2, 1, 0.5, 2, 3);
    CHECK(reduced_indices(g, 1.5).mu == 0.5);
    CHECK_THROWS_AS(reduced_indices(kCoul, 0.5), DomainError);
    CHECK_THROWS_AS(reduced_indices(kMorse, 0.5), DomainError);
}

TEST_CASE("gamma argument at the levels") {
    CHECK(gamma_argument(kOsc, 3.0) == 0.0);
    CHECK(gamma_argument(kOsc, 7.0) == -1.0);
    CHECK(gamma_argument(kCoul, -0.25) == 0.0);
    for (const auto& p : {kOsc, kCoul, kMorse})
        for (const EnergyLevel& level : spectrum(p, 5)) CHECK(pole_check(p, level) <= 1e-10);
}

TEST_CASE("green function symmetry and pole guard") {
    const CoordinateMap map = build_change_of_variable(kOsc);
    for (double r : {0.4, 1.0, 2.3})
        for (double rp : {0.7, 1.9}) {
            const auto a = green_function(kOsc, map, r, rp, 5.0).value;
            const auto b = green_function(kOsc, map, rp, r, 5.0).value;
            CHECK(a == b);
            CHECK(a.real() == 0.0);
        }
    CHECK_THROWS_AS(green_function(kOsc, map, 1.0, 2.0, 3.0), PoleError);
    CHECK_THROWS_AS(green_function(kOsc, map, 1.0, 2.0, 7.0), PoleError);
    CHECK_NOTHROW(green_function(kOsc, map, 1.0, 2.0, 3.0 - 1e-6));
    CHECK_THROWS_AS(green_function(kOsc, map, -1.0, 2.0, 5.0), DomainError);
}

TEST_CASE("i G matches the finite-difference resolvent") {
    const CoordinateMap map = build_change_of_variable(kOsc);
    // Walls at 0 and 12 with 4800 cells put r = 1 and r = 2 on nodes.
    const oracle::Grid grid{0.0, 12.0, 4799};
    const oracle::TridiagonalSystem sys = oracle::fd_hamiltonian(map, grid);
    const double eps = 0.0;
    const auto fd = oracle::fd_resolvent(sys, grid, 1.0, 2.0, eps);
    CHECK(std::abs(fd.r - 1.0) < 1e-12);
    CHECK(std::abs(fd.r_prime - 2.0) < 1e-12);
    const std::complex<double> g = green_function(kOsc, map, 1.0, 2.0, eps).value;
    const std::complex<double> ig = std::complex<double>(0.0, 1.0) * g;
    CHECK(std::abs(ig.imag()) < 1e-15 * std::abs(ig.real()));
    CHECK(rel(fd.value, ig.real()) < 1e-4);

    // Same check on Coulomb away from the spectrum.
    const CoordinateMap cmap = build_change_of_variable(kCoul);
    const oracle::Grid cgrid{0.0, 80.0, 15999};
    const auto cfd = oracle::fd_resolvent(oracle::fd_hamiltonian(cmap, cgrid), cgrid, 2.0, 5.0, -0.15625);
    const double cig = -green_function(kCoul, cmap, cfd.r, cfd.r_prime, -0.15625).value.imag();
    CHECK(rel(cfd.value, cig) < 1e-3);
}

TEST_CASE("simple pole at the ground level") {
    const CoordinateMap map = build_change_of_variable(kOsc);
    std::vector<double> xs, ys;
    for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
        xs.push_back(std::log(d));
        ys.push_back(std::log(std::abs(green_function(kOsc, map, 1.0, 2.0, 3.0 - d).value)));
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope + 1.0) < 0.05);
}

TEST_CASE("euclidean kernel") {
    // Decays for large q.
    CHECK(euclidean_kernel(0.5, 1.5, 40.0, 1.75) < 1e-15);
    // Log-space and direct evaluation agree where both are representable.
    for (double q : {0.06, 0.2, 1.0, 3.0})
        CHECK(rel(euclidean_kernel(0.8, 0.8, q, 1.2), std::exp(log_euclidean_kernel(0.8, 0.8, q, 1.2))) < 1e-12);
    CHECK(std::isfinite(log_euclidean_kernel(0.8, 0.8, 1e-6, 1.2)));
    // Independent Bessel implementation.
    const double q = 1.0;
    const double direct = std::exp(-0.5 * 2.0 / std::tanh(q)) *
                          boost::math::cyl_bessel_i(1.25, std::sqrt(0.75) / std::sinh(q)) / std::sinh(q);
    CHECK(rel(euclidean_kernel(0.5, 1.5, q, 1.75), direct) < 1e-13);
    CHECK_THROWS_AS(euclidean_kernel(0.5, 1.5, 0.0, 1.75), DomainError);
    CHECK_THROWS_AS(euclidean_kernel(0.5, 1.5, 1.0, 0.25), DomainError);
}

TEST_CASE("kernel identity") {
    CHECK(kernel_identity_check(0.5, 1.5, 0.75, 0.3).rel_err <= 1e-8);
    CHECK(kernel_identity_check(0.1, 2.0, 0.5, 1.0).rel_err <= 1e-8);
    // Negative p inside the validity region.
    CHECK(kernel_identity_check(0.3, 1.1, 0.6, -0.7).rel_err <= 1e-8);
    CHECK_THROWS_AS(kernel_identity_check(2.0, 1.0, 0.75, 0.3), DomainError);
    CHECK_THROWS_AS(kernel_identity_check(0.5, 1.5, -0.1, 0.3), DomainError);
    CHECK_THROWS_AS(kernel_identity_check(0.5, 1.5, 0.2, -0.8), DomainError);
}
