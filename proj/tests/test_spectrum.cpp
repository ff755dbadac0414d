#include <doctest.h>

#include <array>
#include <cmath>

#include "natanzon/errors.hpp"
#include "natanzon/spectrum.hpp"
#include "natanzon/verify.hpp"

using namespace natanzon;

namespace {

double rel(double a, double b) { return a == b ? 0.0 : std::abs(a - b) / std::abs(b); }

const NatanzonParams kOsc = NatanzonParams::oscillator(0, 1, 1, 0.25);
const NatanzonParams kCoul = NatanzonParams::coulomb(-2, 0, 1, 1);
const NatanzonParams kMorse = NatanzonParams::morse(-6, 1, 1, 0);

double eval(const std::array<double, 5>& c, double x) {
    double acc = 0.0;
    for (double v : c) acc = acc * x + v;
    return acc;
}

} // namespace

TEST_CASE("quantization residual") {
    CHECK(quantization_residual(kOsc, 3.0, 0) == 0.0);
    CHECK(quantization_residual(kCoul, -0.25, 0) == 0.0);
    for (double eps : {-1.0, 0.5, 4.0})
        CHECK(quantization_residual(kOsc, eps, 1) - quantization_residual(kOsc, eps, 0) == 2.0);
    CHECK_THROWS_AS(quantization_residual(kCoul, 0.5, 0), DomainError);
    CHECK_THROWS_AS(quantization_residual(kMorse, 0.5, 0), DomainError);
}

TEST_CASE("polynomial coefficients: reduced degrees and root content") {
    const auto osc = quartic_coefficients(kOsc, 0);
    CHECK(osc[0] == 0.0);
    CHECK(osc[1] == 0.0);
    CHECK(osc[2] == 0.0);
    CHECK(-osc[4] / osc[3] == 3.0);

    const auto morse = quartic_coefficients(kMorse, 0);
    CHECK(morse[0] == 0.0);
    CHECK(morse[1] == 0.0);
    CHECK(eval(morse, -4.0) == 0.0);

    const auto coul = quartic_coefficients(kCoul, 1);
    CHECK(coul[0] == 0.0);
    CHECK(coul[1] == 0.0);
    CHECK(std::abs(eval(coul, -1.0 / 16.0)) < 1e-15);

    for (const NatanzonParams& p : verify::random_general_params(99, 20)) {
        const auto c = quartic_coefficients(p, 0);
        CHECK(c[0] != 0.0);
        const auto level = solve_level(p, 0);
        REQUIRE(level);
        double scale = 0.0;
        for (double v : c) scale = std::max(scale, std::abs(v));
        CHECK(std::abs(eval(c, level->epsilon)) <= 1e-8 * scale);
    }
}

TEST_CASE("real polynomial roots") {
    // (x-1)(x-2)(x-3)(x-4) = x^4 - 10x^3 + 35x^2 - 50x + 24
    const std::array<double, 5> four{1, -10, 35, -50, 24};
    const auto r4 = real_polynomial_roots(four);
    REQUIRE(r4.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(r4[i] - (i + 1)) < 1e-12);

    // (x^2 + 1)(x - 2)^2: a double root and no other real roots
    const std::array<double, 5> dbl{1, -4, 5, -4, 4};
    const auto r2 = real_polynomial_roots(dbl);
    REQUIRE(r2.size() == 1);
    CHECK(std::abs(r2[0] - 2.0) < 1e-7);

    const std::array<double, 5> none{1, 0, 2, 0, 1};
    CHECK(real_polynomial_roots(none).empty());
    const std::array<double, 5> linear{0, 0, 0, 2, -3};
    CHECK(real_polynomial_roots(linear) == std::vector<double>{1.5});
    const std::array<double, 5> constant{0, 0, 0, 0, 1};
    CHECK(real_polynomial_roots(constant).empty());
}

TEST_CASE("solve_level on the special cases") {
    CHECK(solve_level(kOsc, 2)->epsilon == 11.0);
    CHECK(rel(solve_level(kCoul, 1)->epsilon, -1.0 / 16.0) < 1e-14);
    CHECK(solve_level(kMorse, 0)->epsilon == -4.0);
    CHECK_FALSE(solve_level(kMorse, 2).has_value());
    CHECK_THROWS_AS(solve_level(kOsc, -1), DomainError);

    const auto threshold = solve_level(kMorse, 1);
    REQUIRE(threshold);
    CHECK(threshold->valid);
    CHECK(threshold->threshold);
    CHECK(threshold->epsilon == 0.0);
    CHECK(threshold->centrifugal_root == 0.0);

    const auto ground = solve_level(kCoul, 0);
    CHECK(ground->residual <= kLevelResidualTolerance);
    CHECK(ground->omega_root == 0.5);
    CHECK(ground->centrifugal_root == 1.0);
}

TEST_CASE("spectrum lists") {
    const auto osc = spectrum(kOsc, 3);
    REQUIRE(osc.size() == 4);
    for (int n = 0; n < 4; ++n) CHECK(osc[n].epsilon == 4.0 * n + 3.0);

    const auto morse = spectrum(kMorse, 5);
    REQUIRE(morse.size() == 2);
    CHECK(morse[0].epsilon == -4.0);
    CHECK(morse[1].epsilon == 0.0);

    const auto coul = spectrum(kCoul, 2);
    REQUIRE(coul.size() == 3);
    CHECK(rel(coul[2].epsilon, -1.0 / 36.0) < 1e-14);
    CHECK_THROWS_AS(spectrum(kOsc, -1), DomainError);
}

TEST_CASE("closed-form spectra agree with the solver") {
    const std::pair<SpecialCase, NatanzonParams> cases[] = {{SpecialCase::Oscillator, kOsc},
                                                            {SpecialCase::Coulomb, kCoul},
                                                            {SpecialCase::Morse, kMorse},
                                                            {SpecialCase::Oscillator, NatanzonParams::oscillator(-1.5, 2.0, 0.7, 3.0)},
                                                            {SpecialCase::Coulomb, NatanzonParams::coulomb(-5.0, 0.6, 2.0, 0.3)},
                                                            {SpecialCase::Morse, NatanzonParams::morse(-11.0, 1.7, 0.6, 1.2)}};
    for (const auto& [kind, p] : cases)
        for (int n = 0; n <= 5; ++n) {
            const auto level = solve_level(p, n);
            bool has_closed = true;
            double closed = 0.0;
            try {
                closed = closed_form_spectrum(kind, p, n);
            } catch (const DomainError&) {
                has_closed = false;
            }
            REQUIRE(has_closed == level.has_value());
            if (level) CHECK(std::abs(level->epsilon - closed) <= 1e-10 * std::max(1.0, std::abs(closed)));
        }
    CHECK(closed_form_spectrum(SpecialCase::Oscillator, kOsc, 1) == 7.0);
    CHECK(closed_form_spectrum(SpecialCase::Coulomb, kCoul, 0) == -0.25);
    CHECK_THROWS_AS(closed_form_spectrum(SpecialCase::Morse, kOsc, 0), DomainError);
    CHECK_THROWS_AS(closed_form_spectrum(SpecialCase::General, kOsc, 0), DomainError);
    CHECK_THROWS_AS(closed_form_spectrum(SpecialCase::Coulomb, NatanzonParams::coulomb(2, 0, 1, 1), 0), DomainError);
}

TEST_CASE("general sets: residual, admissibility, monotone levels") {
    for (const NatanzonParams& p : verify::random_general_params(2024, 50)) {
        const auto levels = spectrum(p, 8);
        REQUIRE_FALSE(levels.empty());
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const EnergyLevel& l = levels[i];
            CHECK(l.valid);
            CHECK(l.residual <= kLevelResidualTolerance);
            CHECK(std::abs(quantization_residual(p, l.epsilon, l.n)) <= kLevelResidualTolerance);
            CHECK(p.g2() - p.sigma2() * l.epsilon > 0.0);
            CHECK(p.eta() - p.c0() * l.epsilon >= 0.0);
            if (i > 0) CHECK(l.epsilon > levels[i - 1].epsilon);
        }
    }
}

TEST_CASE("no levels when the constant radicands are inadmissible") {
    // sigma2 = 0 with g2 < 0: g2 - sigma2 eps < 0 everywhere
    CHECK_FALSE(solve_level(NatanzonParams::oscillator(0, -1, 1, 0.25), 0).has_value());
    // repulsive Coulomb
    CHECK_FALSE(solve_level(NatanzonParams::coulomb(2, 0, 1, 1), 0).has_value());
}
