#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "natanzon/algebra_check.hpp"
#include "natanzon/errors.hpp"

using namespace natanzon;
using namespace natanzon::algebra;

namespace {

const cplx I(0.0, 1.0);

double dist(const Mat2C& a, const Mat2C& b) { return frobenius_norm(a - b); }

} // namespace

TEST_CASE("pauli generators") {
    const Generators g = pauli_generators();
    CHECK(dist(g.t2, Mat2C{-0.5 * I, 0.0, 0.0, 0.5 * I}) == 0.0);
    const double k = 1.0 / std::numbers::sqrt2;
    CHECK(dist(g.t1 + g.t3, Mat2C{0.0, k, k, 0.0}) < 1e-16);
    // T1 = [[0,0],[k,0]], T3 = [[0,k],[0,0]] -> T1 T3 = [[0,0],[0,1/2]]
    CHECK(dist(g.t1 * g.t3, Mat2C{0.0, 0.0, 0.0, 0.5}) < 1e-15);
    CHECK(dist(g.t3 * g.t1, Mat2C{0.5, 0.0, 0.0, 0.0}) < 1e-15);
}

TEST_CASE("2x2 matrix exponential") {
    CHECK(dist(matrix_exp_2x2(Mat2C{}), Mat2C::identity()) == 0.0);
    const Mat2C d = matrix_exp_2x2(Mat2C{0.3, 0.0, 0.0, -1.7});
    CHECK(dist(d, Mat2C{std::exp(0.3), 0.0, 0.0, std::exp(-1.7)}) < 1e-15);
    CHECK(dist(matrix_exp_2x2(Mat2C{0.0, 1.0, 0.0, 0.0}), Mat2C{1.0, 1.0, 0.0, 1.0}) == 0.0);
    // Rotation generator.
    const double t = 0.8;
    const Mat2C rot = matrix_exp_2x2(Mat2C{0.0, -t, t, 0.0});
    CHECK(dist(rot, Mat2C{std::cos(t), -std::sin(t), std::sin(t), std::cos(t)}) < 1e-15);
    // exp(A) exp(-A) = 1 for a generic complex matrix, including the small-|d| branch.
    for (double s : {1e-6, 0.3, 2.0}) {
        const Mat2C a{cplx(0.2, 0.1) * s, cplx(-0.4, 0.9) * s, cplx(0.3, -0.5) * s, cplx(-0.1, 0.7) * s};
        CHECK(dist(matrix_exp_2x2(a) * matrix_exp_2x2(cplx(-1.0) * a), Mat2C::identity()) < 1e-13);
    }
}

TEST_CASE("commutation relations") {
    const auto res = commutator_check();
    for (double r : res) CHECK(r <= 1e-14);
    CHECK(commutator_check() == res);
    const auto scaled = commutator_check(2.0);
    for (double r : scaled) CHECK(r > 0.1);
}

TEST_CASE("first disentangling formula") {
    CHECK(bch_check_1(1.0, 0.0) == 0.0);
    CHECK(bch_check_1(1.0, 0.3) <= 1e-12);
    CHECK(bch_check_1(0.5, 1.2) <= 1e-12);
    CHECK(bch_check_1(1.0, 0.3, 1.01) > 1e-4);
    const BCHCoefficients1 k = bch_coefficients_1(0.5, 1.2);
    CHECK(k.b < 0.0);
    CHECK_THROWS_AS(bch_check_1(1.0, std::numbers::pi / 2.0 - 0.005), DomainError);
}

TEST_CASE("second disentangling formula") {
    CHECK(bch_check_2(0.0, 0.7) == 0.0);
    const BCHCoefficients2 k = bch_coefficients_2(0.0, 0.7);
    CHECK(k.alpha == cplx(0.0));
    CHECK(k.beta == cplx(0.0));
    CHECK(k.gamma == cplx(0.7));
    CHECK(bch_check_2(cplx(0.0, 0.4), 1.1) <= 1e-12);
    CHECK(bch_check_2(cplx(1.0, 0.5), 0.3) <= 1e-12);
    // 1 - i tau c / 2 = 0 at tau = -2i / c
    CHECK_THROWS_AS(bch_check_2(cplx(0.0, -2.0), 1.0), DomainError);
}
