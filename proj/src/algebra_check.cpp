#include "natanzon/algebra_check.hpp"

#include <cmath>
#include <numbers>

#include "natanzon/errors.hpp"

namespace natanzon::algebra {

Mat2C operator+(const Mat2C& a, const Mat2C& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

Mat2C operator-(const Mat2C& a, const Mat2C& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

Mat2C operator*(const Mat2C& a, const Mat2C& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22, a.a21 * b.a11 + a.a22 * b.a21,
            a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2C operator*(cplx s, const Mat2C& a) { return {s * a.a11, s * a.a12, s * a.a21, s * a.a22}; }

double frobenius_norm(const Mat2C& a) {
    return std::sqrt(std::norm(a.a11) + std::norm(a.a12) + std::norm(a.a21) + std::norm(a.a22));
}

Generators pauli_generators() {
    const cplx i(0.0, 1.0);
    const Mat2C s1{0.0, 1.0, 1.0, 0.0};
    const Mat2C s2{0.0, -i, i, 0.0};
    const Mat2C s3{1.0, 0.0, 0.0, -1.0};
    const double k = 1.0 / (2.0 * std::numbers::sqrt2);
    return {k * (s1 - i * s2), (-0.5 * i) * s3, k * (s1 + i * s2)};
}

Mat2C matrix_exp_2x2(const Mat2C& m) {
    const cplx half_trace = 0.5 * (m.a11 + m.a22);
    const Mat2C n = m - half_trace * Mat2C::identity();
    const cplx d2 = n.a11 * n.a11 + n.a12 * n.a21;  // N^2 = d2 I
    const cplx d = std::sqrt(d2);
    cplx ch;
    cplx sh_over_d;
    if (std::abs(d) < 1e-4) {
        // Taylor series; the omitted terms are below 1e-20 relative.
        ch = 1.0 + d2 / 2.0 + d2 * d2 / 24.0 + d2 * d2 * d2 / 720.0;
        sh_over_d = 1.0 + d2 / 6.0 + d2 * d2 / 120.0 + d2 * d2 * d2 / 5040.0;
    } else {
        ch = std::cosh(d);
        sh_over_d = std::sinh(d) / d;
    }
    const cplx scale = std::exp(half_trace);
    return scale * (ch * Mat2C::identity() + sh_over_d * n);
}

std::array<double, 3> commutator_check(double scale) {
    const cplx i(0.0, 1.0);
    Generators g = pauli_generators();
    g.t1 = cplx(scale) * g.t1;
    g.t2 = cplx(scale) * g.t2;
    g.t3 = cplx(scale) * g.t3;
    auto comm = [](const Mat2C& a, const Mat2C& b) { return a * b - b * a; };
    return {frobenius_norm(comm(g.t1, g.t2) + i * g.t1), frobenius_norm(comm(g.t2, g.t3) + i * g.t3),
            frobenius_norm(comm(g.t1, g.t3) + i * g.t2)};
}

BCHCoefficients1 bch_coefficients_1(double omega, double S) {
    const double x = omega * S;
    if (!(std::abs(x) < std::numbers::pi / 2.0 - 0.01))
        throw DomainError("bch_coefficients_1: |omega*S| must be < pi/2 - 0.01");
    if (omega == 0.0) throw DomainError("bch_coefficients_1: omega must be nonzero");
    const double t = std::tan(x);
    return {2.0 * omega * t, 2.0 * std::log(std::cos(x)), t / omega};
}

BCHCoefficients2 bch_coefficients_2(cplx tau, double c) {
    const cplx i(0.0, 1.0);
    const cplx d = 1.0 - i * tau * c / 2.0;
    if (!(std::abs(d) > 1e-6)) throw DomainError("bch_coefficients_2: 1 - i tau c/2 too close to zero");
    return {i * tau / d, 2.0 * std::log(d), c / d};
}

double bch_check_1(double omega, double S, double a_scale) {
    const cplx i(0.0, 1.0);
    const Generators g = pauli_generators();
    BCHCoefficients1 k = bch_coefficients_1(omega, S);
    k.a *= a_scale;
    const Mat2C lhs = matrix_exp_2x2(cplx(0.0, -S) * (g.t1 + cplx(2.0 * omega * omega) * g.t3));
    const Mat2C rhs =
        matrix_exp_2x2((-i * k.a) * g.t3) * matrix_exp_2x2((-i * k.b) * g.t2) * matrix_exp_2x2((-i * k.c) * g.t1);
    return frobenius_norm(lhs - rhs);
}

double bch_check_2(cplx tau, double c) {
    const cplx i(0.0, 1.0);
    const Generators g = pauli_generators();
    const BCHCoefficients2 k = bch_coefficients_2(tau, c);
    const Mat2C lhs = matrix_exp_2x2((-i * k.alpha) * g.t3) * matrix_exp_2x2((-i * k.beta) * g.t2) *
                      matrix_exp_2x2((-i * k.gamma) * g.t1);
    const Mat2C rhs = matrix_exp_2x2((-i * c) * g.t1) * matrix_exp_2x2(tau * g.t3);
    return frobenius_norm(lhs - rhs);
}

} // namespace natanzon::algebra
