#pragma once

#include <array>
#include <complex>

// Numerical certification of the so(2,1) algebra and its two disentangling
// (BCH) formulas in the 2x2 representation built from Pauli matrices.

namespace natanzon::algebra {

using cplx = std::complex<double>;

struct Mat2C {
    cplx a11{}, a12{}, a21{}, a22{};

    static Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

Mat2C operator+(const Mat2C& a, const Mat2C& b);
Mat2C operator-(const Mat2C& a, const Mat2C& b);
Mat2C operator*(const Mat2C& a, const Mat2C& b);
Mat2C operator*(cplx s, const Mat2C& a);
double frobenius_norm(const Mat2C& a);

struct Generators {
    Mat2C t1, t2, t3;
};

// T1 = (s1 - i s2)/(2 sqrt 2), T2 = -i s3/2, T3 = (s1 + i s2)/(2 sqrt 2)
Generators pauli_generators();

// exp(M) = e^{tr/2} (cosh d I + sinh(d)/d N), N = M - tr/2 I, d^2 = -det N.
Mat2C matrix_exp_2x2(const Mat2C& m);

// Frobenius norms of [T1,T2] + iT1, [T2,T3] + iT3, [T1,T3] + iT2 for the
// generators scaled by `scale` (1 is the true representation; anything else
// is a negative control).
std::array<double, 3> commutator_check(double scale = 1.0);

struct BCHCoefficients1 {
    double a = 0.0, b = 0.0, c = 0.0;
};
// a = 2 w tan(wS), b = 2 ln cos(wS), c = tan(wS)/w. DomainError unless
// |wS| < pi/2 - 0.01.
BCHCoefficients1 bch_coefficients_1(double omega, double S);

struct BCHCoefficients2 {
    cplx alpha, beta, gamma;
};
// d = 1 - i tau c/2: alpha = i tau/d, beta = 2 Log d, gamma = c/d.
// DomainError unless |d| > 1e-6.
BCHCoefficients2 bch_coefficients_2(cplx tau, double c);

// || exp(-iS(T1 + 2 w^2 T3)) - exp(-iaT3) exp(-ibT2) exp(-icT1) ||_F.
// `a_scale` multiplies the coefficient a; values other than 1 exist only to
// show that the check detects a wrong coefficient.
double bch_check_1(double omega, double S, double a_scale = 1.0);

// || exp(-i alpha T3) exp(-i beta T2) exp(-i gamma T1) - exp(-icT1) exp(tau T3) ||_F
double bch_check_2(cplx tau, double c);

} // namespace natanzon::algebra
