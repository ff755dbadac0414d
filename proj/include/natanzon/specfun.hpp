#pragma once

// Real-argument special functions used by the Green's function:
// Gamma, digamma, Kummer M (1F1), Tricomi U, Whittaker M/W and modified
// Bessel I. Everything is double precision and stateless.

namespace natanzon::sf {

struct AccuracyBudget {
    double abs_tol = 1e-300;
    double rel_tol = 2.5e-14;
    int max_terms = 20000;

    // Throws DomainError unless rel_tol >= 100 * machine epsilon and max_terms >= 1.
    void validate() const;
};

double gamma_real(double x);
// log|Gamma(x)|; sign returned through `sign` when non-null.
double log_gamma(double x, int* sign = nullptr);
double digamma(double x);
// sin(pi x), exact zeros at the integers.
double sin_pi(double x);

double kummer_M(double a, double b, double z, const AccuracyBudget& budget = {});

struct TricomiResult {
    double value = 0.0;
    // |b - round(b)| < 1e-6 but b is not an integer: the value came from the
    // continued-fraction path rather than the connection formula.
    bool near_integer_b = false;
};

TricomiResult tricomi_U_ex(double a, double b, double z, const AccuracyBudget& budget = {});
double tricomi_U(double a, double b, double z, const AccuracyBudget& budget = {});

// Individual evaluation routes, exposed so the test suite can play them off
// against each other. Each throws ConvergenceError / DomainError outside its
// range of validity.
namespace detail {
double tricomi_connection(double a, double b, double z, const AccuracyBudget& budget);
double tricomi_integer_b(double a, int n, double z, const AccuracyBudget& budget);
double tricomi_asymptotic(double a, double b, double z, const AccuracyBudget& budget);
double tricomi_continued_fraction(double a, double b, double z, const AccuracyBudget& budget);
double tricomi_polynomial(int m, double b, double z);
double bessel_I_series(double nu, double x, const AccuracyBudget& budget);
double bessel_I_asymptotic(double nu, double x, const AccuracyBudget& budget);
} // namespace detail

// M_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} M(mu - kappa + 1/2, 1 + 2 mu, z)
double whittaker_M(double kappa, double mu, double z, const AccuracyBudget& budget = {});
// W_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} U(mu - kappa + 1/2, 1 + 2 mu, z)
double whittaker_W(double kappa, double mu, double z, const AccuracyBudget& budget = {});

double bessel_I(double nu, double x, const AccuracyBudget& budget = {});
// log I_nu(x) for x > 0, finite where I_nu itself over/underflows.
double log_bessel_I(double nu, double x, const AccuracyBudget& budget = {});

} // namespace natanzon::sf
