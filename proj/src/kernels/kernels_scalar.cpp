#include "natanzon/kernels/kernels.hpp"

#include <cmath>

namespace natanzon::kernels::scalar {

void potential_from_h(const PotentialCoefficients& c, const double* h, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = h[i];
        const double x2 = x * x;
        const double r = (c.sigma2 * x2 + c.sigma1 * x) + c.c0;
        const double num1 = (c.g2 * x2 + c.g1 * x) + c.eta;
        const double num2 = c.sigma1 * x - c.sigma2 * x2;
        const double r2 = r * r;
        const double r3 = r2 * r;
        const double term3 = (1.25 * c.delta * x2) / r3;
        out[i] = (num1 / r + num2 / r2) - term3;
    }
}

void sturm_counts(const double* diag, const double* off_sq, std::size_t n, const double* shifts, int* counts,
                  std::size_t m, double pivmin) {
    for (std::size_t j = 0; j < m; ++j) {
        const double x = shifts[j];
        int count = 0;
        double q = diag[0] - x;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
        for (std::size_t i = 1; i < n; ++i) {
            q = (diag[i] - x) - off_sq[i - 1] / q;
            if (std::abs(q) < pivmin) q = -pivmin;
            if (q < 0.0) ++count;
        }
        counts[j] = count;
    }
}

void tridiagonal_apply(const double* diag, const double* off, const double* x, double* y, std::size_t n) {
    if (n == 0) return;
    if (n == 1) {
        y[0] = diag[0] * x[0];
        return;
    }
    y[0] = diag[0] * x[0] + off[0] * x[1];
    for (std::size_t i = 1; i + 1 < n; ++i) y[i] = (diag[i] * x[i] + off[i - 1] * x[i - 1]) + off[i] * x[i + 1];
    y[n - 1] = diag[n - 1] * x[n - 1] + off[n - 2] * x[n - 2];
}

} // namespace natanzon::kernels::scalar
