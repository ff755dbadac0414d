#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant. The variant is picked once at runtime from CPUID; set
// NATANZON_ISA=scalar in the environment to force the reference path.
//
// Both variants perform the same IEEE operations in the same order (the
// project builds with -ffp-contract=off and the AVX2 unit does not use FMA),
// so their outputs are bit-identical. tests/test_kernels.cpp checks that.

#include <cstddef>
#include <span>
#include <string_view>

namespace natanzon::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
// ISA used by the dispatched entry points below.
Isa active_isa();
bool avx2_supported();

struct PotentialCoefficients {
    double g1, g2, sigma1, sigma2, c0, eta, delta;
};

// out[i] = V(h[i]); see potential_of_h for the formula.
void potential_from_h(const PotentialCoefficients& c, std::span<const double> h, std::span<double> out);

// counts[j] = number of eigenvalues of the symmetric tridiagonal matrix
// (diag, off) strictly below shifts[j]. off_sq holds the squared
// off-diagonal; pivots with |q| < pivmin are replaced by -pivmin.
void sturm_counts(std::span<const double> diag, std::span<const double> off_sq, std::span<const double> shifts,
                  std::span<int> counts, double pivmin);

// y = T x for the symmetric tridiagonal T = (diag, off).
void tridiagonal_apply(std::span<const double> diag, std::span<const double> off, std::span<const double> x,
                       std::span<double> y);

// Raw entry points of each variant. Pointer/length signatures keep the AVX2
// translation unit free of inline library templates.
namespace scalar {
void potential_from_h(const PotentialCoefficients& c, const double* h, double* out, std::size_t n);
void sturm_counts(const double* diag, const double* off_sq, std::size_t n, const double* shifts, int* counts,
                  std::size_t m, double pivmin);
void tridiagonal_apply(const double* diag, const double* off, const double* x, double* y, std::size_t n);
} // namespace scalar

namespace avx2 {
void potential_from_h(const PotentialCoefficients& c, const double* h, double* out, std::size_t n);
void sturm_counts(const double* diag, const double* off_sq, std::size_t n, const double* shifts, int* counts,
                  std::size_t m, double pivmin);
void tridiagonal_apply(const double* diag, const double* off, const double* x, double* y, std::size_t n);
} // namespace avx2

} // namespace natanzon::kernels
