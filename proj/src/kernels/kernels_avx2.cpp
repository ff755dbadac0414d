// Compiled with -mavx2 (no FMA). Only intrinsics and raw loops in here.
#include "natanzon/kernels/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace natanzon::kernels::avx2 {

#if defined(__AVX2__)

void potential_from_h(const PotentialCoefficients& c, const double* h, double* out, std::size_t n) {
    const __m256d g1 = _mm256_set1_pd(c.g1);
    const __m256d g2 = _mm256_set1_pd(c.g2);
    const __m256d s1 = _mm256_set1_pd(c.sigma1);
    const __m256d s2 = _mm256_set1_pd(c.sigma2);
    const __m256d c0 = _mm256_set1_pd(c.c0);
    const __m256d eta = _mm256_set1_pd(c.eta);
    const __m256d five_quarter_delta = _mm256_set1_pd(1.25 * c.delta);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(h + i);
        const __m256d x2 = _mm256_mul_pd(x, x);
        const __m256d r = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(s2, x2), _mm256_mul_pd(s1, x)), c0);
        const __m256d num1 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(g2, x2), _mm256_mul_pd(g1, x)), eta);
        const __m256d num2 = _mm256_sub_pd(_mm256_mul_pd(s1, x), _mm256_mul_pd(s2, x2));
        const __m256d r2 = _mm256_mul_pd(r, r);
        const __m256d r3 = _mm256_mul_pd(r2, r);
        const __m256d term3 = _mm256_div_pd(_mm256_mul_pd(five_quarter_delta, x2), r3);
        const __m256d v = _mm256_sub_pd(_mm256_add_pd(_mm256_div_pd(num1, r), _mm256_div_pd(num2, r2)), term3);
        _mm256_storeu_pd(out + i, v);
    }
    if (i < n) scalar::potential_from_h(c, h + i, out + i, n - i);
}

void sturm_counts(const double* diag, const double* off_sq, std::size_t n, const double* shifts, int* counts,
                  std::size_t m, double pivmin) {
    const __m256d piv = _mm256_set1_pd(pivmin);
    const __m256d neg_piv = _mm256_set1_pd(-pivmin);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d zero = _mm256_setzero_pd();

    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
        const __m256d x = _mm256_loadu_pd(shifts + j);
        // Per-lane negative-pivot counter, kept as doubles (exact up to 2^53).
        __m256d count = zero;
        const __m256d one = _mm256_set1_pd(1.0);

        __m256d q = _mm256_sub_pd(_mm256_set1_pd(diag[0]), x);
        __m256d small = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, q), piv, _CMP_LT_OQ);
        q = _mm256_blendv_pd(q, neg_piv, small);
        count = _mm256_add_pd(count, _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one));
        for (std::size_t i = 1; i < n; ++i) {
            q = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(diag[i]), x),
                              _mm256_div_pd(_mm256_set1_pd(off_sq[i - 1]), q));
            small = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, q), piv, _CMP_LT_OQ);
            q = _mm256_blendv_pd(q, neg_piv, small);
            count = _mm256_add_pd(count, _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one));
        }
        const __m128i c32 = _mm256_cvtpd_epi32(count);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(counts + j), c32);
    }
    if (j < m) scalar::sturm_counts(diag, off_sq, n, shifts + j, counts + j, m - j, pivmin);
}

void tridiagonal_apply(const double* diag, const double* off, const double* x, double* y, std::size_t n) {
    if (n < 6) {
        scalar::tridiagonal_apply(diag, off, x, y, n);
        return;
    }
    y[0] = diag[0] * x[0] + off[0] * x[1];
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d d = _mm256_loadu_pd(diag + i);
        const __m256d xc = _mm256_loadu_pd(x + i);
        const __m256d xl = _mm256_loadu_pd(x + i - 1);
        const __m256d xr = _mm256_loadu_pd(x + i + 1);
        const __m256d ol = _mm256_loadu_pd(off + i - 1);
        const __m256d orr = _mm256_loadu_pd(off + i);
        const __m256d v = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(d, xc), _mm256_mul_pd(ol, xl)),
                                        _mm256_mul_pd(orr, xr));
        _mm256_storeu_pd(y + i, v);
    }
    for (; i + 1 < n; ++i) y[i] = (diag[i] * x[i] + off[i - 1] * x[i - 1]) + off[i] * x[i + 1];
    y[n - 1] = diag[n - 1] * x[n - 1] + off[n - 2] * x[n - 2];
}

#else

// Non-x86 builds: never selected by the dispatcher, kept so the symbols exist.
void potential_from_h(const PotentialCoefficients& c, const double* h, double* out, std::size_t n) {
    scalar::potential_from_h(c, h, out, n);
}
void sturm_counts(const double* diag, const double* off_sq, std::size_t n, const double* shifts, int* counts,
                  std::size_t m, double pivmin) {
    scalar::sturm_counts(diag, off_sq, n, shifts, counts, m, pivmin);
}
void tridiagonal_apply(const double* diag, const double* off, const double* x, double* y, std::size_t n) {
    scalar::tridiagonal_apply(diag, off, x, y, n);
}

#endif

} // namespace natanzon::kernels::avx2
