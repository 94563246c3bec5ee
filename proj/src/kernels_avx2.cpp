#include "invwave/kernels.hpp"

#if defined(INVWAVE_HAVE_AVX2)

#include <immintrin.h>

namespace invwave::kernels::avx2 {

// Vector bodies mirror the scalar operation tree exactly; tails fall back to
// the scalar kernels so every element sees the same arithmetic.

void laplacian_zero_flux(const double* f, double* out, std::size_t n, double inv_dx2) {
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d inv = _mm256_set1_pd(inv_dx2);
    out[0] = 2.0 * (f[1] - f[0]) * inv_dx2;
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        const __m256d left = _mm256_loadu_pd(f + i - 1);
        const __m256d mid = _mm256_loadu_pd(f + i);
        const __m256d right = _mm256_loadu_pd(f + i + 1);
        const __m256d d = _mm256_add_pd(_mm256_sub_pd(left, _mm256_mul_pd(two, mid)), right);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, inv));
    }
    for (; i + 1 < n; ++i) {
        out[i] = ((f[i - 1] - 2.0 * f[i]) + f[i + 1]) * inv_dx2;
    }
    out[n - 1] = 2.0 * (f[n - 2] - f[n - 1]) * inv_dx2;
}

void axpy(const double* x, double a, const double* y, double* out, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(out + i, _mm256_add_pd(xv, _mm256_mul_pd(av, yv)));
    }
    for (; i < n; ++i) {
        out[i] = x[i] + a * y[i];
    }
}

void rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                 const double* k4, double s, double* out, std::size_t n) {
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t1 =
            _mm256_add_pd(_mm256_loadu_pd(k1 + i), _mm256_mul_pd(two, _mm256_loadu_pd(k2 + i)));
        const __m256d t2 =
            _mm256_add_pd(_mm256_mul_pd(two, _mm256_loadu_pd(k3 + i)), _mm256_loadu_pd(k4 + i));
        const __m256d sum = _mm256_add_pd(t1, t2);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(sv, sum)));
    }
    for (; i < n; ++i) {
        const double t1 = k1[i] + 2.0 * k2[i];
        const double t2 = 2.0 * k3[i] + k4[i];
        out[i] = y[i] + s * (t1 + t2);
    }
}

double clamp_nonnegative(double* f, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(f + i);
        const __m256d neg = _mm256_min_pd(v, zero);
        acc = _mm256_sub_pd(acc, neg);
        _mm256_storeu_pd(f + i, _mm256_max_pd(v, zero));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double mass = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        if (f[i] <= 0.0) {
            mass -= f[i];
            f[i] = 0.0;
        }
    }
    return mass;
}

}  // namespace invwave::kernels::avx2

#endif  // INVWAVE_HAVE_AVX2
