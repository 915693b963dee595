// AVX2 variants of the distance kernels. Compiled with -mavx2 only (no
// -mfma): mul/add/sqrt stay separately rounded and match the scalar
// reference bit for bit. This file is only reached through the dispatcher
// after a CPUID check.
#include "qds/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace qds::kernels::detail {

void abs_diff_avx2(double q, const double* xs, std::size_t n, double* out) {
    const __m256d qv = _mm256_set1_pd(q);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(xs + i);
        const __m256d d = _mm256_sub_pd(x, qv);
        _mm256_storeu_pd(out + i, _mm256_andnot_pd(sign_mask, d));
    }
    for (; i < n; ++i)
        out[i] = std::fabs(xs[i] - q);
}

void euclidean2_avx2(double qx, double qy, const double* xs, const double* ys,
                     std::size_t n, double* out) {
    const __m256d qxv = _mm256_set1_pd(qx);
    const __m256d qyv = _mm256_set1_pd(qy);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), qxv);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), qyv);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(d2));
    }
    for (; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        out[i] = std::sqrt(dx * dx + dy * dy);
    }
}

} // namespace qds::kernels::detail

#endif // x86-64
