#if defined(__x86_64__)

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace structlabel::detail {

// Multiply and add are kept separate (no FMA) so every lane matches the
// scalar kernel bit for bit.
void axpby_avx2(double a, const double* x, double b, const double* y, double* out,
                std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        const __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(ax, by));
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double sum_sq_diff_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) {
        const double d = x[i] - y[i];
        total += d * d;
    }
    return total;
}

}  // namespace structlabel::detail

#endif
