// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; nothing here may run before the cpuid check passes.
#include "entroflow/kernels.hpp"

#if defined(__x86_64__) || defined(__amd64__)

#include <immintrin.h>

namespace entroflow::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double v_dot2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double v_dot3(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc0);
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) acc += a[i] * b[i] * c[i];
    return acc;
}

double v_dot4(const double* a, const double* b, const double* c, const double* d,
              std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        __m256d cd = _mm256_mul_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(d + i));
        acc0 = _mm256_fmadd_pd(ab, cd, acc0);
    }
    double acc = hsum(acc0);
    for (; i < n; ++i) acc += a[i] * b[i] * c[i] * d[i];
    return acc;
}

void v_axpy(double* y, double alpha, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void v_vmul(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i,
                         _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void v_central_diff(double* out, const double* f, std::size_t n, double inv2h) {
    if (n < 3) return;
    const __m256d vs = _mm256_set1_pd(inv2h);
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(f + i + 1), _mm256_loadu_pd(f + i - 1));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vs));
    }
    for (; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
}

void v_second_diff(double* out, const double* f, std::size_t n, double invh2) {
    if (n < 3) return;
    const __m256d vs = _mm256_set1_pd(invh2);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        __m256d mid = _mm256_loadu_pd(f + i);
        __m256d d = _mm256_add_pd(_mm256_loadu_pd(f + i + 1), _mm256_loadu_pd(f + i - 1));
        d = _mm256_fnmadd_pd(two, mid, d);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vs));
    }
    for (; i + 1 < n; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invh2;
}

constexpr Ops kAvx2 = {v_dot2, v_dot3, v_dot4, v_axpy, v_vmul,
                       v_central_diff, v_second_diff};

}  // namespace

const Ops* avx2_ops_if_supported() {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
    return nullptr;
}

}  // namespace entroflow::kernels

#endif  // x86_64
