// NEON kernel variants (baseline on aarch64, no runtime check needed).
#include "entroflow/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace entroflow::kernels {

namespace {

double v_dot2(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double v_dot3(const double* a, const double* b, const double* c, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t ab = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc0 = vfmaq_f64(acc0, ab, vld1q_f64(c + i));
    }
    double acc = vaddvq_f64(acc0);
    for (; i < n; ++i) acc += a[i] * b[i] * c[i];
    return acc;
}

double v_dot4(const double* a, const double* b, const double* c, const double* d,
              std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t ab = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        float64x2_t cd = vmulq_f64(vld1q_f64(c + i), vld1q_f64(d + i));
        acc0 = vfmaq_f64(acc0, ab, cd);
    }
    double acc = vaddvq_f64(acc0);
    for (; i < n; ++i) acc += a[i] * b[i] * c[i] * d[i];
    return acc;
}

void v_axpy(double* y, double alpha, const double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void v_vmul(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void v_central_diff(double* out, const double* f, std::size_t n, double inv2h) {
    if (n < 3) return;
    const float64x2_t vs = vdupq_n_f64(inv2h);
    std::size_t i = 1;
    for (; i + 2 <= n - 1; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(f + i + 1), vld1q_f64(f + i - 1));
        vst1q_f64(out + i, vmulq_f64(d, vs));
    }
    for (; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
}

void v_second_diff(double* out, const double* f, std::size_t n, double invh2) {
    if (n < 3) return;
    const float64x2_t vs = vdupq_n_f64(invh2);
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t i = 1;
    for (; i + 2 <= n - 1; i += 2) {
        float64x2_t mid = vld1q_f64(f + i);
        float64x2_t d = vaddq_f64(vld1q_f64(f + i + 1), vld1q_f64(f + i - 1));
        d = vfmsq_f64(d, two, mid);
        vst1q_f64(out + i, vmulq_f64(d, vs));
    }
    for (; i + 1 < n; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invh2;
}

constexpr Ops kNeon = {v_dot2, v_dot3, v_dot4, v_axpy, v_vmul,
                       v_central_diff, v_second_diff};

}  // namespace

const Ops* neon_ops() { return &kNeon; }

}  // namespace entroflow::kernels

#endif  // aarch64
