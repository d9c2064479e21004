// Vectorized primitives for the hot loops: weighted reductions, elementwise
// density algebra, uniform-grid difference stencils, and axpy accumulation.
// Scalar reference implementations always exist; wider ISA variants are
// selected once at startup and must agree with scalar to rounding error.
// Transcendentals are deliberately excluded: callers precompute log/exp into
// buffers and the kernels only multiply and add.
#pragma once

#include <cstddef>

namespace entroflow::kernels {

struct Ops {
    // sum_i a[i]*b[i]
    double (*dot2)(const double*, const double*, std::size_t);
    // sum_i a[i]*b[i]*c[i]
    double (*dot3)(const double*, const double*, const double*, std::size_t);
    // sum_i a[i]*b[i]*c[i]*d[i]
    double (*dot4)(const double*, const double*, const double*, const double*, std::size_t);
    // y[i] += alpha*x[i]
    void (*axpy)(double*, double, const double*, std::size_t);
    // out[i] = a[i]*b[i]
    void (*vmul)(double*, const double*, const double*, std::size_t);
    // out[i] = (f[i+1]-f[i-1])*inv2h for i in [1, n-2]; out[0], out[n-1] untouched
    void (*central_diff)(double*, const double*, std::size_t, double);
    // out[i] = (f[i+1]-2f[i]+f[i-1])*invh2 for i in [1, n-2]; ends untouched
    void (*second_diff)(double*, const double*, std::size_t, double);
};

// Active implementation; resolved on first call honoring ENTROFLOW_SIMD
// (auto|scalar|avx2|neon). Unsupported requests fall back to scalar.
const Ops& ops();

// Name of the active implementation: "scalar", "avx2", or "neon".
const char* active_isa();

// Test hook: re-resolve with an explicit choice. Returns false when the
// requested ISA is unavailable on this machine (scalar stays active).
bool force_isa(const char* name);

// Always-available reference implementation (for equivalence tests).
const Ops& scalar_ops();

}  // namespace entroflow::kernels
