#include "entroflow/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace entroflow::kernels {

namespace {

double s_dot2(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double s_dot3(const double* a, const double* b, const double* c, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i] * c[i];
    return acc;
}

double s_dot4(const double* a, const double* b, const double* c, const double* d,
              std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i] * c[i] * d[i];
    return acc;
}

void s_axpy(double* y, double alpha, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void s_vmul(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void s_central_diff(double* out, const double* f, std::size_t n, double inv2h) {
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2h;
}

void s_second_diff(double* out, const double* f, std::size_t n, double invh2) {
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invh2;
}

constexpr Ops kScalar = {s_dot2, s_dot3, s_dot4, s_axpy, s_vmul,
                         s_central_diff, s_second_diff};

}  // namespace

#if defined(__x86_64__) || defined(__amd64__)
const Ops* avx2_ops_if_supported();  // defined in kernels_avx2.cpp
#endif
#if defined(__aarch64__)
const Ops* neon_ops();  // defined in kernels_neon.cpp
#endif

namespace {

struct Active {
    const Ops* ops = &kScalar;
    const char* name = "scalar";
};

Active resolve(const char* request) {
    Active a;
    const bool want_auto = !request || std::strcmp(request, "auto") == 0;
#if defined(__x86_64__) || defined(__amd64__)
    if (want_auto || std::strcmp(request, "avx2") == 0) {
        if (const Ops* v = avx2_ops_if_supported()) {
            a.ops = v;
            a.name = "avx2";
            return a;
        }
    }
#endif
#if defined(__aarch64__)
    if (want_auto || std::strcmp(request, "neon") == 0) {
        a.ops = neon_ops();
        a.name = "neon";
        return a;
    }
#endif
    (void)want_auto;
    return a;  // scalar
}

Active& active() {
    static Active a = resolve(std::getenv("ENTROFLOW_SIMD"));
    return a;
}

}  // namespace

const Ops& ops() { return *active().ops; }

const char* active_isa() { return active().name; }

bool force_isa(const char* name) {
    Active a = resolve(name);
    active() = a;
    return std::strcmp(a.name, name) == 0 || std::strcmp(name, "auto") == 0;
}

const Ops& scalar_ops() { return kScalar; }

}  // namespace entroflow::kernels
