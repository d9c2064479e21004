// Scalar vs vectorized kernel equivalence on awkward lengths, plus stencil
// exactness on polynomials where the formulas have zero truncation error.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "entroflow/kernels.hpp"

namespace k = entroflow::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo,
                               double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

// Reductions reassociate under SIMD; allow rounding-level drift only.
double dot_tol(const std::vector<double>& a, const std::vector<double>& b) {
    double amax = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        amax += std::abs(a[i] * b[i]);
    return 1e-13 * (amax + 1.0);
}

}  // namespace

TEST_CASE("active ISA resolves and can be forced to scalar") {
    const std::string isa = k::active_isa();
    CHECK((isa == "scalar" || isa == "avx2" || isa == "neon"));
    CHECK(k::force_isa("scalar"));
    CHECK(std::string(k::active_isa()) == "scalar");
    CHECK_FALSE(k::force_isa("not_an_isa"));
    CHECK(std::string(k::active_isa()) == "scalar");
    k::force_isa("auto");
}

TEST_CASE("vector kernels match scalar reference on awkward lengths") {
    k::force_isa("auto");
    const k::Ops& v = k::ops();
    const k::Ops& s = k::scalar_ops();
    std::mt19937_64 rng(20260822);

    for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 32u,
                          33u, 100u, 1000u, 4097u}) {
        CAPTURE(n);
        const auto a = random_vec(rng, n, -2.0, 2.0);
        const auto b = random_vec(rng, n, -2.0, 2.0);
        const auto c = random_vec(rng, n, 0.1, 3.0);
        const auto d = random_vec(rng, n, -1.0, 1.0);

        CHECK(std::abs(v.dot2(a.data(), b.data(), n) -
                       s.dot2(a.data(), b.data(), n)) <= dot_tol(a, b));
        CHECK(std::abs(v.dot3(a.data(), b.data(), c.data(), n) -
                       s.dot3(a.data(), b.data(), c.data(), n)) <=
              3.0 * dot_tol(a, b));
        CHECK(std::abs(v.dot4(a.data(), b.data(), c.data(), d.data(), n) -
                       s.dot4(a.data(), b.data(), c.data(), d.data(), n)) <=
              3.0 * dot_tol(a, b));

        std::vector<double> y1 = d, y2 = d;
        v.axpy(y1.data(), 1.7, a.data(), n);
        s.axpy(y2.data(), 1.7, a.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

        std::vector<double> m1(n), m2(n);
        v.vmul(m1.data(), a.data(), b.data(), n);
        s.vmul(m2.data(), a.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(m1[i] == m2[i]);

        if (n >= 3) {
            std::vector<double> g1(n, -7.0), g2(n, -7.0);
            v.central_diff(g1.data(), a.data(), n, 12.5);
            s.central_diff(g2.data(), a.data(), n, 12.5);
            CHECK(g1.front() == -7.0);  // ends untouched
            CHECK(g1.back() == -7.0);
            for (std::size_t i = 0; i < n; ++i) CHECK(g1[i] == doctest::Approx(g2[i]).epsilon(1e-14));

            v.second_diff(g1.data(), a.data(), n, 12.5);
            s.second_diff(g2.data(), a.data(), n, 12.5);
            for (std::size_t i = 1; i + 1 < n; ++i)
                CHECK(g1[i] == doctest::Approx(g2[i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("difference stencils are exact on quadratics") {
    const k::Ops& s = k::scalar_ops();
    const std::size_t n = 41;
    const double h = 0.125;
    std::vector<double> f(n), g(n, 0.0), g2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -2.5 + h * static_cast<double>(i);
        f[i] = 3.0 * x * x - 2.0 * x + 0.75;
    }
    s.central_diff(g.data(), f.data(), n, 1.0 / (2.0 * h));
    s.second_diff(g2.data(), f.data(), n, 1.0 / (h * h));
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double x = -2.5 + h * static_cast<double>(i);
        CHECK(g[i] == doctest::Approx(6.0 * x - 2.0).epsilon(1e-12));
        CHECK(g2[i] == doctest::Approx(6.0).epsilon(1e-11));
    }
}

TEST_CASE("dot reductions hit exact values on constructed inputs") {
    const k::Ops& v = k::ops();
    std::vector<double> ones(257, 1.0), twos(257, 2.0);
    CHECK(v.dot2(ones.data(), twos.data(), 257) == doctest::Approx(514.0));
    CHECK(v.dot3(ones.data(), twos.data(), twos.data(), 257) ==
          doctest::Approx(1028.0));
    CHECK(v.dot4(twos.data(), twos.data(), twos.data(), twos.data(), 257) ==
          doctest::Approx(16.0 * 257.0));
}
