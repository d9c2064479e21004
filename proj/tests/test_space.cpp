// Model-space construction: grids, weights, effective curvature, ball
// volumes, volume-ratio limits, and the comparison functions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "entroflow/errors.hpp"
#include "entroflow/space.hpp"

namespace ef = entroflow;

namespace {
constexpr double kPi = 3.14159265358979323846;

ef::WeightedSpace1D make(ef::Preset p, double N, int n, int M, double trunc) {
    ef::SpaceSpec spec;
    spec.preset = p;
    spec.N = N;
    spec.n = n;
    spec.grid_size = M;
    spec.truncation = trunc;
    return ef::build_model_space(spec);
}
}  // namespace

TEST_CASE("circle grid wraps periodically with uniform weight") {
    const auto s = make(ef::Preset::circle, 1, 1, 128, 2.0 * kPi);
    CHECK(s.periodic());
    CHECK(s.size() == 128);
    CHECK(s.h == doctest::Approx(2.0 * kPi / 128.0));
    CHECK(s.measure_total() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(s.distance(0.1, 2.0 * kPi - 0.1) == doctest::Approx(0.2));
    CHECK(s.mface.size() == s.size());  // wrap face present
    for (double v : s.V) CHECK(v == 0.0);
}

TEST_CASE("cone half line carries m = r^{N-1} and a singular vertex") {
    const auto s = make(ef::Preset::cone_half_line, 2.5, 1, 512, 8.0);
    CHECK_FALSE(s.periodic());
    CHECK(s.left == ef::Endpoint::singular);
    CHECK(s.right_is_truncation);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.m[i] == doctest::Approx(std::pow(s.x[i], 1.5)).epsilon(1e-12));
        CHECK(s.Vp[i] == doctest::Approx(-1.5 / s.x[i]).epsilon(1e-12));
    }
    // measure of [0, b] is b^N/N up to the excluded vertex sliver
    CHECK(s.measure_total() ==
          doctest::Approx(std::pow(8.0, 2.5) / 2.5).epsilon(1e-4));
}

TEST_CASE("sphere zonal weight is sin(theta) with unit effective curvature") {
    const auto s = make(ef::Preset::sphere_zonal, 2, 2, 400, 0.0);
    CHECK(s.a == doctest::Approx(0.0));
    CHECK(s.b == doctest::Approx(kPi));
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(s.m[i] == doctest::Approx(std::sin(s.x[i])).epsilon(1e-12));
    const ef::CurvatureReport rep = ef::effective_curvature(s);
    CHECK(rep.is_constant);
    // Ric_{N,1} = V'' - (V')^2/(N-1) with V = -log sin: V'' = 1/sin^2,
    // (V')^2 = cot^2, difference = 1 everywhere.
    CHECK(rep.k_inf == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hyperbolic zonal space has constant effective curvature -1") {
    const auto s = make(ef::Preset::hyperbolic_zonal, 2, 2, 400, 6.0);
    const ef::CurvatureReport rep = ef::effective_curvature(s);
    CHECK(rep.is_constant);
    CHECK(rep.k_inf == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("gaussian weight on R^1 with N = 10 tapers the curvature") {
    // V = x^2/2: Ric_{N,1} = 1 - x^2/(N-1) = 1 - x^2/9.
    const auto s = make(ef::Preset::gaussian_weight, 10, 1, 801, 4.0);
    const ef::CurvatureReport rep = ef::effective_curvature(s);
    CHECK_FALSE(rep.is_constant);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(rep.k_eff[i] ==
              doctest::Approx(1.0 - s.x[i] * s.x[i] / 9.0).epsilon(1e-8));
    // Infimum runs over interior nodes; the extreme sits at |x| = 4 - h.
    const double xe = 4.0 - s.h;
    CHECK(rep.k_inf == doctest::Approx(1.0 - xe * xe / 9.0).epsilon(1e-6));
}

TEST_CASE("effective curvature rejects N = 1 with nonconstant weight") {
    const auto s = make(ef::Preset::gaussian_weight, 1, 1, 101, 3.0);
    CHECK_THROWS_AS((void)ef::effective_curvature(s), ef::NumericError);
}

TEST_CASE("custom weight table builds and validates") {
    ef::SpaceSpec spec;
    spec.preset = ef::Preset::custom;
    spec.N = 3;
    const int T = 33;
    for (int i = 0; i < T; ++i) {
        const double x = static_cast<double>(i) / (T - 1);
        spec.custom_V.push_back({x, 0.3 * std::sin(2.0 * x)});
    }
    const auto s = ef::build_model_space(spec);
    CHECK(s.size() == static_cast<std::size_t>(T));
    CHECK(s.m[4] == doctest::Approx(std::exp(-spec.custom_V[4][1])));

    auto bad = spec;
    bad.custom_V[10][0] += 0.01;  // non-uniform spacing
    CHECK_THROWS_AS((void)ef::build_model_space(bad), ef::SchemaError);

    auto tiny = spec;
    tiny.custom_V.resize(8);  // too few rows
    CHECK_THROWS_AS((void)ef::build_model_space(tiny), ef::SchemaError);
}

TEST_CASE("ball volumes on the Euclidean line match 2r") {
    const auto s = make(ef::Preset::cone_full_line, 1, 1, 4001, 10.0);
    for (double r : {0.5, 1.0, 2.0, 5.0}) {
        CHECK(ef::ball_volume(s, 0.0, r) == doctest::Approx(2.0 * r).epsilon(1e-10));
        CHECK(ef::bishop_gromov_margin(s, 0.0, r / 2.0, r) ==
              doctest::Approx(0.0).epsilon(1e-9));
    }
    bool touched = false;
    (void)ef::ball_volume(s, 0.0, 20.0, &touched);
    CHECK(touched);
}

TEST_CASE("cone volume ratio converges to kappa = 1/(2 pi) for N = 2") {
    const auto s = make(ef::Preset::cone_half_line, 2, 1, 4001, 10.0);
    // mu(B_r) = r^2/2, omega_2 r^2 = pi r^2.
    const ef::RatioEstimate est = ef::volume_ratio_kappa(s, 0.0);
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-3));
    const ef::RatioEstimate small = ef::noncollapsing_ratio(s, 0.0);
    CHECK(small.value == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-3));
    // Distance-squared Laplacian comparison: Delta d^2 = 2N exactly.
    CHECK(ef::laplacian_dist_sq_check(s, 0.0) <= 1e-6);
}

TEST_CASE("comparison functions reduce to the classical limits") {
    CHECK(ef::distortion(ef::DistortionKind::s, 0.0, 0.7) == doctest::Approx(0.7));
    CHECK(ef::distortion(ef::DistortionKind::c, 0.0, 0.7) == doctest::Approx(1.0));
    CHECK(ef::distortion(ef::DistortionKind::s, 1.0, 0.7) ==
          doctest::Approx(std::sin(0.7)));
    CHECK(ef::distortion(ef::DistortionKind::c, 1.0, 0.7) ==
          doctest::Approx(std::cos(0.7)));
    CHECK(ef::distortion(ef::DistortionKind::s, -1.0, 0.7) ==
          doctest::Approx(std::sinh(0.7)));
    // sigma^{(t)}: sin(t theta)/sin(theta) for kappa = 1.
    CHECK(ef::distortion(ef::DistortionKind::sigma, 1.0, 0.9, 0.5) ==
          doctest::Approx(std::sin(0.45) / std::sin(0.9)));
    CHECK(ef::distortion(ef::DistortionKind::sigma, 0.0, 0.9, 0.5) ==
          doctest::Approx(0.5));
    // Past the conjugate point the comparison degenerates.
    CHECK(std::isinf(ef::distortion(ef::DistortionKind::sigma, 1.0, 3.2, 0.5)));
}

TEST_CASE("boundary bands flag truncation ends only") {
    const auto cone = make(ef::Preset::cone_half_line, 2, 1, 101, 5.0);
    CHECK_FALSE(cone.in_boundary_band(0));  // vertex is genuine
    CHECK(cone.in_boundary_band(cone.size() - 1));
    const auto circ = make(ef::Preset::circle, 1, 1, 64, 2.0 * kPi);
    for (std::size_t i = 0; i < circ.size(); ++i)
        CHECK_FALSE(circ.in_boundary_band(i));
}
