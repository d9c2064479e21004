// Weighted 1-D model geometries: uniform grids carrying a measure
// dmu = m dx with m = e^{-V}, plus the geometric quantities downstream
// checks interrogate (effective curvature, ball volumes, asymptotic volume
// ratio, distortion coefficients).
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace entroflow {

enum class Preset {
    cone_half_line,
    cone_full_line,
    sphere_zonal,
    hyperbolic_zonal,
    gaussian_weight,
    circle,
    custom,
};

enum class DomainKind { interval, half_line, line, circle };

enum class Endpoint { neumann, periodic, singular };

const char* preset_name(Preset p);

struct SpaceSpec {
    Preset preset = Preset::circle;
    double N = 1.0;        // synthetic dimension used by N-dependent functionals
    int n = 2;             // base dimension for zonal presets
    int grid_size = 256;
    double truncation = 0.0;  // b for unbounded domains; circumference for circle
    std::vector<std::array<double, 2>> custom_V;  // (x, V) rows, uniform x
};

struct WeightedSpace1D {
    Preset preset = Preset::circle;
    DomainKind domain_kind = DomainKind::circle;
    std::vector<double> x;    // strictly increasing, constant step h
    std::vector<double> V;    // log-weight, m = e^{-V}
    std::vector<double> Vp;   // V'
    std::vector<double> Vpp;  // V''
    std::vector<double> m;    // e^{-V(x_i)}, > 0 at every node
    std::vector<double> w;    // trapezoid quadrature weights (all h when periodic)
    // Face weights e^{-(V_i+V_{i+1})/2}; size M-1, or M for periodic grids
    // where the last entry closes the loop between node M-1 and node 0.
    std::vector<double> mface;
    double h = 0.0;
    double N = 1.0;
    int n_geom = 1;
    Endpoint left = Endpoint::neumann;
    Endpoint right = Endpoint::neumann;
    double a = 0.0, b = 0.0;  // true domain endpoints (circle: [0, L))
    // Limits of m at the domain endpoints; 0 at singular ends. Used for the
    // partial cells between a grid edge node and the true endpoint.
    double m_left = 1.0, m_right = 1.0;
    // Which endpoints are artificial truncations of an unbounded domain
    // (as opposed to genuine vertices/poles or periodic wrap).
    bool left_is_truncation = false;
    bool right_is_truncation = false;

    std::size_t size() const { return x.size(); }
    bool periodic() const { return left == Endpoint::periodic; }
    double span() const { return b - a; }
    double circumference() const { return span(); }
    double distance(double p, double q) const;
    double measure_total() const;
    // mu-mass of density u inside the outer 5% bands at truncation ends.
    double boundary_mass_fraction(const std::vector<double>& u) const;
    bool in_boundary_band(std::size_t i) const;
};

WeightedSpace1D build_model_space(const SpaceSpec& spec);

struct CurvatureReport {
    std::vector<double> k_eff;  // Ric_{N,1}(x_i) = V'' - (V')^2/(N-1)
    double k_inf = 0.0;         // infimum over interior nodes
    bool is_constant = false;
};

CurvatureReport effective_curvature(const WeightedSpace1D& space);

// Unit ball volume in R^N for real N.
double omega_N(double N);

// mu(B(center, r)) on the piecewise-linear interpolant of m, with partial
// cells at the ball boundary and at grid-excluded endpoint slivers.
// touches_truncation reports clipping against an artificial boundary.
double ball_volume(const WeightedSpace1D& space, double center, double r,
                   bool* touches_truncation = nullptr);

struct RatioEstimate {
    double value = 0.0;           // Richardson-extrapolated limit
    bool converged = false;       // last three samples agree to 1e-3 relative
    std::array<double, 5> samples{};  // raw ratios at the probed radii
};

// Asymptotic volume ratio: mu(B(center, r))/(omega_N r^N) at radii
// 0.8*b*2^{-j}, j = 0..4, extrapolated in the large-r direction.
RatioEstimate volume_ratio_kappa(const WeightedSpace1D& space, double center);

// Small-r limit of the same ratio (non-collapsing diagnostic).
RatioEstimate noncollapsing_ratio(const WeightedSpace1D& space, double center);

// (R/r)^N - mu(B(x,R))/mu(B(x,r)); nonnegative when the volume-ratio
// inequality holds.
double bishop_gromov_margin(const WeightedSpace1D& space, double center,
                            double r, double R);

// max_i |Delta d(.,center)^2 - 2N| over interior nodes away from boundary
// bands, with the weighted Laplacian g'' - V'g' by central differences.
double laplacian_dist_sq_check(const WeightedSpace1D& space, double center);

enum class DistortionKind { s, c, sigma };

// Comparison functions s_kappa, c_kappa and sigma_kappa^{(t)}; sigma returns
// +infinity (an in-band value) when kappa*theta^2 >= pi^2.
double distortion(DistortionKind kind, double kappa, double theta,
                  double t_param = 0.0);

}  // namespace entroflow
