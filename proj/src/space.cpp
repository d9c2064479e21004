#include "entroflow/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entroflow/errors.hpp"

namespace entroflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Integral over [lo, hi] of the piecewise-linear function through
// (px[k], pv[k]); exact per segment, zero-length segments skipped.
double pl_integral(const std::vector<double>& px, const std::vector<double>& pv,
                   double lo, double hi) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < px.size(); ++k) {
        const double x0 = px[k], x1 = px[k + 1];
        if (x1 <= x0) continue;
        const double ov_lo = std::max(lo, x0);
        const double ov_hi = std::min(hi, x1);
        if (ov_hi <= ov_lo) continue;
        const double s0 = (ov_lo - x0) / (x1 - x0);
        const double s1 = (ov_hi - x0) / (x1 - x0);
        const double v0 = pv[k] + s0 * (pv[k + 1] - pv[k]);
        const double v1 = pv[k] + s1 * (pv[k + 1] - pv[k]);
        acc += 0.5 * (v0 + v1) * (ov_hi - ov_lo);
    }
    return acc;
}

// Breakpoints of the weight interpolant over the full domain, including the
// partial cells between grid edge nodes and the true endpoints.
void weight_breakpoints(const WeightedSpace1D& sp, std::vector<double>& px,
                        std::vector<double>& pv) {
    px.clear();
    pv.clear();
    if (sp.periodic()) {
        px.reserve(sp.size() + 2);
        pv.reserve(sp.size() + 2);
        if (sp.x.front() > sp.a) {  // never happens for the circle preset
            px.push_back(sp.a);
            pv.push_back(sp.m.back());
        }
        for (std::size_t i = 0; i < sp.size(); ++i) {
            px.push_back(sp.x[i]);
            pv.push_back(sp.m[i]);
        }
        px.push_back(sp.b);
        pv.push_back(sp.m.front());  // wrap closes the loop
        return;
    }
    px.reserve(sp.size() + 2);
    pv.reserve(sp.size() + 2);
    px.push_back(sp.a);
    pv.push_back(sp.m_left);
    for (std::size_t i = 0; i < sp.size(); ++i) {
        px.push_back(sp.x[i]);
        pv.push_back(sp.m[i]);
    }
    px.push_back(sp.b);
    pv.push_back(sp.m_right);
}

double measure_of_interval(const WeightedSpace1D& sp, double lo, double hi) {
    std::vector<double> px, pv;
    weight_breakpoints(sp, px, pv);
    return pl_integral(px, pv, lo, hi);
}

struct RadiusPlan {
    std::array<double, 5> r{};
};

RatioEstimate ratio_at_radii(const WeightedSpace1D& sp, double center,
                             const RadiusPlan& plan, bool small_r_limit) {
    RatioEstimate est;
    const double wN = omega_N(sp.N);
    for (int j = 0; j < 5; ++j) {
        const double r = plan.r[j];
        est.samples[j] = ball_volume(sp, center, r) / (wN * std::pow(r, sp.N));
    }
    // Radii halve with j. Assuming a quadratic correction in r, the pairwise
    // Richardson extrapolants cancel it in the requested limit direction.
    if (small_r_limit) {
        est.value = (4.0 * est.samples[4] - est.samples[3]) / 3.0;
    } else {
        est.value = (4.0 * est.samples[0] - est.samples[1]) / 3.0;
    }
    const double q2 = est.samples[2], q3 = est.samples[3], q4 = est.samples[4];
    const double mx = std::max({q2, q3, q4});
    const double mn = std::min({q2, q3, q4});
    const double scale = std::max(std::abs(est.value), 1e-300);
    est.converged = (mx - mn) <= 1e-3 * scale;
    return est;
}

}  // namespace

const char* preset_name(Preset p) {
    switch (p) {
        case Preset::cone_half_line: return "cone_half_line";
        case Preset::cone_full_line: return "cone_full_line";
        case Preset::sphere_zonal: return "sphere_zonal";
        case Preset::hyperbolic_zonal: return "hyperbolic_zonal";
        case Preset::gaussian_weight: return "gaussian_weight";
        case Preset::circle: return "circle";
        case Preset::custom: return "custom";
    }
    return "?";
}

double WeightedSpace1D::distance(double p, double q) const {
    if (domain_kind == DomainKind::circle) {
        const double L = circumference();
        double d = std::fmod(std::abs(p - q), L);
        return std::min(d, L - d);
    }
    return std::abs(p - q);
}

double WeightedSpace1D::measure_total() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) acc += w[i] * m[i];
    return acc;
}

bool WeightedSpace1D::in_boundary_band(std::size_t i) const {
    const double band = 0.05 * span();
    if (left_is_truncation && x[i] <= a + band) return true;
    if (right_is_truncation && x[i] >= b - band) return true;
    return false;
}

double WeightedSpace1D::boundary_mass_fraction(const std::vector<double>& u) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        if (in_boundary_band(i)) acc += w[i] * m[i] * u[i];
    return acc;
}

WeightedSpace1D build_model_space(const SpaceSpec& spec) {
    if (spec.grid_size < 16 && spec.preset != Preset::custom)
        throw SchemaError("grid_size", "grid_size must be >= 16");

    WeightedSpace1D sp;
    sp.preset = spec.preset;
    sp.N = spec.N;
    const int M = spec.grid_size;

    auto need_truncation = [&] {
        if (!(spec.truncation > 0.0))
            throw SchemaError("truncation", "truncation must be > 0");
    };
    auto need_N = [&] {
        if (!(spec.N >= 1.0))
            throw SchemaError("N", "synthetic dimension N must be >= 1");
    };

    switch (spec.preset) {
        case Preset::circle: {
            need_truncation();  // circumference rides in the truncation slot
            const double L = spec.truncation;
            sp.domain_kind = DomainKind::circle;
            sp.left = sp.right = Endpoint::periodic;
            sp.a = 0.0;
            sp.b = L;
            sp.h = L / M;
            sp.x.resize(M);
            for (int i = 0; i < M; ++i) sp.x[i] = i * sp.h;
            sp.V.assign(M, 0.0);
            sp.Vp.assign(M, 0.0);
            sp.Vpp.assign(M, 0.0);
            break;
        }
        case Preset::cone_half_line: {
            need_truncation();
            need_N();
            const double bb = spec.truncation;
            sp.domain_kind = DomainKind::half_line;
            sp.a = 0.0;
            sp.b = bb;
            sp.right_is_truncation = true;
            if (spec.N == 1.0) {
                // Flat reflecting ray: the vertex carries full weight, so the
                // grid includes it.
                sp.h = bb / (M - 1);
                sp.x.resize(M);
                for (int i = 0; i < M; ++i) sp.x[i] = i * sp.h;
                sp.V.assign(M, 0.0);
                sp.Vp.assign(M, 0.0);
                sp.Vpp.assign(M, 0.0);
                sp.m_left = 1.0;
            } else {
                // Vertex excluded: first node at h, zero flux toward 0 where
                // m -> 0 kills the flux for kernel-type data.
                sp.h = bb / M;
                sp.x.resize(M);
                for (int i = 0; i < M; ++i) sp.x[i] = (i + 1) * sp.h;
                sp.left = Endpoint::singular;
                sp.m_left = 0.0;
                const double Nm1 = spec.N - 1.0;
                sp.V.resize(M);
                sp.Vp.resize(M);
                sp.Vpp.resize(M);
                for (int i = 0; i < M; ++i) {
                    sp.V[i] = -Nm1 * std::log(sp.x[i]);
                    sp.Vp[i] = -Nm1 / sp.x[i];
                    sp.Vpp[i] = Nm1 / (sp.x[i] * sp.x[i]);
                }
            }
            sp.m_right = std::pow(bb, spec.N - 1.0);
            break;
        }
        case Preset::cone_full_line: {
            need_truncation();
            need_N();
            const double bb = spec.truncation;
            sp.domain_kind = DomainKind::line;
            sp.a = -bb;
            sp.b = bb;
            sp.left_is_truncation = sp.right_is_truncation = true;
            if (spec.N == 1.0) {
                sp.h = 2.0 * bb / (M - 1);
                sp.x.resize(M);
                for (int i = 0; i < M; ++i) sp.x[i] = -bb + i * sp.h;
                sp.V.assign(M, 0.0);
                sp.Vp.assign(M, 0.0);
                sp.Vpp.assign(M, 0.0);
                sp.m_left = sp.m_right = 1.0;
            } else {
                // Stagger by half a step so the interior zero of m falls
                // between nodes.
                sp.h = 2.0 * bb / M;
                sp.x.resize(M);
                for (int i = 0; i < M; ++i) sp.x[i] = -bb + (i + 0.5) * sp.h;
                const double Nm1 = spec.N - 1.0;
                sp.V.resize(M);
                sp.Vp.resize(M);
                sp.Vpp.resize(M);
                for (int i = 0; i < M; ++i) {
                    const double ax = std::abs(sp.x[i]);
                    sp.V[i] = -Nm1 * std::log(ax);
                    sp.Vp[i] = -Nm1 / sp.x[i];
                    sp.Vpp[i] = Nm1 / (ax * ax);
                }
                sp.m_left = sp.m_right = std::pow(bb, spec.N - 1.0);
            }
            break;
        }
        case Preset::sphere_zonal: {
            if (spec.n < 2) throw SchemaError("n", "sphere_zonal requires n >= 2");
            sp.n_geom = spec.n;
            sp.N = spec.N >= 1.0 ? spec.N : static_cast<double>(spec.n);
            sp.domain_kind = DomainKind::interval;
            sp.a = 0.0;
            sp.b = kPi;
            sp.left = sp.right = Endpoint::singular;
            sp.m_left = sp.m_right = 0.0;
            sp.h = kPi / M;
            sp.x.resize(M);
            for (int i = 0; i < M; ++i) sp.x[i] = (i + 0.5) * sp.h;
            const double nm1 = spec.n - 1.0;
            sp.V.resize(M);
            sp.Vp.resize(M);
            sp.Vpp.resize(M);
            for (int i = 0; i < M; ++i) {
                const double s = std::sin(sp.x[i]), c = std::cos(sp.x[i]);
                sp.V[i] = -nm1 * std::log(s);
                sp.Vp[i] = -nm1 * c / s;
                sp.Vpp[i] = nm1 / (s * s);
            }
            break;
        }
        case Preset::hyperbolic_zonal: {
            if (spec.n < 2)
                throw SchemaError("n", "hyperbolic_zonal requires n >= 2");
            need_truncation();
            sp.n_geom = spec.n;
            sp.N = spec.N >= 1.0 ? spec.N : static_cast<double>(spec.n);
            const double bb = spec.truncation;
            sp.domain_kind = DomainKind::half_line;
            sp.a = 0.0;
            sp.b = bb;
            sp.left = Endpoint::singular;
            sp.m_left = 0.0;
            sp.right_is_truncation = true;
            sp.h = bb / M;
            sp.x.resize(M);
            for (int i = 0; i < M; ++i) sp.x[i] = (i + 1) * sp.h;
            const double nm1 = spec.n - 1.0;
            sp.V.resize(M);
            sp.Vp.resize(M);
            sp.Vpp.resize(M);
            for (int i = 0; i < M; ++i) {
                const double s = std::sinh(sp.x[i]), c = std::cosh(sp.x[i]);
                sp.V[i] = -nm1 * std::log(s);
                sp.Vp[i] = -nm1 * c / s;
                sp.Vpp[i] = nm1 / (s * s);
            }
            sp.m_right = std::pow(std::sinh(bb), nm1);
            break;
        }
        case Preset::gaussian_weight: {
            need_truncation();
            need_N();
            const double bb = spec.truncation;
            sp.domain_kind = DomainKind::line;
            sp.a = -bb;
            sp.b = bb;
            sp.left_is_truncation = sp.right_is_truncation = true;
            sp.h = 2.0 * bb / (M - 1);
            sp.x.resize(M);
            sp.V.resize(M);
            sp.Vp.resize(M);
            sp.Vpp.resize(M);
            for (int i = 0; i < M; ++i) {
                sp.x[i] = -bb + i * sp.h;
                sp.V[i] = 0.5 * sp.x[i] * sp.x[i];
                sp.Vp[i] = sp.x[i];
                sp.Vpp[i] = 1.0;
            }
            sp.m_left = sp.m_right = std::exp(-0.5 * bb * bb);
            break;
        }
        case Preset::custom: {
            const auto& tab = spec.custom_V;
            if (tab.size() < 16)
                throw SchemaError("custom_V", "custom table needs >= 16 rows");
            const std::size_t T = tab.size();
            sp.domain_kind = DomainKind::interval;
            sp.a = tab.front()[0];
            sp.b = tab.back()[0];
            const double hh = (sp.b - sp.a) / (T - 1);
            sp.x.resize(T);
            sp.V.resize(T);
            for (std::size_t i = 0; i < T; ++i) {
                sp.x[i] = tab[i][0];
                sp.V[i] = tab[i][1];
                if (i > 0 && !(sp.x[i] > sp.x[i - 1]))
                    throw SchemaError("custom_V", "x column must be strictly increasing");
                if (i > 0 && std::abs((sp.x[i] - sp.x[i - 1]) - hh) > 1e-9 * hh)
                    throw SchemaError("custom_V", "x column must be uniformly spaced");
            }
            sp.h = hh;
            // No analytic derivatives for user tables: central differences
            // inside, one-sided 3-point stencils at the ends.
            sp.Vp.resize(T);
            sp.Vpp.resize(T);
            for (std::size_t i = 1; i + 1 < T; ++i) {
                sp.Vp[i] = (sp.V[i + 1] - sp.V[i - 1]) / (2 * hh);
                sp.Vpp[i] = (sp.V[i + 1] - 2 * sp.V[i] + sp.V[i - 1]) / (hh * hh);
            }
            sp.Vp[0] = (-3 * sp.V[0] + 4 * sp.V[1] - sp.V[2]) / (2 * hh);
            sp.Vp[T - 1] = (3 * sp.V[T - 1] - 4 * sp.V[T - 2] + sp.V[T - 3]) / (2 * hh);
            sp.Vpp[0] = (sp.V[0] - 2 * sp.V[1] + sp.V[2]) / (hh * hh);
            sp.Vpp[T - 1] = (sp.V[T - 1] - 2 * sp.V[T - 2] + sp.V[T - 3]) / (hh * hh);
            sp.m_left = std::exp(-sp.V.front());
            sp.m_right = std::exp(-sp.V.back());
            break;
        }
    }

    const std::size_t sz = sp.size();
    sp.m.resize(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        sp.m[i] = std::exp(-sp.V[i]);
        if (!(sp.m[i] > 0.0) || !std::isfinite(sp.m[i]))
            throw SchemaError(spec.preset == Preset::custom ? "custom_V" : "truncation",
                              "weight m = e^-V must be positive and finite at "
                              "every node");
    }

    if (sp.periodic()) {
        sp.w.assign(sz, sp.h);
        sp.mface.resize(sz);
        for (std::size_t i = 0; i < sz; ++i) {
            const std::size_t j = (i + 1) % sz;
            sp.mface[i] = std::exp(-0.5 * (sp.V[i] + sp.V[j]));
        }
    } else {
        sp.w.assign(sz, sp.h);
        sp.w.front() = 0.5 * sp.h;
        sp.w.back() = 0.5 * sp.h;
        sp.mface.resize(sz - 1);
        for (std::size_t i = 0; i + 1 < sz; ++i)
            sp.mface[i] = std::exp(-0.5 * (sp.V[i] + sp.V[i + 1]));
    }
    return sp;
}

CurvatureReport effective_curvature(const WeightedSpace1D& space) {
    CurvatureReport rep;
    const std::size_t M = space.size();
    rep.k_eff.resize(M);
    if (space.N == 1.0) {
        double vmax = 0.0;
        for (double v : space.Vp) vmax = std::max(vmax, std::abs(v));
        if (vmax > 1e-12)
            throw NumericError(
                "effective curvature undefined: N = 1 with nonconstant weight");
        rep.k_eff = space.Vpp;
    } else {
        for (std::size_t i = 0; i < M; ++i)
            rep.k_eff[i] =
                space.Vpp[i] - space.Vp[i] * space.Vp[i] / (space.N - 1.0);
    }
    const std::size_t lo = space.periodic() ? 0 : 1;
    const std::size_t hi = space.periodic() ? M : M - 1;
    double kmin = std::numeric_limits<double>::infinity();
    double kmax = -kmin;
    for (std::size_t i = lo; i < hi; ++i) {
        kmin = std::min(kmin, rep.k_eff[i]);
        kmax = std::max(kmax, rep.k_eff[i]);
    }
    rep.k_inf = kmin;
    rep.is_constant =
        (kmax - kmin) <= 1e-6 * (1.0 + std::max(std::abs(kmin), std::abs(kmax)));
    return rep;
}

double omega_N(double N) {
    return std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
}

double ball_volume(const WeightedSpace1D& space, double center, double r,
                   bool* touches_truncation) {
    if (touches_truncation) *touches_truncation = false;
    if (r <= 0.0) return 0.0;
    if (space.domain_kind == DomainKind::circle) {
        const double L = space.circumference();
        if (2.0 * r >= L) return space.measure_total();
        double lo = std::fmod(center - r, L);
        if (lo < 0) lo += L;
        const double hi = lo + 2.0 * r;
        double acc = measure_of_interval(space, lo, std::min(hi, L));
        if (hi > L) acc += measure_of_interval(space, 0.0, hi - L);
        return acc;
    }
    const double lo = std::max(space.a, center - r);
    const double hi = std::min(space.b, center + r);
    if (touches_truncation) {
        if ((space.left_is_truncation && center - r < space.a) ||
            (space.right_is_truncation && center + r > space.b))
            *touches_truncation = true;
    }
    if (hi <= lo) return 0.0;
    return measure_of_interval(space, lo, hi);
}

RatioEstimate volume_ratio_kappa(const WeightedSpace1D& space, double center) {
    double dmax = std::numeric_limits<double>::infinity();
    if (space.left_is_truncation) dmax = std::min(dmax, center - space.a);
    if (space.right_is_truncation) dmax = std::min(dmax, space.b - center);
    if (!std::isfinite(dmax)) dmax = 0.5 * space.span();
    if (!(dmax > 0.0))
        throw NumericError("volume ratio: center sits on a truncation boundary");
    RadiusPlan plan;
    for (int j = 0; j < 5; ++j) plan.r[j] = 0.8 * dmax * std::pow(2.0, -j);
    return ratio_at_radii(space, center, plan, /*small_r_limit=*/false);
}

RatioEstimate noncollapsing_ratio(const WeightedSpace1D& space, double center) {
    const double r0 = std::min(32.0 * space.h, 0.4 * space.span());
    RadiusPlan plan;
    for (int j = 0; j < 5; ++j) plan.r[j] = r0 * std::pow(2.0, -j);
    return ratio_at_radii(space, center, plan, /*small_r_limit=*/true);
}

double bishop_gromov_margin(const WeightedSpace1D& space, double center,
                            double r, double R) {
    if (!(0.0 < r && r < R))
        throw NumericError("bishop_gromov_margin requires 0 < r < R");
    const double vr = ball_volume(space, center, r);
    const double vR = ball_volume(space, center, R);
    if (!(vr > 0.0)) throw NumericError("inner ball has zero measure");
    return std::pow(R / r, space.N) - vR / vr;
}

double laplacian_dist_sq_check(const WeightedSpace1D& space, double center) {
    const std::size_t M = space.size();
    const double L = space.circumference();
    std::vector<double> g(M);
    for (std::size_t i = 0; i < M; ++i) {
        const double d = space.distance(space.x[i], center);
        g[i] = d * d;
    }
    double worst = 0.0;
    const double inv2h = 1.0 / (2.0 * space.h);
    const double invh2 = 1.0 / (space.h * space.h);
    const std::size_t lo = space.periodic() ? 0 : 1;
    const std::size_t hi = space.periodic() ? M : M - 1;
    for (std::size_t i = lo; i < hi; ++i) {
        if (space.in_boundary_band(i)) continue;
        if (space.domain_kind == DomainKind::circle) {
            // Skip the cut locus where d^2 is not differentiable.
            const double d = space.distance(space.x[i], center);
            if (std::abs(d - 0.5 * L) < 2.0 * space.h) continue;
        }
        const std::size_t ip = (i + 1) % M;
        const std::size_t im = (i + M - 1) % M;
        const double gp = (g[ip] - g[im]) * inv2h;
        const double gpp = (g[ip] - 2.0 * g[i] + g[im]) * invh2;
        const double lap = gpp - space.Vp[i] * gp;
        worst = std::max(worst, std::abs(lap - 2.0 * space.N));
    }
    return worst;
}

double distortion(DistortionKind kind, double kappa, double theta,
                  double t_param) {
    auto s_k = [](double k, double th) {
        if (k > 0.0) {
            const double q = std::sqrt(k);
            return std::sin(q * th) / q;
        }
        if (k < 0.0) {
            const double q = std::sqrt(-k);
            return std::sinh(q * th) / q;
        }
        return th;
    };
    switch (kind) {
        case DistortionKind::s:
            return s_k(kappa, theta);
        case DistortionKind::c:
            if (kappa >= 0.0) return std::cos(std::sqrt(kappa) * theta);
            return std::cosh(std::sqrt(-kappa) * theta);
        case DistortionKind::sigma: {
            const double q = kappa * theta * theta;
            if (q >= kPi * kPi) return std::numeric_limits<double>::infinity();
            if (q == 0.0) return t_param;
            return s_k(kappa, t_param * theta) / s_k(kappa, theta);
        }
    }
    return 0.0;
}

}  // namespace entroflow
