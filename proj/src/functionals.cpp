#include "entroflow/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entroflow/errors.hpp"
#include "entroflow/kernels.hpp"

namespace entroflow {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kFloorRel = 1e-14;  // positivity floor relative to max(u)
constexpr double kLogFloor = 1e-300;

struct Mask {
    std::vector<char> keep;    // above the positivity floor
    std::vector<char> keep_d;  // above the floor with both stencil neighbours
    double excluded_mass = 0.0;
    double mass_total = 0.0;
    double mass_kept_d = 0.0;
};

Mask build_mask(const WeightedSpace1D& s, const std::vector<double>& u) {
    const std::size_t M = s.size();
    Mask mk;
    mk.keep.assign(M, 0);
    mk.keep_d.assign(M, 0);
    const double umax = *std::max_element(u.begin(), u.end());
    const double floor_val = kFloorRel * umax;
    for (std::size_t i = 0; i < M; ++i) {
        const double Wi = s.w[i] * s.m[i];
        const double mass = Wi * u[i];
        mk.mass_total += mass;
        if (u[i] > 0.0 && u[i] >= floor_val)
            mk.keep[i] = 1;
        else
            mk.excluded_mass += mass;
    }
    const bool per = s.periodic();
    for (std::size_t i = 0; i < M; ++i) {
        if (!mk.keep[i]) continue;
        bool ok;
        if (per) {
            const std::size_t l = (i == 0) ? M - 1 : i - 1;
            const std::size_t r = (i + 1 == M) ? 0 : i + 1;
            ok = mk.keep[l] && mk.keep[r];
        } else {
            ok = i > 0 && i + 1 < M && mk.keep[i - 1] && mk.keep[i + 1];
        }
        if (ok) {
            mk.keep_d[i] = 1;
            mk.mass_kept_d += s.w[i] * s.m[i] * u[i];
        }
    }
    return mk;
}

struct LogDerivs {
    std::vector<double> f, fp, fpp;
};

// f = log u with a hard floor so the array is defined everywhere; stencil
// values are only consumed at keep_d nodes where the floor never bites.
LogDerivs log_derivs(const WeightedSpace1D& s, const std::vector<double>& u) {
    const std::size_t M = s.size();
    LogDerivs d;
    d.f.resize(M);
    d.fp.assign(M, 0.0);
    d.fpp.assign(M, 0.0);
    for (std::size_t i = 0; i < M; ++i)
        d.f[i] = std::log(std::max(u[i], kLogFloor));
    const auto& k = kernels::ops();
    const double inv2h = 1.0 / (2.0 * s.h);
    const double invh2 = 1.0 / (s.h * s.h);
    if (M >= 3) {
        k.central_diff(d.fp.data(), d.f.data(), M, inv2h);
        k.second_diff(d.fpp.data(), d.f.data(), M, invh2);
    }
    if (s.periodic() && M >= 3) {
        d.fp[0] = (d.f[1] - d.f[M - 1]) * inv2h;
        d.fp[M - 1] = (d.f[0] - d.f[M - 2]) * inv2h;
        d.fpp[0] = (d.f[1] - 2.0 * d.f[0] + d.f[M - 1]) * invh2;
        d.fpp[M - 1] = (d.f[0] - 2.0 * d.f[M - 1] + d.f[M - 2]) * invh2;
    }
    return d;
}

void check_density(const WeightedSpace1D& s, const std::vector<double>& u) {
    if (u.size() != s.size())
        throw NumericError("density length does not match grid size");
    if (s.size() < 3) throw NumericError("grid too small for quadrature");
}

double fisher_gradient_form(const WeightedSpace1D& s, const std::vector<double>& u,
                            const Mask& mk, const LogDerivs& ld,
                            double* boundary_share) {
    const std::size_t M = s.size();
    const double invh = 1.0 / s.h;
    double total = 0.0, band = 0.0;
    const std::size_t F = s.mface.size();
    for (std::size_t f = 0; f < F; ++f) {
        const std::size_t i = f;
        const std::size_t j = (f + 1 < M) ? f + 1 : 0;
        if (!mk.keep[i] || !mk.keep[j]) continue;
        const double term =
            s.mface[f] * invh * (u[j] - u[i]) * (ld.f[j] - ld.f[i]);
        total += term;
        if (s.in_boundary_band(i) || s.in_boundary_band(j)) band += std::abs(term);
    }
    if (boundary_share)
        *boundary_share = total > 0.0 ? band / total : 0.0;
    return total;
}

double fisher_laplacian_form(const WeightedSpace1D& s, const std::vector<double>& u,
                             const Mask& mk, const LogDerivs& ld,
                             double* boundary_share) {
    const std::size_t M = s.size();
    double total = 0.0, abssum = 0.0, band = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        if (!mk.keep_d[i]) continue;
        const double term =
            -s.w[i] * s.m[i] * u[i] * (ld.fpp[i] - s.Vp[i] * ld.fp[i]);
        total += term;
        abssum += std::abs(term);
        if (s.in_boundary_band(i)) band += std::abs(term);
    }
    if (boundary_share) *boundary_share = abssum > 0.0 ? band / abssum : 0.0;
    return total;
}

}  // namespace

double shannon_entropy(const WeightedSpace1D& space, const std::vector<double>& u) {
    check_density(space, u);
    double H = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (u[i] > 0.0)
            H -= space.w[i] * space.m[i] * u[i] * std::log(u[i]);
    }
    return H;
}

double fisher_information(const WeightedSpace1D& space, const std::vector<double>& u,
                          FisherForm form, QuadDiagnostics* diag) {
    check_density(space, u);
    const Mask mk = build_mask(space, u);
    const LogDerivs ld = log_derivs(space, u);
    double share_g = 0.0, share_l = 0.0;
    double Ig = std::numeric_limits<double>::quiet_NaN();
    double Il = std::numeric_limits<double>::quiet_NaN();
    if (form == FisherForm::gradient || diag)
        Ig = fisher_gradient_form(space, u, mk, ld, &share_g);
    if (form == FisherForm::laplacian || diag)
        Il = fisher_laplacian_form(space, u, mk, ld, &share_l);
    if (diag) {
        diag->excluded_mass = mk.excluded_mass;
        diag->boundary_share = form == FisherForm::gradient ? share_g : share_l;
        const double scale = std::max({std::abs(Ig), std::abs(Il), 1e-14});
        diag->forms_agree = std::abs(Ig - Il) <= 0.05 * scale || scale <= 1e-12;
    }
    return form == FisherForm::gradient ? Ig : Il;
}

double gamma2_integral(const WeightedSpace1D& space, const std::vector<double>& u,
                       QuadDiagnostics* diag) {
    check_density(space, u);
    const Mask mk = build_mask(space, u);
    const LogDerivs ld = log_derivs(space, u);
    double total = 0.0, band = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!mk.keep_d[i]) continue;
        const double g2 =
            ld.fpp[i] * ld.fpp[i] + space.Vpp[i] * ld.fp[i] * ld.fp[i];
        const double term = space.w[i] * space.m[i] * u[i] * g2;
        total += term;
        if (space.in_boundary_band(i)) band += std::abs(term);
    }
    if (diag) {
        diag->excluded_mass = mk.excluded_mass;
        diag->boundary_share = total > 0.0 ? band / total : 0.0;
        diag->forms_agree = true;
    }
    return total;
}

double entropy_power_value(double H, double N) {
    if (!(N > 0.0)) throw NumericError("entropy power requires N > 0");
    return std::exp(2.0 * H / N);
}

double h_n_value(double H, double N, double t) {
    if (!(t > 0.0)) throw NumericError("H_N requires t > 0");
    return H - 0.5 * N * (1.0 + std::log(4.0 * kPi * t));
}

double h_nk_value(double H, double N, double K, double t) {
    return h_n_value(H, N, t) + 0.5 * N * K * t * (1.0 - K * t / 6.0);
}

double w_n_value(double H, double I, double N, double t) {
    if (!(t > 0.0)) throw NumericError("W_N requires t > 0");
    return t * I + H - 0.5 * N * std::log(4.0 * kPi * t) - N;
}

double w_nk_value(double H, double I, double N, double K, double t) {
    return w_n_value(H, I, N, t) + N * K * t - 0.25 * N * K * K * t * t;
}

double wang_entropy_value(double H, double dH, double N, double K, double t) {
    if (!(t > 0.0)) throw NumericError("Wang entropy requires t > 0");
    if (std::abs(K) * t < 1e-6)
        return t * dH + H - 0.5 * N * std::log(4.0 * kPi * t) - N;
    const double e2 = std::expm1(2.0 * K * t);
    const double ratio = 2.0 * K * t / e2;  // > 0 for either sign of K
    return (e2 / (2.0 * K)) * dH + H - 0.5 * N * std::log(4.0 * kPi * t) +
           0.5 * N * (std::log(ratio) - e2) - N;
}

double ye_entropy_value(double H, double I, double N, double K, double t, double a) {
    if (!(t > 0.0)) throw NumericError("Ye entropy requires t > 0");
    if (a * K > 0.0)
        throw NumericError("Ye entropy requires a*K <= 0");
    const double omega = 0.25 * I + a;
    if (!(omega > 0.0))
        throw NumericError("Ye entropy undefined: I/4 + a <= 0");
    return H + 0.5 * N * std::log(omega) + (N * K - 4.0 * a) * t;
}

double dwnk_dt_gamma2(const WeightedSpace1D& space, const std::vector<double>& u,
                      double N, double K, double t) {
    check_density(space, u);
    if (!(t > 0.0)) throw NumericError("dW/dt requires t > 0");
    const Mask mk = build_mask(space, u);
    const LogDerivs ld = log_derivs(space, u);
    const double c = 1.0 / t - K;
    double stencil = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!mk.keep_d[i]) continue;
        const double fp = ld.fp[i], fpp = ld.fpp[i];
        const double g2 = fpp * fpp + space.Vpp[i] * fp * fp;
        const double lap = fpp - space.Vp[i] * fp;
        stencil += space.w[i] * space.m[i] * u[i] *
                   (g2 + c * lap - K * fp * fp);
    }
    // The constant term integrates against the full mass, not just the
    // stencil-complete nodes.
    const double constant = 0.25 * N * c * c * mk.mass_total;
    return -2.0 * t * (stencil + constant);
}

WnkDecomposition wnk_decomposition(const WeightedSpace1D& space,
                                   const std::vector<double>& u, double N,
                                   double K, double t) {
    check_density(space, u);
    if (!(t > 0.0)) throw NumericError("W-entropy decomposition requires t > 0");
    const bool n_is_one = std::abs(N - 1.0) < 1e-12;
    if (n_is_one) {
        for (double vp : space.Vp)
            if (std::abs(vp) > 1e-12)
                throw NumericError(
                    "W-entropy decomposition undefined: N = 1 with nonconstant weight");
    }
    const CurvatureReport curv = effective_curvature(space);
    const Mask mk = build_mask(space, u);
    const LogDerivs ld = log_derivs(space, u);
    const double c = 1.0 / t - K;

    WnkDecomposition out;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!mk.keep_d[i]) continue;
        const double Wu = space.w[i] * space.m[i] * u[i];
        const double fp = ld.fp[i], fpp = ld.fpp[i];
        const double s1 = fpp + 0.5 * c;
        t1 += Wu * s1 * s1;
        t2 += Wu * (curv.k_eff[i] - K) * fp * fp;
        if (!n_is_one) {
            const double s3 = space.Vp[i] * fp - 0.5 * (N - 1.0) * c;
            t3 += Wu * s3 * s3;
        }
    }
    // Constant parts of the squares over the mass the stencil sum missed.
    const double missing = mk.mass_total - mk.mass_kept_d;
    t1 += 0.25 * c * c * missing;
    if (!n_is_one) t3 += 0.25 * (N - 1.0) * (N - 1.0) * c * c * missing;

    out.T1 = 2.0 * t * t1;
    out.T2 = 2.0 * t * t2;
    out.T3 = n_is_one ? 0.0 : 2.0 * t / (N - 1.0) * t3;
    return out;
}

namespace {

enum class GridMode { uniform, log_uniform, general };

GridMode detect_grid(const std::vector<double>& t) {
    const std::size_t n = t.size();
    const double d0 = t[1] - t[0];
    bool uniform = d0 > 0.0;
    for (std::size_t i = 1; i + 1 < n && uniform; ++i)
        uniform = std::abs((t[i + 1] - t[i]) - d0) <= 1e-8 * d0;
    if (uniform) return GridMode::uniform;
    if (t[0] > 0.0) {
        const double r0 = t[1] / t[0];
        bool logu = r0 > 1.0;
        for (std::size_t i = 1; i + 1 < n && logu; ++i)
            logu = std::abs(t[i + 1] / t[i] - r0) <= 1e-8 * r0;
        if (logu) return GridMode::log_uniform;
    }
    return GridMode::general;
}

// First/second derivative on a uniform grid with Richardson refinement where
// a 5-point neighbourhood exists.
void uniform_derivs(const std::vector<double>& y, double delta,
                    std::vector<double>& d1, std::vector<double>& d2) {
    const std::size_t n = y.size();
    const double inv = 1.0 / delta, inv2 = inv * inv;
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double D = (y[i + 1] - y[i - 1]) * 0.5 * inv;
        double S = (y[i + 1] - 2.0 * y[i] + y[i - 1]) * inv2;
        if (i >= 2 && i + 2 < n) {
            const double D2 = (y[i + 2] - y[i - 2]) * 0.25 * inv;
            const double S2 = (y[i + 2] - 2.0 * y[i] + y[i - 2]) * 0.25 * inv2;
            D = (4.0 * D - D2) / 3.0;
            S = (4.0 * S - S2) / 3.0;
        }
        d1[i] = D;
        d2[i] = S;
    }
    d1[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) * 0.5 * inv;
    d1[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) * 0.5 * inv;
    if (n >= 4) {
        d2[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) * inv2;
        d2[n - 1] =
            (2.0 * y[n - 1] - 5.0 * y[n - 2] + 4.0 * y[n - 3] - y[n - 4]) * inv2;
    } else {
        d2[0] = d2[n - 1] = (y[0] - 2.0 * y[1] + y[2]) * inv2;
    }
}

}  // namespace

DerivativeEstimates estimate_derivatives(const std::vector<double>& times,
                                         const std::vector<double>& H) {
    const std::size_t n = times.size();
    if (n != H.size())
        throw NumericError("derivative estimation: mismatched series lengths");
    if (n < 3)
        throw NumericError("derivative estimation requires at least 3 samples");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(times[i + 1] > times[i]))
            throw NumericError("derivative estimation requires increasing times");

    DerivativeEstimates out;
    out.dH.assign(n, 0.0);
    out.d2H.assign(n, 0.0);

    const GridMode mode = detect_grid(times);
    if (mode == GridMode::uniform) {
        uniform_derivs(H, times[1] - times[0], out.dH, out.d2H);
        return out;
    }
    if (mode == GridMode::log_uniform) {
        // Differentiate in s = log t: H_t = H_s / t, H_tt = (H_ss - H_s)/t^2.
        const double ds = std::log(times[1] / times[0]);
        std::vector<double> d1, d2;
        uniform_derivs(H, ds, d1, d2);
        for (std::size_t i = 0; i < n; ++i) {
            out.dH[i] = d1[i] / times[i];
            out.d2H[i] = (d2[i] - d1[i]) / (times[i] * times[i]);
        }
        return out;
    }

    // General spacing: quadratic through each local triple.
    auto triple = [&](std::size_t i0, double at, double& d1v, double& d2v) {
        const double ta = times[i0], tb = times[i0 + 1], tc = times[i0 + 2];
        const double ya = H[i0], yb = H[i0 + 1], yc = H[i0 + 2];
        const double h1 = tb - ta, h2 = tc - tb;
        // Newton form y = ya + c1 (t-ta) + c2 (t-ta)(t-tb).
        const double c1 = (yb - ya) / h1;
        const double c2 = ((yc - yb) / h2 - c1) / (h1 + h2);
        d1v = c1 + c2 * (2.0 * at - ta - tb);
        d2v = 2.0 * c2;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t i0 = (i == 0) ? 0 : (i + 1 == n ? n - 3 : i - 1);
        triple(i0, times[i], out.dH[i], out.d2H[i]);
    }
    return out;
}

FunctionalSeries evaluate_series(const WeightedSpace1D& space, const FlowResult& flow,
                                 double N, double K, double a) {
    if (a * K > 0.0)
        throw NumericError("Ye entropy requires a*K <= 0");
    FunctionalSeries S;
    S.N = N;
    S.K = K;
    S.a = a;
    const std::size_t n = flow.times.size();
    if (flow.densities.size() != n)
        throw NumericError("flow series is inconsistent");
    S.t = flow.times;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t j = 0; j < n; ++j) {
        const double t = flow.times[j];
        const std::vector<double>& u = flow.densities[j].u;
        QuadDiagnostics qd;
        const double H = shannon_entropy(space, u);
        const double I = fisher_information(space, u, FisherForm::gradient, &qd);
        const double g2 = gamma2_integral(space, u);
        S.H.push_back(H);
        S.I.push_back(I);
        S.gamma2.push_back(g2);
        S.quad.push_back(qd);
        S.H_N.push_back(h_n_value(H, N, t));
        S.H_NK.push_back(h_nk_value(H, N, K, t));
        S.entropy_power.push_back(entropy_power_value(H, N));
        S.W_N.push_back(w_n_value(H, I, N, t));
        S.W_NK.push_back(w_nk_value(H, I, N, K, t));
        try {
            const WnkDecomposition dec = wnk_decomposition(space, u, N, K, t);
            S.T1.push_back(dec.T1);
            S.T2.push_back(dec.T2);
            S.T3.push_back(dec.T3);
        } catch (const NumericError&) {
            S.T1.push_back(nan);
            S.T2.push_back(nan);
            S.T3.push_back(nan);
        }
        try {
            S.ye_Ya.push_back(ye_entropy_value(H, I, N, K, t, a));
        } catch (const NumericError&) {
            S.ye_Ya.push_back(nan);
        }
    }

    if (n >= 3) {
        const DerivativeEstimates de = estimate_derivatives(S.t, S.H);
        S.dH_fd = de.dH;
        S.d2H_fd = de.d2H;
        for (std::size_t j = 0; j < n; ++j)
            S.wang_WK.push_back(
                wang_entropy_value(S.H[j], S.dH_fd[j], N, K, S.t[j]));
    } else {
        S.dH_fd.assign(n, nan);
        S.d2H_fd.assign(n, nan);
        S.wang_WK.assign(n, nan);
    }
    return S;
}

}  // namespace entroflow
