#include "entroflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "entroflow/errors.hpp"

namespace entroflow {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

CheckResult from_margins(std::string name, const std::vector<double>& margins,
                         const std::vector<double>& times, double tol) {
    CheckResult r;
    r.name = std::move(name);
    r.tolerance = tol;
    r.margins = margins;
    r.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < margins.size(); ++j) {
        if (std::isnan(margins[j])) continue;
        if (margins[j] < r.worst_margin) {
            r.worst_margin = margins[j];
            r.worst_t = j < times.size() ? times[j] : kNaN;
        }
    }
    if (!std::isfinite(r.worst_margin) && !margins.empty()) {
        // All margins NaN: the quantity was undefined along the whole flow.
        r.status = CheckStatus::inconclusive;
        r.worst_margin = kNaN;
        r.note = "margin undefined at every sample";
        return r;
    }
    r.status = r.worst_margin >= -tol ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

}  // namespace

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "inconclusive";
    }
}

CheckResult check_edi(const FunctionalSeries& series, double tol) {
    const std::size_t n = series.size();
    std::vector<double> margins(n, kNaN);
    for (std::size_t j = 0; j < n; ++j) {
        const double lhs = series.d2H_fd[j] +
                           (2.0 / series.N) * series.dH_fd[j] * series.dH_fd[j] +
                           2.0 * series.K * series.dH_fd[j];
        margins[j] = -lhs;
    }
    return from_margins("edi", margins, series.t, tol);
}

CheckResult check_w_monotone(const FunctionalSeries& series, WEntropyKind kind,
                             double tol) {
    const std::vector<double>* col = nullptr;
    const char* name = nullptr;
    switch (kind) {
        case WEntropyKind::w_n: col = &series.W_N; name = "w_n_monotone"; break;
        case WEntropyKind::w_nk: col = &series.W_NK; name = "w_nk_monotone"; break;
        case WEntropyKind::wang: col = &series.wang_WK; name = "wang_monotone"; break;
        case WEntropyKind::ye: col = &series.ye_Ya; name = "ye_monotone"; break;
    }
    const std::size_t n = series.size();
    std::vector<double> margins(n, kNaN);
    bool defined = true;
    for (double v : *col)
        if (std::isnan(v)) defined = false;
    if (defined && n >= 3) {
        const DerivativeEstimates de = estimate_derivatives(series.t, *col);
        // Score centered stencils only: the one-sided end estimates carry
        // lower-order error, which matters when the true slope is near zero
        // (W_NK at t = 1/K, equilibrated tails).
        const std::size_t lo = n >= 5 ? 2 : 1;
        for (std::size_t j = lo; j + lo < n; ++j) margins[j] = -de.dH[j];
    }
    return from_margins(name, margins, series.t, tol);
}

CheckResult check_entropy_power_concavity(const FunctionalSeries& series, double tol) {
    const std::size_t n = series.size();
    std::vector<double> margins(n, kNaN);
    // N'' + 2KN' = (2N/dim)(H'' + (2/dim)H'^2 + 2K H') exactly, so the margin
    // is evaluated through the entropy derivatives: differencing the
    // exponential directly would inflate endpoint error by N/t^2.
    const bool have_cols = series.dH_fd.size() == n && series.d2H_fd.size() == n;
    DerivativeEstimates de;
    if (!have_cols && n >= 3) de = estimate_derivatives(series.t, series.H);
    for (std::size_t j = 0; j < n; ++j) {
        const double dH = have_cols ? series.dH_fd[j] : (n >= 3 ? de.dH[j] : kNaN);
        const double d2H = have_cols ? series.d2H_fd[j] : (n >= 3 ? de.d2H[j] : kNaN);
        const double scale = 2.0 * series.entropy_power[j] / series.N;
        margins[j] = -scale * (d2H + (2.0 / series.N) * dH * dH +
                               2.0 * series.K * dH);
    }
    return from_margins("entropy_power_concavity", margins, series.t, tol);
}

CheckResult check_niw_identity(const WeightedSpace1D& space, const FlowResult& flow,
                               const FunctionalSeries& series, double tol_rel,
                               double tol_abs) {
    const std::size_t n = series.size();
    std::vector<double> margins(n, kNaN);
    std::vector<double> d2N(n, kNaN);
    if (n >= 3) {
        const DerivativeEstimates de =
            estimate_derivatives(series.t, series.entropy_power);
        d2N = de.d2H;
    }
    const double N = series.N, K = series.K;
    // Equality check against a finite-difference curvature: score only the
    // centered-stencil indices; the two one-sided nodes at each end carry
    // lower-order truncation error and stay NaN (unscored).
    for (std::size_t j = 2; n >= 5 && j + 2 < n; ++j) {
        const double t = series.t[j];
        const double dw = dwnk_dt_gamma2(space, flow.densities[j].u, N, K, t);
        const double drift =
            series.I[j] - 0.5 * N * (1.0 - K * t) / t;  // I - N(1-Kt)/2t
        const double rhs = (2.0 * series.entropy_power[j] / N) *
                           ((2.0 / N) * drift * drift + dw / t);
        const double resid = d2N[j] - rhs;
        const double tol_eff = std::max(tol_abs, tol_rel * std::abs(d2N[j]));
        margins[j] = tol_eff - std::abs(resid);
    }
    CheckResult r = from_margins("niw_identity", margins, series.t, 0.0);
    r.note = "margin = tol_eff - |residual| over interior stencils";
    return r;
}

CheckResult check_li_yau(const WeightedSpace1D& space, const FlowResult& flow,
                         double N, double K, double alpha, double tol) {
    if (alpha < 1.0)
        throw NumericError("Li-Yau estimate requires alpha >= 1");
    if (alpha == 1.0 && K != 0.0)
        throw NumericError("Li-Yau estimate with alpha = 1 requires K = 0");
    const std::size_t M = space.size();
    const std::size_t n = flow.times.size();
    std::vector<double> margins(n, kNaN);
    CheckResult r;
    r.name = "li_yau";
    r.tolerance = tol;
    r.worst_margin = std::numeric_limits<double>::infinity();

    const double inv2h = 1.0 / (2.0 * space.h);
    const double invh2 = 1.0 / (space.h * space.h);
    for (std::size_t j = 0; j < n; ++j) {
        const double T = flow.times[j];
        const std::vector<double>& u = flow.densities[j].u;
        const double umax = *std::max_element(u.begin(), u.end());
        const double floor_val = 1e-12 * umax;  // pointwise sup needs margin
        double bound;
        if (alpha == 1.0) {
            bound = 0.5 * N / T;
        } else {
            bound = (1.0 + K * T / (2.0 * (alpha - 1.0))) * 0.5 * N * alpha * alpha / T;
        }
        double worst = -std::numeric_limits<double>::infinity();
        double worst_x = kNaN;
        const bool per = space.periodic();
        for (std::size_t i = 0; i < M; ++i) {
            if (!per && (i == 0 || i + 1 == M)) continue;
            if (space.in_boundary_band(i)) continue;
            const std::size_t l = (i == 0) ? M - 1 : i - 1;
            const std::size_t rr = (i + 1 == M) ? 0 : i + 1;
            if (u[i] < floor_val || u[l] < floor_val || u[rr] < floor_val) continue;
            const double fl = std::log(u[l]), fc = std::log(u[i]), fr = std::log(u[rr]);
            const double fp = (fr - fl) * inv2h;
            const double fpp = (fr - 2.0 * fc + fl) * invh2;
            const double lap = fpp - space.Vp[i] * fp;
            const double lhs = (1.0 - alpha) * fp * fp - alpha * lap;
            if (lhs > worst) {
                worst = lhs;
                worst_x = space.x[i];
            }
        }
        if (!std::isfinite(worst)) continue;
        margins[j] = bound - worst;
        if (margins[j] < r.worst_margin) {
            r.worst_margin = margins[j];
            r.worst_t = T;
            r.worst_x = worst_x;
        }
    }
    r.margins = margins;
    if (!std::isfinite(r.worst_margin)) {
        r.status = CheckStatus::inconclusive;
        r.worst_margin = kNaN;
        r.note = "no admissible interior nodes";
        return r;
    }
    r.status = r.worst_margin >= -tol ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckResult check_fisher_bound(const FunctionalSeries& series, double tol) {
    const std::size_t n = series.size();
    std::vector<double> margins(n, kNaN);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = series.t[j];
        double bound;
        if (std::abs(series.K) * t < 1e-12) {
            bound = 0.5 * series.N / t;
        } else {
            bound = series.N * series.K / std::expm1(2.0 * series.K * t);
        }
        margins[j] = bound - series.I[j];
    }
    return from_margins("fisher_bound", margins, series.t, tol);
}

namespace {

// Piecewise-constant cell representation of u dmu on the line: edge
// positions and cumulative masses; quantiles are piecewise linear.
struct CellCdf {
    std::vector<double> edge;  // size C+1
    std::vector<double> cum;   // size C+1, cum[0] = 0, cum[C] = 1
};

CellCdf line_cdf(const std::vector<double>& edges, const std::vector<double>& mass) {
    CellCdf c;
    c.edge = edges;
    c.cum.resize(edges.size());
    c.cum[0] = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) c.cum[i + 1] = c.cum[i] + mass[i];
    const double total = c.cum.back();
    if (!(total > 0.0)) throw NumericError("W2: density has no mass");
    for (double& v : c.cum) v /= total;
    c.cum.back() = 1.0;
    return c;
}

double quantile(const CellCdf& c, double p) {
    if (p <= 0.0) return c.edge.front();
    if (p >= 1.0) return c.edge.back();
    const auto it = std::upper_bound(c.cum.begin(), c.cum.end(), p);
    std::size_t k = static_cast<std::size_t>(it - c.cum.begin());
    if (k == 0) k = 1;
    if (k >= c.cum.size()) k = c.cum.size() - 1;
    const double m = c.cum[k] - c.cum[k - 1];
    if (m <= 0.0) return c.edge[k - 1];
    const double s = (p - c.cum[k - 1]) / m;
    return c.edge[k - 1] + s * (c.edge[k] - c.edge[k - 1]);
}

// Exact integral of (G0 - G1)^2 dp: both quantiles are piecewise linear with
// knots among the merged cumulative values, so Simpson is exact per piece.
double w2_from_cdfs(const CellCdf& a, const CellCdf& b) {
    std::vector<double> knots;
    knots.reserve(a.cum.size() + b.cum.size());
    knots.insert(knots.end(), a.cum.begin(), a.cum.end());
    knots.insert(knots.end(), b.cum.begin(), b.cum.end());
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double pa = knots[k], pb = knots[k + 1];
        if (!(pb > pa)) continue;
        const double pm = 0.5 * (pa + pb);
        const double da = quantile(a, pa) - quantile(b, pa);
        const double dm = quantile(a, pm) - quantile(b, pm);
        const double db = quantile(a, pb) - quantile(b, pb);
        acc += (pb - pa) / 6.0 * (da * da + 4.0 * dm * dm + db * db);
    }
    return std::sqrt(std::max(acc, 0.0));
}

// Cell edges and masses for a non-periodic grid (half-cells at the ends).
void grid_cells(const WeightedSpace1D& s, const std::vector<double>& u,
                std::vector<double>& edges, std::vector<double>& mass) {
    const std::size_t M = s.size();
    edges.resize(M + 1);
    mass.resize(M);
    edges[0] = s.x[0];
    for (std::size_t i = 0; i + 1 < M; ++i) edges[i + 1] = 0.5 * (s.x[i] + s.x[i + 1]);
    edges[M] = s.x[M - 1];
    for (std::size_t i = 0; i < M; ++i)
        mass[i] = std::max(0.0, s.w[i] * s.m[i] * u[i]);
}

}  // namespace

double w2_distance_1d(const WeightedSpace1D& space, const std::vector<double>& u0,
                      const std::vector<double>& u1) {
    if (u0.size() != space.size() || u1.size() != space.size())
        throw NumericError("W2: density length does not match grid size");

    if (!space.periodic()) {
        std::vector<double> edges, m0, m1;
        grid_cells(space, u0, edges, m0);
        grid_cells(space, u1, edges, m1);
        return w2_from_cdfs(line_cdf(edges, m0), line_cdf(edges, m1));
    }

    // Circle: unroll at a cut and take the best over 512 cut positions; each
    // unrolling is an upper bound for the periodic transport cost.
    const std::size_t M = space.size();
    const double L = space.circumference();
    std::vector<double> m0(M), m1(M);
    for (std::size_t i = 0; i < M; ++i) {
        m0[i] = std::max(0.0, space.w[i] * space.m[i] * u0[i]);
        m1[i] = std::max(0.0, space.w[i] * space.m[i] * u1[i]);
    }
    const int cuts = 512;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> edges(M + 1), r0(M), r1(M);
    for (int c = 0; c < cuts; ++c) {
        // Cut at cell boundary index k (distribute the 512 cuts over M cells).
        const std::size_t k = static_cast<std::size_t>(
            static_cast<double>(c) * static_cast<double>(M) / cuts);
        for (std::size_t i = 0; i < M; ++i) {
            const std::size_t src = (k + i) % M;
            r0[i] = m0[src];
            r1[i] = m1[src];
            edges[i] = static_cast<double>(i) * space.h;
        }
        edges[M] = L;
        const double d = w2_from_cdfs(line_cdf(edges, r0), line_cdf(edges, r1));
        best = std::min(best, d);
    }
    return best;
}

CheckResult check_hwi_type(const WeightedSpace1D& space, const std::vector<double>& u0,
                           const std::vector<double>& u1, double tol) {
    const double H0 = shannon_entropy(space, u0);
    const double H1 = shannon_entropy(space, u1);
    const double I0 = fisher_information(space, u0);
    const double I1 = fisher_information(space, u1);
    const double W2 = w2_distance_1d(space, u0, u1);
    const double rhs = std::max(std::sqrt(std::max(I0, 0.0)),
                                std::sqrt(std::max(I1, 0.0))) * W2;
    const double margin = rhs - std::abs(H0 - H1);
    CheckResult r;
    r.name = "hwi_type";
    r.tolerance = tol;
    r.margins = {margin};
    r.worst_margin = margin;
    r.status = margin >= -tol ? CheckStatus::pass : CheckStatus::fail;
    char buf[128];
    std::snprintf(buf, sizeof buf, "W2=%.6g |dH|=%.6g", W2, std::abs(H0 - H1));
    r.note = buf;
    return r;
}

CheckResult check_eks_distortion(const WeightedSpace1D& space,
                                 const std::vector<double>& u0,
                                 const std::vector<double>& u1, double N, double K,
                                 double tol) {
    CheckResult r;
    r.name = "eks_distortion";
    r.tolerance = tol;
    const double W2 = w2_distance_1d(space, u0, u1);
    const double kappa = K / N;
    if (kappa * W2 * W2 >= kPi * kPi) {
        r.status = CheckStatus::inconclusive;
        r.worst_margin = kNaN;
        r.note = "vacuous: kappa W2^2 >= pi^2";
        return r;
    }
    const double H0 = shannon_entropy(space, u0);
    const double H1 = shannon_entropy(space, u1);
    const double I0 = std::max(0.0, fisher_information(space, u0));
    const double lhs = std::exp(H1 / N) / std::exp(H0 / N);
    const double rhs = distortion(DistortionKind::c, kappa, W2) +
                       distortion(DistortionKind::s, kappa, W2) * std::sqrt(I0) / N;
    const double margin = rhs - lhs;
    r.margins = {margin};
    r.worst_margin = margin;
    r.status = margin >= -tol ? CheckStatus::pass : CheckStatus::fail;
    char buf[128];
    std::snprintf(buf, sizeof buf, "W2=%.6g lhs=%.6g rhs=%.6g", W2, lhs, rhs);
    r.note = buf;
    return r;
}

CheckResult check_stam_lsi(const WeightedSpace1D& space, const std::vector<double>& u,
                           double N, double kappa, double tol) {
    CheckResult r;
    r.name = "stam_lsi";
    r.tolerance = tol;
    if (!(kappa > 0.0)) {
        r.status = CheckStatus::inconclusive;
        r.worst_margin = kNaN;
        r.note = "nonpositive asymptotic volume ratio";
        return r;
    }
    const double H = shannon_entropy(space, u);
    const double I = fisher_information(space, u);
    const double gamma_N = 2.0 * kPi * N * std::exp(1.0) * std::pow(kappa, 2.0 / N);
    const double margin = 0.5 * N * std::log(I / gamma_N) + H;
    r.margins = {margin};
    r.worst_margin = margin;
    r.status = margin >= -tol ? CheckStatus::pass : CheckStatus::fail;
    char buf[128];
    std::snprintf(buf, sizeof buf, "I=%.9g H=%.9g gamma_N=%.9g", I, H, gamma_N);
    r.note = buf;
    return r;
}

RigidityReport rigidity_scan(const WeightedSpace1D& space,
                             const FunctionalSeries& series, double N,
                             const RigidityOptions& opts) {
    RigidityReport rep;
    const std::size_t n = series.size();

    // (a) h(t) = N/2 - t I(t) must vanish along the flow.
    std::vector<double> hm(n, kNaN);
    for (std::size_t j = 0; j < n; ++j)
        hm[j] = -std::abs(0.5 * N - series.t[j] * series.I[j]);
    CheckResult ha = from_margins("h_constant", hm, series.t, opts.tol_h);
    ha.note = "margin = -|N/2 - t I|";

    // (b) W_N must be constant over the scan window.
    CheckResult wb;
    wb.name = "w_constant";
    wb.tolerance = opts.tol_w;
    double wmin = std::numeric_limits<double>::infinity(), wmax = -wmin;
    for (double v : series.W_N) {
        wmin = std::min(wmin, v);
        wmax = std::max(wmax, v);
    }
    const double range = n > 0 ? wmax - wmin : 0.0;
    wb.worst_margin = -range;
    wb.margins = {-range};
    wb.status = range <= opts.tol_w ? CheckStatus::pass : CheckStatus::fail;
    wb.note = "margin = -(max W_N - min W_N)";

    // (c) Lap d(., center)^2 = 2N.
    CheckResult lc;
    lc.name = "lap_dist_sq";
    lc.tolerance = opts.tol_lap;
    const double dev = laplacian_dist_sq_check(space, opts.center);
    lc.worst_margin = -dev;
    lc.margins = {-dev};
    lc.worst_x = opts.center;
    lc.status = dev <= opts.tol_lap ? CheckStatus::pass : CheckStatus::fail;
    lc.note = "margin = -max|Lap d^2 - 2N|";

    // (d) Bishop-Gromov ratio equality at the requested radius pairs.
    CheckResult bg;
    bg.name = "bg_ratio";
    bg.tolerance = opts.tol_bg;
    bg.worst_margin = 0.0;
    for (const auto& pr : opts.radius_pairs) {
        const double m = bishop_gromov_margin(space, opts.center, pr[0], pr[1]);
        bg.margins.push_back(-std::abs(m));
        if (-std::abs(m) < bg.worst_margin) {
            bg.worst_margin = -std::abs(m);
            bg.worst_x = pr[1];
        }
    }
    bg.status = bg.worst_margin >= -opts.tol_bg ? CheckStatus::pass : CheckStatus::fail;
    bg.note = "margin = -|(R/r)^N - vol ratio|";

    rep.parts = {ha, wb, lc, bg};
    rep.rigid = true;
    double worst_excess = 0.0;
    for (const CheckResult& p : rep.parts) {
        if (p.status != CheckStatus::pass) rep.rigid = false;
        const double excess = p.tolerance > 0.0
                                  ? (-p.worst_margin - p.tolerance) / p.tolerance
                                  : -p.worst_margin;
        if (excess > worst_excess) {
            worst_excess = excess;
            rep.dominant = p.name;
        }
    }
    if (rep.rigid) rep.dominant.clear();
    return rep;
}

}  // namespace entroflow
