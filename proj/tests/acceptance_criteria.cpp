// Acceptance gate: ten end-to-end criteria, one [PASS]/[FAIL] line each,
// nonzero exit when any fails. Tolerances are pinned here on purpose; do not
// loosen them to make a failing build green.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "entroflow/closedform.hpp"
#include "entroflow/functionals.hpp"
#include "entroflow/heatflow.hpp"
#include "entroflow/lsiopt.hpp"
#include "entroflow/space.hpp"
#include "entroflow/verify.hpp"

namespace ef = entroflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

struct Gate {
    bool ok = true;
    std::string why;
    void req(bool cond, const std::string& msg) {
        if (ok && !cond) {
            ok = false;
            why = msg;
        }
    }
};

void report(int id, const char* label, const Gate& g) {
    if (g.ok) {
        std::printf("[PASS] %02d %s\n", id, label);
    } else {
        std::printf("[FAIL] %02d %s: %s\n", id, label, g.why.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ef::WeightedSpace1D make(ef::Preset p, double N, int n, int M, double trunc) {
    ef::SpaceSpec spec;
    spec.preset = p;
    spec.N = N;
    spec.n = n;
    spec.grid_size = M;
    spec.truncation = trunc;
    return ef::build_model_space(spec);
}

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i)
        t[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    return t;
}

struct Bundle {
    ef::WeightedSpace1D space;
    ef::FlowResult flow;
    ef::FunctionalSeries series;
};

// Flat circle, 256 nodes, three-mode trig start, dense log time grid.
Bundle circle_bundle(double K) {
    Bundle b;
    b.space = make(ef::Preset::circle, 1, 1, 256, 2.0 * kPi);
    ef::Density d0;
    d0.u.resize(b.space.size());
    for (std::size_t i = 0; i < b.space.size(); ++i) {
        const double x = b.space.x[i];
        d0.u[i] = (1.0 + 0.5 * std::cos(x) + 0.2 * std::cos(2.0 * x) +
                   0.1 * std::sin(3.0 * x)) /
                  (2.0 * kPi);
    }
    ef::normalize_density(b.space, d0.u);
    ef::FlowConfig cfg;
    cfg.solver = ef::SolverKind::spectral;
    b.flow = ef::solve_flow(b.space, d0, logspace(0.01, 2.0, 193), cfg);
    b.series = ef::evaluate_series(b.space, b.flow, 1.0, K);
    return b;
}

// Sphere zonal grid, mode-1 start, N = 2, K = 1.
Bundle sphere_bundle() {
    Bundle b;
    b.space = make(ef::Preset::sphere_zonal, 2, 2, 500, 0.0);
    ef::Density d0;
    d0.u.resize(b.space.size());
    for (std::size_t i = 0; i < b.space.size(); ++i)
        d0.u[i] = 0.5 * (1.0 + 0.5 * std::cos(b.space.x[i]));
    ef::normalize_density(b.space, d0.u);
    ef::FlowConfig cfg;
    cfg.solver = ef::SolverKind::spectral;
    b.flow = ef::solve_flow(b.space, d0, logspace(0.05, 1.0, 49), cfg);
    b.series = ef::evaluate_series(b.space, b.flow, 2.0, 1.0);
    return b;
}

// ---------------------------------------------------------------------------
// 01: closed-form Gaussian saturation. Every sharp inequality is an equality
// on the heat kernel itself, down to rounding error.
Gate crit01() {
    Gate g;
    for (double N : {1.0, 2.0}) {
        const auto model =
            ef::heat_kernel_closed_form(ef::ClosedFormModel::Kind::euclidean, N);
        for (double t : {0.1, 0.25, 0.5, 1.0}) {
            const double H = model.shannon_entropy(t);
            const double I = model.fisher_information(t);
            const double P = model.entropy_power(t);
            const double W = model.w_entropy(t);
            const double Hexp = 0.5 * N * (1.0 + std::log(4.0 * kPi * t));
            g.req(std::abs(H - Hexp) <= 1e-8,
                  "H deviates at N=" + num(N) + " t=" + num(t) + ": " + num(H - Hexp));
            g.req(std::abs(I - 0.5 * N / t) <= 1e-8,
                  "I deviates at N=" + num(N) + " t=" + num(t));
            g.req(std::abs(W) <= 1e-7, "W_N nonzero: " + num(W));
            const double Pexp = 4.0 * kPi * std::exp(1.0) * t;
            g.req(std::abs(P - Pexp) <= 1e-6 * Pexp, "entropy power deviates");

            // Analytic margins. H' = I and H'' = -2*gamma2 hold exactly for
            // the model, so the three inequality margins are algebraic zeros.
            const double dH = I;
            const double d2H = -2.0 * model.gamma2_integral(t);
            const double edi = d2H + (2.0 / N) * dH * dH;  // K = 0
            g.req(std::abs(edi) <= 1e-6, "EDI margin off zero: " + num(edi));
            // Li-Yau at alpha = 1, K = 0: sup(-Lap log u) vs N/2t; the kernel
            // log-Hessian is -1/(2t) Id so the sup is exactly N/2t.
            const double liyau = 0.5 * N / t - 0.5 * N / t;
            g.req(std::abs(liyau) <= 1e-6, "Li-Yau margin off zero");
            const double fisher = 0.5 * N / t - I;
            g.req(std::abs(fisher) <= 1e-6, "Fisher margin off zero: " + num(fisher));
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// 02: cone vertex kernel is the rigid equality case: tI = 1, constant W_N,
// exact distance Laplacian, zero Bishop-Gromov margin, second-order grids.
double cone_ti_err(int M, const std::vector<double>& times) {
    const auto cone = make(ef::Preset::cone_half_line, 2, 1, M, 10.0);
    const auto model =
        ef::heat_kernel_closed_form(ef::ClosedFormModel::Kind::cone_vertex, 2);
    double worst = 0.0;
    for (double t : times) {
        const ef::Density d = model.sample(cone, t);
        const double I = ef::fisher_information(cone, d.u);
        worst = std::max(worst, std::abs(t * I - 1.0));
    }
    return worst;
}

Gate crit02() {
    Gate g;
    const std::vector<double> times{0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
    const auto cone = make(ef::Preset::cone_half_line, 2, 1, 2001, 10.0);  // h = 5e-3
    const auto model =
        ef::heat_kernel_closed_form(ef::ClosedFormModel::Kind::cone_vertex, 2);

    ef::FlowResult fr;
    fr.times = times;
    std::vector<double> wn;
    for (double t : times) {
        fr.densities.push_back(model.sample(cone, t));
        fr.diagnostics.push_back({});
        const auto& u = fr.densities.back().u;
        const double H = ef::shannon_entropy(cone, u);
        const double I = ef::fisher_information(cone, u);
        g.req(std::abs(t * I - 1.0) <= 1e-3,
              "tI - 1 = " + num(t * I - 1.0) + " at t = " + num(t));
        wn.push_back(ef::w_n_value(H, I, 2.0, t));
    }
    const auto [wmin, wmax] = std::minmax_element(wn.begin(), wn.end());
    g.req(*wmax - *wmin <= 2e-3, "W_N range " + num(*wmax - *wmin));

    g.req(ef::laplacian_dist_sq_check(cone, 0.0) <= 1e-3,
          "distance Laplacian deviates");
    for (auto [r, R] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}, std::pair{2.0, 4.0}}) {
        const double bg = ef::bishop_gromov_margin(cone, 0.0, r, R);
        g.req(std::abs(bg) <= 1e-4,
              "BG margin " + num(bg) + " at (" + num(r) + "," + num(R) + ")");
    }

    const ef::FunctionalSeries series = ef::evaluate_series(cone, fr, 2.0, 0.0);
    const ef::RigidityReport rep = ef::rigidity_scan(cone, series, 2.0);
    g.req(rep.rigid, "rigidity scan reports " +
                         (rep.dominant.empty() ? std::string("non-rigid")
                                               : "violation in " + rep.dominant));

    // Second-order convergence: halving h divides the tI error by ~4.
    const double e1 = cone_ti_err(2001, times);
    const double e2 = cone_ti_err(4001, times);
    const double ratio = e1 / e2;
    g.req(ratio >= 3.5 && ratio <= 4.5, "h-halving ratio " + num(ratio));
    return g;
}

// ---------------------------------------------------------------------------
// 03: flat-circle suite: EDI, W_N monotone, entropy-power concavity, and the
// two derivative-route agreements.
Gate crit03(const Bundle& b) {
    Gate g;
    const auto edi = ef::check_edi(b.series, 1e-6);
    g.req(edi.status == ef::CheckStatus::pass,
          "EDI worst margin " + num(edi.worst_margin));
    const auto wmono = ef::check_w_monotone(b.series, ef::WEntropyKind::w_n, 1e-6);
    g.req(wmono.status == ef::CheckStatus::pass,
          "W_N monotone worst margin " + num(wmono.worst_margin));
    const auto conc = ef::check_entropy_power_concavity(b.series, 1e-6);
    g.req(conc.status == ef::CheckStatus::pass,
          "concavity worst margin " + num(conc.worst_margin));

    // First route: dH/dt = I, relative 1e-4 on the Richardson interior.
    const std::size_t n = b.series.size();
    for (std::size_t j = 2; j + 3 < n; ++j) {
        const double rel =
            std::abs(b.series.dH_fd[j] - b.series.I[j]) / std::abs(b.series.I[j]);
        g.req(rel <= 1e-4, "dH vs I relative " + num(rel) + " at t = " +
                               num(b.series.t[j]));
    }
    // Second route: d2H/dt2 = -2 gamma2, relative 1e-3 on the interior.
    for (std::size_t j = 2; j + 3 < n; ++j) {
        const double rel = std::abs(b.series.d2H_fd[j] + 2.0 * b.series.gamma2[j]) /
                           std::abs(b.series.d2H_fd[j]);
        g.req(rel <= 1e-3, "d2H vs -2*gamma2 relative " + num(rel) + " at t = " +
                               num(b.series.t[j]));
    }
    return g;
}

// ---------------------------------------------------------------------------
// 04: positive curvature: EDI(K=1, N=2), sharp Fisher envelope, W_NK
// monotone, and the three-term dissipation decomposition against dW/dt.
Gate crit04(const Bundle& b) {
    Gate g;
    const auto edi = ef::check_edi(b.series, 1e-6);
    g.req(edi.status == ef::CheckStatus::pass,
          "EDI worst margin " + num(edi.worst_margin));

    const auto fisher = ef::check_fisher_bound(b.series, 1e-6);
    g.req(fisher.status == ef::CheckStatus::pass,
          "Fisher bound worst margin " + num(fisher.worst_margin));
    for (std::size_t j = 0; j < b.series.size(); ++j)
        if (b.series.t[j] >= 0.1)
            g.req(fisher.margins[j] > 0.0,
                  "Fisher margin not strictly positive at t = " + num(b.series.t[j]));

    const auto wmono = ef::check_w_monotone(b.series, ef::WEntropyKind::w_nk, 1e-6);
    g.req(wmono.status == ef::CheckStatus::pass,
          "W_NK monotone worst margin " + num(wmono.worst_margin));

    // T1 + T2 + T3 = -dW_NK/dt to 1e-3 relative on the Richardson interior.
    const ef::DerivativeEstimates dw =
        ef::estimate_derivatives(b.series.t, b.series.W_NK);
    for (std::size_t j = 2; j + 3 < b.series.size(); ++j) {
        const double total = b.series.T1[j] + b.series.T2[j] + b.series.T3[j];
        const double rel = std::abs(total + dw.dH[j]) / std::abs(dw.dH[j]);
        g.req(rel <= 1e-3, "decomposition vs dW/dt relative " + num(rel) +
                               " at t = " + num(b.series.t[j]));
    }
    return g;
}

// ---------------------------------------------------------------------------
// 05: entropy-power second-derivative identity on all three scenarios.
Gate crit05(const Bundle& circle) {
    Gate g;
    // Gaussian and cone kernels: N(t) is linear in t, so both sides of the
    // identity vanish; finite differences of the exact N(t) on a uniform grid
    // must sit within the absolute tolerance.
    for (auto kind : {ef::ClosedFormModel::Kind::euclidean,
                      ef::ClosedFormModel::Kind::cone_vertex}) {
        const double N = kind == ef::ClosedFormModel::Kind::euclidean ? 1.0 : 2.0;
        const auto model = ef::heat_kernel_closed_form(kind, N);
        std::vector<double> times(61);
        for (int j = 0; j < 61; ++j) times[j] = 0.1 + 0.9 * j / 60.0;
        std::vector<double> P(times.size());
        for (std::size_t j = 0; j < times.size(); ++j)
            P[j] = model.entropy_power(times[j]);
        const ef::DerivativeEstimates de = ef::estimate_derivatives(times, P);
        for (std::size_t j = 0; j < times.size(); ++j)
            g.req(std::abs(de.d2H[j]) <= 1e-4,
                  "second derivative of linear entropy power = " + num(de.d2H[j]));
    }
    // Circle: the full grid identity with the curvature-corrected right side.
    const auto niw =
        ef::check_niw_identity(circle.space, circle.flow, circle.series, 1e-3, 1e-4);
    g.req(niw.status == ef::CheckStatus::pass,
          "identity residual margin " + num(niw.worst_margin) + " (" + niw.note + ")");
    return g;
}

// ---------------------------------------------------------------------------
// 06: sharpness of the dimensional log-Sobolev bound.
Gate crit06() {
    Gate g;
    // Line, kappa = 1: the Gaussian saturates the bound exactly.
    const auto model =
        ef::heat_kernel_closed_form(ef::ClosedFormModel::Kind::euclidean, 1);
    for (double t : {0.25, 1.0}) {
        const double margin =
            0.5 * std::log(model.fisher_information(t) /
                           (2.0 * kPi * std::exp(1.0))) +
            model.shannon_entropy(t);
        g.req(std::abs(margin) <= 1e-6, "gaussian margin " + num(margin));
    }

    // Two-bump mixture sits strictly inside the bound.
    const auto line = make(ef::Preset::cone_full_line, 1, 1, 4001, 12.0);
    std::vector<double> mix(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        const double x = line.x[i];
        mix[i] = std::exp(-(x + 2.0) * (x + 2.0)) + std::exp(-(x - 2.0) * (x - 2.0));
    }
    ef::normalize_density(line, mix);
    const auto stam = ef::check_stam_lsi(line, mix, 1.0, 1.0, 1e-6);
    g.req(stam.status == ef::CheckStatus::pass && stam.worst_margin > 0.05,
          "mixture margin " + num(stam.worst_margin));

    // Cone: measured volume-ratio constant and the resulting sharp constant.
    const auto cone = make(ef::Preset::cone_half_line, 2, 1, 4001, 10.0);
    const ef::RatioEstimate kappa = ef::volume_ratio_kappa(cone, 0.0);
    g.req(kappa.converged, "volume ratio did not converge");
    g.req(std::abs(kappa.value - 1.0 / (2.0 * kPi)) <= 1e-3,
          "kappa = " + num(kappa.value));

    const auto cv =
        ef::heat_kernel_closed_form(ef::ClosedFormModel::Kind::cone_vertex, 2);
    const ef::Density d = cv.sample(cone, 0.5);
    const double H = ef::shannon_entropy(cone, d.u);
    const double I = ef::fisher_information(cone, d.u);
    const double product = I * ef::entropy_power_value(H, 2.0);
    const double two_e = 2.0 * std::exp(1.0);
    g.req(std::abs(product - two_e) <= 1e-3,
          "I*N(power) - 2e = " + num(product - two_e));
    const double gamma =
        2.0 * kPi * 2.0 * std::exp(1.0) * kappa.value;  // 2 pi N e kappa^{2/N}
    g.req(std::abs(gamma - two_e) <= 1e-3, "gamma from kappa - 2e = " + num(gamma - two_e));
    return g;
}

// ---------------------------------------------------------------------------
// 07: the optimizer lands on the Gaussian with mu near zero, quickly.
Gate crit07() {
    Gate g;
    const auto start = std::chrono::steady_clock::now();
    const auto line = make(ef::Preset::cone_full_line, 1, 1, 2000, 10.0);
    ef::OptProblem prob;
    prob.N = 1.0;
    prob.K = 0.0;
    prob.t = 0.25;
    prob.grad_tol = 1e-5;
    prob.max_iter = 5000;
    const ef::OptResult res = ef::minimize_w_entropy(line, prob);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    g.req(res.converged, "optimizer did not converge");
    g.req(std::abs(res.mu_value) <= 2e-2, "mu = " + num(res.mu_value));
    g.req(res.el_residual <= 1e-4, "EL residual " + num(res.el_residual));
    double worst = 0.0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const double x = line.x[i];
        const double target = std::exp(-x * x) / std::sqrt(kPi);  // variance 2t = 1/2
        worst = std::max(worst, std::abs(res.minimizer[i] - target));
    }
    g.req(worst <= 1e-2, "sup distance to gaussian " + num(worst));
    g.req(secs <= 120.0, "runtime " + num(secs) + " s");
    return g;
}

// ---------------------------------------------------------------------------
// 08: spectral and Crank-Nicolson agree and both conserve mass.
Gate crit08() {
    Gate g;
    const auto s = make(ef::Preset::circle, 1, 1, 256, 2.0 * kPi);
    ef::Density d0;
    d0.u.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = s.x[i];
        d0.u[i] = 1.0 + 0.5 * std::cos(x) + 0.2 * std::cos(2.0 * x) +
                  0.1 * std::sin(3.0 * x);
    }
    ef::normalize_density(s, d0.u);
    ef::FlowConfig sp;
    sp.solver = ef::SolverKind::spectral;
    ef::FlowConfig cn;
    cn.solver = ef::SolverKind::crank_nicolson;
    cn.dt = 1e-3;
    const std::vector<double> times{0.25, 0.5, 1.0};
    const ef::FlowResult a = ef::solve_flow(s, d0, times, sp);
    const ef::FlowResult b = ef::solve_flow(s, d0, times, cn);
    double worst = 0.0;
    const std::size_t last = times.size() - 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        worst = std::max(worst,
                         std::abs(a.densities[last].u[i] - b.densities[last].u[i]));
    g.req(worst <= 1e-4, "solver sup distance " + num(worst) + " at t = 1");
    for (std::size_t j = 0; j < times.size(); ++j) {
        g.req(std::abs(a.diagnostics[j].mass_drift) <= 1e-8,
              "spectral mass drift " + num(a.diagnostics[j].mass_drift));
        g.req(std::abs(b.diagnostics[j].mass_drift) <= 1e-8,
              "cn mass drift " + num(b.diagnostics[j].mass_drift));
    }
    return g;
}

// ---------------------------------------------------------------------------
// 09: negative control. A deliberately false curvature hypothesis must be
// detected as a failure with a decisively negative margin.
Gate crit09() {
    Gate g;
    const auto s = make(ef::Preset::circle, 1, 1, 256, 2.0 * kPi);
    ef::Density d0;
    d0.u.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        d0.u[i] = 1.0 + 0.8 * std::cos(s.x[i]);
    ef::normalize_density(s, d0.u);
    ef::FlowConfig cfg;
    const ef::FlowResult fr = ef::solve_flow(s, d0, logspace(0.01, 0.5, 33), cfg);
    const ef::FunctionalSeries series = ef::evaluate_series(s, fr, 1.0, 1.0);
    const auto edi = ef::check_edi(series, 1e-6);
    g.req(edi.status == ef::CheckStatus::fail, "false hypothesis not detected");
    g.req(edi.worst_margin <= -0.01,
          "violation margin only " + num(edi.worst_margin));
    return g;
}

// ---------------------------------------------------------------------------
// 10: optimal transport layer: exact translation cost, Gaussian variance
// cost, and the transport inequalities on both curved scenarios.
Gate crit10(const Bundle& circle, const Bundle& sphere) {
    Gate g;
    // Translation by 3.0 = 300 grid steps: cost must be exact.
    const auto line = make(ef::Preset::cone_full_line, 1, 1, 2001, 10.0);
    std::vector<double> u0(line.size()), u1(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        const double x = line.x[i];
        u0[i] = std::exp(-(x + 1.0) * (x + 1.0));
        u1[i] = std::exp(-(x - 2.0) * (x - 2.0));
    }
    ef::normalize_density(line, u0);
    ef::normalize_density(line, u1);
    const double w2t = ef::w2_distance_1d(line, u0, u1);
    g.req(std::abs(w2t - 3.0) <= 1e-8, "translation cost " + num(w2t));

    // Gaussians of variance 2*t0 and 2*t1: cost |sqrt(2t0) - sqrt(2t1)|.
    const auto wide = make(ef::Preset::cone_full_line, 1, 1, 8001, 12.0);
    std::vector<double> g0(wide.size()), g1(wide.size());
    const double t0 = 0.25, t1 = 0.5;
    for (std::size_t i = 0; i < wide.size(); ++i) {
        const double x = wide.x[i];
        g0[i] = std::exp(-x * x / (4.0 * t0));
        g1[i] = std::exp(-x * x / (4.0 * t1));
    }
    ef::normalize_density(wide, g0);
    ef::normalize_density(wide, g1);
    const double w2g = ef::w2_distance_1d(wide, g0, g1);
    const double expect = std::abs(std::sqrt(2.0 * t0) - std::sqrt(2.0 * t1));
    g.req(std::abs(w2g - expect) <= 1e-5,
          "variance cost error " + num(w2g - expect));

    // Transport inequalities along the two flows.
    auto nearest = [](const std::vector<double>& ts, double t) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < ts.size(); ++j)
            if (std::abs(ts[j] - t) < std::abs(ts[best] - t)) best = j;
        return best;
    };
    const std::size_t c0 = nearest(circle.flow.times, 0.2);
    const std::size_t c1 = nearest(circle.flow.times, 0.5);
    const auto hwi_c = ef::check_hwi_type(circle.space, circle.flow.densities[c0].u,
                                          circle.flow.densities[c1].u, 1e-9);
    g.req(hwi_c.status == ef::CheckStatus::pass,
          "HWI margin on circle " + num(hwi_c.worst_margin));
    const auto eks_c = ef::check_eks_distortion(
        circle.space, circle.flow.densities[c0].u, circle.flow.densities[c1].u,
        1.0, 0.0, 1e-9);
    g.req(eks_c.status == ef::CheckStatus::pass,
          "distortion margin on circle " + num(eks_c.worst_margin));

    const std::size_t s0 = nearest(sphere.flow.times, 0.1);
    const std::size_t s1 = nearest(sphere.flow.times, 0.4);
    const auto hwi_s = ef::check_hwi_type(sphere.space, sphere.flow.densities[s0].u,
                                          sphere.flow.densities[s1].u, 1e-9);
    g.req(hwi_s.status == ef::CheckStatus::pass,
          "HWI margin on sphere " + num(hwi_s.worst_margin));
    const auto eks_s = ef::check_eks_distortion(
        sphere.space, sphere.flow.densities[s0].u, sphere.flow.densities[s1].u,
        2.0, 1.0, 1e-9);
    g.req(eks_s.status == ef::CheckStatus::pass,
          "distortion margin on sphere " + num(eks_s.worst_margin));
    return g;
}

}  // namespace

int main() {
    const Bundle circle = circle_bundle(0.0);
    const Bundle sphere = sphere_bundle();

    report(1, "gaussian saturation (closed form)", crit01());
    report(2, "cone vertex-kernel rigidity", crit02());
    report(3, "flat-circle monotonicity suite", crit03(circle));
    report(4, "positive-curvature suite", crit04(sphere));
    report(5, "entropy-power identity", crit05(circle));
    report(6, "sharp log-Sobolev constant", crit06());
    report(7, "log-Sobolev optimizer", crit07());
    report(8, "solver cross-validation", crit08());
    report(9, "negative control detects false hypothesis", crit09());
    report(10, "optimal transport layer", crit10(circle, sphere));

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
