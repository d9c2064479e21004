// Inequality and identity checks along a flow. Every check reports a signed
// margin per sample with the convention: margin >= -tolerance means the
// sample passes, so negative worst margins quantify genuine violations.
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "entroflow/functionals.hpp"
#include "entroflow/heatflow.hpp"
#include "entroflow/space.hpp"

namespace entroflow {

enum class CheckStatus { pass, fail, inconclusive };

const char* status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    double worst_margin = 0.0;
    double worst_t = std::numeric_limits<double>::quiet_NaN();
    double worst_x = std::numeric_limits<double>::quiet_NaN();  // NaN: not pointwise
    double tolerance = 0.0;
    std::vector<double> margins;  // one per sampled time (or single entry)
    std::string note;
};

// Entropy differential inequality H'' + (2/N)(H')^2 + 2K H' <= 0.
// margin = -(lhs); fails wherever the flow violates the claimed curvature.
CheckResult check_edi(const FunctionalSeries& series, double tol);

enum class WEntropyKind { w_n, w_nk, wang, ye };

// d/dt of the chosen W-entropy column must be <= 0; margin = -dW/dt.
CheckResult check_w_monotone(const FunctionalSeries& series, WEntropyKind kind,
                             double tol);

// Entropy-power concavity N'' + 2K N' <= 0; margin = -(lhs).
CheckResult check_entropy_power_concavity(const FunctionalSeries& series,
                                          double tol);

// Second-derivative identity linking entropy power, Fisher information and
// the W-entropy dissipation; margin = tol_eff - |residual| with
// tol_eff = max(tol_abs, tol_rel * |N''|), tolerance field = 0.
CheckResult check_niw_identity(const WeightedSpace1D& space, const FlowResult& flow,
                               const FunctionalSeries& series, double tol_rel,
                               double tol_abs);

// Pointwise gradient estimate sup_x [ |grad f|^2 - alpha df/dt ] <= bound(t)
// for f = log u; alpha = 1 requires K = 0. Boundary bands and floored nodes
// are excluded from the sup.
CheckResult check_li_yau(const WeightedSpace1D& space, const FlowResult& flow,
                         double N, double K, double alpha, double tol);

// Fisher decay I(t) <= N K / (e^{2Kt} - 1)  (N/2t at K = 0); margin = bound - I.
CheckResult check_fisher_bound(const FunctionalSeries& series, double tol);

// Quadratic Wasserstein distance between two densities on the space; exact
// quantile coupling of the piecewise-constant cell measures (circle grids
// take the minimum over 512 cut points).
double w2_distance_1d(const WeightedSpace1D& space, const std::vector<double>& u0,
                      const std::vector<double>& u1);

// |H(u0) - H(u1)| <= max(sqrt I0, sqrt I1) * W2(u0, u1).
CheckResult check_hwi_type(const WeightedSpace1D& space, const std::vector<double>& u0,
                           const std::vector<double>& u1, double tol);

// Distorted entropy-power ratio bound with kappa = K/N:
//   U_N(u1)/U_N(u0) <= c_kappa(W2) + (1/N) s_kappa(W2) sqrt(I(u0)).
// Returns inconclusive when kappa W2^2 >= pi^2 (the bound is vacuous).
CheckResult check_eks_distortion(const WeightedSpace1D& space,
                                 const std::vector<double>& u0,
                                 const std::vector<double>& u1, double N, double K,
                                 double tol);

// Sharp log-Sobolev / Stam margin (N/2) log(I/gamma_N) + H >= 0 with
// gamma_N = 2 pi N e kappa^{2/N}; kappa is the asymptotic volume ratio.
CheckResult check_stam_lsi(const WeightedSpace1D& space, const std::vector<double>& u,
                           double N, double kappa, double tol);

struct RigidityOptions {
    double center = 0.0;
    std::vector<std::array<double, 2>> radius_pairs{{0.5, 1.0}, {1.0, 2.0}, {2.0, 4.0}};
    double tol_h = 1e-3;    // |N/2 - t I|
    double tol_w = 2e-3;    // range of W_N over the scan window
    double tol_lap = 1e-3;  // |Lap d^2 - 2N|
    double tol_bg = 1e-4;   // Bishop-Gromov ratio margin
};

struct RigidityReport {
    bool rigid = false;
    std::vector<CheckResult> parts;  // h_constant, w_constant, lap_dist_sq, bg_ratio
    std::string dominant;            // largest normalized violation when not rigid
};

// Equality-case detection: the four rigidity signatures must all hold to
// declare the space a Euclidean cone through this flow.
RigidityReport rigidity_scan(const WeightedSpace1D& space,
                             const FunctionalSeries& series, double N,
                             const RigidityOptions& opts = {});

}  // namespace entroflow
