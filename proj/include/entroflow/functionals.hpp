// Entropy functionals of a density u along the weighted heat flow: Shannon
// entropy, Fisher information, entropy power, the scale-normalized entropies
// H_N / H_{N,K}, the W-entropies W_N / W_{N,K} and their dissipation, the
// curvature-corrected Wang and Ye entropies, and the Gamma_2 integral.
//
// Quadrature convention: nodes with u below 1e-14 * max(u) are excluded and
// their mu-mass reported; derivative-based integrands additionally exclude
// neighbours of excluded nodes because their log u stencils are meaningless.
#pragma once

#include <vector>

#include "entroflow/heatflow.hpp"
#include "entroflow/space.hpp"

namespace entroflow {

struct QuadDiagnostics {
    double excluded_mass = 0.0;   // mu-mass of nodes below the positivity floor
    double boundary_share = 0.0;  // fraction of |integrand| in truncation bands
    bool forms_agree = true;      // gradient vs laplacian Fisher forms
};

// -int u log u dmu with the 0 log 0 = 0 convention.
double shannon_entropy(const WeightedSpace1D& space, const std::vector<double>& u);

enum class FisherForm {
    gradient,   // face-based Dirichlet form sum mface/h (du)(d log u); exactly
                // the dissipation -dH/dt of the discrete flow, termwise >= 0
    laplacian,  // nodal -sum w m u (f'' - V'f') with f = log u
};

double fisher_information(const WeightedSpace1D& space, const std::vector<double>& u,
                          FisherForm form = FisherForm::gradient,
                          QuadDiagnostics* diag = nullptr);

// int [ (f'')^2 + V'' (f')^2 ] u dmu with f = log u; equals -H''/2 along the
// flow when the weight is smooth.
double gamma2_integral(const WeightedSpace1D& space, const std::vector<double>& u,
                       QuadDiagnostics* diag = nullptr);

// Pointwise algebraic combinations.
double entropy_power_value(double H, double N);           // exp(2H/N)
double h_n_value(double H, double N, double t);           // H - (N/2)log(4 pi e t)
double h_nk_value(double H, double N, double K, double t);
double w_n_value(double H, double I, double N, double t); // t I + H_N (additive form)
double w_nk_value(double H, double I, double N, double K, double t);

// Curvature-corrected entropies built from H and dH/dt (resp. I).
double wang_entropy_value(double H, double dH, double N, double K, double t);
double ye_entropy_value(double H, double I, double N, double K, double t, double a);

// Signed dissipation dW_{N,K}/dt via the Gamma_2 route:
// -2t int [Gamma_2(f) + (1/t - K) Lap f + (N/4)(1/t - K)^2 - K (f')^2] u dmu.
double dwnk_dt_gamma2(const WeightedSpace1D& space, const std::vector<double>& u,
                      double N, double K, double t);

struct WnkDecomposition {
    double T1 = 0.0;  // 2t int (f'' + (1/t - K)/2)^2 u dmu            >= 0
    double T2 = 0.0;  // 2t int (Ric_{N,1} - K) (f')^2 u dmu           sign of Ric-K
    double T3 = 0.0;  // (2t/(N-1)) int (V'f' - (N-1)(1/t - K)/2)^2 u  >= 0
    double total() const { return T1 + T2 + T3; }  // = -dW_{N,K}/dt
};

// N = 1 requires a constant weight (the T3 quotient degenerates otherwise).
WnkDecomposition wnk_decomposition(const WeightedSpace1D& space,
                                   const std::vector<double>& u, double N,
                                   double K, double t);

struct DerivativeEstimates {
    std::vector<double> dH;   // dH/dt
    std::vector<double> d2H;  // d2H/dt2
};

// Finite-difference derivatives of a sampled curve H(t). Uniform-in-log-t
// grids are differentiated in s = log t with Richardson refinement, uniform
// grids directly, anything else with local 3-point formulas.
DerivativeEstimates estimate_derivatives(const std::vector<double>& times,
                                         const std::vector<double>& H);

struct FunctionalSeries {
    double N = 1.0, K = 0.0, a = 0.0;
    std::vector<double> t, H, I, H_N, H_NK, entropy_power, W_N, W_NK;
    std::vector<double> wang_WK, ye_Ya, gamma2, T1, T2, T3, dH_fd, d2H_fd;
    std::vector<QuadDiagnostics> quad;
    std::size_t size() const { return t.size(); }
};

FunctionalSeries evaluate_series(const WeightedSpace1D& space, const FlowResult& flow,
                                 double N, double K, double a = 0.0);

}  // namespace entroflow
