// Direct minimization of the W-entropy at fixed t over unit-mass densities.
// Substituting rho = q^2 makes the objective a smooth scale-invariant
// functional of q; its stationarity condition is exactly the discrete
// Euler-Lagrange equation
//   -4t Lap q - 2 q log q - [N(1 - Kt/2)^2 + (N/2) log(4 pi t)] q = mu q
// whose multiplier mu equals the attained W_{N,K} value, so the optimizer
// doubles as a sharp log-Sobolev constant probe.
#pragma once

#include <vector>

#include "entroflow/space.hpp"

namespace entroflow {

struct OptProblem {
    double N = 1.0;
    double K = 0.0;
    double t = 0.25;
    std::vector<double> init;  // optional initial density; empty: heat kernel at t
    double step = 0.0;         // initial step size; 0 picks one automatically
    int max_iter = 500;
    double grad_tol = 1e-5;    // L2(mu) norm of the metric gradient
};

struct OptResult {
    std::vector<double> minimizer;  // density rho, unit mu-mass
    double mu_value = 0.0;          // EL multiplier = attained W_{N,K}
    double el_residual = 0.0;       // L2(mu) norm of the EL residual at exit
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;    // objective value per accepted iterate
};

OptResult minimize_w_entropy(const WeightedSpace1D& space, const OptProblem& prob);

// L2(mu) norm of the EL residual of a density rho at multiplier mu. With
// alt_coupling the t-curvature coupling in the constant term switches from
// (1 - Kt/2)^2 to (1 - K/(2t))^2 for side-by-side comparisons of the two
// published normalizations.
double el_residual(const WeightedSpace1D& space, const std::vector<double>& rho,
                   double N, double K, double t, double mu,
                   bool alt_coupling = false);

}  // namespace entroflow
