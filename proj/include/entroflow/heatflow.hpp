// Heat flow d/dt u = Lap u for the weighted Laplacian Lap f = f'' - V'f'.
// The discrete operator is divergence-form with zero-flux (or periodic)
// boundaries and is self-adjoint in the trapezoid L2(mu) inner product, so
// discrete mass Sum w_i m_i u_i is conserved exactly by both solvers.
#pragma once

#include <cstddef>
#include <vector>

#include "entroflow/space.hpp"

namespace entroflow {

struct Density {
    std::vector<double> u;   // probability density w.r.t. mu, nonnegative
    double time_tag = -1.0;  // < 0 means untagged
};

double mass_mu(const WeightedSpace1D& space, const std::vector<double>& u);
void normalize_density(const WeightedSpace1D& space, std::vector<double>& u);

// (Lap u)_i in divergence form: fluxes m_{i+1/2} (u_{i+1}-u_i)/h through
// faces, zero flux at non-periodic ends, divided by the node's mu-weight.
// out must not alias u.
void apply_laplacian(const WeightedSpace1D& space, const double* u, double* out);

struct SpectralBasis {
    std::vector<double> lambda;  // ascending; lambda[0] ~ 0
    std::vector<double> phi;     // mode_count x M row-major, L2(mu)-orthonormal
    int mode_count = 0;
    std::size_t grid_size = 0;
    const double* mode(int k) const {
        return phi.data() + static_cast<std::size_t>(k) * grid_size;
    }
};

// Sturm-Liouville reduction: symmetrize by W^{1/2} (W = diag(w m)), solve the
// symmetric tridiagonal (dense for periodic grids) eigenproblem, back-map.
SpectralBasis eigendecompose(const WeightedSpace1D& space, int mode_count);

enum class SolverKind { closed_form, spectral, crank_nicolson };

struct FlowDiagnostics {
    double mass_drift = 0.0;     // int u dmu - 1
    double min_value = 0.0;      // before clamping tiny negatives
    double boundary_mass = 0.0;  // mu-mass in the outer 5% truncation bands
};

struct FlowResult {
    std::vector<double> times;
    std::vector<Density> densities;
    SolverKind solver = SolverKind::spectral;
    std::vector<FlowDiagnostics> diagnostics;
    // Relative L2(mu) energy of rho0 outside the retained modes.
    double dropped_energy = 0.0;
};

// u(t) = sum_k e^{-lambda_k t} <rho0, phi_k>_mu phi_k at each requested time.
FlowResult propagate_spectral(const WeightedSpace1D& space,
                              const SpectralBasis& basis, const Density& rho0,
                              const std::vector<double>& times);

// (I - dt/2 Lap) u+ = (I + dt/2 Lap) u, tridiagonal solve per substep
// (Sherman-Morrison closure on periodic grids).
Density step_crank_nicolson(const WeightedSpace1D& space, const Density& rho,
                            double dt, int substeps);

struct FlowConfig {
    SolverKind solver = SolverKind::spectral;
    int modes = 0;    // spectral; 0 means grid_size/4
    double dt = 1e-3; // crank_nicolson
};

FlowResult solve_flow(const WeightedSpace1D& space, const Density& rho0,
                      const std::vector<double>& times, const FlowConfig& config);

}  // namespace entroflow
