#include "entroflow/heatflow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "entroflow/errors.hpp"
#include "entroflow/kernels.hpp"

namespace entroflow {

namespace {

// mu-weights W_i = w_i m_i of the trapezoid inner product.
std::vector<double> mu_weights(const WeightedSpace1D& s) {
    std::vector<double> W(s.size());
    const auto& k = kernels::ops();
    k.vmul(W.data(), s.w.data(), s.m.data(), s.size());
    return W;
}

// Stiffness action (T u)_i = sum over faces at i of mface (u_i - u_nbr)/h.
// T is positive semidefinite with zero column sums; Lap = -W^{-1} T.
void stiffness_apply(const WeightedSpace1D& s, const double* u, double* out) {
    const std::size_t M = s.size();
    const double invh = 1.0 / s.h;
    std::fill(out, out + M, 0.0);
    const std::size_t F = s.mface.size();
    for (std::size_t f = 0; f < F; ++f) {
        const std::size_t i = f;
        const std::size_t j = (f + 1 < M) ? f + 1 : 0;  // wrap only on periodic
        const double flux = s.mface[f] * invh * (u[i] - u[j]);
        out[i] += flux;
        out[j] -= flux;
    }
}

void validate_times(const std::vector<double>& times) {
    if (times.empty())
        throw SchemaError("times", "times must be a nonempty increasing list of positive values");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw SchemaError("times", "times must be positive and finite");
        if (!(t > prev))
            throw SchemaError("times", "times must be strictly increasing");
        prev = t;
    }
}

FlowDiagnostics diagnose(const WeightedSpace1D& s, const std::vector<double>& u) {
    FlowDiagnostics d;
    d.mass_drift = mass_mu(s, u) - 1.0;
    d.min_value = *std::min_element(u.begin(), u.end());
    d.boundary_mass = s.boundary_mass_fraction(u);
    return d;
}

// Clamp tiny Galerkin/roundoff negatives after diagnostics are recorded.
void clamp_negatives(std::vector<double>& u) {
    for (double& v : u) v = std::max(v, 0.0);
}

}  // namespace

double mass_mu(const WeightedSpace1D& space, const std::vector<double>& u) {
    if (u.size() != space.size())
        throw NumericError("density length does not match grid size");
    std::vector<double> W = mu_weights(space);
    return kernels::ops().dot2(W.data(), u.data(), u.size());
}

void normalize_density(const WeightedSpace1D& space, std::vector<double>& u) {
    const double mass = mass_mu(space, u);
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw NumericError("density has nonpositive or nonfinite mass");
    const double inv = 1.0 / mass;
    for (double& v : u) v *= inv;
}

void apply_laplacian(const WeightedSpace1D& space, const double* u, double* out) {
    const std::size_t M = space.size();
    stiffness_apply(space, u, out);
    for (std::size_t i = 0; i < M; ++i)
        out[i] = -out[i] / (space.w[i] * space.m[i]);
}

SpectralBasis eigendecompose(const WeightedSpace1D& space, int mode_count) {
    const std::size_t M = space.size();
    if (mode_count < 1 || static_cast<std::size_t>(mode_count) > M)
        throw SchemaError("modes", "mode count must lie in [1, grid_size]");

    std::vector<double> W = mu_weights(space);
    std::vector<double> sqrtW(M), invsqrtW(M);
    for (std::size_t i = 0; i < M; ++i) {
        if (!(W[i] > 0.0))
            throw NumericError("degenerate mu-weight in eigendecomposition");
        sqrtW[i] = std::sqrt(W[i]);
        invsqrtW[i] = 1.0 / sqrtW[i];
    }

    const double invh = 1.0 / space.h;
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;

    if (space.periodic()) {
        // Periodic coupling makes S tridiagonal-plus-corners; use the dense
        // symmetric solver (grids here are a few hundred nodes).
        Eigen::MatrixXd S = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(M),
                                                  static_cast<Eigen::Index>(M));
        for (std::size_t f = 0; f < M; ++f) {
            const std::size_t i = f;
            const std::size_t j = (f + 1 < M) ? f + 1 : 0;
            const double c = space.mface[f] * invh;
            S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += c / W[i];
            S(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += c / W[j];
            const double off = -c * invsqrtW[i] * invsqrtW[j];
            S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += off;
            S(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) += off;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
        if (solver.info() != Eigen::Success)
            throw NumericError("eigensolver failed on periodic grid");
        evals = solver.eigenvalues();
        evecs = solver.eigenvectors();
    } else {
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(M));
        Eigen::VectorXd sub = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(M) - 1);
        for (std::size_t f = 0; f + 1 < M; ++f) {
            const double c = space.mface[f] * invh;
            diag(static_cast<Eigen::Index>(f)) += c / W[f];
            diag(static_cast<Eigen::Index>(f + 1)) += c / W[f + 1];
            sub(static_cast<Eigen::Index>(f)) = -c * invsqrtW[f] * invsqrtW[f + 1];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success)
            throw NumericError("tridiagonal eigensolver failed");
        evals = solver.eigenvalues();
        evecs = solver.eigenvectors();
    }

    if (evals(0) < -1e-8)
        throw NumericError("discrete Laplacian produced a significantly negative eigenvalue");

    SpectralBasis basis;
    basis.mode_count = mode_count;
    basis.grid_size = M;
    basis.lambda.resize(static_cast<std::size_t>(mode_count));
    basis.phi.resize(static_cast<std::size_t>(mode_count) * M);
    for (int k = 0; k < mode_count; ++k) {
        basis.lambda[static_cast<std::size_t>(k)] = evals(k);
        // Fix the sign so the largest-magnitude entry is positive.
        Eigen::Index imax = 0;
        evecs.col(k).cwiseAbs().maxCoeff(&imax);
        const double sign = evecs(imax, k) >= 0.0 ? 1.0 : -1.0;
        double* dst = basis.phi.data() + static_cast<std::size_t>(k) * M;
        for (std::size_t i = 0; i < M; ++i)
            dst[i] = sign * evecs(static_cast<Eigen::Index>(i), k) * invsqrtW[i];
    }
    return basis;
}

FlowResult propagate_spectral(const WeightedSpace1D& space,
                              const SpectralBasis& basis, const Density& rho0,
                              const std::vector<double>& times) {
    validate_times(times);
    const std::size_t M = space.size();
    if (rho0.u.size() != M || basis.grid_size != M)
        throw NumericError("density/basis size does not match grid size");
    const double mass0 = mass_mu(space, rho0.u);
    if (std::abs(mass0 - 1.0) > 1e-6)
        throw NumericError("initial density is not normalized");

    std::vector<double> W = mu_weights(space);
    const auto& k = kernels::ops();

    const int K = basis.mode_count;
    std::vector<double> coeff(static_cast<std::size_t>(K));
    double captured = 0.0;
    for (int j = 0; j < K; ++j) {
        coeff[static_cast<std::size_t>(j)] =
            k.dot3(W.data(), rho0.u.data(), basis.mode(j), M);
        captured += coeff[static_cast<std::size_t>(j)] * coeff[static_cast<std::size_t>(j)];
    }
    const double energy = k.dot3(W.data(), rho0.u.data(), rho0.u.data(), M);

    FlowResult result;
    result.times = times;
    result.solver = SolverKind::spectral;
    result.dropped_energy =
        energy > 0.0 ? std::max(0.0, (energy - captured) / energy) : 0.0;
    result.densities.reserve(times.size());
    result.diagnostics.reserve(times.size());

    for (double t : times) {
        Density d;
        d.time_tag = t;
        d.u.assign(M, 0.0);
        for (int j = 0; j < K; ++j) {
            const double a = coeff[static_cast<std::size_t>(j)] *
                             std::exp(-basis.lambda[static_cast<std::size_t>(j)] * t);
            if (a != 0.0) k.axpy(d.u.data(), a, basis.mode(j), M);
        }
        result.diagnostics.push_back(diagnose(space, d.u));
        clamp_negatives(d.u);
        result.densities.push_back(std::move(d));
    }
    return result;
}

namespace {

// One Crank-Nicolson substep: solve (I + (dt/2) W^{-1} T) unew = rhs where
// rhs = (I - (dt/2) W^{-1} T) u. The matrix is strictly diagonally dominant.
void cn_substep(const WeightedSpace1D& s, const std::vector<double>& W,
                double dt, std::vector<double>& u, std::vector<double>& scratch) {
    const std::size_t M = s.size();
    const double invh = 1.0 / s.h;
    const double half = 0.5 * dt;

    stiffness_apply(s, u.data(), scratch.data());
    std::vector<double> rhs(M);
    for (std::size_t i = 0; i < M; ++i)
        rhs[i] = u[i] - half * scratch[i] / W[i];

    // Assemble B = I + (dt/2) W^{-1} T as tridiagonal rows (+ corners when
    // periodic). Row i: sub a_i, diag b_i, super c_i.
    std::vector<double> a(M, 0.0), b(M, 1.0), c(M, 0.0);
    double corner_top = 0.0, corner_bot = 0.0;  // B(0,M-1), B(M-1,0)
    const std::size_t F = s.mface.size();
    for (std::size_t f = 0; f < F; ++f) {
        const std::size_t i = f;
        const std::size_t j = (f + 1 < M) ? f + 1 : 0;
        const double cf = s.mface[f] * invh;
        b[i] += half * cf / W[i];
        b[j] += half * cf / W[j];
        if (j == i + 1) {
            c[i] -= half * cf / W[i];
            a[j] -= half * cf / W[j];
        } else {  // periodic wrap face: i = M-1, j = 0
            corner_top = -half * cf / W[j];  // B(0, M-1)
            corner_bot = -half * cf / W[i];  // B(M-1, 0)
        }
    }

    auto thomas = [&](std::vector<double>& d0, std::vector<double>& rhs0) {
        // In-place Thomas; d0 = diag copy, rhs0 = rhs copy -> solution.
        for (std::size_t i = 1; i < M; ++i) {
            const double wfac = a[i] / d0[i - 1];
            d0[i] -= wfac * c[i - 1];
            rhs0[i] -= wfac * rhs0[i - 1];
        }
        rhs0[M - 1] /= d0[M - 1];
        for (std::size_t i = M - 1; i-- > 0;)
            rhs0[i] = (rhs0[i] - c[i] * rhs0[i + 1]) / d0[i];
    };

    if (!s.periodic()) {
        std::vector<double> d0 = b;
        thomas(d0, rhs);
        u = rhs;
        return;
    }

    // Sherman-Morrison closure: B = Btri + p q^T with p = (gp,0,...,0,cb)^T,
    // q = (1,0,...,0,ct/gp)^T, gp = -b[0]; Btri has modified corners on the
    // diagonal.
    const double ct = corner_top, cb = corner_bot;
    const double gp = -b[0];
    std::vector<double> bmod = b;
    bmod[0] -= gp;
    bmod[M - 1] -= ct * cb / gp;

    std::vector<double> y = rhs, d0 = bmod;
    thomas(d0, y);
    std::vector<double> pvec(M, 0.0);
    pvec[0] = gp;
    pvec[M - 1] = cb;
    std::vector<double> z = pvec;
    d0 = bmod;
    thomas(d0, z);

    const double qy = y[0] + (ct / gp) * y[M - 1];
    const double qz = z[0] + (ct / gp) * z[M - 1];
    const double factor = qy / (1.0 + qz);
    for (std::size_t i = 0; i < M; ++i) u[i] = y[i] - factor * z[i];
}

}  // namespace

Density step_crank_nicolson(const WeightedSpace1D& space, const Density& rho,
                            double dt, int substeps) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw SchemaError("dt", "dt must be positive and finite");
    if (substeps < 1) throw SchemaError("dt", "substep count must be >= 1");
    const std::size_t M = space.size();
    if (rho.u.size() != M)
        throw NumericError("density length does not match grid size");

    std::vector<double> W = mu_weights(space);
    Density out;
    out.u = rho.u;
    std::vector<double> scratch(M);
    for (int s = 0; s < substeps; ++s)
        cn_substep(space, W, dt, out.u, scratch);
    out.time_tag = rho.time_tag >= 0.0 ? rho.time_tag + dt * substeps : -1.0;
    return out;
}

FlowResult solve_flow(const WeightedSpace1D& space, const Density& rho0,
                      const std::vector<double>& times, const FlowConfig& config) {
    validate_times(times);
    const std::size_t M = space.size();
    if (rho0.u.size() != M)
        throw NumericError("density length does not match grid size");

    if (config.solver == SolverKind::closed_form)
        throw NumericError(
            "closed_form is an analytic model, not a grid solver; "
            "sample it instead of flowing");

    if (config.solver == SolverKind::spectral) {
        int K = config.modes;
        if (K <= 0) K = std::max(1, static_cast<int>(M) / 4);
        K = std::min<int>(K, static_cast<int>(M));
        SpectralBasis basis = eigendecompose(space, K);
        return propagate_spectral(space, basis, rho0, times);
    }

    // Crank-Nicolson march from t = 0 through the requested times; each gap
    // is divided into whole substeps no longer than config.dt.
    if (!(config.dt > 0.0) || !std::isfinite(config.dt))
        throw SchemaError("dt", "dt must be positive and finite");

    FlowResult result;
    result.times = times;
    result.solver = SolverKind::crank_nicolson;
    result.densities.reserve(times.size());
    result.diagnostics.reserve(times.size());

    Density cur;
    cur.u = rho0.u;
    cur.time_tag = 0.0;
    const double mass0 = mass_mu(space, cur.u);
    if (std::abs(mass0 - 1.0) > 1e-6)
        throw NumericError("initial density is not normalized");

    double tprev = 0.0;
    std::vector<double> W = mu_weights(space);
    std::vector<double> scratch(M);
    for (double t : times) {
        const double gap = t - tprev;
        const int steps = std::max(1, static_cast<int>(std::ceil(gap / config.dt - 1e-12)));
        const double dt_local = gap / steps;
        for (int s = 0; s < steps; ++s)
            cn_substep(space, W, dt_local, cur.u, scratch);
        cur.time_tag = t;
        tprev = t;
        Density snap = cur;
        result.diagnostics.push_back(diagnose(space, snap.u));
        clamp_negatives(snap.u);
        result.densities.push_back(std::move(snap));
    }
    return result;
}

}  // namespace entroflow
