#include "entroflow/lsiopt.hpp"

#include <algorithm>
#include <cmath>

#include "entroflow/errors.hpp"
#include "entroflow/heatflow.hpp"
#include "entroflow/kernels.hpp"

namespace entroflow {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// x log(x^2) with the 0 log 0 = 0 convention, stable for either sign of x.
inline double xlogx2(double x) {
    return x != 0.0 ? x * std::log(x * x) : 0.0;
}

struct Workspace {
    std::vector<double> W;      // mu-weights w m
    std::vector<double> Tq;     // stiffness action
    std::vector<double> grad;   // Euclidean gradient of the objective
    std::vector<double> dir;    // descent direction (metric gradient, negated)
    std::vector<double> trial;
};

// Stiffness action via the divergence-form Laplacian: Tq = -W Lap q.
void stiffness(const WeightedSpace1D& s, const std::vector<double>& q,
               const std::vector<double>& W, std::vector<double>& out) {
    apply_laplacian(s, q.data(), out.data());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -W[i] * out[i];
}

struct Objective {
    double A = 0.0;  // 4t q^T T q
    double B = 0.0;  // sum W q^2 log q^2
    double S = 0.0;  // sum W q^2
    double value = 0.0;
};

Objective evaluate(const WeightedSpace1D& s, const std::vector<double>& q,
                   const std::vector<double>& W, double t,
                   std::vector<double>& Tq) {
    Objective o;
    stiffness(s, q, W, Tq);
    const std::size_t M = q.size();
    for (std::size_t i = 0; i < M; ++i) {
        o.A += q[i] * Tq[i];
        const double q2 = q[i] * q[i];
        if (q2 > 0.0) o.B += W[i] * q2 * std::log(q2);
        o.S += W[i] * q2;
    }
    o.A *= 4.0 * t;
    o.value = (o.A - o.B) / o.S + std::log(o.S);
    return o;
}

double constant_term(double N, double K, double t, bool alt_coupling) {
    const double coup = alt_coupling ? 1.0 - K / (2.0 * t) : 1.0 - K * t / 2.0;
    return N * coup * coup + 0.5 * N * std::log(4.0 * kPi * t);
}

}  // namespace

double el_residual(const WeightedSpace1D& space, const std::vector<double>& rho,
                   double N, double K, double t, double mu, bool alt_coupling) {
    if (rho.size() != space.size())
        throw NumericError("density length does not match grid size");
    if (!(t > 0.0)) throw NumericError("EL residual requires t > 0");
    const std::size_t M = space.size();
    std::vector<double> q(M), lap(M);
    for (std::size_t i = 0; i < M; ++i) q[i] = std::sqrt(std::max(rho[i], 0.0));
    apply_laplacian(space, q.data(), lap.data());
    const double c = constant_term(N, K, t, alt_coupling);
    double acc = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const double r =
            -4.0 * t * lap[i] - xlogx2(q[i]) - (c + mu) * q[i];
        acc += space.w[i] * space.m[i] * r * r;
    }
    return std::sqrt(acc);
}

OptResult minimize_w_entropy(const WeightedSpace1D& space, const OptProblem& prob) {
    const std::size_t M = space.size();
    if (!(prob.t > 0.0) || !std::isfinite(prob.t))
        throw SchemaError("t", "t must be positive and finite");
    if (!(prob.N > 0.0)) throw SchemaError("N", "N must be positive");
    if (prob.max_iter < 1) throw SchemaError("max_iter", "max_iter must be >= 1");
    if (!(prob.grad_tol > 0.0)) throw SchemaError("grad_tol", "grad_tol must be > 0");

    Workspace ws;
    ws.W.resize(M);
    for (std::size_t i = 0; i < M; ++i) ws.W[i] = space.w[i] * space.m[i];
    ws.Tq.resize(M);
    ws.grad.resize(M);
    ws.dir.resize(M);
    ws.trial.resize(M);

    // Initial amplitude q = sqrt(rho): supplied density or a heat-kernel-like
    // bump at scale t centred on the natural basepoint.
    std::vector<double> q(M);
    if (!prob.init.empty()) {
        if (prob.init.size() != M)
            throw NumericError("initial density length does not match grid size");
        for (std::size_t i = 0; i < M; ++i)
            q[i] = std::sqrt(std::max(prob.init[i], 0.0));
    } else {
        double c0;
        if (space.periodic())
            c0 = space.a;
        else if (space.left == Endpoint::singular)
            c0 = space.a;
        else
            c0 = 0.5 * (space.a + space.b);
        for (std::size_t i = 0; i < M; ++i) {
            const double d = space.distance(space.x[i], c0);
            q[i] = std::exp(-d * d / (8.0 * prob.t));
        }
    }
    auto renorm = [&](std::vector<double>& v) {
        double S = 0.0;
        for (std::size_t i = 0; i < M; ++i) S += ws.W[i] * v[i] * v[i];
        if (!(S > 0.0)) throw NumericError("optimizer iterate lost all mass");
        const double inv = 1.0 / std::sqrt(S);
        for (double& x : v) x *= inv;
    };
    renorm(q);

    OptResult res;
    Objective obj = evaluate(space, q, ws.W, prob.t, ws.Tq);
    res.history.push_back(obj.value);

    double alpha = prob.step > 0.0 ? prob.step : std::min(0.25, prob.t);
    const double c_armijo = 1e-4;
    std::vector<double> prev_q, prev_mgrad;

    for (int it = 0; it < prob.max_iter; ++it) {
        // Euclidean gradient at S = 1, and the L2(mu) metric gradient g/W.
        const double F = obj.A - obj.B;  // = t I + H at unit mass
        double gnorm2 = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            ws.grad[i] = 2.0 * (4.0 * prob.t * ws.Tq[i] - ws.W[i] * xlogx2(q[i]) -
                                ws.W[i] * q[i] * F);
            const double mg = ws.grad[i] / ws.W[i];
            ws.dir[i] = -mg;
            gnorm2 += ws.W[i] * mg * mg;
        }
        const double gnorm = std::sqrt(gnorm2);
        if (gnorm <= prob.grad_tol) {
            res.converged = true;
            break;
        }

        // Barzilai-Borwein step from the previous accepted move.
        if (!prev_q.empty()) {
            double sy = 0.0, ss = 0.0;
            for (std::size_t i = 0; i < M; ++i) {
                const double s = q[i] - prev_q[i];
                const double y = -ws.dir[i] - prev_mgrad[i];
                ss += ws.W[i] * s * s;
                sy += ws.W[i] * s * y;
            }
            if (sy > 0.0) alpha = std::clamp(ss / sy, 1e-6, 1e3);
        }
        prev_q = q;
        prev_mgrad.assign(M, 0.0);
        for (std::size_t i = 0; i < M; ++i) prev_mgrad[i] = -ws.dir[i];

        // Armijo backtracking along the metric descent direction.
        const double slope = -gnorm2;  // <grad, dir> in the Euclidean pairing
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < M; ++i)
                ws.trial[i] = q[i] + alpha * ws.dir[i];
            renorm(ws.trial);
            const Objective trial_obj =
                evaluate(space, ws.trial, ws.W, prob.t, ws.Tq);
            if (trial_obj.value <= obj.value + c_armijo * alpha * slope) {
                q = ws.trial;
                obj = trial_obj;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        res.iterations = it + 1;
        if (!accepted)
            throw NumericError("line search failed: objective not decreasing");
        res.history.push_back(obj.value);
        // evaluate() left ws.Tq at the accepted iterate.
    }

    // Final report in density form.
    res.minimizer.resize(M);
    for (std::size_t i = 0; i < M; ++i) res.minimizer[i] = q[i] * q[i];
    const double F = obj.A - obj.B;
    res.mu_value = F - constant_term(prob.N, prob.K, prob.t, false);
    res.el_residual = el_residual(space, res.minimizer, prob.N, prob.K, prob.t,
                                  res.mu_value);
    return res;
}

}  // namespace entroflow
