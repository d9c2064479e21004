#include "entroflow/closedform.hpp"

#include <cmath>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include "entroflow/errors.hpp"

namespace entroflow {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw NumericError("closed-form model requires t > 0");
}

// Radial Jacobian of the model measure: S_N r^{N-1} for euclidean (surface
// measure of the unit sphere), r^{N-1} for the cone.
double radial_jacobian(const ClosedFormModel& m, double r) {
    const double rpow = std::pow(r, m.N - 1.0);
    if (m.kind == ClosedFormModel::Kind::euclidean) {
        const double SN = 2.0 * std::pow(kPi, m.N / 2.0) / gsl_sf_gamma(m.N / 2.0);
        return SN * rpow;
    }
    return rpow;
}

struct QuadCtx {
    const ClosedFormModel* model;
    double t;
    bool fisher;  // false: -u log u, true: |grad log u|^2 u
};

double integrand(double r, void* raw) {
    const QuadCtx* ctx = static_cast<const QuadCtx*>(raw);
    const ClosedFormModel& m = *ctx->model;
    const double u = m.density(r, ctx->t);
    if (u <= 0.0) return 0.0;
    const double J = radial_jacobian(m, r);
    if (ctx->fisher) {
        const double g = -r / (2.0 * ctx->t);  // d/dr log u
        return g * g * u * J;
    }
    return -u * std::log(u) * J;
}

double quad_halfline(const ClosedFormModel& model, double t, bool fisher) {
    gsl_set_error_handler_off();
    QuadCtx ctx{&model, t, fisher};
    gsl_function F;
    F.function = &integrand;
    F.params = &ctx;
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2048);
    double value = 0.0, abserr = 0.0;
    const int status =
        gsl_integration_qagiu(&F, 0.0, 1e-12, 1e-10, 2048, ws, &value, &abserr);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS)
        throw NumericError("quadrature cross-check failed to converge");
    return value;
}

}  // namespace

double ClosedFormModel::shannon_entropy(double t) const {
    check_t(t);
    if (kind == Kind::euclidean)
        return 0.5 * N * (1.0 + std::log(4.0 * kPi * t));
    return 0.5 * N + 0.5 * N * std::log(4.0 * t) + std::log(gsl_sf_gamma(N / 2.0) / 2.0);
}

double ClosedFormModel::fisher_information(double t) const {
    check_t(t);
    return 0.5 * N / t;
}

double ClosedFormModel::entropy_power(double t) const {
    check_t(t);
    return std::exp(2.0 * shannon_entropy(t) / N);
}

double ClosedFormModel::gamma2_integral(double t) const {
    check_t(t);
    return 0.25 * N / (t * t);
}

double ClosedFormModel::w_entropy(double t) const {
    check_t(t);
    if (kind == Kind::euclidean) return 0.0;
    return std::log(gsl_sf_gamma(N / 2.0) / 2.0) - 0.5 * N * std::log(kPi);
}

double ClosedFormModel::density(double r, double t) const {
    check_t(t);
    const double q = std::exp(-r * r / (4.0 * t));
    if (kind == Kind::euclidean)
        return q / std::pow(4.0 * kPi * t, N / 2.0);
    return 2.0 * q / (std::pow(4.0 * t, N / 2.0) * gsl_sf_gamma(N / 2.0));
}

double ClosedFormModel::shannon_entropy_quadrature(double t) const {
    check_t(t);
    return quad_halfline(*this, t, false);
}

double ClosedFormModel::fisher_information_quadrature(double t) const {
    check_t(t);
    return quad_halfline(*this, t, true);
}

Density ClosedFormModel::sample(const WeightedSpace1D& space, double t,
                                double center) const {
    check_t(t);
    Density d;
    d.time_tag = t;
    d.u.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double r = space.distance(space.x[i], center);
        d.u[i] = density(r, t);
    }
    normalize_density(space, d.u);
    return d;
}

ClosedFormModel heat_kernel_closed_form(ClosedFormModel::Kind kind, double N) {
    if (!(N > 0.0) || !std::isfinite(N))
        throw SchemaError("N", "dimension parameter must be positive and finite");
    ClosedFormModel m;
    m.kind = kind;
    m.N = N;
    return m;
}

}  // namespace entroflow
