// Exact heat-kernel functionals for the two model geometries that admit
// closed forms: N-dimensional Euclidean space and the Euclidean cone vertex
// kernel on [0, inf) with measure r^{N-1} dr. Quadrature cross-checks of the
// same quantities are exposed for testing.
#pragma once

#include "entroflow/heatflow.hpp"
#include "entroflow/space.hpp"

namespace entroflow {

struct ClosedFormModel {
    enum class Kind { euclidean, cone_vertex };

    Kind kind = Kind::euclidean;
    double N = 1.0;

    double shannon_entropy(double t) const;
    double fisher_information(double t) const;
    double entropy_power(double t) const;
    double gamma2_integral(double t) const;
    double w_entropy(double t) const;  // W_N; identically 0 for euclidean

    // Kernel value at radius r: euclidean is the density w.r.t. Lebesgue
    // measure in R^N (radial profile), cone_vertex w.r.t. r^{N-1} dr.
    double density(double r, double t) const;

    // Adaptive Gauss-Kronrod evaluation of the same integrals on [0, inf).
    double shannon_entropy_quadrature(double t) const;
    double fisher_information_quadrature(double t) const;

    // Evaluate the kernel centred at `center` on the grid (distance taken in
    // the space's own metric) and normalize to unit mu-mass.
    Density sample(const WeightedSpace1D& space, double t, double center = 0.0) const;
};

ClosedFormModel heat_kernel_closed_form(ClosedFormModel::Kind kind, double N);

}  // namespace entroflow
