#ifndef SMOOTHFEM_QUADRATURE_HPP
#define SMOOTHFEM_QUADRATURE_HPP

#include <string>
#include <vector>

namespace sfem {

/// Quadrature rule on the reference d-simplex in barycentric coordinates.
/// Weights are normalized to sum to 1, so that
///   int_T f = |T| * sum_q w_q f(lambda_q).
struct QuadratureRule {
    int dim = 0;
    int degree = 0;           // exactness degree
    std::string scheme;       // construction recorded for reproducibility
    std::vector<double> weights;
    std::vector<double> points;  // barycentric, (dim+1) per point

    int size() const { return static_cast<int>(weights.size()); }
    const double* point(int q) const { return points.data() + static_cast<std::size_t>(q) * (dim + 1); }
};

/// Rule exact for all polynomials of the given total degree, built by
/// collapsing tensorized Gauss-Jacobi rules through the Duffy map.
QuadratureRule quadrature(int d, int degree);

/// Gauss-Jacobi nodes/weights on [0,1] with weight (1-u)^a via
/// Golub-Welsch; exposed for tests.
void gauss_jacobi_01(int n, int a, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace sfem

#endif
