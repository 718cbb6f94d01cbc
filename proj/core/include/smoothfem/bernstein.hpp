#ifndef SMOOTHFEM_BERNSTEIN_HPP
#define SMOOTHFEM_BERNSTEIN_HPP

#include "smoothfem/linalg.hpp"
#include "smoothfem/multiindex.hpp"
#include "smoothfem/tensor.hpp"

#include <vector>

namespace sfem {

/// Polynomial expanded in the Bernstein basis {B^beta} of T^d_k;
/// coefficients in lex order of T^d_k.
struct BernsteinPoly {
    int degree = 0;
    int dim = 0;
    std::vector<double> coeff;
};

/// B^beta(lambda) = (k!/beta!) lambda^beta. Barycentric entries must be
/// nonnegative (within 1e-12) and sum to 1 (within 1e-12).
double bernstein_eval(const MultiIndex& beta, const std::vector<double>& lambda);

/// Values of all B^beta of degree k at lambda, in lex order.
std::vector<double> bernstein_eval_all(int k, int d, const std::vector<double>& lambda);

/// Integral of any degree-k Bernstein basis function over a simplex of
/// measure |T|: k! d! / (k+d)! |T|, independent of beta.
double bernstein_integral(int k, int d, double measure);

/// c with B^gamma_{k1} B^delta_{k2} = c B^{gamma+delta}_{k1+k2}:
/// c = ((gamma+delta)!/(gamma! delta!)) * k1! k2! / (k1+k2)!.
double bernstein_product_coeff(const MultiIndex& gamma, const MultiIndex& delta);

/// One term of the derivative expansion
/// grad^r B^beta = sum scale * sym((grad lambda)^{alpha}) * B^{beta-alpha}.
struct DerivativeTerm {
    MultiIndex alpha;     // |alpha| = r, alpha <= beta
    double scale = 0.0;   // r! k! / ((k-r)! alpha!)
    MultiIndex residual;  // beta - alpha
};

/// Terms of the r-th derivative of B^beta; throws for r outside [0, k].
std::vector<DerivativeTerm> derivative_terms(const MultiIndex& beta, int r);

/// Scale r! k! / ((k-r)! alpha!) for a single derivative term.
double derivative_scale(int k, int r, const MultiIndex& alpha);

/// d^r B^beta / dn^{alpha_n} at a barycentric point: contracts the
/// derivative expansion against sym(n^{alpha_n}).
double directional_derivative(const MultiIndex& beta, const VectorFamily& directions,
                              const MultiIndex& alpha_n, const std::vector<double>& lambda,
                              const std::vector<Vec>& grad_lambda, int dim);

/// Dual functional b^{alpha_f}: extracts the B^{alpha_f} coefficient of a
/// polynomial expressed in the face Bernstein basis.
struct DualFunctional {
    std::vector<int> face;  // vertex tuple (context only)
    MultiIndex alpha_f;
    int degree = 0;
};

double dual_apply(const DualFunctional& b, const BernsteinPoly& p);

/// Solves the collocation system sum_beta c_beta B^beta(x_alpha) = value_alpha
/// over the principal lattice points of an l-dimensional face at degree k.
/// Factorizations are cached per (l, k); build once, read many.
std::vector<double> lagrange_to_bernstein(int l, int k, const std::vector<double>& nodal_values);

/// Cached LU of the Bernstein collocation matrix B^beta(x_alpha) on the
/// principal lattice of the l-simplex at degree k.
const LuFactor& collocation_factor(int l, int k);

} // namespace sfem

#endif
