#ifndef SMOOTHFEM_INTERPOLATION_HPP
#define SMOOTHFEM_INTERPOLATION_HPP

#include "smoothfem/fespace.hpp"
#include "smoothfem/quadrature.hpp"
#include "smoothfem/tensor.hpp"

#include <functional>
#include <vector>

namespace sfem {

/// Callable supplying u and all canonical partial derivatives up to some
/// order at arbitrary points.
class SmoothFunctionOracle {
public:
    virtual ~SmoothFunctionOracle() = default;

    virtual int dim() const = 0;
    virtual int max_order() const = 0;

    /// Partial derivative d^delta u (x); delta has dim entries.
    virtual double partial(const MultiIndex& delta, const Vec& x) const = 0;

    double value(const Vec& x) const;

    /// grad^r u (x) as a symmetric tensor of canonical components.
    SymTensor gradient(int r, const Vec& x) const;
};

/// Central-difference fallback for value-only functions; lower accuracy,
/// steps chosen per derivative order.
class FiniteDifferenceOracle : public SmoothFunctionOracle {
public:
    FiniteDifferenceOracle(std::function<double(const Vec&)> f, int dim, int max_order);

    int dim() const override { return dim_; }
    int max_order() const override { return max_order_; }
    double partial(const MultiIndex& delta, const Vec& x) const override;

private:
    std::function<double(const Vec&)> f_;
    int dim_ = 0;
    int max_order_ = 0;
};

/// Global interpolation: evaluates the extended DoFs of eq-style
/// face sampling (derivative in the global frame, Lagrange interpolation
/// on the face, Bernstein coefficient extraction). Returns the global
/// coefficient vector u_I.
std::vector<double> interpolate(const FeSpace& space, const SmoothFunctionOracle& u);

/// Extended local DoF values (canonical order) of one element, using the
/// local frames; supports the local/global consistency property.
std::vector<double> local_interpolate(const FeSpace& space, int element,
                                      const SmoothFunctionOracle& u);

/// DoF values of all entries owned by one face, in reference-entry order.
std::vector<double> face_dof_values(const FeSpace& space, int l, int face_id,
                                    const SmoothFunctionOracle& u);

/// ( sum_T int_T |grad^j u - grad^j u_h|^2 )^{1/2} with the symmetric
/// Frobenius norm; element coefficients precomputed, quadrature degree
/// >= 2k by default (0 picks the default).
double error_norm(const FeSpace& space, const std::vector<std::vector<double>>& coeffs,
                  const SmoothFunctionOracle& u, int j, int quad_degree = 0);

} // namespace sfem

#endif
