#ifndef SMOOTHFEM_TENSOR_HPP
#define SMOOTHFEM_TENSOR_HPP

#include "smoothfem/multiindex.hpp"

#include <array>
#include <vector>

namespace sfem {

/// Fixed-capacity geometric vector; entries beyond the active dimension
/// stay zero so dot products never need an explicit dimension.
using Vec = std::array<double, 3>;

inline double dot(const Vec& a, const Vec& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
double norm(const Vec& a);
Vec scaled(const Vec& a, double c);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);

/// Ordered list of vectors in R^d; need not be independent and may be
/// longer than d.
using VectorFamily = std::vector<Vec>;

/// Symmetric tensor of order r over R^d stored by its distinct canonical
/// components, indexed by the increasing multi-indices T^{d-1}_r (lex
/// order). Order 0 is a scalar with a single component.
class SymTensor {
public:
    SymTensor() = default;
    SymTensor(int order, int dim);

    int order() const { return r_; }
    int dim() const { return d_; }
    int component_count() const { return static_cast<int>(c_.size()); }

    double& operator[](int i) { return c_[i]; }
    double operator[](int i) const { return c_[i]; }
    std::vector<double>& components() { return c_; }
    const std::vector<double>& components() const { return c_; }

    /// Component at the increasing multi-index alpha in T^{d-1}_r.
    double component(const MultiIndex& alpha) const;
    void set_component(const MultiIndex& alpha, double v);

    SymTensor& axpy(double a, const SymTensor& x);

private:
    int r_ = 0;
    int d_ = 0;
    std::vector<double> c_;
};

/// Frobenius product a : b recovered from canonical components with
/// multiplicities r!/alpha!.
double sym_pairing(const SymTensor& a, const SymTensor& b);

/// Pairing weights r!/alpha! for all alpha in T^{d-1}_r (lex order).
const std::vector<double>& pairing_weights(int dim, int order);

/// sym(t^{alpha}) over R^dim for a vector family t and multi-index alpha
/// over the family (|alpha| = order of the result).
SymTensor sym_monomial(const VectorFamily& fam, const MultiIndex& alpha, int dim);

/// Components of tau in the frame whose dual is new_dual:
/// tau~_beta = tau : sym(new_dual^{beta}).
SymTensor change_frame(const SymTensor& tau, const VectorFamily& new_dual);

/// Max deviation of sym(dual^{alpha}) : sym(fam^{beta}) from
/// (alpha!/r!) delta_{alpha,beta} over all alpha, beta in T^{d-1}_r, for
/// dual bases fam/dual of R^dim. Throws when fam/dual fail the
/// biorthogonality precondition.
double duality_check(const VectorFamily& fam, const VectorFamily& dual, int order, int dim);

} // namespace sfem

#endif
