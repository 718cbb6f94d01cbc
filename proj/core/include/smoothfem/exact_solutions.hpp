#ifndef SMOOTHFEM_EXACT_SOLUTIONS_HPP
#define SMOOTHFEM_EXACT_SOLUTIONS_HPP

#include "smoothfem/interpolation.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sfem {

/// One factor of a separable function: c + sum_j A_j sin(w_j x + p_j).
struct SinusoidFactor {
    double constant = 0.0;
    struct Term {
        double amplitude = 0.0;
        double omega = 0.0;
        double phase = 0.0;
    };
    std::vector<Term> terms;

    double derivative(int n, double x) const;
};

/// Separable product u(x) = prod_i g_i(x_i) with exact derivatives of every
/// order.
class SeparableOracle : public SmoothFunctionOracle {
public:
    explicit SeparableOracle(std::vector<SinusoidFactor> factors);

    int dim() const override { return static_cast<int>(factors_.size()); }
    int max_order() const override { return 64; }
    double partial(const MultiIndex& delta, const Vec& x) const override;

    const std::vector<SinusoidFactor>& factors() const { return factors_; }

private:
    std::vector<SinusoidFactor> factors_;
};

/// sign * Laplacian^p of a separable function, with full derivatives.
class SeparableLaplacianPower : public SmoothFunctionOracle {
public:
    SeparableLaplacianPower(std::shared_ptr<const SeparableOracle> base, int power, double sign);

    int dim() const override { return base_->dim(); }
    int max_order() const override { return 64; }
    double partial(const MultiIndex& delta, const Vec& x) const override;

private:
    std::shared_ptr<const SeparableOracle> base_;
    int power_ = 1;
    double sign_ = 1.0;
    std::vector<MultiIndex> axis_orders_;  // |q| = power over d axes
    std::vector<double> weights_;          // power!/q!
};

/// Sparse multivariate polynomial sum c_beta x^beta with exact derivatives.
class PolynomialOracle : public SmoothFunctionOracle {
public:
    PolynomialOracle(int dim, std::map<std::vector<int>, double> monomials);

    int dim() const override { return dim_; }
    int max_order() const override { return 64; }
    double partial(const MultiIndex& delta, const Vec& x) const override;

    /// sign * Laplacian^p of this polynomial.
    PolynomialOracle laplacian_power(int p, double sign) const;

private:
    int dim_ = 0;
    std::map<std::vector<int>, double> monomials_;
};

/// A named exact solution from the fixed registry (sincos45, sin2pi2d,
/// bih2d, sin2pi3d, sin5xyz3d) together with its polyharmonic right-hand
/// side factory.
struct NamedSolution {
    std::string name;
    int dim = 0;
    std::shared_ptr<const SeparableOracle> u;

    /// f = (-1)^{m+1} Laplacian^{m+1} u.
    std::shared_ptr<const SmoothFunctionOracle> rhs(int m) const;
};

NamedSolution exact_solution(const std::string& name);
std::vector<std::string> exact_solution_names();

} // namespace sfem

#endif
