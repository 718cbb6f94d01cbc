#include "smoothfem/bernstein.hpp"

#include "smoothfem/combinatorics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace sfem {

namespace {

void validate_barycentric(const std::vector<double>& lambda)
{
    double sum = 0.0;
    for (double v : lambda) {
        if (v < -1e-12)
            throw std::invalid_argument("bernstein_eval: negative barycentric coordinate");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12 * std::max(1.0, std::abs(sum)))
        throw std::invalid_argument("bernstein_eval: barycentric coordinates do not sum to 1");
}

double power_clamped(double base, int e)
{
    if (e == 0)
        return 1.0;
    if (base < 0.0)
        base = 0.0;  // tolerated tiny negatives
    double p = 1.0;
    for (int i = 0; i < e; ++i)
        p *= base;
    return p;
}

} // namespace

double bernstein_eval(const MultiIndex& beta, const std::vector<double>& lambda)
{
    if (beta.size() != static_cast<int>(lambda.size()))
        throw std::invalid_argument("bernstein_eval: dimension mismatch");
    validate_barycentric(lambda);
    double v = static_cast<double>(lattice_multinomial(beta));
    for (int i = 0; i < beta.size(); ++i)
        v *= power_clamped(lambda[i], beta[i]);
    return v;
}

std::vector<double> bernstein_eval_all(int k, int d, const std::vector<double>& lambda)
{
    validate_barycentric(lambda);
    // powers[i][e] = lambda_i^e
    std::vector<std::vector<double>> powers(d + 1, std::vector<double>(k + 1, 1.0));
    for (int i = 0; i <= d; ++i)
        for (int e = 1; e <= k; ++e)
            powers[i][e] = powers[i][e - 1] * std::max(lambda[i], 0.0);

    const auto points = generate_lattice(k, d);
    std::vector<double> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        const MultiIndex& beta = points[p];
        double v = static_cast<double>(lattice_multinomial(beta));
        for (int i = 0; i <= d; ++i)
            v *= powers[i][beta[i]];
        out[p] = v;
    }
    return out;
}

double bernstein_integral(int k, int d, double measure)
{
    if (measure <= 0.0)
        throw std::invalid_argument("bernstein_integral: measure must be positive");
    // k! d! / (k+d)! = 1 / C(k+d, d)
    return measure / static_cast<double>(binom(k + d, d));
}

double bernstein_product_coeff(const MultiIndex& gamma, const MultiIndex& delta)
{
    if (gamma.size() != delta.size())
        throw std::invalid_argument("bernstein_product_coeff: dimension mismatch");
    const int k1 = gamma.degree();
    const int k2 = delta.degree();
    // (gamma+delta)!/(gamma! delta!) = prod_i C(gamma_i+delta_i, gamma_i)
    double c = 1.0;
    for (int i = 0; i < gamma.size(); ++i)
        c *= static_cast<double>(binom(gamma[i] + delta[i], gamma[i]));
    return c / static_cast<double>(binom(k1 + k2, k1));
}

std::vector<DerivativeTerm> derivative_terms(const MultiIndex& beta, int r)
{
    const int k = beta.degree();
    const int d = beta.size() - 1;
    if (r < 0 || r > k)
        throw std::invalid_argument("derivative_terms: order " + std::to_string(r) +
                                    " outside [0, " + std::to_string(k) + "]");
    std::vector<DerivativeTerm> terms;
    for (const MultiIndex& alpha : generate_lattice(r, d)) {
        if (!alpha.leq(beta))
            continue;
        terms.push_back({alpha, derivative_scale(k, r, alpha), beta - alpha});
    }
    return terms;
}

double derivative_scale(int k, int r, const MultiIndex& alpha)
{
    // r! k! / ((k-r)! alpha!) = (r!/alpha!) * k!/(k-r)!
    return static_cast<double>(lattice_multinomial(alpha)) *
           static_cast<double>(falling_factorial(k, r));
}

double directional_derivative(const MultiIndex& beta, const VectorFamily& directions,
                              const MultiIndex& alpha_n, const std::vector<double>& lambda,
                              const std::vector<Vec>& grad_lambda, int dim)
{
    const int r = alpha_n.degree();
    if (r > beta.degree())
        throw std::invalid_argument("directional_derivative: order exceeds polynomial degree");
    const SymTensor nmono = sym_monomial(directions, alpha_n, dim);
    double value = 0.0;
    for (const DerivativeTerm& t : derivative_terms(beta, r)) {
        const SymTensor gmono = sym_monomial(grad_lambda, t.alpha, dim);
        value += t.scale * sym_pairing(gmono, nmono) * bernstein_eval(t.residual, lambda);
    }
    return value;
}

double dual_apply(const DualFunctional& b, const BernsteinPoly& p)
{
    if (p.degree != b.degree || p.dim != b.alpha_f.size() - 1)
        throw std::invalid_argument("dual_apply: degree or dimension mismatch");
    return p.coeff[lex_index(b.alpha_f)];
}

const LuFactor& collocation_factor(int l, int k)
{
    static std::map<std::pair<int, int>, std::unique_ptr<LuFactor>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(l, k);
    auto it = cache.find(key);
    if (it != cache.end())
        return *it->second;

    const auto points = generate_lattice(k, l);
    const int n = static_cast<int>(points.size());
    Matrix M(n, n);
    for (int a = 0; a < n; ++a) {
        std::vector<double> lambda(l + 1);
        for (int i = 0; i <= l; ++i)
            lambda[i] = k > 0 ? static_cast<double>(points[a][i]) / k
                              : 1.0 / static_cast<double>(l + 1);
        const auto row = bernstein_eval_all(k, l, lambda);
        for (int b = 0; b < n; ++b)
            M(a, b) = row[b];
    }
    auto factor = std::make_unique<LuFactor>(std::move(M));
    if (factor->pivot_growth() > 1e14)
        throw std::runtime_error("collocation_factor: conditioning beyond threshold at l=" +
                                 std::to_string(l) + " k=" + std::to_string(k));
    return *cache.emplace(key, std::move(factor)).first->second;
}

std::vector<double> lagrange_to_bernstein(int l, int k, const std::vector<double>& nodal_values)
{
    const LuFactor& lu = collocation_factor(l, k);
    if (nodal_values.size() != static_cast<std::size_t>(binom(k + l, l)))
        throw std::invalid_argument("lagrange_to_bernstein: expected one value per lattice point");
    return lu.solve(nodal_values);
}

} // namespace sfem
