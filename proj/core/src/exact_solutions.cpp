#include "smoothfem/exact_solutions.hpp"

#include "smoothfem/combinatorics.hpp"

#include <cmath>
#include <stdexcept>

namespace sfem {

double SinusoidFactor::derivative(int n, double x) const
{
    double v = (n == 0) ? constant : 0.0;
    const double half_pi = 1.5707963267948966;
    for (const Term& t : terms)
        v += t.amplitude * std::pow(t.omega, n) * std::sin(t.omega * x + t.phase + n * half_pi);
    return v;
}

SeparableOracle::SeparableOracle(std::vector<SinusoidFactor> factors)
    : factors_(std::move(factors))
{
}

double SeparableOracle::partial(const MultiIndex& delta, const Vec& x) const
{
    if (delta.size() != dim())
        throw std::invalid_argument("SeparableOracle: multi-index dimension mismatch");
    double v = 1.0;
    for (int i = 0; i < dim(); ++i)
        v *= factors_[i].derivative(delta[i], x[i]);
    return v;
}

SeparableLaplacianPower::SeparableLaplacianPower(std::shared_ptr<const SeparableOracle> base,
                                                 int power, double sign)
    : base_(std::move(base)), power_(power), sign_(sign)
{
    axis_orders_ = generate_lattice(power_, base_->dim() - 1);
    for (const MultiIndex& q : axis_orders_)
        weights_.push_back(static_cast<double>(lattice_multinomial(q)));
}

double SeparableLaplacianPower::partial(const MultiIndex& delta, const Vec& x) const
{
    // Laplacian^p = sum_{|q|=p} p!/q! prod_i d^{2 q_i}
    double v = 0.0;
    for (std::size_t t = 0; t < axis_orders_.size(); ++t) {
        std::vector<int> order(delta.entries());
        for (int i = 0; i < delta.size(); ++i)
            order[i] += 2 * axis_orders_[t][i];
        v += weights_[t] * base_->partial(MultiIndex(order), x);
    }
    return sign_ * v;
}

PolynomialOracle::PolynomialOracle(int dim, std::map<std::vector<int>, double> monomials)
    : dim_(dim), monomials_(std::move(monomials))
{
}

double PolynomialOracle::partial(const MultiIndex& delta, const Vec& x) const
{
    if (delta.size() != dim_)
        throw std::invalid_argument("PolynomialOracle: multi-index dimension mismatch");
    double v = 0.0;
    for (const auto& [mono, c] : monomials_) {
        double term = c;
        bool zero = false;
        for (int i = 0; i < dim_ && !zero; ++i) {
            const int p = mono[i];
            const int di = delta[i];
            if (di > p) {
                zero = true;
                break;
            }
            term *= static_cast<double>(falling_factorial(p, di));
            for (int e = 0; e < p - di; ++e)
                term *= x[i];
        }
        if (!zero)
            v += term;
    }
    return v;
}

PolynomialOracle PolynomialOracle::laplacian_power(int p, double sign) const
{
    std::map<std::vector<int>, double> cur = monomials_;
    for (int iter = 0; iter < p; ++iter) {
        std::map<std::vector<int>, double> next;
        for (const auto& [mono, c] : cur)
            for (int i = 0; i < dim_; ++i) {
                if (mono[i] < 2)
                    continue;
                std::vector<int> m = mono;
                m[i] -= 2;
                next[m] += c * mono[i] * (mono[i] - 1);
            }
        cur = std::move(next);
    }
    for (auto& [mono, c] : cur)
        c *= sign;
    return PolynomialOracle(dim_, std::move(cur));
}

namespace {

SinusoidFactor sin_factor(double omega, double phase = 0.0)
{
    SinusoidFactor f;
    f.terms.push_back({1.0, omega, phase});
    return f;
}

SinusoidFactor sin_squared_factor(double omega)
{
    // sin^2(w x) = 1/2 - 1/2 sin(2 w x + pi/2)
    SinusoidFactor f;
    f.constant = 0.5;
    f.terms.push_back({-0.5, 2.0 * omega, 1.5707963267948966});
    return f;
}

} // namespace

NamedSolution exact_solution(const std::string& name)
{
    const double pi = 3.141592653589793;
    const double half_pi = 1.5707963267948966;
    NamedSolution sol;
    sol.name = name;
    if (name == "sincos45") {
        sol.dim = 2;
        sol.u = std::make_shared<SeparableOracle>(
            std::vector<SinusoidFactor>{sin_factor(4.0), sin_factor(5.0, half_pi)});
    } else if (name == "sin2pi2d") {
        sol.dim = 2;
        sol.u = std::make_shared<SeparableOracle>(
            std::vector<SinusoidFactor>{sin_factor(2.0 * pi), sin_factor(2.0 * pi)});
    } else if (name == "bih2d") {
        sol.dim = 2;
        sol.u = std::make_shared<SeparableOracle>(std::vector<SinusoidFactor>{
            sin_squared_factor(2.0 * pi), sin_squared_factor(2.0 * pi)});
    } else if (name == "sin2pi3d") {
        sol.dim = 3;
        sol.u = std::make_shared<SeparableOracle>(std::vector<SinusoidFactor>{
            sin_factor(2.0 * pi), sin_factor(2.0 * pi), sin_factor(2.0 * pi)});
    } else if (name == "sin5xyz3d") {
        sol.dim = 3;
        sol.u = std::make_shared<SeparableOracle>(
            std::vector<SinusoidFactor>{sin_factor(5.0), sin_factor(5.0), sin_factor(5.0)});
    } else {
        throw std::invalid_argument("exact_solution: unknown name '" + name + "'");
    }
    return sol;
}

std::shared_ptr<const SmoothFunctionOracle> NamedSolution::rhs(int m) const
{
    // (-1)^{m+1} Laplacian^{m+1}
    const double sign = ((m + 1) % 2 == 0) ? 1.0 : -1.0;
    return std::make_shared<SeparableLaplacianPower>(u, m + 1, sign);
}

std::vector<std::string> exact_solution_names()
{
    return {"sincos45", "sin2pi2d", "bih2d", "sin2pi3d", "sin5xyz3d"};
}

} // namespace sfem
