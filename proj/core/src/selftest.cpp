#include "smoothfem/experiment.hpp"

#include "smoothfem/bernstein.hpp"
#include "smoothfem/combinatorics.hpp"
#include "smoothfem/exact_solutions.hpp"
#include "smoothfem/fespace.hpp"
#include "smoothfem/interpolation.hpp"
#include "smoothfem/quadrature.hpp"

#include <cmath>
#include <iostream>
#include <random>

namespace sfem {

namespace {

bool report(std::ostream& out, const std::string& name, bool ok, const std::string& detail = "")
{
    out << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!ok && !detail.empty())
        out << " (" << detail << ")";
    out << "\n";
    return ok;
}

bool check_partition(std::ostream& out)
{
    bool ok = true;
    const std::vector<std::tuple<int, std::vector<int>, int>> cases = {
        {5, {2, 1, 0}, 2}, {9, {4, 2, 0}, 2}, {9, {4, 2, 1, 0}, 3}};
    for (const auto& [k, r, d] : cases) {
        const auto sm = SmoothnessVector::from_rvec(r, k);
        const auto dec = decompose(sm, d);
        int total = 0;
        for (const auto& dim_blocks : dec.blocks)
            for (const auto& blk : dim_blocks)
                total += blk.size();
        ok = ok && total == static_cast<int>(binom(k + d, d));
    }
    return report(out, "lattice decomposition partitions T^d_k", ok);
}

bool check_tensor_duality(std::ostream& out)
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double maxdev = 0.0;
    for (int d = 2; d <= 3; ++d) {
        Matrix F(d, d);
        do {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    F(i, j) = unif(rng);
            double det;
            invert_small(F, &det);
            if (std::abs(det) > 0.2)
                break;
        } while (true);
        Matrix Finv = invert_small(F);
        VectorFamily fam(d), dual(d);
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < d; ++c) {
                fam[i][c] = F(c, i);
                dual[i][c] = Finv(i, c);
            }
        for (int r = 1; r <= 3; ++r)
            maxdev = std::max(maxdev, duality_check(fam, dual, r, d));
    }
    return report(out, "symmetric tensor duality sym(dual^a):sym(t^b) = (a!/r!) delta", maxdev < 1e-10);
}

bool check_bernstein_derivative(std::ostream& out)
{
    Mesh mesh = builtin_mesh("square", 1);
    const ElementGeometry geo = barycentric_gradients(mesh, 0);
    const MultiIndex beta({2, 2, 1});
    const std::vector<double> lambda = {0.3, 0.45, 0.25};
    // first derivative vs central differences along x
    const Vec x0 = geo.point(lambda);
    const double h = 1e-6;
    auto eval_at = [&](const Vec& p) {
        auto l = geo.barycentric(p);
        return bernstein_eval(beta, l);
    };
    Vec xp = x0, xm = x0;
    xp[0] += h;
    xm[0] -= h;
    const double fd = (eval_at(xp) - eval_at(xm)) / (2 * h);
    double assembled = 0.0;
    for (const DerivativeTerm& t : derivative_terms(beta, 1)) {
        const SymTensor g = sym_monomial(geo.grad_lambda, t.alpha, 2);
        assembled += t.scale * g.component(MultiIndex({1, 0})) * bernstein_eval(t.residual, lambda);
    }
    return report(out, "Bernstein derivative formula vs finite differences",
                  std::abs(fd - assembled) < 1e-5);
}

bool check_frame_duality(std::ostream& out)
{
    Mesh mesh = builtin_mesh("cube", 1);
    double maxdev = 0.0;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const ElementGeometry geo = barycentric_gradients(mesh, e);
        for (int l = 0; l < 3; ++l)
            for (const AbstractFace& f : subsimplices(3, l)) {
                const LocalFrame fr = local_frame(geo, f);
                for (std::size_t i = 0; i < fr.normals.size(); ++i)
                    for (std::size_t j = 0; j < fr.normals.size(); ++j)
                        maxdev = std::max(maxdev, std::abs(dot(fr.duals[i], fr.normals[j]) -
                                                           (i == j ? 1.0 : 0.0)));
            }
    }
    return report(out, "local frame duality grad(lambda_i) . n_f^j = delta_ij", maxdev < 1e-11);
}

bool check_quadrature(std::ostream& out)
{
    bool ok = true;
    for (int d = 1; d <= 3; ++d) {
        const int k = (d == 3) ? 11 : 7;
        const QuadratureRule rule = quadrature(d, 2 * k);
        const auto pts = generate_lattice(2 * k, d);
        const double expect = bernstein_integral(2 * k, d, 1.0);
        for (const MultiIndex& beta : {pts.front(), pts[pts.size() / 2], pts.back()}) {
            double acc = 0.0;
            for (int q = 0; q < rule.size(); ++q) {
                std::vector<double> lambda(rule.point(q), rule.point(q) + d + 1);
                acc += rule.weights[q] * bernstein_eval(beta, lambda);
            }
            ok = ok && std::abs(acc - expect) < 1e-12;
        }
    }
    return report(out, "quadrature integrates Bernstein functions to k!d!/(k+d)!", ok);
}

bool check_interpolation(std::ostream& out)
{
    const auto sm = SmoothnessVector::minimal(1, 5, 2);
    FeSpace space(builtin_mesh("square", 1), sm);
    PolynomialOracle p(2, {{{0, 0}, 0.7}, {{2, 1}, 1.5}, {{1, 3}, -0.4}, {{5, 0}, 0.9}});
    const auto ui = interpolate(space, p);
    const auto coeffs = space.all_element_coefficients(ui);
    const double err = error_norm(space, coeffs, p, 0);
    return report(out, "degree-5 polynomial reproduced by interpolation", err < 1e-10);
}

} // namespace

bool selftest(std::ostream& out)
{
    bool ok = true;
    ok &= check_partition(out);
    ok &= check_tensor_duality(out);
    ok &= check_bernstein_derivative(out);
    ok &= check_frame_duality(out);
    ok &= check_quadrature(out);
    ok &= check_interpolation(out);
    out << (ok ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
    return ok;
}

} // namespace sfem
