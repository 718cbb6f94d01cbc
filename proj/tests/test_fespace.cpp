#include "smoothfem/fespace.hpp"

#include "smoothfem/combinatorics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <set>

using namespace sfem;
using namespace sfem::testing;

TEST_SUITE_BEGIN("fespace");

namespace {

std::vector<double> random_barycentric(int d, std::mt19937& rng)
{
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> lambda(d + 1);
    double total = 0.0;
    for (double& v : lambda) {
        v = unif(rng);
        total += v;
    }
    for (double& v : lambda)
        v /= total;
    return lambda;
}

double eval_row(const Matrix& rows, int row, int k, int d, const std::vector<double>& lambda)
{
    const auto all = bernstein_eval_all(k, d, lambda);
    double v = 0.0;
    for (std::size_t b = 0; b < all.size(); ++b)
        v += rows(row, static_cast<int>(b)) * all[b];
    return v;
}

} // namespace

TEST_CASE("DoF-basis matrix structure")
{
    const auto sm = SmoothnessVector::from_rvec({2, 1, 0}, 5);
    const DofLayout layout = build_layout(sm, 2);
    const Mesh mesh = random_simplex_mesh(2, 2024);
    const ElementGeometry geo = barycentric_gradients(mesh, 0);
    const Matrix D = dof_basis_matrix(layout, geo);
    const int n = layout.size();

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            scale = std::max(scale, std::abs(D(i, j)));

    SUBCASE("diagonal blocks are exactly k!/(k-s)! times the identity")
    {
        for (int i = 0; i < n; ++i)
            CHECK(D(i, i) == static_cast<double>(falling_factorial(5, layout.rows[i].s)));
        // k=5, s=1 diagonal entry is 5!/4! = 5
        bool found_s1 = false;
        for (int i = 0; i < n; ++i)
            if (layout.rows[i].s == 1) {
                CHECK(D(i, i) == 5.0);
                found_s1 = true;
                break;
            }
        CHECK(found_s1);
    }
    SUBCASE("forbidden entries vanish (block lower triangular)")
    {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto& ri = layout.rows[i];
                const auto& rj = layout.rows[j];
                const bool same_face = ri.l == rj.l && ri.face_index == rj.face_index;
                const bool forbidden = same_face ? rj.s > ri.s : rj.l >= ri.l;
                if (forbidden)
                    CHECK(std::abs(D(i, j)) <= 1e-12 * scale);
            }
    }
    SUBCASE("trace rows are unit indicator rows")
    {
        for (int i = 0; i < n; ++i) {
            if (layout.rows[i].s != 0)
                continue;
            for (int j = 0; j < n; ++j)
                CHECK(D(i, j) == (i == j ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("Appendix-style quintic C1 basis on an arbitrary triangle")
{
    auto& rng = test_rng();
    const auto sm = SmoothnessVector::from_rvec({2, 1, 0}, 5);
    const Mesh mesh = random_simplex_mesh(2, 555);
    FeSpace space(mesh, sm);
    const auto basis = space.element_basis(0);
    const ElementGeometry& geo = space.geometry(0);
    const DofLayout& layout = space.layout();

    // Lambda_{ab} = grad(lambda_a) . n_{e_b}
    double Lam[3][3];
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            Lam[a][b] = dot(geo.grad_lambda[a], geo.grad_lambda[b]) /
                        dot(geo.grad_lambda[b], geo.grad_lambda[b]);

    // closed forms at vertex v = 0, i = 1, j = 2
    auto edge_fn = [](double li, double lj, double lv) { return 6 * li * li * lj * lj * lv; };
    auto phi3 = [&](const std::vector<double>& l) {
        return 0.5 * l[0] * l[0] * l[0] * l[1] * l[1] -
               0.25 * Lam[0][2] * edge_fn(l[0], l[1], l[2]);
    };
    auto phi4 = [](const std::vector<double>& l) { return l[0] * l[0] * l[0] * l[1] * l[2]; };
    auto phi5 = [&](const std::vector<double>& l) {
        return 0.5 * l[0] * l[0] * l[0] * l[2] * l[2] -
               0.25 * Lam[0][1] * edge_fn(l[0], l[2], l[1]);
    };
    auto phi1 = [&](const std::vector<double>& l) {
        return l[0] * l[0] * l[0] * l[0] * l[1] + 8 * phi3(l) + 4 * phi4(l);
    };
    auto phi2 = [&](const std::vector<double>& l) {
        return l[0] * l[0] * l[0] * l[0] * l[2] + 8 * phi5(l) + 4 * phi4(l);
    };
    auto phi0 = [&](const std::vector<double>& l) {
        return std::pow(l[0], 5) - 20 * phi3(l) - 20 * phi4(l) - 20 * phi5(l) + 5 * phi1(l) +
               5 * phi2(l);
    };

    // canonical rows of the vertex-0 block: s=0; s=1: (1,0),(0,1); s=2:
    // (2,0),(1,1),(0,2); then the edge {1,2} block is the last row
    REQUIRE(layout.rows[0].l == 0);
    REQUIRE(layout.rows[0].s == 0);
    REQUIRE(layout.rows[3].alpha_fstar == MultiIndex({2, 0}));
    const int edge_row = 20;
    REQUIRE(layout.rows[edge_row].l == 1);
    REQUIRE(layout.rows[edge_row].face_index == 2);  // face {1,2}

    SUBCASE("edge function is 6 li^2 lj^2 lv, i.e. B^{(2,2,1)}/5")
    {
        CHECK(basis->C(edge_row, lex_index(MultiIndex({1, 2, 2}))) == doctest::Approx(0.2));
        for (int t = 0; t < 50; ++t) {
            const auto l = random_barycentric(2, rng);
            CHECK(eval_row(basis->C, edge_row, 5, 2, l) ==
                  doctest::Approx(edge_fn(l[1], l[2], l[0])).epsilon(1e-10));
        }
    }
    SUBCASE("vertex mixed-second function is B^{(3,1,1)}/20")
    {
        CHECK(basis->C(4, lex_index(MultiIndex({3, 1, 1}))) == doctest::Approx(0.05));
    }
    SUBCASE("all seven local functions match the closed forms")
    {
        for (int t = 0; t < 50; ++t) {
            const auto l = random_barycentric(2, rng);
            CHECK(eval_row(basis->C, 0, 5, 2, l) == doctest::Approx(phi0(l)).epsilon(1e-10));
            CHECK(eval_row(basis->C, 1, 5, 2, l) == doctest::Approx(phi1(l)).epsilon(1e-10));
            CHECK(eval_row(basis->C, 2, 5, 2, l) == doctest::Approx(phi2(l)).epsilon(1e-10));
            CHECK(eval_row(basis->C, 3, 5, 2, l) == doctest::Approx(phi3(l)).epsilon(1e-10));
            CHECK(eval_row(basis->C, 4, 5, 2, l) == doctest::Approx(phi4(l)).epsilon(1e-10));
            CHECK(eval_row(basis->C, 5, 5, 2, l) == doctest::Approx(phi5(l)).epsilon(1e-10));
            CHECK(eval_row(basis->C, edge_row, 5, 2, l) ==
                  doctest::Approx(edge_fn(l[1], l[2], l[0])).epsilon(1e-10));
        }
    }
    SUBCASE("global edge function carries sign(T,e)/|grad lambda_v|")
    {
        const auto& lf = space.faces().local_faces[1][0][2];
        const GlobalFrame& gfr = space.frame(1, lf.global_id);
        const double sign = dot(gfr.normals[0], geo.grad_lambda[0]) > 0 ? 1.0 : -1.0;
        const double factor = sign / norm(geo.grad_lambda[0]);
        for (int t = 0; t < 20; ++t) {
            const auto l = random_barycentric(2, rng);
            CHECK(eval_row(basis->E, edge_row, 5, 2, l) ==
                  doctest::Approx(factor * edge_fn(l[1], l[2], l[0])).epsilon(1e-10));
        }
    }
    SUBCASE("global vertex functions transform by the edge-vector matrices")
    {
        const Vec ti = sub(geo.vertices[1], geo.vertices[0]);
        const Vec tj = sub(geo.vertices[2], geo.vertices[0]);
        for (int t = 0; t < 20; ++t) {
            const auto l = random_barycentric(2, rng);
            // first derivatives: (Phi_1, Phi_2)^T = (t_i t_j) (phi1, phi2)^T
            CHECK(eval_row(basis->E, 1, 5, 2, l) ==
                  doctest::Approx(ti[0] * phi1(l) + tj[0] * phi2(l)).epsilon(1e-10));
            CHECK(eval_row(basis->E, 2, 5, 2, l) ==
                  doctest::Approx(ti[1] * phi1(l) + tj[1] * phi2(l)).epsilon(1e-10));
            // second derivatives via vec(t x t) columns
            const double c3[3] = {ti[0] * ti[0], 2 * ti[0] * ti[1], ti[1] * ti[1]};
            const double c4[3] = {ti[0] * tj[0], ti[0] * tj[1] + ti[1] * tj[0], ti[1] * tj[1]};
            const double c5[3] = {tj[0] * tj[0], 2 * tj[0] * tj[1], tj[1] * tj[1]};
            for (int row = 0; row < 3; ++row) {
                const double expect =
                    c3[row] * phi3(l) + c4[row] * phi4(l) + c5[row] * phi5(l);
                CHECK(eval_row(basis->E, 3 + row, 5, 2, l) ==
                      doctest::Approx(expect).epsilon(1e-10));
            }
            // value slot is untouched
            CHECK(eval_row(basis->E, 0, 5, 2, l) == doctest::Approx(phi0(l)).epsilon(1e-10));
        }
    }
}

TEST_CASE("transformation blocks")
{
    const auto sm = SmoothnessVector::from_rvec({2, 1, 0}, 5);
    const Mesh mesh = random_simplex_mesh(2, 808);
    FeSpace space(mesh, sm);
    const auto basis = space.element_basis(0);
    const ElementGeometry& geo = space.geometry(0);

    SUBCASE("s=0 blocks are identity permutations")
    {
        for (const auto& block : basis->transform) {
            const int r0 = block.begin;
            if (space.layout().rows[r0].s != 0)
                continue;
            for (int a = 0; a < block.tb.rows(); ++a)
                for (int b = 0; b < block.tb.cols(); ++b)
                    CHECK((block.tb(a, b) == 0.0 || block.tb(a, b) == 1.0));
        }
    }
    SUBCASE("2D edge s=1 block is the scalar sign/|grad lambda|")
    {
        // the last transform block belongs to the edge {1,2} (opposite 0)
        const auto& block = basis->transform.back();
        REQUIRE(block.tb.rows() == 1);
        const auto& lf = space.faces().local_faces[1][0][2];
        const double sign =
            dot(space.frame(1, lf.global_id).normals[0], geo.grad_lambda[0]) > 0 ? 1.0 : -1.0;
        CHECK(block.tb(0, 0) ==
              doctest::Approx(sign / norm(geo.grad_lambda[0])).epsilon(1e-12));
    }
    SUBCASE("vertex s=1 block rows are the edge vectors")
    {
        // block order: vertex 0 gives blocks s=0,1,2 first
        const auto& block = basis->transform[1];
        REQUIRE(block.tb.rows() == 2);
        const Vec ti = sub(geo.vertices[1], geo.vertices[0]);
        const Vec tj = sub(geo.vertices[2], geo.vertices[0]);
        CHECK(block.tb(0, 0) == doctest::Approx(ti[0]).epsilon(1e-12));
        CHECK(block.tb(0, 1) == doctest::Approx(ti[1]).epsilon(1e-12));
        CHECK(block.tb(1, 0) == doctest::Approx(tj[0]).epsilon(1e-12));
        CHECK(block.tb(1, 1) == doctest::Approx(tj[1]).epsilon(1e-12));
    }
}

TEST_CASE("local and global duality on a random triangle")
{
    const auto sm = SmoothnessVector::from_rvec({2, 1, 0}, 5);
    const Mesh mesh = random_simplex_mesh(2, 31337);
    FeSpace space(mesh, sm);
    const auto basis = space.element_basis(0);
    const int n = space.local_size();

    SUBCASE("L(psi) = delta")
    {
        CHECK(basis->duality_residual <= 1e-12);
    }
    SUBCASE("G(Psi) = delta by direct evaluation of the global DoFs")
    {
        const Matrix G = global_dof_matrix(space, 0);
        const Matrix R = matmul_nt(basis->E, G);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(R(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
    SUBCASE("interior dual functions pass through untransformed")
    {
        const auto sm8 = SmoothnessVector::from_rvec({2, 1, 0}, 8);
        FeSpace space8(random_simplex_mesh(2, 99), sm8);
        const auto b8 = space8.element_basis(0);
        const auto& layout = space8.layout();
        for (int r = 0; r < space8.local_size(); ++r) {
            if (layout.rows[r].l != 2)
                continue;
            // interior block: E row equals a C row (possibly reordered)
            bool matched = false;
            for (int q = 0; q < space8.local_size() && !matched; ++q) {
                if (layout.rows[q].l != 2)
                    continue;
                double diff = 0.0;
                for (int c = 0; c < space8.local_size(); ++c)
                    diff = std::max(diff, std::abs(b8->E(r, c) - b8->C(q, c)));
                matched = diff <= 1e-12;
            }
            CHECK(matched);
        }
    }
}

TEST_CASE("global DoF map dimensions and shared-face identity")
{
    SUBCASE("reference dimension counts")
    {
        const auto sm7 = SmoothnessVector::minimal(1, 7, 2);
        CHECK(FeSpace(builtin_mesh("square", 1), sm7).dimension() == 55);
        CHECK(FeSpace(builtin_mesh("square", 2), sm7).dimension() == 158);
        const auto sm11 = SmoothnessVector::minimal(1, 11, 3);
        CHECK(FeSpace(builtin_mesh("cube", 1), sm11).dimension() == 1158);
    }
    SUBCASE("dimension equals a brute-force count of unique global DoFs")
    {
        const auto sm = SmoothnessVector::minimal(1, 5, 2);
        FeSpace space(builtin_mesh("square", 2), sm);
        std::set<int> gids;
        for (int e = 0; e < space.mesh().element_count(); ++e) {
            const auto basis = space.element_basis(e);
            gids.insert(basis->slot_gid.begin(), basis->slot_gid.end());
        }
        CHECK(static_cast<int>(gids.size()) == space.dimension());
        CHECK(*gids.begin() == 0);
        CHECK(*gids.rbegin() == space.dimension() - 1);
    }
    SUBCASE("two elements sharing a face see identical DoF values")
    {
        auto& rng = test_rng();
        const auto sm = SmoothnessVector::minimal(1, 5, 2);
        FeSpace space(builtin_mesh("square", 1), sm);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<double> u(space.dimension());
        for (double& v : u)
            v = unif(rng);

        for (int e = 0; e < 2; ++e) {
            const auto basis = space.element_basis(e);
            const Matrix G = global_dof_matrix(space, e);
            const auto coeffs = space.element_coefficients(e, u);
            for (int slot = 0; slot < space.local_size(); ++slot) {
                double v = 0.0;
                for (int c = 0; c < space.local_size(); ++c)
                    v += G(slot, c) * coeffs[c];
                CHECK(v == doctest::Approx(u[basis->slot_gid[slot]]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("C^m continuity of random fields")
{
    auto& rng = test_rng();
    const auto sm = SmoothnessVector::minimal(1, 5, 2);
    FeSpace space(builtin_mesh("square", 2), sm);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> u(space.dimension());
    for (double& v : u)
        v = unif(rng);
    auto coeffs = space.all_element_coefficients(u);

    SUBCASE("conforming field has vanishing jumps up to order m")
    {
        CHECK(check_cm_continuity(space, coeffs, 10) <= 1e-9);
    }
    SUBCASE("corrupting one element's coefficients breaks continuity")
    {
        // a lattice point at distance <= m from the interior edge {1,2}
        coeffs[0][lex_index(MultiIndex({1, 2, 2}))] += 1.0;
        CHECK(check_cm_continuity(space, coeffs, 10) > 1e-4);
    }
}

TEST_SUITE_END();
