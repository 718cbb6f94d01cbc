#include "smoothfem/exact_solutions.hpp"
#include "smoothfem/fespace.hpp"
#include "smoothfem/interpolation.hpp"
#include "smoothfem/polyharmonic.hpp"
#include "smoothfem/quadrature.hpp"

#include <benchmark/benchmark.h>

using namespace sfem;

namespace {

void BM_lattice_decomposition(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    const auto sm = SmoothnessVector::minimal(1, k, d);
    for (auto _ : state) {
        auto dec = decompose(sm, d);
        benchmark::DoNotOptimize(dec);
    }
}
BENCHMARK(BM_lattice_decomposition)->Args({5, 2})->Args({9, 2})->Args({11, 3});

void BM_dof_basis_matrix(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    const auto sm = SmoothnessVector::minimal(1, k, d);
    const DofLayout layout = build_layout(sm, d);
    const Mesh mesh = builtin_mesh(d == 2 ? "square" : "cube", 1);
    const ElementGeometry geo = barycentric_gradients(mesh, 0);
    for (auto _ : state) {
        Matrix D = dof_basis_matrix(layout, geo);
        benchmark::DoNotOptimize(D);
    }
}
BENCHMARK(BM_dof_basis_matrix)->Args({5, 2})->Args({9, 2})->Args({9, 3})->Args({11, 3});

void BM_element_basis(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    const auto sm = SmoothnessVector::minimal(1, k, d);
    FeSpace space(builtin_mesh(d == 2 ? "square" : "cube", 1), sm);
    for (auto _ : state) {
        ElementBasis basis = build_element_basis(space, 0);
        benchmark::DoNotOptimize(basis);
    }
}
BENCHMARK(BM_element_basis)->Args({5, 2})->Args({9, 2})->Args({9, 3})->Args({11, 3});

void BM_stiffness_assembly(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    const int n = static_cast<int>(state.range(2));
    const auto sm = SmoothnessVector::minimal(1, k, d);
    FeSpace space(builtin_mesh(d == 2 ? "square" : "cube", n), sm);
    space.element_basis(0);  // warm the cache once
    for (auto _ : state) {
        Csr A = assemble_stiffness(space, 1);
        benchmark::DoNotOptimize(A);
    }
    state.counters["dofs"] = space.dimension();
}
BENCHMARK(BM_stiffness_assembly)->Args({5, 2, 8})->Args({7, 2, 4})->Args({9, 3, 1});

void BM_interpolation(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    const auto sm = SmoothnessVector::minimal(1, k, 2);
    FeSpace space(builtin_mesh("square", 4), sm);
    const NamedSolution sol = exact_solution("sincos45");
    for (auto _ : state) {
        auto ui = interpolate(space, *sol.u);
        benchmark::DoNotOptimize(ui);
    }
}
BENCHMARK(BM_interpolation)->Arg(5)->Arg(7)->Arg(9);

void BM_quadrature_rule(benchmark::State& state)
{
    const int d = static_cast<int>(state.range(0));
    const int degree = static_cast<int>(state.range(1));
    for (auto _ : state) {
        QuadratureRule rule = quadrature(d, degree);
        benchmark::DoNotOptimize(rule);
    }
}
BENCHMARK(BM_quadrature_rule)->Args({2, 14})->Args({3, 22});

} // namespace

BENCHMARK_MAIN();
