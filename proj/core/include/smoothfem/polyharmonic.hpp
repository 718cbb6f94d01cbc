#ifndef SMOOTHFEM_POLYHARMONIC_HPP
#define SMOOTHFEM_POLYHARMONIC_HPP

#include "smoothfem/fespace.hpp"
#include "smoothfem/interpolation.hpp"
#include "smoothfem/linalg.hpp"

#include <string>
#include <vector>

namespace sfem {

/// Assembled variational system with the free/constrained partition.
struct LinearSystem {
    Csr A;
    std::vector<double> b;
    std::vector<bool> constrained;
    std::vector<double> constrained_values;
};

/// Dirichlet data for the order-(m+1) polyharmonic problem: an oracle for
/// the traces g_0..g_m and the derivatives the boundary DoFs consume
/// (orders up to r_0). In experiments this is the exact solution.
struct BoundaryData {
    const SmoothFunctionOracle* u = nullptr;
};

/// Exact stiffness (grad^{m+1} Psi_i, grad^{m+1} Psi_j) assembled from the
/// Bernstein derivative and product identities, scattered to global DoFs.
Csr assemble_stiffness(const FeSpace& space, int m);

/// Load vector (f, Psi_i) by quadrature of the given degree (>= 2k).
std::vector<double> assemble_load(const FeSpace& space, const SmoothFunctionOracle& f,
                                  const QuadratureRule& rule);

/// Constrains all DoFs owned by boundary faces to the boundary oracle's
/// DoF values and eliminates them: b <- b - A g on free rows, constrained
/// rows/cols replaced by identity.
void apply_dirichlet(LinearSystem& system, const FeSpace& space, const BoundaryData& bd);

struct SolveReport {
    std::vector<double> x;
    std::string method;       // "cg" or "ldlt"
    int iterations = 0;
    double relative_residual = 0.0;
    std::vector<double> residual_history;
};

/// Jacobi-scaled CG to relative residual 1e-12 with a dense LDL^T fallback
/// for systems up to the given size; throws on failure with the residual
/// history attached to the message.
SolveReport solve(const LinearSystem& system, int dense_fallback_limit = 20000);

} // namespace sfem

#endif
