#include "smoothfem/polyharmonic.hpp"

#include "smoothfem/combinatorics.hpp"
#include "smoothfem/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfem {

namespace {

/// Geometry-independent table of int_ref B^a_{k'} B^b_{k'} for a, b in
/// T^d_{k'} (reference measure 1): pc(a,b) * k'! d! / (k'+ ... ) combined
/// into (a+b choose a)^{-multi} style exact ratios.
Matrix bernstein_mass_table(int kp, int d)
{
    const auto points = generate_lattice(kp, d);
    const int n = static_cast<int>(points.size());
    // int_T B^a B^b = pc(a,b) * int_T B^{a+b}_{2k'} = pc(a,b) * (2k')! d!/(2k'+d)! |T|
    const double base = 1.0 / static_cast<double>(binom(2 * kp + d, d));
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = bernstein_product_coeff(points[i], points[j]) * base;
            M(i, j) = v;
            M(j, i) = v;
        }
    return M;
}

} // namespace

Csr assemble_stiffness(const FeSpace& space, int m)
{
    const DofLayout& layout = space.layout();
    const int d = space.mesh().dim;
    const int k = layout.sm.k;
    const int r = m + 1;
    if (k < r)
        throw std::invalid_argument("assemble_stiffness: k must be at least m+1");

    const Lattice& lat = layout.dec.lattice;
    const int n = layout.size();
    const auto alphas = generate_lattice(r, d);
    const int na = static_cast<int>(alphas.size());
    std::vector<double> scales(na);
    for (int a = 0; a < na; ++a)
        scales[a] = derivative_scale(k, r, alphas[a]);

    const auto residuals = generate_lattice(k - r, d);
    const int nr = static_cast<int>(residuals.size());
    const Matrix mass = bernstein_mass_table(k - r, d);

    // lex index of residual + alpha for the scatter of term products
    std::vector<std::vector<int>> shift(na, std::vector<int>(nr));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nr; ++b)
            shift[a][b] = lat.index_of(residuals[b] + alphas[a]);

    const int nt = space.mesh().element_count();
    const int nw = std::max(1, worker_threads());
    std::vector<std::vector<int>> rows_w(nw), cols_w(nw);
    std::vector<std::vector<double>> vals_w(nw);

    parallel_chunks(0, nt, [&](int chunk, int chunk_begin, int chunk_end) {
    auto& rows = rows_w[chunk];
    auto& cols = cols_w[chunk];
    auto& vals = vals_w[chunk];
    for (int e = chunk_begin; e < chunk_end; ++e) {
        const ElementGeometry& geo = space.geometry(e);
        auto basis = space.element_basis(e);

        // P[a][g] = sym((grad l)^alpha_a) : sym((grad l)^alpha_g)
        std::vector<SymTensor> gmono;
        gmono.reserve(na);
        for (int a = 0; a < na; ++a)
            gmono.push_back(sym_monomial(geo.grad_lambda, alphas[a], d));
        Matrix P(na, na);
        for (int a = 0; a < na; ++a)
            for (int g = a; g < na; ++g) {
                P(a, g) = sym_pairing(gmono[a], gmono[g]);
                P(g, a) = P(a, g);
            }

        // stiffness in the Bernstein basis
        Matrix Ab(n, n);
        for (int a = 0; a < na; ++a)
            for (int g = 0; g < na; ++g) {
                const double w = scales[a] * scales[g] * P(a, g) * geo.measure;
                if (w == 0.0)
                    continue;
                for (int bi = 0; bi < nr; ++bi) {
                    const int row = shift[a][bi];
                    const double* mrow = mass.row(bi);
                    double* arow = Ab.row(row);
                    const auto& sg = shift[g];
                    for (int bj = 0; bj < nr; ++bj)
                        arow[sg[bj]] += w * mrow[bj];
                }
            }

        // transform to the global dual basis and scatter
        const Matrix EA = matmul(basis->E, Ab);
        const Matrix Ag = matmul_nt(EA, basis->E);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                rows.push_back(basis->slot_gid[i]);
                cols.push_back(basis->slot_gid[j]);
                vals.push_back(Ag(i, j));
            }
    }
    });

    // merge worker buffers in chunk order
    std::vector<int> rows, cols;
    std::vector<double> vals;
    for (int w = 0; w < nw; ++w) {
        rows.insert(rows.end(), rows_w[w].begin(), rows_w[w].end());
        cols.insert(cols.end(), cols_w[w].begin(), cols_w[w].end());
        vals.insert(vals.end(), vals_w[w].begin(), vals_w[w].end());
    }
    return Csr::from_triplets(space.dimension(), rows, cols, vals);
}

std::vector<double> assemble_load(const FeSpace& space, const SmoothFunctionOracle& f,
                                  const QuadratureRule& rule)
{
    const DofLayout& layout = space.layout();
    const int d = space.mesh().dim;
    const int k = layout.sm.k;
    const int n = layout.size();

    // Bernstein values at the quadrature points (geometry independent)
    Matrix bvals(rule.size(), n);
    for (int q = 0; q < rule.size(); ++q) {
        std::vector<double> lambda(rule.point(q), rule.point(q) + d + 1);
        const auto row = bernstein_eval_all(k, d, lambda);
        for (int b = 0; b < n; ++b)
            bvals(q, b) = row[b];
    }

    const int nw = std::max(1, worker_threads());
    std::vector<std::vector<double>> b_w(nw, std::vector<double>(space.dimension(), 0.0));
    parallel_chunks(0, space.mesh().element_count(), [&](int chunk, int cb, int ce) {
    std::vector<double>& b = b_w[chunk];
    for (int e = cb; e < ce; ++e) {
        const ElementGeometry& geo = space.geometry(e);
        auto basis = space.element_basis(e);

        // w_q |T| f(x_q) against each Bernstein function, then against E
        std::vector<double> fb(n, 0.0);
        for (int q = 0; q < rule.size(); ++q) {
            std::vector<double> lambda(rule.point(q), rule.point(q) + d + 1);
            const double wq = rule.weights[q] * geo.measure * f.value(geo.point(lambda));
            const double* brow = bvals.row(q);
            for (int c = 0; c < n; ++c)
                fb[c] += wq * brow[c];
        }
        for (int slot = 0; slot < n; ++slot) {
            const double* erow = basis->E.row(slot);
            double s = 0.0;
            for (int c = 0; c < n; ++c)
                s += erow[c] * fb[c];
            b[basis->slot_gid[slot]] += s;
        }
    }
    });
    std::vector<double> b(space.dimension(), 0.0);
    for (int w = 0; w < nw; ++w)
        for (int i = 0; i < space.dimension(); ++i)
            b[i] += b_w[w][i];
    return b;
}

namespace {

/// Weighted Gram-Schmidt in the Frobenius pairing; appends v to the basis
/// when its residual is nontrivial.
void append_orthonormal(std::vector<SymTensor>& basis, SymTensor v)
{
    for (const SymTensor& q : basis)
        v.axpy(-sym_pairing(q, v), q);
    const double n = std::sqrt(std::max(0.0, sym_pairing(v, v)));
    if (n > 1e-10) {
        for (int c = 0; c < v.component_count(); ++c)
            v[c] /= n;
        basis.push_back(std::move(v));
    }
}

/// Marks which reference entries of a boundary face are determined by the
/// Dirichlet traces g_0..g_m: derivatives of order s <= m always; higher
/// orders only when sym(N_f^gamma) lies in the span of derivative
/// monomials with at most m factors normal to an incident boundary
/// (d-1)-face (tangential derivatives of the given data).
std::vector<bool> determined_entries(const FeSpace& space, int l, int face_id, int m)
{
    const DofLayout& layout = space.layout();
    const int d = space.mesh().dim;
    const auto& entries = layout.ref[l];
    std::vector<bool> determined(entries.size(), false);

    // incident boundary (d-1)-faces (the face itself when l = d-1)
    std::vector<int> incident;
    if (l == d - 1) {
        incident.push_back(face_id);
    } else {
        const auto& tuple = space.faces().faces[l][face_id];
        for (int fb : space.boundary().ids[d - 1]) {
            const auto& big = space.faces().faces[d - 1][fb];
            bool contains = true;
            for (int v : tuple)
                if (std::find(big.begin(), big.end(), v) == big.end()) {
                    contains = false;
                    break;
                }
            if (contains)
                incident.push_back(fb);
        }
    }

    // adapted orthonormal frames (tangents + unit normal) per incident face
    std::vector<VectorFamily> adapted;
    for (int fb : incident) {
        const auto& big = space.faces().faces[d - 1][fb];
        VectorFamily fam;
        Vec origin = space.mesh().node(big[0]);
        for (std::size_t i = 1; i < big.size(); ++i) {
            Vec t = sub(space.mesh().node(big[i]), origin);
            for (const Vec& q : fam)
                t = sub(t, scaled(q, dot(q, t)));
            const double n = norm(t);
            if (n > 1e-12)
                fam.push_back(scaled(t, 1.0 / n));
        }
        fam.push_back(space.frame(d - 1, fb).normals[0]);  // unit normal last
        adapted.push_back(std::move(fam));
    }

    for (std::size_t e = 0; e < entries.size(); ++e) {
        const int s = entries[e].s;
        if (s <= m) {
            determined[e] = true;
            continue;
        }
        // span of monomials with <= m normal factors, over all incident faces
        std::vector<SymTensor> basis;
        for (const VectorFamily& fam : adapted)
            for (const MultiIndex& mu : generate_lattice(s, d - 1)) {
                if (mu[d - 1] > m)
                    continue;  // last slot is the normal direction
                append_orthonormal(basis, sym_monomial(fam, mu, d));
            }
        SymTensor S = sym_monomial(space.frame(l, face_id).normals, entries[e].gamma, d);
        const double s0 = std::sqrt(std::max(0.0, sym_pairing(S, S)));
        for (const SymTensor& q : basis)
            S.axpy(-sym_pairing(q, S), q);
        const double res = std::sqrt(std::max(0.0, sym_pairing(S, S)));
        determined[e] = res <= 1e-8 * std::max(1.0, s0);
    }
    return determined;
}

} // namespace

void apply_dirichlet(LinearSystem& system, const FeSpace& space, const BoundaryData& bd)
{
    const int d = space.mesh().dim;
    const DofLayout& layout = space.layout();
    const int m = layout.sm.m;
    const int ndof = space.dimension();
    if (!bd.u)
        throw std::invalid_argument("apply_dirichlet: missing boundary oracle");

    system.constrained.assign(ndof, false);
    system.constrained_values.assign(ndof, 0.0);

    for (int l = 0; l < d; ++l) {
        if (layout.ref_size(l) == 0)
            continue;
        for (int fid : space.boundary().ids[l]) {
            const auto vals = face_dof_values(space, l, fid, *bd.u);
            const auto determined = determined_entries(space, l, fid, m);
            for (int e = 0; e < layout.ref_size(l); ++e) {
                if (!determined[e])
                    continue;
                const int g = space.dofs().gid(l, fid, e, layout);
                system.constrained[g] = true;
                system.constrained_values[g] = vals[e];
            }
        }
    }

    // b <- b - A g on free rows; constrained rows/cols become identity
    std::vector<double> g(ndof, 0.0);
    for (int i = 0; i < ndof; ++i)
        if (system.constrained[i])
            g[i] = system.constrained_values[i];
    std::vector<double> Ag(ndof, 0.0);
    system.A.multiply(g.data(), Ag.data());
    for (int i = 0; i < ndof; ++i)
        system.b[i] = system.constrained[i] ? system.constrained_values[i] : system.b[i] - Ag[i];

    Csr& A = system.A;
    for (int i = 0; i < A.n; ++i)
        for (int p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p) {
            const int j = A.col[p];
            if (system.constrained[i] || system.constrained[j])
                A.val[p] = (i == j) ? 1.0 : 0.0;
        }
}

SolveReport solve(const LinearSystem& system, int dense_fallback_limit)
{
    const int n = system.A.n;
    SolveReport rep;

    // symmetric Jacobi scaling evens out the derivative-order disparity
    std::vector<double> dscale = system.A.diagonal();
    for (double& v : dscale)
        v = (v > 0.0) ? 1.0 / std::sqrt(v) : 1.0;

    Csr As = system.A;
    for (int i = 0; i < n; ++i)
        for (int p = As.row_ptr[i]; p < As.row_ptr[i + 1]; ++p)
            As.val[p] *= dscale[i] * dscale[As.col[p]];
    std::vector<double> bs(n);
    for (int i = 0; i < n; ++i)
        bs[i] = system.b[i] * dscale[i];

    const int cap = std::max(1000, 10 * n);
    CgResult cg = cg_solve(As, bs, 1e-12, cap);
    if (cg.converged) {
        rep.method = "cg";
        rep.iterations = cg.iterations;
        rep.relative_residual = cg.relative_residual;
        rep.residual_history = std::move(cg.residual_history);
        rep.x.resize(n);
        for (int i = 0; i < n; ++i)
            rep.x[i] = cg.x[i] * dscale[i];
        return rep;
    }

    if (n > dense_fallback_limit) {
        std::string msg = "solve: CG stalled at relative residual " +
                          std::to_string(cg.relative_residual) + " after " +
                          std::to_string(cg.iterations) + " iterations, no fallback for n=" +
                          std::to_string(n);
        throw std::runtime_error(msg);
    }

    Matrix Ad = As.dense();
    std::vector<double> x = ldlt_solve(Ad, bs);
    // a few refinement sweeps keep the energy-norm error near machine level
    for (int sweep = 0; sweep < 3; ++sweep) {
        std::vector<double> r(n);
        As.multiply(x.data(), r.data());
        for (int i = 0; i < n; ++i)
            r[i] = bs[i] - r[i];
        const std::vector<double> dx = ldlt_solve(Ad, r);
        for (int i = 0; i < n; ++i)
            x[i] += dx[i];
    }

    std::vector<double> r(n);
    As.multiply(x.data(), r.data());
    double rn = 0.0, bn = 0.0;
    for (int i = 0; i < n; ++i) {
        rn += (bs[i] - r[i]) * (bs[i] - r[i]);
        bn += bs[i] * bs[i];
    }
    rep.method = "ldlt";
    rep.iterations = cg.iterations;
    rep.relative_residual = bn > 0.0 ? std::sqrt(rn / bn) : 0.0;
    rep.residual_history = std::move(cg.residual_history);
    rep.x.resize(n);
    for (int i = 0; i < n; ++i)
        rep.x[i] = x[i] * dscale[i];
    return rep;
}

} // namespace sfem
