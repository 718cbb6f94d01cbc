#include "smoothfem/fespace.hpp"

#include "smoothfem/combinatorics.hpp"
#include "smoothfem/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sfem {

DofLayout build_layout(const SmoothnessVector& sm, int d)
{
    DofLayout layout;
    layout.d = d;
    layout.sm = sm;
    layout.dec = decompose(sm, d);

    const Lattice& lat = layout.dec.lattice;
    layout.canon_of_lex.assign(lat.size(), -1);

    for (int l = 0; l <= d; ++l) {
        for (const auto& blk : layout.dec.blocks[l]) {
            DofLayout::BlockRange range;
            range.l = l;
            range.face_index = blk.face_index;
            range.begin = static_cast<int>(layout.rows.size());
            const AbstractFace& f = blk.face;
            const AbstractFace fstar = f.complement(d);
            for (int s = 0; s < static_cast<int>(blk.layers.size()); ++s) {
                range.layer_begin.push_back(static_cast<int>(layout.rows.size()));
                for (int idx : blk.layers[s]) {
                    DofLayout::Row row;
                    row.l = l;
                    row.face_index = blk.face_index;
                    row.s = s;
                    row.lattice_index = idx;
                    row.alpha = lat.point(idx);
                    row.alpha_f = restrict_to(row.alpha, f.vertices);
                    row.alpha_fstar = restrict_to(row.alpha, fstar.vertices);
                    row.ext_alpha_f = extend_from(row.alpha_f, f.vertices, d);
                    layout.canon_of_lex[idx] = static_cast<int>(layout.rows.size());
                    layout.rows.push_back(std::move(row));
                }
            }
            range.layer_begin.push_back(static_cast<int>(layout.rows.size()));
            range.end = static_cast<int>(layout.rows.size());
            layout.block_ranges.push_back(std::move(range));
        }
    }

    layout.ref.resize(d + 1);
    layout.ref_layer_begin.resize(d + 1);
    for (int l = 0; l <= d; ++l) {
        std::vector<int> stdface(l + 1);
        for (int i = 0; i <= l; ++i)
            stdface[i] = i;
        ReferenceLatticeSet rs = reference_set(AbstractFace{stdface}, sm, d);
        layout.ref[l] = std::move(rs.entries);
        auto& lb = layout.ref_layer_begin[l];
        lb.assign(sm.r[l] + 2, 0);
        for (int s = 0; s <= sm.r[l]; ++s) {
            int count = 0;
            for (const auto& e : layout.ref[l])
                if (e.s == s)
                    ++count;
            lb[s + 1] = lb[s] + count;
        }
    }
    return layout;
}

int GlobalDofMap::gid(int l, int face_id, int entry, const DofLayout& layout) const
{
    return base[l] + face_id * layout.ref_size(l) + entry;
}

Matrix dof_basis_matrix(const DofLayout& layout, const ElementGeometry& geo)
{
    const int d = layout.d;
    const int k = layout.sm.k;
    const Lattice& lat = layout.dec.lattice;
    const int n = layout.size();

    // sym((grad lambda)^{alpha~}) for every alpha~ of order s <= r_0
    const int smax = layout.sm.r[0];
    std::vector<std::vector<SymTensor>> gmono(smax + 1);
    std::vector<std::vector<MultiIndex>> orders(smax + 1);
    for (int s = 0; s <= smax; ++s) {
        orders[s] = generate_lattice(s, d);
        gmono[s].reserve(orders[s].size());
        for (const MultiIndex& a : orders[s])
            gmono[s].push_back(sym_monomial(geo.grad_lambda, a, d));
    }

    // local frames per block face
    std::vector<LocalFrame> frames;
    frames.reserve(layout.block_ranges.size());
    for (const auto& range : layout.block_ranges)
        frames.push_back(local_frame(geo, layout.dec.blocks[range.l][range.face_index].face));

    Matrix D(n, n);
    int block_of_row = 0;
    for (int i = 0; i < n; ++i) {
        while (i >= layout.block_ranges[block_of_row].end)
            ++block_of_row;
        const DofLayout::Row& row = layout.rows[i];
        const int s = row.s;

        // weight-folded row tensor of sym(n_f^{alpha_fstar})
        SymTensor nmono = sym_monomial(frames[block_of_row].normals, row.alpha_fstar, d);
        const auto& w = pairing_weights(d, s);
        std::vector<double> folded(nmono.component_count());
        for (int c = 0; c < nmono.component_count(); ++c)
            folded[c] = w[c] * nmono[c];

        // only beta = ext_alpha_f + alpha~ give nonzero entries; entries the
        // block-triangularity theorem proves to vanish stay exact zeros,
        // and the diagonal is the exact integer k!/(k-s)!
        for (std::size_t ai = 0; ai < orders[s].size(); ++ai) {
            const MultiIndex beta = row.ext_alpha_f + orders[s][ai];
            const int col = layout.canon_of_lex[lat.index_of(beta)];
            if (beta == row.alpha) {
                D(i, col) = static_cast<double>(falling_factorial(k, s));
                continue;
            }
            const DofLayout::Row& colrow = layout.rows[col];
            const bool same_face = colrow.l == row.l && colrow.face_index == row.face_index;
            if (same_face ? colrow.s >= s : colrow.l >= row.l)
                continue;
            double pair = 0.0;
            const SymTensor& g = gmono[s][ai];
            for (int c = 0; c < g.component_count(); ++c)
                pair += folded[c] * g[c];
            D(i, col) = derivative_scale(k, s, orders[s][ai]) * pair;
        }
    }
    return D;
}

Matrix local_basis(const DofLayout& layout, const Matrix& D, double* duality_residual)
{
    const int n = D.rows();
    // C_can solves C * D^T = I using the essential lower triangle of D;
    // C is upper triangular in canonical order.
    Matrix C_can(n, n);
    for (int i = 0; i < n; ++i) {
        C_can(i, i) = 1.0 / D(i, i);
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            const double* crow = C_can.row(i);
            const double* drow = D.row(j);
            for (int q = i; q < j; ++q)
                s -= crow[q] * drow[q];
            C_can(i, j) = s / D(j, j);
        }
    }

    if (duality_residual) {
        double res = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double* crow = C_can.row(i);
                const double* drow = D.row(j);
                double s = 0.0;
                for (int q = i; q <= j; ++q)
                    s += crow[q] * drow[q];
                res = std::max(res, std::abs(s - (i == j ? 1.0 : 0.0)));
            }
        *duality_residual = res;
    }

    // reorder columns to lex Bernstein indexing
    Matrix C(n, n);
    for (int j = 0; j < n; ++j) {
        const int lex = layout.rows[j].lattice_index;
        for (int i = 0; i < n; ++i)
            C(i, lex) = C_can(i, j);
    }
    return C;
}

FeSpace::FeSpace(Mesh mesh, const SmoothnessVector& sm)
    : mesh_(std::move(mesh)),
      faces_(enumerate_faces(mesh_)),
      boundary_(boundary_faces(mesh_, faces_)),
      layout_(build_layout(sm, mesh_.dim))
{
    const int d = mesh_.dim;
    const int nt = mesh_.element_count();

    geometry_.reserve(nt);
    for (int e = 0; e < nt; ++e)
        geometry_.push_back(barycentric_gradients(mesh_, e));

    frames_.resize(d + 1);
    for (int l = 0; l < d; ++l) {
        frames_[l].reserve(faces_.count(l));
        for (int fid = 0; fid < faces_.count(l); ++fid) {
            const auto& tuple = faces_.faces[l][fid];
            std::vector<Vec> coords;
            coords.reserve(tuple.size());
            for (int v : tuple)
                coords.push_back(mesh_.node(v));
            frames_[l].push_back(global_frame(tuple, coords, d));
        }
    }

    dofs_.base.resize(d + 2, 0);
    for (int l = 0; l <= d; ++l)
        dofs_.base[l + 1] = dofs_.base[l] + faces_.count(l) * layout_.ref_size(l);
    dofs_.total = dofs_.base[d + 1];
    dofs_.base.resize(d + 1);

    dofs_.meta.resize(dofs_.total);
    for (int l = 0; l <= d; ++l)
        for (int fid = 0; fid < faces_.count(l); ++fid)
            for (int e = 0; e < layout_.ref_size(l); ++e) {
                const int g = dofs_.gid(l, fid, e, layout_);
                dofs_.meta[g] = {l, fid, e, l < d && boundary_.is_boundary[l][fid]};
            }

    // cache element bases while the footprint stays modest
    const std::size_t per_element =
        3 * static_cast<std::size_t>(layout_.size()) * layout_.size() * sizeof(double);
    const std::size_t budget = 256u << 20;
    cache_capacity_ = std::max<std::size_t>(2, budget / std::max<std::size_t>(1, per_element));
}

std::shared_ptr<const ElementBasis> FeSpace::element_basis(int element) const
{
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(element);
        if (it != cache_.end())
            return it->second;
    }
    auto basis = std::make_shared<const ElementBasis>(build_element_basis(*this, element));
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        if (cache_.size() < cache_capacity_)
            cache_.emplace(element, basis);
    }
    return basis;
}

std::vector<double> FeSpace::element_coefficients(int element, const std::vector<double>& u) const
{
    auto basis = element_basis(element);
    const int n = layout_.size();
    std::vector<double> c(n, 0.0);
    for (int slot = 0; slot < n; ++slot) {
        const double us = u[basis->slot_gid[slot]];
        if (us == 0.0)
            continue;
        const double* erow = basis->E.row(slot);
        for (int b = 0; b < n; ++b)
            c[b] += us * erow[b];
    }
    return c;
}

std::vector<std::vector<double>> FeSpace::all_element_coefficients(
    const std::vector<double>& u) const
{
    std::vector<std::vector<double>> out(mesh_.element_count());
    parallel_chunks(0, mesh_.element_count(), [&](int, int b, int e) {
        for (int el = b; el < e; ++el)
            out[el] = element_coefficients(el, u);
    });
    return out;
}

std::vector<ElementBasis::TransformBlock> transformation_matrix(const FeSpace& space, int element,
                                                                const ElementGeometry& geo)
{
    const DofLayout& layout = space.layout();
    const int d = layout.d;
    std::vector<ElementBasis::TransformBlock> blocks;

    for (const auto& range : layout.block_ranges) {
        const int l = range.l;
        const auto& blk = layout.dec.blocks[l][range.face_index];
        const FaceTable::LocalFace& lf = space.faces().local_faces[l][element][range.face_index];

        LocalFrame lframe;
        const GlobalFrame* gframe = nullptr;
        if (l < d) {
            lframe = local_frame(geo, blk.face);
            gframe = &space.frame(l, lf.global_id);
        }

        for (int s = 0; s + 1 < static_cast<int>(range.layer_begin.size()); ++s) {
            const int r0 = range.layer_begin[s];
            const int r1 = range.layer_begin[s + 1];
            if (r0 == r1)
                continue;
            const int e0 = layout.ref_layer_begin[l][s];
            const int e1 = layout.ref_layer_begin[l][s + 1];
            if (r1 - r0 != e1 - e0)
                throw std::runtime_error("transformation_matrix: block size mismatch");
            const int nb = r1 - r0;

            ElementBasis::TransformBlock tblock;
            tblock.begin = r0;
            tblock.tb = Matrix(nb, nb);

            // distinct gammas at this layer with their sym monomials
            std::vector<const MultiIndex*> gammas;
            std::vector<SymTensor> gmono;
            for (int e = e0; e < e1; ++e) {
                const MultiIndex& g = layout.ref[l][e].gamma;
                bool found = false;
                for (const auto* p : gammas)
                    if (*p == g) {
                        found = true;
                        break;
                    }
                if (!found && l < d) {
                    gammas.push_back(&g);
                    gmono.push_back(sym_monomial(gframe->normals, g, d));
                }
            }

            for (int r = r0; r < r1; ++r) {
                const DofLayout::Row& row = layout.rows[r];
                const MultiIndex af_asc = restrict_to(row.alpha, lf.ascperm);
                SymTensor nmono(0, d);
                if (l < d)
                    nmono = sym_monomial(lframe.normals, row.alpha_fstar, d);
                for (int e = e0; e < e1; ++e) {
                    const ReferenceEntry& entry = layout.ref[l][e];
                    if (!(af_asc == entry.alpha_f))
                        continue;
                    double v = 1.0;
                    if (l < d && s > 0) {
                        const SymTensor* gm = nullptr;
                        for (std::size_t gi = 0; gi < gammas.size(); ++gi)
                            if (*gammas[gi] == entry.gamma) {
                                gm = &gmono[gi];
                                break;
                            }
                        v = static_cast<double>(lattice_multinomial(entry.gamma)) *
                            sym_pairing(nmono, *gm);
                    }
                    tblock.tb(r - r0, e - e0) = v;
                }
            }
            blocks.push_back(std::move(tblock));
        }
    }
    return blocks;
}

ElementBasis build_element_basis(const FeSpace& space, int element)
{
    const DofLayout& layout = space.layout();
    const int n = layout.size();
    const ElementGeometry& geo = space.geometry(element);

    ElementBasis eb;
    eb.element = element;
    eb.D = dof_basis_matrix(layout, geo);
    eb.C = local_basis(layout, eb.D, &eb.duality_residual);
    if (eb.duality_residual > 1e-10)
        throw std::runtime_error("build_element_basis: duality residual " +
                                 std::to_string(eb.duality_residual) + " on element " +
                                 std::to_string(element));
    eb.transform = transformation_matrix(space, element, geo);

    eb.E = Matrix(n, n);
    for (const auto& block : eb.transform) {
        const int nb = block.tb.rows();
        for (int e = 0; e < nb; ++e) {
            double* erow = eb.E.row(block.begin + e);
            for (int r = 0; r < nb; ++r) {
                const double t = block.tb(r, e);
                if (t == 0.0)
                    continue;
                const double* crow = eb.C.row(block.begin + r);
                for (int b = 0; b < n; ++b)
                    erow[b] += t * crow[b];
            }
        }
    }

    eb.slot_gid.assign(n, -1);
    for (const auto& range : layout.block_ranges) {
        const int l = range.l;
        const FaceTable::LocalFace& lf = space.faces().local_faces[l][element][range.face_index];
        for (int s = 0; s + 1 < static_cast<int>(range.layer_begin.size()); ++s) {
            const int r0 = range.layer_begin[s];
            const int r1 = range.layer_begin[s + 1];
            const int e0 = layout.ref_layer_begin[l][s];
            for (int r = r0; r < r1; ++r)
                eb.slot_gid[r] = space.dofs().gid(l, lf.global_id, e0 + (r - r0), layout);
        }
    }
    return eb;
}

std::vector<SymTensor> derivative_field(const DofLayout& layout, const ElementGeometry& geo,
                                        const std::vector<double>& lex_coeffs, int j)
{
    const int d = layout.d;
    const int k = layout.sm.k;
    if (j > k)
        throw std::invalid_argument("derivative_field: order exceeds degree");
    const Lattice& lat = layout.dec.lattice;
    const auto alphas = generate_lattice(j, d);
    std::vector<SymTensor> gmono;
    std::vector<double> scale;
    gmono.reserve(alphas.size());
    for (const MultiIndex& a : alphas) {
        gmono.push_back(sym_monomial(geo.grad_lambda, a, d));
        scale.push_back(derivative_scale(k, j, a));
    }

    const auto betas = generate_lattice(k - j, d);
    std::vector<SymTensor> field(betas.size(), SymTensor(j, d));
    for (std::size_t b = 0; b < betas.size(); ++b)
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            const double c = lex_coeffs[lat.index_of(betas[b] + alphas[ai])];
            if (c != 0.0)
                field[b].axpy(scale[ai] * c, gmono[ai]);
        }
    return field;
}

SymTensor eval_derivative_field(const std::vector<SymTensor>& field, int k_minus_j, int d,
                                const std::vector<double>& lambda)
{
    const auto vals = bernstein_eval_all(k_minus_j, d, lambda);
    SymTensor out(field.empty() ? 0 : field[0].order(), d);
    for (std::size_t b = 0; b < field.size(); ++b)
        if (vals[b] != 0.0)
            out.axpy(vals[b], field[b]);
    return out;
}

double check_cm_continuity(const FeSpace& space, const std::vector<std::vector<double>>& coeffs,
                           int points_per_face, unsigned seed)
{
    const int d = space.mesh().dim;
    const int m = space.layout().sm.m;
    const int k = space.layout().sm.k;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 0.95);

    double scale = 0.0;
    for (const auto& c : coeffs)
        for (double v : c)
            scale = std::max(scale, std::abs(v));
    if (scale == 0.0)
        scale = 1.0;

    // derivative fields per (element, order), built on demand
    std::vector<std::vector<std::vector<SymTensor>>> fields(
        space.mesh().element_count(), std::vector<std::vector<SymTensor>>(m + 1));
    auto field = [&](int e, int j) -> const std::vector<SymTensor>& {
        if (fields[e][j].empty())
            fields[e][j] = derivative_field(space.layout(), space.geometry(e), coeffs[e], j);
        return fields[e][j];
    };

    double max_jump = 0.0;
    for (int fid = 0; fid < space.faces().count(d - 1); ++fid) {
        const auto& elems = space.faces().face_elements[d - 1][fid];
        if (elems.size() != 2)
            continue;
        const auto& tuple = space.faces().faces[d - 1][fid];
        std::vector<Vec> corners;
        for (int v : tuple)
            corners.push_back(space.mesh().node(v));

        for (int p = 0; p < points_per_face; ++p) {
            // random interior barycentric point of the face
            std::vector<double> w(tuple.size());
            double tot = 0.0;
            for (auto& v : w) {
                v = unif(rng);
                tot += v;
            }
            Vec x{0.0, 0.0, 0.0};
            for (std::size_t i = 0; i < corners.size(); ++i)
                x = add(x, scaled(corners[i], w[i] / tot));

            for (int j = 0; j <= m; ++j) {
                SymTensor a(j, d), b(j, d);
                bool first = true;
                for (int e : elems) {
                    auto lambda = space.geometry(e).barycentric(x);
                    for (double& lv : lambda)
                        lv = std::max(lv, 0.0);
                    double lsum = 0.0;
                    for (double lv : lambda)
                        lsum += lv;
                    for (double& lv : lambda)
                        lv /= lsum;
                    SymTensor v = eval_derivative_field(field(e, j), k - j, d, lambda);
                    (first ? a : b) = std::move(v);
                    first = false;
                }
                SymTensor diff = a;
                diff.axpy(-1.0, b);
                const double jump = std::sqrt(std::max(0.0, sym_pairing(diff, diff)));
                max_jump = std::max(max_jump, jump);
            }
        }
    }
    return max_jump / scale;
}

} // namespace sfem
