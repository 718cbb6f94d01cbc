#include "smoothfem/interpolation.hpp"

#include "smoothfem/combinatorics.hpp"
#include "smoothfem/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace sfem {

double SmoothFunctionOracle::value(const Vec& x) const
{
    return partial(MultiIndex(std::vector<int>(dim(), 0)), x);
}

SymTensor SmoothFunctionOracle::gradient(int r, const Vec& x) const
{
    const int d = dim();
    SymTensor g(r, d);
    const auto deltas = generate_lattice(r, d - 1);
    for (std::size_t i = 0; i < deltas.size(); ++i)
        g[static_cast<int>(i)] = partial(deltas[i], x);
    return g;
}

FiniteDifferenceOracle::FiniteDifferenceOracle(std::function<double(const Vec&)> f, int dim,
                                               int max_order)
    : f_(std::move(f)), dim_(dim), max_order_(max_order)
{
}

double FiniteDifferenceOracle::partial(const MultiIndex& delta, const Vec& x) const
{
    const int order = delta.degree();
    if (order > max_order_)
        throw std::invalid_argument("FiniteDifferenceOracle: order beyond configured maximum");
    if (order == 0)
        return f_(x);

    // reduce one derivative in the first active axis by central differences
    int axis = 0;
    while (delta[axis] == 0)
        ++axis;
    MultiIndex lower = delta;
    lower[axis] -= 1;

    // order-adaptive step: eps^(1/(order+2)) balances truncation/rounding
    const double h = std::pow(2.2e-16, 1.0 / (order + 2));
    Vec xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    return (partial(lower, xp) - partial(lower, xm)) / (2.0 * h);
}

namespace {

/// Per-(s, gamma) groups of reference entries of one face dimension.
struct EntryGroup {
    int s = 0;
    MultiIndex gamma;
    std::vector<std::pair<int, MultiIndex>> entries;  // (entry index, alpha_f)
};

std::vector<EntryGroup> group_entries(const DofLayout& layout, int l)
{
    std::vector<EntryGroup> groups;
    const auto& entries = layout.ref[l];
    for (int e = 0; e < static_cast<int>(entries.size()); ++e) {
        const ReferenceEntry& re = entries[e];
        EntryGroup* g = nullptr;
        for (auto& eg : groups)
            if (eg.s == re.s && eg.gamma == re.gamma) {
                g = &eg;
                break;
            }
        if (!g) {
            groups.push_back(EntryGroup{re.s, re.gamma, {}});
            g = &groups.back();
        }
        g->entries.emplace_back(e, re.alpha_f);
    }
    return groups;
}

} // namespace

std::vector<double> face_dof_values(const FeSpace& space, int l, int face_id,
                                    const SmoothFunctionOracle& u)
{
    const DofLayout& layout = space.layout();
    const int d = space.mesh().dim;
    const int k = layout.sm.k;
    if (u.dim() != d)
        throw std::invalid_argument("face_dof_values: oracle dimension mismatch");

    const auto& tuple = space.faces().faces[l][face_id];
    std::vector<Vec> corners;
    corners.reserve(tuple.size());
    for (int v : tuple)
        corners.push_back(space.mesh().node(v));

    std::vector<double> values(layout.ref_size(l), 0.0);
    for (const EntryGroup& g : group_entries(layout, l)) {
        const int s = g.s;
        if (s > u.max_order())
            throw std::invalid_argument("face_dof_values: oracle missing derivative order " +
                                        std::to_string(s));
        const int deg = k - s;
        SymTensor nmono(0, d);
        if (l < d)
            nmono = sym_monomial(space.frame(l, face_id).normals, g.gamma, d);

        // sample d^s u / dN^gamma at the degree-(k-s) lattice points of the face
        const auto points = generate_lattice(deg, l);
        std::vector<double> samples(points.size());
        for (std::size_t p = 0; p < points.size(); ++p) {
            Vec x{0.0, 0.0, 0.0};
            for (int i = 0; i <= l; ++i) {
                const double w = deg > 0 ? static_cast<double>(points[p][i]) / deg
                                         : 1.0 / static_cast<double>(l + 1);
                x = add(x, scaled(corners[i], w));
            }
            samples[p] = (s == 0) ? u.value(x) : sym_pairing(u.gradient(s, x), nmono);
        }
        const std::vector<double> bern = lagrange_to_bernstein(l, deg, samples);
        for (const auto& [entry_idx, alpha_f] : g.entries)
            values[entry_idx] = bern[lex_index(alpha_f)];
    }
    return values;
}

std::vector<double> interpolate(const FeSpace& space, const SmoothFunctionOracle& u)
{
    const int d = space.mesh().dim;
    const DofLayout& layout = space.layout();
    std::vector<double> ui(space.dimension(), 0.0);
    for (int l = 0; l <= d; ++l) {
        if (layout.ref_size(l) == 0)
            continue;
        for (int fid = 0; fid < space.faces().count(l); ++fid) {
            const auto vals = face_dof_values(space, l, fid, u);
            for (int e = 0; e < layout.ref_size(l); ++e)
                ui[space.dofs().gid(l, fid, e, layout)] = vals[e];
        }
    }
    return ui;
}

std::vector<double> local_interpolate(const FeSpace& space, int element,
                                      const SmoothFunctionOracle& u)
{
    const DofLayout& layout = space.layout();
    const int d = space.mesh().dim;
    const int k = layout.sm.k;
    const ElementGeometry& geo = space.geometry(element);

    std::vector<double> values(layout.size(), 0.0);
    for (const auto& range : layout.block_ranges) {
        const int l = range.l;
        const auto& blk = layout.dec.blocks[l][range.face_index];
        LocalFrame frame;
        if (l < d)
            frame = local_frame(geo, blk.face);

        std::vector<Vec> corners;
        for (int v : blk.face.vertices)
            corners.push_back(geo.vertices[v]);

        for (int s = 0; s + 1 < static_cast<int>(range.layer_begin.size()); ++s) {
            const int r0 = range.layer_begin[s];
            const int r1 = range.layer_begin[s + 1];
            if (r0 == r1)
                continue;
            const int deg = k - s;
            const auto points = generate_lattice(deg, l);

            // samples per distinct alpha_fstar are grouped below
            std::vector<MultiIndex> seen;
            std::vector<std::vector<double>> bern_by_fstar;
            for (int r = r0; r < r1; ++r) {
                const DofLayout::Row& row = layout.rows[r];
                int found = -1;
                for (std::size_t q = 0; q < seen.size(); ++q)
                    if (seen[q] == row.alpha_fstar) {
                        found = static_cast<int>(q);
                        break;
                    }
                if (found < 0) {
                    SymTensor nmono(0, d);
                    if (l < d)
                        nmono = sym_monomial(frame.normals, row.alpha_fstar, d);
                    std::vector<double> samples(points.size());
                    for (std::size_t p = 0; p < points.size(); ++p) {
                        Vec x{0.0, 0.0, 0.0};
                        for (int i = 0; i <= l; ++i) {
                            const double w = deg > 0 ? static_cast<double>(points[p][i]) / deg
                                                     : 1.0 / static_cast<double>(l + 1);
                            x = add(x, scaled(corners[i], w));
                        }
                        samples[p] =
                            (s == 0) ? u.value(x) : sym_pairing(u.gradient(s, x), nmono);
                    }
                    seen.push_back(row.alpha_fstar);
                    bern_by_fstar.push_back(lagrange_to_bernstein(l, deg, samples));
                    found = static_cast<int>(seen.size()) - 1;
                }
                values[r] = bern_by_fstar[found][lex_index(row.alpha_f)];
            }
        }
    }
    return values;
}

double error_norm(const FeSpace& space, const std::vector<std::vector<double>>& coeffs,
                  const SmoothFunctionOracle& u, int j, int quad_degree)
{
    const DofLayout& layout = space.layout();
    const int d = space.mesh().dim;
    const int k = layout.sm.k;
    if (quad_degree <= 0)
        quad_degree = 2 * k;
    const QuadratureRule rule = quadrature(d, quad_degree);

    // Bernstein values of degree k-j at all quadrature points (barycentric,
    // geometry independent)
    const int nb = static_cast<int>(binom(k - j + d, d));
    Matrix bvals(rule.size(), nb);
    for (int q = 0; q < rule.size(); ++q) {
        std::vector<double> lambda(rule.point(q), rule.point(q) + d + 1);
        const auto row = bernstein_eval_all(k - j, d, lambda);
        for (int b = 0; b < nb; ++b)
            bvals(q, b) = row[b];
    }

    const auto& weights = pairing_weights(d, j);
    const int nt = space.mesh().element_count();
    std::vector<double> partial(std::max(1, worker_threads()), 0.0);
    parallel_chunks(0, nt, [&](int chunk, int begin, int end) {
        double sum = 0.0;
        for (int e = begin; e < end; ++e) {
            const ElementGeometry& geo = space.geometry(e);
            const auto field = derivative_field(layout, geo, coeffs[e], j);
            const int ncomp = field.empty() ? 1 : field[0].component_count();

            double acc = 0.0;
            for (int q = 0; q < rule.size(); ++q) {
                std::vector<double> lambda(rule.point(q), rule.point(q) + d + 1);
                const Vec x = geo.point(lambda);
                SymTensor uh(j, d);
                for (int b = 0; b < nb; ++b) {
                    const double bv = bvals(q, b);
                    if (bv != 0.0)
                        uh.axpy(bv, field[b]);
                }
                const SymTensor ux = u.gradient(j, x);
                double norm2 = 0.0;
                for (int c = 0; c < ncomp; ++c) {
                    const double diff = ux[c] - uh[c];
                    norm2 += weights[c] * diff * diff;
                }
                acc += rule.weights[q] * norm2;
            }
            sum += acc * geo.measure;
        }
        partial[chunk] = sum;
    });
    double total = 0.0;
    for (double v : partial)
        total += v;
    return std::sqrt(std::max(0.0, total));
}

} // namespace sfem
