#include "smoothfem/frames.hpp"

#include <cmath>
#include <stdexcept>

namespace sfem {

namespace {

/// Modified Gram-Schmidt orthonormalization of a span; returns the
/// orthonormal basis vectors (skipping near-zero residuals).
VectorFamily orthonormalize(const VectorFamily& vs)
{
    VectorFamily q;
    for (Vec v : vs) {
        for (const Vec& u : q)
            v = sub(v, scaled(u, dot(u, v)));
        const double n = norm(v);
        if (n > 1e-12)
            q.push_back(scaled(v, 1.0 / n));
    }
    return q;
}

Vec project_onto(const VectorFamily& orthobasis, const Vec& v)
{
    Vec p{0.0, 0.0, 0.0};
    for (const Vec& u : orthobasis)
        p = add(p, scaled(u, dot(u, v)));
    return p;
}

} // namespace

LocalFrame local_frame(const ElementGeometry& geo, const AbstractFace& face)
{
    const int d = geo.dim;
    LocalFrame fr;
    fr.face = face;
    fr.opposite = face.complement(d).vertices;

    for (int i : fr.opposite) {
        // tangent basis of f cup {i}
        std::vector<int> fi(face.vertices);
        fi.push_back(i);
        VectorFamily tangents;
        for (std::size_t a = 1; a < fi.size(); ++a)
            tangents.push_back(sub(geo.vertices[fi[a]], geo.vertices[fi[0]]));
        const VectorFamily q = orthonormalize(tangents);
        if (static_cast<int>(q.size()) != static_cast<int>(fi.size()) - 1)
            throw std::runtime_error("local_frame: degenerate sub-simplex geometry");

        const Vec g = project_onto(q, geo.grad_lambda[i]);
        const double n2 = dot(g, g);
        if (n2 < 1e-24)
            throw std::runtime_error("local_frame: vanishing tangential gradient");
        fr.normals.push_back(scaled(g, 1.0 / n2));
        fr.duals.push_back(geo.grad_lambda[i]);
    }
    return fr;
}

GlobalFrame global_frame(const std::vector<int>& face_vertices,
                         const std::vector<Vec>& coords, int dim)
{
    const int l = static_cast<int>(face_vertices.size()) - 1;
    for (std::size_t i = 1; i < face_vertices.size(); ++i)
        if (face_vertices[i] <= face_vertices[i - 1])
            throw std::invalid_argument("global_frame: face vertices must be ascending");

    GlobalFrame out;
    out.face = face_vertices;

    if (l == 0) {
        for (int c = 0; c < dim; ++c) {
            Vec e{0.0, 0.0, 0.0};
            e[c] = 1.0;
            out.normals.push_back(e);
        }
        return out;
    }

    VectorFamily tangents;
    for (int i = 1; i <= l; ++i)
        tangents.push_back(sub(coords[i], coords[0]));
    VectorFamily basis = orthonormalize(tangents);
    if (static_cast<int>(basis.size()) != l)
        throw std::runtime_error("global_frame: rank-deficient tangent vectors");

    // pivoted Gram-Schmidt of the canonical axes against the tangent span:
    // pick the axis with the largest residual, deterministic tie-breaking
    std::vector<bool> used(dim, false);
    while (static_cast<int>(out.normals.size()) < dim - l) {
        int best = -1;
        double best_norm = -1.0;
        Vec best_res{0.0, 0.0, 0.0};
        for (int c = 0; c < dim; ++c) {
            if (used[c])
                continue;
            Vec e{0.0, 0.0, 0.0};
            e[c] = 1.0;
            Vec res = sub(e, project_onto(basis, e));
            const double rn = norm(res);
            if (rn > best_norm + 1e-14) {
                best_norm = rn;
                best = c;
                best_res = res;
            }
        }
        if (best < 0 || best_norm < 1e-12)
            throw std::runtime_error("global_frame: could not complete normal basis");
        used[best] = true;
        Vec n = scaled(best_res, 1.0 / best_norm);
        // sign convention: the component of largest magnitude is positive
        int argmax = 0;
        for (int c = 1; c < dim; ++c)
            if (std::abs(n[c]) > std::abs(n[argmax]) + 1e-14)
                argmax = c;
        if (n[argmax] < 0.0)
            n = scaled(n, -1.0);
        basis.push_back(n);
        out.normals.push_back(n);
    }
    return out;
}

int orientation_sign(const ElementGeometry& geo, const GlobalFrame& face_frame,
                     int opposite_local_vertex)
{
    if (face_frame.normals.size() != 1)
        throw std::invalid_argument("orientation_sign: face must have codimension 1");
    const double v = dot(face_frame.normals[0], geo.grad_lambda[opposite_local_vertex]);
    if (v == 0.0)
        throw std::runtime_error("orientation_sign: zero normal projection");
    return v > 0.0 ? 1 : -1;
}

} // namespace sfem
