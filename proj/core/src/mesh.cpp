#include "smoothfem/mesh.hpp"

#include "smoothfem/lattice.hpp"
#include "smoothfem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sfem {

Vec Mesh::node(int i) const
{
    Vec v{0.0, 0.0, 0.0};
    for (int c = 0; c < dim; ++c)
        v[c] = nodes[static_cast<std::size_t>(i) * dim + c];
    return v;
}

FaceTable enumerate_faces(const Mesh& mesh)
{
    const int d = mesh.dim;
    const int nt = mesh.element_count();

    FaceTable table;
    table.dim = d;
    table.faces.resize(d + 1);
    table.local_faces.resize(d + 1);
    table.face_elements.resize(d + 1);

    for (int t = 0; t < nt; ++t) {
        std::vector<int> seen(mesh.elements.begin() + t * (d + 1),
                              mesh.elements.begin() + (t + 1) * (d + 1));
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw std::invalid_argument("enumerate_faces: repeated vertex in element " +
                                        std::to_string(t));
    }

    for (int l = 0; l <= d; ++l) {
        const auto local = subsimplices(d, l);
        std::map<std::vector<int>, int> ids;  // ascending tuple -> id (by lex order)
        std::vector<std::vector<std::vector<int>>> raw(nt);

        for (int t = 0; t < nt; ++t) {
            raw[t].reserve(local.size());
            for (const AbstractFace& f : local) {
                std::vector<int> tuple(f.vertices.size());
                for (std::size_t i = 0; i < f.vertices.size(); ++i)
                    tuple[i] = mesh.vertex(t, f.vertices[i]);
                std::sort(tuple.begin(), tuple.end());
                ids.emplace(tuple, 0);
                raw[t].push_back(std::move(tuple));
            }
        }

        int next = 0;
        for (auto& [tuple, id] : ids)
            id = next++;

        table.faces[l].resize(ids.size());
        for (const auto& [tuple, id] : ids)
            table.faces[l][id] = tuple;
        table.face_elements[l].assign(ids.size(), {});

        table.local_faces[l].resize(nt);
        for (int t = 0; t < nt; ++t) {
            table.local_faces[l][t].resize(local.size());
            for (std::size_t fi = 0; fi < local.size(); ++fi) {
                const std::vector<int>& tuple = raw[t][fi];
                FaceTable::LocalFace lf;
                lf.global_id = ids.at(tuple);
                // ascperm[i] = local position of the i-th smallest global id
                lf.ascperm.resize(tuple.size());
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    int pos = -1;
                    for (int p : local[fi].vertices)
                        if (mesh.vertex(t, p) == tuple[i]) {
                            pos = p;
                            break;
                        }
                    lf.ascperm[i] = pos;
                }
                table.face_elements[l][lf.global_id].push_back(t);
                table.local_faces[l][t][fi] = std::move(lf);
            }
        }
        for (auto& elems : table.face_elements[l]) {
            std::sort(elems.begin(), elems.end());
            elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        }
    }
    return table;
}

ElementGeometry barycentric_gradients(const Mesh& mesh, int element)
{
    const int d = mesh.dim;
    ElementGeometry geo;
    geo.dim = d;
    geo.vertices.resize(d + 1);
    for (int i = 0; i <= d; ++i)
        geo.vertices[i] = mesh.node(mesh.vertex(element, i));

    // edge matrix columns x_i - x_0
    Matrix E(d, d);
    for (int j = 1; j <= d; ++j)
        for (int c = 0; c < d; ++c)
            E(c, j - 1) = geo.vertices[j][c] - geo.vertices[0][c];

    double det = 0.0;
    Matrix Einv = invert_small(E, &det);
    if (std::abs(det) < 1e-14)
        throw std::invalid_argument("barycentric_gradients: degenerate element " +
                                    std::to_string(element));
    double fact = 1.0;
    for (int i = 2; i <= d; ++i)
        fact *= i;
    geo.measure = std::abs(det) / fact;

    // lambda_j(x) = (E^{-1}(x - x_0))_j for j >= 1, so grad lambda_j = row j
    geo.grad_lambda.assign(d + 1, Vec{0.0, 0.0, 0.0});
    for (int j = 1; j <= d; ++j)
        for (int c = 0; c < d; ++c)
            geo.grad_lambda[j][c] = Einv(j - 1, c);
    for (int j = 1; j <= d; ++j)
        for (int c = 0; c < d; ++c)
            geo.grad_lambda[0][c] -= geo.grad_lambda[j][c];
    return geo;
}

std::vector<double> ElementGeometry::barycentric(const Vec& x) const
{
    std::vector<double> lambda(dim + 1);
    lambda[0] = 1.0;
    for (int j = 1; j <= dim; ++j) {
        lambda[j] = dot(grad_lambda[j], sub(x, vertices[0]));
        lambda[0] -= lambda[j];
    }
    return lambda;
}

Vec ElementGeometry::point(const std::vector<double>& lambda) const
{
    Vec x{0.0, 0.0, 0.0};
    for (int i = 0; i <= dim; ++i)
        x = add(x, scaled(vertices[i], lambda[i]));
    return x;
}

namespace {

Mesh square_mesh(int n)
{
    Mesh mesh;
    mesh.dim = 2;
    const int nn = n + 1;
    mesh.nodes.resize(static_cast<std::size_t>(nn) * nn * 2);
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            const int id = j * nn + i;
            mesh.nodes[2 * id] = static_cast<double>(i) / n;
            mesh.nodes[2 * id + 1] = static_cast<double>(j) / n;
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int a = j * nn + i;
            const int b = j * nn + i + 1;
            const int c = (j + 1) * nn + i;
            const int e = (j + 1) * nn + i + 1;
            // split along the b-c diagonal in every cell
            mesh.elements.insert(mesh.elements.end(), {a, b, c});
            mesh.elements.insert(mesh.elements.end(), {b, e, c});
        }
    return mesh;
}

Mesh cube_mesh(int n)
{
    Mesh mesh;
    mesh.dim = 3;
    const int nn = n + 1;
    mesh.nodes.resize(static_cast<std::size_t>(nn) * nn * nn * 3);
    auto id = [nn](int i, int j, int k) { return (k * nn + j) * nn + i; };
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                const int p = id(i, j, k);
                mesh.nodes[3 * p] = static_cast<double>(i) / n;
                mesh.nodes[3 * p + 1] = static_cast<double>(j) / n;
                mesh.nodes[3 * p + 2] = static_cast<double>(k) / n;
            }
    // Kuhn pattern: six tetrahedra per cell along vertex-ordered paths from
    // the low corner to the high corner
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (const auto& p : perms) {
                    int c[3] = {i, j, k};
                    std::vector<int> tet;
                    tet.push_back(id(c[0], c[1], c[2]));
                    for (int step = 0; step < 3; ++step) {
                        ++c[p[step]];
                        tet.push_back(id(c[0], c[1], c[2]));
                    }
                    mesh.elements.insert(mesh.elements.end(), tet.begin(), tet.end());
                }
    return mesh;
}

} // namespace

Mesh builtin_mesh(const std::string& kind, int n)
{
    if (n < 1)
        throw std::invalid_argument("builtin_mesh: n must be >= 1");
    if (kind == "square")
        return square_mesh(n);
    if (kind == "cube")
        return cube_mesh(n);
    throw std::invalid_argument("builtin_mesh: unknown kind '" + kind + "'");
}

Mesh load_mesh(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_mesh: cannot open '" + path + "'");

    Mesh mesh;
    int lineno = 0;
    int n_nodes = -1, n_elems = -1;
    int nodes_read = 0, elems_read = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        if (n_nodes < 0) {
            if (!(ls >> mesh.dim >> n_nodes >> n_elems) || mesh.dim < 1 || mesh.dim > 3 ||
                n_nodes < 1 || n_elems < 1)
                throw std::runtime_error("load_mesh: malformed header at line " +
                                         std::to_string(lineno));
            mesh.nodes.reserve(static_cast<std::size_t>(n_nodes) * mesh.dim);
            mesh.elements.reserve(static_cast<std::size_t>(n_elems) * (mesh.dim + 1));
        } else if (nodes_read < n_nodes) {
            for (int c = 0; c < mesh.dim; ++c) {
                double v;
                if (!(ls >> v))
                    throw std::runtime_error("load_mesh: malformed coordinate at line " +
                                             std::to_string(lineno));
                mesh.nodes.push_back(v);
            }
            ++nodes_read;
        } else if (elems_read < n_elems) {
            for (int c = 0; c <= mesh.dim; ++c) {
                int v;
                if (!(ls >> v) || v < 0 || v >= n_nodes)
                    throw std::runtime_error("load_mesh: malformed element at line " +
                                             std::to_string(lineno));
                mesh.elements.push_back(v);
            }
            ++elems_read;
        }
    }
    if (nodes_read != n_nodes || elems_read != n_elems)
        throw std::runtime_error("load_mesh: truncated file, expected " +
                                 std::to_string(n_nodes) + " nodes and " +
                                 std::to_string(n_elems) + " elements");
    return mesh;
}

BoundarySet boundary_faces(const Mesh& mesh, const FaceTable& faces)
{
    const int d = mesh.dim;
    BoundarySet bs;
    bs.is_boundary.resize(d + 1);
    bs.ids.resize(d + 1);
    for (int l = 0; l <= d; ++l)
        bs.is_boundary[l].assign(faces.count(l), false);

    for (int fid = 0; fid < faces.count(d - 1); ++fid) {
        const auto n = faces.face_elements[d - 1][fid].size();
        if (n > 2)
            throw std::runtime_error("boundary_faces: non-manifold face " + std::to_string(fid) +
                                     " shared by " + std::to_string(n) + " elements");
        if (n == 1)
            bs.is_boundary[d - 1][fid] = true;
    }

    // closure: every sub-face of a boundary (d-1)-face is boundary
    std::map<std::vector<int>, int> lookup[4];
    for (int l = 0; l <= d; ++l)
        for (int fid = 0; fid < faces.count(l); ++fid)
            lookup[l][faces.faces[l][fid]] = fid;

    for (int fid = 0; fid < faces.count(d - 1); ++fid) {
        if (!bs.is_boundary[d - 1][fid])
            continue;
        const auto& tuple = faces.faces[d - 1][fid];
        for (int l = 0; l < d - 1; ++l)
            for (const AbstractFace& sub : subsimplices(d - 1, l)) {
                std::vector<int> t(sub.vertices.size());
                for (std::size_t i = 0; i < sub.vertices.size(); ++i)
                    t[i] = tuple[sub.vertices[i]];
                bs.is_boundary[l][lookup[l].at(t)] = true;
            }
    }

    for (int l = 0; l <= d; ++l)
        for (int fid = 0; fid < faces.count(l); ++fid)
            if (bs.is_boundary[l][fid])
                bs.ids[l].push_back(fid);
    return bs;
}

} // namespace sfem
