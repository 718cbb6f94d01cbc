#ifndef SMOOTHFEM_MESH_HPP
#define SMOOTHFEM_MESH_HPP

#include "smoothfem/tensor.hpp"

#include <string>
#include <vector>

namespace sfem {

/// Simplicial mesh: node coordinates plus element connectivity
/// (zero-based global vertex indices, d+1 per element).
struct Mesh {
    int dim = 0;
    std::vector<double> nodes;        // N x dim, row major
    std::vector<int> elements;        // NT x (dim+1), row major

    int node_count() const { return dim == 0 ? 0 : static_cast<int>(nodes.size()) / dim; }
    int element_count() const { return static_cast<int>(elements.size()) / (dim + 1); }

    Vec node(int i) const;
    int vertex(int element, int local) const { return elements[element * (dim + 1) + local]; }
};

/// Unique ascending-ordered sub-simplices of every dimension, with the
/// element-local resolution of each face ((global id, ascending
/// permutation) per local face).
struct FaceTable {
    int dim = 0;

    // faces[l] = ascending global vertex tuples, id = rank in lex order
    std::vector<std::vector<std::vector<int>>> faces;

    struct LocalFace {
        int global_id = 0;
        // ascperm[i] = local position (0..d) of the i-th vertex of the
        // ascending global tuple
        std::vector<int> ascperm;
    };
    // local_faces[l][element][local_face_index]; local faces enumerated as
    // subsimplices(d, l) over local positions
    std::vector<std::vector<std::vector<LocalFace>>> local_faces;

    // face_elements[l][face_id] = incident element ids (ascending)
    std::vector<std::vector<std::vector<int>>> face_elements;

    int count(int l) const { return static_cast<int>(faces[l].size()); }
};

/// Per-element affine geometry: barycentric gradients, measure, vertices.
struct ElementGeometry {
    int dim = 0;
    std::vector<Vec> vertices;    // d+1
    std::vector<Vec> grad_lambda; // d+1, sums to zero
    double measure = 0.0;

    /// Barycentric coordinates of a physical point.
    std::vector<double> barycentric(const Vec& x) const;
    /// Physical point of barycentric coordinates.
    Vec point(const std::vector<double>& lambda) const;
};

/// Deduplicated ascending face tuples with deterministic ids
/// (lexicographic rank) and per-element permutations.
FaceTable enumerate_faces(const Mesh& mesh);

/// Gradients of the barycentric coordinates and the element measure.
/// Throws on degenerate elements, naming the element.
ElementGeometry barycentric_gradients(const Mesh& mesh, int element);

/// Built-in meshes of the unit square/cube: n x n cells split into 2
/// triangles by a fixed diagonal, or n^3 cells split into 6 tetrahedra
/// (Kuhn pattern). h = 1/n.
Mesh builtin_mesh(const std::string& kind, int n);

/// ASCII mesh file: line 1 `d N NT`, then N coordinate lines, then NT
/// connectivity lines; `#` starts a comment line.
Mesh load_mesh(const std::string& path);

/// Boundary faces of dimension d-1 (incident to exactly one element) and
/// their closure down to vertices. is_boundary[l][face_id].
struct BoundarySet {
    std::vector<std::vector<bool>> is_boundary;
    std::vector<std::vector<int>> ids;  // boundary face ids per dimension
};

BoundarySet boundary_faces(const Mesh& mesh, const FaceTable& faces);

} // namespace sfem

#endif
