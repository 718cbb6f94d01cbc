#ifndef SMOOTHFEM_FRAMES_HPP
#define SMOOTHFEM_FRAMES_HPP

#include "smoothfem/lattice.hpp"
#include "smoothfem/mesh.hpp"
#include "smoothfem/tensor.hpp"

#include <vector>

namespace sfem {

/// Local normal frame of a face f inside an element: the rescaled
/// tangential-normal vectors n_f^i (one per vertex i off f, ascending) and
/// their duals grad lambda_i.
struct LocalFrame {
    AbstractFace face;           // local vertex positions, ascending
    std::vector<int> opposite;   // f*, ascending local positions
    VectorFamily normals;        // n_f^i, i in f*
    VectorFamily duals;          // grad lambda_i, i in f*
};

/// Element-independent orthonormal frame of the normal plane of an
/// ascending face; duals equal the frame itself.
struct GlobalFrame {
    std::vector<int> face;  // ascending global vertex ids
    VectorFamily normals;   // d - l orthonormal vectors
};

/// n_f^i = P_{f+i}(grad lambda_i) / |P_{f+i}(grad lambda_i)|^2 where
/// P_{f+i} projects onto the tangent plane of the sub-simplex f cup {i}.
LocalFrame local_frame(const ElementGeometry& geo, const AbstractFace& face);

/// Deterministic orthonormal basis of the normal plane of [f]:
/// canonical axes for vertices; otherwise pivoted Gram-Schmidt of the
/// canonical basis against the tangent span with a fixed sign rule.
GlobalFrame global_frame(const std::vector<int>& face_vertices,
                         const std::vector<Vec>& coords, int dim);

/// sign(T, e) = sign(N_e . grad lambda_i) for the codim-1 face e opposite
/// local vertex i; flips between the two elements sharing an interior face.
int orientation_sign(const ElementGeometry& geo, const GlobalFrame& face_frame,
                     int opposite_local_vertex);

} // namespace sfem

#endif
