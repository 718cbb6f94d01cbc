#ifndef SMOOTHFEM_FESPACE_HPP
#define SMOOTHFEM_FESPACE_HPP

#include "smoothfem/bernstein.hpp"
#include "smoothfem/frames.hpp"
#include "smoothfem/lattice.hpp"
#include "smoothfem/linalg.hpp"
#include "smoothfem/mesh.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace sfem {

/// Geometry-independent DoF bookkeeping for one (d, k, r) triple: the
/// lattice decomposition in canonical DoF order plus the reference lattice
/// sets per face dimension.
struct DofLayout {
    int d = 0;
    SmoothnessVector sm;
    LatticeDecomposition dec;

    /// One local DoF in canonical order (l asc, face lex, s asc, lattice lex).
    struct Row {
        int l = 0;
        int face_index = 0;
        int s = 0;
        int lattice_index = 0;     // lex id of alpha in T^d_k
        MultiIndex alpha;
        MultiIndex alpha_f;        // restriction to f (local ascending positions)
        MultiIndex alpha_fstar;    // restriction to f* (local ascending positions)
        MultiIndex ext_alpha_f;    // E_f(alpha_f)
    };
    std::vector<Row> rows;
    std::vector<int> canon_of_lex;  // lattice lex id -> canonical position

    struct BlockRange {
        int l = 0;
        int face_index = 0;
        int begin = 0;
        int end = 0;
        std::vector<int> layer_begin;  // per s, offset into [begin, end]
    };
    std::vector<BlockRange> block_ranges;

    std::vector<std::vector<ReferenceEntry>> ref;  // ref[l], canonical entry order
    std::vector<std::vector<int>> ref_layer_begin; // ref_layer_begin[l][s..r_l+1]

    int size() const { return static_cast<int>(rows.size()); }
    int ref_size(int l) const { return static_cast<int>(ref[l].size()); }
};

DofLayout build_layout(const SmoothnessVector& sm, int d);

/// Per-element basis data: the DoF-basis matrix D, the dual-basis
/// coefficients C, the local-to-global DoF transformation, and the global
/// dual-basis coefficients E = T^T C.
struct ElementBasis {
    int element = 0;
    /// canonical rows x canonical cols; lower triangular with diagonal
    /// blocks k!/(k-s)! I
    Matrix D;
    /// canonical DoF rows x lex Bernstein cols
    Matrix C;
    /// block-diagonal transformation, stored per (face, layer) block;
    /// tb(row_offset, slot_offset)
    struct TransformBlock {
        int begin = 0;  // first canonical row / slot of the block
        Matrix tb;
    };
    std::vector<TransformBlock> transform;
    /// element-global slot rows x lex Bernstein cols
    Matrix E;
    /// element-global slot -> global DoF id
    std::vector<int> slot_gid;
    /// duality residual max |L(psi) - delta| over the essential triangle
    double duality_residual = 0.0;
};

/// Bijection element slot/DoF id tables for the assembled space.
struct GlobalDofMap {
    int total = 0;
    std::vector<int> base;  // first gid per face dimension
    struct Meta {
        int l = 0;
        int face_id = 0;
        int entry = 0;
        bool boundary = false;
    };
    std::vector<Meta> meta;

    int gid(int l, int face_id, int entry, const DofLayout& layout) const;
};

/// The assembled C^m space on a mesh: topology, layout, frames, DoF map,
/// and a bounded per-element basis cache.
class FeSpace {
public:
    FeSpace(Mesh mesh, const SmoothnessVector& sm);

    const Mesh& mesh() const { return mesh_; }
    const FaceTable& faces() const { return faces_; }
    const BoundarySet& boundary() const { return boundary_; }
    const DofLayout& layout() const { return layout_; }
    const GlobalDofMap& dofs() const { return dofs_; }
    const ElementGeometry& geometry(int element) const { return geometry_[element]; }
    const GlobalFrame& frame(int l, int face_id) const { return frames_[l][face_id]; }

    int dimension() const { return dofs_.total; }
    int local_size() const { return layout_.size(); }

    /// Element basis, built on demand; cached while the configured memory
    /// budget allows.
    std::shared_ptr<const ElementBasis> element_basis(int element) const;

    /// Bernstein coefficients (lex order) of a global coefficient vector on
    /// one element: E^T restricted to the element's slots.
    std::vector<double> element_coefficients(int element, const std::vector<double>& u) const;

    /// Coefficients for every element (one streaming pass).
    std::vector<std::vector<double>> all_element_coefficients(const std::vector<double>& u) const;

private:
    Mesh mesh_;
    FaceTable faces_;
    BoundarySet boundary_;
    DofLayout layout_;
    std::vector<ElementGeometry> geometry_;
    std::vector<std::vector<GlobalFrame>> frames_;
    GlobalDofMap dofs_;

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<int, std::shared_ptr<const ElementBasis>> cache_;
    std::size_t cache_capacity_ = 0;
};

/// The DoF-basis matrix in canonical order (rows: modified local DoFs,
/// cols: Bernstein functions in canonical order).
Matrix dof_basis_matrix(const DofLayout& layout, const ElementGeometry& geo);

/// Dual-basis coefficients C = D^{-T} by back-substitution on the
/// essential triangle; returns canonical rows x lex cols and reports the
/// duality residual.
Matrix local_basis(const DofLayout& layout, const Matrix& D, double* duality_residual = nullptr);

/// Block-diagonal local-to-global DoF transformation for one element.
std::vector<ElementBasis::TransformBlock> transformation_matrix(
    const FeSpace& space, int element, const ElementGeometry& geo);

/// Full element basis: D, C, transform blocks, E = T^T C, slot ids.
ElementBasis build_element_basis(const FeSpace& space, int element);

/// Max two-sided jump of |grad^j u_h| (j = 0..m) over random points on
/// interior (d-1)-faces, scaled by the max element-coefficient magnitude.
double check_cm_continuity(const FeSpace& space, const std::vector<std::vector<double>>& coeffs,
                           int points_per_face, unsigned seed = 12345);

/// grad^j u_h as Bernstein-coefficient symmetric tensors of degree k-j:
/// out[beta'] with beta' in lex order of T^d_{k-j}.
std::vector<SymTensor> derivative_field(const DofLayout& layout, const ElementGeometry& geo,
                                        const std::vector<double>& lex_coeffs, int j);

/// Evaluate a derivative field at a barycentric point.
SymTensor eval_derivative_field(const std::vector<SymTensor>& field, int k_minus_j, int d,
                                const std::vector<double>& lambda);

} // namespace sfem

#endif
