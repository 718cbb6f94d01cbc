#ifndef SMOOTHFEM_LATTICE_HPP
#define SMOOTHFEM_LATTICE_HPP

#include "smoothfem/multiindex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sfem {

/// Smoothness vector r = (r_0, ..., r_d) together with the target
/// smoothness m and the polynomial degree k. Admissibility:
///   r_d = 0, r_{d-1} = m, r_l >= 2 r_{l+1}, k >= 2 r_0 + 1.
struct SmoothnessVector {
    std::vector<int> r;
    int m = 0;
    int k = 0;

    int dim() const { return static_cast<int>(r.size()) - 1; }

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;

    /// Minimal admissible vector for target smoothness m:
    /// r_l = 2^{d-1-l} m for l < d, r_d = 0.
    static SmoothnessVector minimal(int m, int k, int d);

    static SmoothnessVector from_rvec(std::vector<int> r, int k);
};

/// Sub-simplex of the standard abstract simplex S_d (or of a mesh):
/// a tuple of pairwise-distinct vertex indices.
struct AbstractFace {
    std::vector<int> vertices;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    bool ascending() const;

    /// Complement S_d \ f in ascending order; d is the ambient dimension.
    AbstractFace complement(int d) const;

    std::string to_string() const;
};

/// All l-dimensional sub-simplices of S_d, as ascending tuples in
/// lexicographic order.
std::vector<AbstractFace> subsimplices(int d, int l);

/// dist(alpha, f) = |alpha_{f*}|, the sum of alpha's entries off f.
int distance(const MultiIndex& alpha, const AbstractFace& f);

/// The direct-sum decomposition of T^d_k into blocks S_l(f), each block
/// grouped by the layer s = dist(alpha, f) and ordered lexicographically
/// inside a layer.
struct LatticeDecomposition {
    int d = 0;
    SmoothnessVector sm;
    Lattice lattice;

    struct Block {
        int l = 0;
        int face_index = 0;          // into subsimplices(d, l)
        AbstractFace face;
        // layers[s] = lattice indices at dist s, ascending lex order
        std::vector<std::vector<int>> layers;

        int size() const;
        std::vector<int> all_indices() const;
    };

    // blocks grouped by dimension: blocks[l][face_index]
    std::vector<std::vector<Block>> blocks;

    const Block& block(int l, int face_index) const { return blocks[l][face_index]; }
};

/// Materializes S_l(f) = D(f, r_l) \ union of lower tubes by filtering the
/// full enumeration of T^d_k; throws if sm is inadmissible and asserts the
/// partition property.
LatticeDecomposition decompose(const SmoothnessVector& sm, int d);

/// One entry of a reference lattice set: tangential index alpha_f over the
/// ascending face and normal index gamma over the d-l global normal slots.
struct ReferenceEntry {
    MultiIndex alpha_f;  // l+1 entries, degree k - s
    MultiIndex gamma;    // d - l - 1 + 1 = d - l entries, degree s
    int s = 0;
};

/// Reference lattice set S^_l([f]): entries ordered by s ascending, then
/// lex on alpha_f, then lex on gamma. Independent of any owning element.
struct ReferenceLatticeSet {
    AbstractFace face;  // ascending global (or standard) vertex tuple
    int l = 0;
    int d = 0;
    std::vector<ReferenceEntry> entries;

    int size() const { return static_cast<int>(entries.size()); }
};

/// Builds S^_l([f]) for an ascending face of dimension l in ambient
/// dimension d. The entry list depends only on (l, sm, d).
ReferenceLatticeSet reference_set(const AbstractFace& f_global, const SmoothnessVector& sm, int d);

/// Result of checking that R(alpha) = (alpha_f, alpha_{f*}) maps a
/// decomposition block one-to-one onto a reference set.
struct BijectionReport {
    bool ok = true;
    std::string detail;  // names the missing/duplicated entry on failure
};

/// Verifies the block S_l(f) (lattice indices into dec.lattice) maps
/// bijectively onto ref via alpha -> (R_f(alpha), R_{f*}(alpha)).
BijectionReport bijection_check(const LatticeDecomposition& dec,
                                const LatticeDecomposition::Block& block,
                                const ReferenceLatticeSet& ref);

} // namespace sfem

#endif
