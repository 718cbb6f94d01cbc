#ifndef SMOOTHFEM_MULTIINDEX_HPP
#define SMOOTHFEM_MULTIINDEX_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sfem {

/// Multi-index with nonnegative integer entries; the atom of all lattice
/// combinatorics. A lattice point of T^d_k is a MultiIndex with d+1 entries
/// of total degree k.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    MultiIndex(std::initializer_list<int> entries);

    int size() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[i]; }
    int& operator[](int i) { return e_[i]; }
    const std::vector<int>& entries() const { return e_; }

    /// Total degree |alpha|.
    int degree() const;

    /// Componentwise alpha <= beta.
    bool leq(const MultiIndex& other) const;

    /// All entries nonnegative.
    bool nonnegative() const;

    MultiIndex operator+(const MultiIndex& o) const;
    /// Componentwise difference; may produce negative entries (callers test
    /// with nonnegative()).
    MultiIndex operator-(const MultiIndex& o) const;

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }
    bool operator<(const MultiIndex& o) const { return e_ < o.e_; }

    std::string to_string() const;

private:
    std::vector<int> e_;
};

/// |alpha|! / alpha!  (the multinomial coefficient of alpha).
std::int64_t lattice_multinomial(const MultiIndex& a);

/// All alpha with |alpha| = k over d+1 entries, in the recursive order with
/// the first entry descending from k to 0. Length C(k+d, d).
std::vector<MultiIndex> generate_lattice(int k, int d);

/// Position of alpha in generate_lattice(|alpha|, size-1):
///   sum_{i=1}^{d} C(alpha_i + ... + alpha_d + d - i, d + 1 - i).
/// Rejects negative entries.
int lex_index(const MultiIndex& alpha);

/// Entries of alpha at the positions listed in face (restriction R_f).
MultiIndex restrict_to(const MultiIndex& alpha, const std::vector<int>& face);

/// Prolongation E_f: place alpha_f entries at positions face(i), zeros
/// elsewhere; result has d+1 entries.
MultiIndex extend_from(const MultiIndex& alpha_f, const std::vector<int>& face, int d);

/// Enumeration of T^d_k with O(1) index lookup in both directions.
class Lattice {
public:
    Lattice() : Lattice(0, 0) {}
    Lattice(int k, int d);

    int degree() const { return k_; }
    int dim() const { return d_; }
    int size() const { return static_cast<int>(points_.size()); }

    const MultiIndex& point(int i) const { return points_[i]; }
    const std::vector<MultiIndex>& points() const { return points_; }

    /// lex_index with a degree/size consistency check.
    int index_of(const MultiIndex& alpha) const;

private:
    int k_ = 0;
    int d_ = 0;
    std::vector<MultiIndex> points_;
};

} // namespace sfem

#endif
