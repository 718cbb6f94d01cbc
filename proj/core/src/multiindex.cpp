#include "smoothfem/multiindex.hpp"

#include "smoothfem/combinatorics.hpp"

#include <numeric>
#include <stdexcept>

namespace sfem {

MultiIndex::MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {}

MultiIndex::MultiIndex(std::initializer_list<int> entries) : e_(entries) {}

int MultiIndex::degree() const
{
    return std::accumulate(e_.begin(), e_.end(), 0);
}

bool MultiIndex::leq(const MultiIndex& other) const
{
    if (size() != other.size())
        return false;
    for (int i = 0; i < size(); ++i)
        if (e_[i] > other.e_[i])
            return false;
    return true;
}

bool MultiIndex::nonnegative() const
{
    for (int v : e_)
        if (v < 0)
            return false;
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const
{
    if (size() != o.size())
        throw std::invalid_argument("MultiIndex: size mismatch in +");
    std::vector<int> r(e_);
    for (int i = 0; i < size(); ++i)
        r[i] += o.e_[i];
    return MultiIndex(std::move(r));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const
{
    if (size() != o.size())
        throw std::invalid_argument("MultiIndex: size mismatch in -");
    std::vector<int> r(e_);
    for (int i = 0; i < size(); ++i)
        r[i] -= o.e_[i];
    return MultiIndex(std::move(r));
}

std::string MultiIndex::to_string() const
{
    std::string s = "(";
    for (int i = 0; i < size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(e_[i]);
    }
    return s + ")";
}

std::int64_t lattice_multinomial(const MultiIndex& a)
{
    return multinomial(a.entries());
}

std::vector<MultiIndex> generate_lattice(int k, int d)
{
    if (k < 0 || d < 0)
        throw std::invalid_argument("generate_lattice: k and d must be nonnegative");
    std::vector<MultiIndex> out;
    if (d == 0) {
        out.push_back(MultiIndex({k}));
        return out;
    }
    out.reserve(static_cast<std::size_t>(binom(k + d, d)));
    for (int i = k; i >= 0; --i) {
        for (const MultiIndex& beta : generate_lattice(k - i, d - 1)) {
            std::vector<int> e;
            e.reserve(d + 1);
            e.push_back(i);
            e.insert(e.end(), beta.entries().begin(), beta.entries().end());
            out.emplace_back(std::move(e));
        }
    }
    return out;
}

int lex_index(const MultiIndex& alpha)
{
    if (!alpha.nonnegative())
        throw std::invalid_argument("lex_index: negative entry in " + alpha.to_string());
    const int d = alpha.size() - 1;
    std::int64_t idx = 0;
    int tail = 0;
    // tail sums alpha_i + ... + alpha_d built from the right
    std::vector<int> tails(d + 1, 0);
    for (int i = d; i >= 1; --i) {
        tail += alpha[i];
        tails[i] = tail;
    }
    for (int i = 1; i <= d; ++i)
        idx += binom(tails[i] + d - i, d + 1 - i);
    return static_cast<int>(idx);
}

MultiIndex restrict_to(const MultiIndex& alpha, const std::vector<int>& face)
{
    std::vector<int> r(face.size());
    for (std::size_t i = 0; i < face.size(); ++i) {
        if (face[i] < 0 || face[i] >= alpha.size())
            throw std::invalid_argument("restrict_to: face index out of range");
        r[i] = alpha[face[i]];
    }
    return MultiIndex(std::move(r));
}

MultiIndex extend_from(const MultiIndex& alpha_f, const std::vector<int>& face, int d)
{
    if (static_cast<int>(face.size()) != alpha_f.size())
        throw std::invalid_argument("extend_from: face/index length mismatch");
    std::vector<int> r(d + 1, 0);
    for (std::size_t i = 0; i < face.size(); ++i) {
        if (face[i] < 0 || face[i] > d)
            throw std::invalid_argument("extend_from: face index out of range");
        r[face[i]] = alpha_f[static_cast<int>(i)];
    }
    return MultiIndex(std::move(r));
}

Lattice::Lattice(int k, int d) : k_(k), d_(d), points_(generate_lattice(k, d)) {}

int Lattice::index_of(const MultiIndex& alpha) const
{
    if (alpha.size() != d_ + 1 || alpha.degree() != k_)
        throw std::invalid_argument("Lattice::index_of: " + alpha.to_string() +
                                    " is not a point of this lattice");
    return lex_index(alpha);
}

} // namespace sfem
