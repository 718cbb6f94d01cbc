#include "smoothfem/tensor.hpp"

#include "smoothfem/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace sfem {

double norm(const Vec& a)
{
    return std::sqrt(dot(a, a));
}

Vec scaled(const Vec& a, double c)
{
    return Vec{a[0] * c, a[1] * c, a[2] * c};
}

Vec sub(const Vec& a, const Vec& b)
{
    return Vec{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec add(const Vec& a, const Vec& b)
{
    return Vec{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

namespace {

struct ComponentTable {
    std::vector<MultiIndex> indices;   // T^{d-1}_r in lex order
    std::vector<double> weights;       // r!/alpha!
    std::vector<std::vector<int>> raw; // index words I^alpha (length r)
};

const ComponentTable& component_table(int dim, int order)
{
    static std::map<std::pair<int, int>, ComponentTable> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(dim, order);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;

    ComponentTable t;
    t.indices = generate_lattice(order, dim - 1);
    t.weights.reserve(t.indices.size());
    t.raw.reserve(t.indices.size());
    for (const MultiIndex& a : t.indices) {
        t.weights.push_back(static_cast<double>(lattice_multinomial(a)));
        std::vector<int> word;
        for (int i = 0; i < a.size(); ++i)
            word.insert(word.end(), a[i], i);
        t.raw.push_back(std::move(word));
    }
    return cache.emplace(key, std::move(t)).first->second;
}

const std::vector<std::vector<int>>& permutations(int r)
{
    static std::map<int, std::vector<std::vector<int>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(r);
    if (it != cache.end())
        return it->second;
    std::vector<int> p(r);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> all;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return cache.emplace(r, std::move(all)).first->second;
}

} // namespace

SymTensor::SymTensor(int order, int dim) : r_(order), d_(dim)
{
    if (order < 0 || dim < 1)
        throw std::invalid_argument("SymTensor: order must be >= 0 and dim >= 1");
    c_.assign(component_table(dim, order).indices.size(), 0.0);
}

double SymTensor::component(const MultiIndex& alpha) const
{
    return c_[lex_index(alpha)];
}

void SymTensor::set_component(const MultiIndex& alpha, double v)
{
    c_[lex_index(alpha)] = v;
}

SymTensor& SymTensor::axpy(double a, const SymTensor& x)
{
    if (x.r_ != r_ || x.d_ != d_)
        throw std::invalid_argument("SymTensor::axpy: shape mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] += a * x.c_[i];
    return *this;
}

double sym_pairing(const SymTensor& a, const SymTensor& b)
{
    if (a.order() != b.order() || a.dim() != b.dim())
        throw std::invalid_argument("sym_pairing: order/dim mismatch");
    const auto& w = component_table(a.dim(), a.order()).weights;
    double s = 0.0;
    for (int i = 0; i < a.component_count(); ++i)
        s += w[i] * a[i] * b[i];
    return s;
}

const std::vector<double>& pairing_weights(int dim, int order)
{
    return component_table(dim, order).weights;
}

SymTensor sym_monomial(const VectorFamily& fam, const MultiIndex& alpha, int dim)
{
    if (alpha.size() != static_cast<int>(fam.size()))
        throw std::invalid_argument("sym_monomial: family length does not match multi-index");
    if (!alpha.nonnegative())
        throw std::invalid_argument("sym_monomial: negative multi-index entry");
    const int r = alpha.degree();

    // word of family slots, e.g. alpha=(2,1) -> (0,0,1)
    std::vector<int> word;
    for (int i = 0; i < alpha.size(); ++i)
        word.insert(word.end(), alpha[i], i);

    const auto& table = component_table(dim, r);
    const auto& perms = permutations(r);
    SymTensor out(r, dim);
    const double inv = 1.0 / static_cast<double>(perms.size());
    for (std::size_t ci = 0; ci < table.raw.size(); ++ci) {
        const std::vector<int>& target = table.raw[ci];  // component word over dims
        double sum = 0.0;
        for (const auto& sigma : perms) {
            double prod = 1.0;
            for (int j = 0; j < r; ++j)
                prod *= fam[word[j]][target[sigma[j]]];
            sum += prod;
        }
        out[static_cast<int>(ci)] = sum * inv;
    }
    return out;
}

SymTensor change_frame(const SymTensor& tau, const VectorFamily& new_dual)
{
    const int d = tau.dim();
    if (static_cast<int>(new_dual.size()) != d)
        throw std::invalid_argument("change_frame: dual family must have dim vectors");
    const auto& table = component_table(d, tau.order());
    SymTensor out(tau.order(), d);
    for (std::size_t ci = 0; ci < table.indices.size(); ++ci)
        out[static_cast<int>(ci)] = sym_pairing(tau, sym_monomial(new_dual, table.indices[ci], d));
    return out;
}

double duality_check(const VectorFamily& fam, const VectorFamily& dual, int order, int dim)
{
    if (fam.size() != dual.size())
        throw std::invalid_argument("duality_check: family sizes differ");
    const int n = static_cast<int>(fam.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = dot(dual[i], fam[j]);
            const double expect = (i == j) ? 1.0 : 0.0;
            if (std::abs(v - expect) > 1e-8)
                throw std::invalid_argument("duality_check: input bases not dual at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
        }

    const auto indices = generate_lattice(order, n - 1);
    double maxdev = 0.0;
    for (const MultiIndex& a : indices) {
        const SymTensor sa = sym_monomial(dual, a, dim);
        // alpha!/r! = 1 / (r!/alpha!)
        const double diag = 1.0 / static_cast<double>(lattice_multinomial(a));
        for (const MultiIndex& b : indices) {
            const SymTensor sb = sym_monomial(fam, b, dim);
            const double expect = (a == b) ? diag : 0.0;
            maxdev = std::max(maxdev, std::abs(sym_pairing(sa, sb) - expect));
        }
    }
    return maxdev;
}

} // namespace sfem
