#include "smoothfem/lattice.hpp"

#include "smoothfem/combinatorics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sfem {

void SmoothnessVector::validate() const
{
    const int d = dim();
    if (d < 0)
        throw std::invalid_argument("SmoothnessVector: empty r");
    if (r[d] != 0)
        throw std::invalid_argument("SmoothnessVector: r_d must be 0");
    if (d >= 1 && r[d - 1] != m)
        throw std::invalid_argument("SmoothnessVector: r_{d-1} must equal m");
    for (int l = d - 2; l >= 0; --l)
        if (r[l] < 2 * r[l + 1])
            throw std::invalid_argument("SmoothnessVector: violated r_" + std::to_string(l) +
                                        " >= 2 r_" + std::to_string(l + 1));
    if (k < 2 * r[0] + 1)
        throw std::invalid_argument("SmoothnessVector: violated k >= 2 r_0 + 1 (k=" +
                                    std::to_string(k) + ", r_0=" + std::to_string(r[0]) + ")");
}

SmoothnessVector SmoothnessVector::minimal(int m, int k, int d)
{
    SmoothnessVector sm;
    sm.m = m;
    sm.k = k;
    sm.r.resize(d + 1, 0);
    for (int l = 0; l < d; ++l)
        sm.r[l] = (1 << (d - 1 - l)) * m;
    sm.validate();
    return sm;
}

SmoothnessVector SmoothnessVector::from_rvec(std::vector<int> r, int k)
{
    SmoothnessVector sm;
    sm.k = k;
    sm.m = r.size() >= 2 ? r[r.size() - 2] : 0;
    sm.r = std::move(r);
    sm.validate();
    return sm;
}

bool AbstractFace::ascending() const
{
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (vertices[i] <= vertices[i - 1])
            return false;
    return true;
}

AbstractFace AbstractFace::complement(int d) const
{
    std::vector<bool> in(d + 1, false);
    for (int v : vertices) {
        if (v < 0 || v > d)
            throw std::invalid_argument("AbstractFace::complement: vertex out of range");
        in[v] = true;
    }
    AbstractFace c;
    for (int v = 0; v <= d; ++v)
        if (!in[v])
            c.vertices.push_back(v);
    return c;
}

std::string AbstractFace::to_string() const
{
    std::string s = "{";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(vertices[i]);
    }
    return s + "}";
}

std::vector<AbstractFace> subsimplices(int d, int l)
{
    if (l < 0 || l > d)
        return {};
    std::vector<AbstractFace> out;
    std::vector<int> c(l + 1);
    for (int i = 0; i <= l; ++i)
        c[i] = i;
    while (true) {
        out.push_back(AbstractFace{c});
        int i = l;
        while (i >= 0 && c[i] == d - (l - i))
            --i;
        if (i < 0)
            break;
        ++c[i];
        for (int j = i + 1; j <= l; ++j)
            c[j] = c[j - 1] + 1;
    }
    return out;
}

int distance(const MultiIndex& alpha, const AbstractFace& f)
{
    const int d = alpha.size() - 1;
    std::vector<bool> in(d + 1, false);
    for (int v : f.vertices)
        in[v] = true;
    int s = 0;
    for (int i = 0; i <= d; ++i)
        if (!in[i])
            s += alpha[i];
    return s;
}

int LatticeDecomposition::Block::size() const
{
    int n = 0;
    for (const auto& layer : layers)
        n += static_cast<int>(layer.size());
    return n;
}

std::vector<int> LatticeDecomposition::Block::all_indices() const
{
    std::vector<int> out;
    for (const auto& layer : layers)
        out.insert(out.end(), layer.begin(), layer.end());
    return out;
}

LatticeDecomposition decompose(const SmoothnessVector& sm, int d)
{
    sm.validate();
    if (sm.dim() != d)
        throw std::invalid_argument("decompose: smoothness vector dimension mismatch");

    LatticeDecomposition dec{d, sm, Lattice(sm.k, d), {}};
    dec.blocks.resize(d + 1);

    std::vector<int> owner(dec.lattice.size(), -1);

    for (int l = 0; l <= d; ++l) {
        auto faces = subsimplices(d, l);
        dec.blocks[l].resize(faces.size());
        for (std::size_t fi = 0; fi < faces.size(); ++fi) {
            const AbstractFace& f = faces[fi];
            LatticeDecomposition::Block blk;
            blk.l = l;
            blk.face_index = static_cast<int>(fi);
            blk.face = f;
            blk.layers.assign(sm.r[l] + 1, {});

            // sub-faces of f of every lower dimension, reused per point
            std::vector<std::vector<AbstractFace>> subs(l);
            for (int i = 0; i < l; ++i) {
                for (const AbstractFace& e : subsimplices(l, i)) {
                    AbstractFace g;
                    for (int v : e.vertices)
                        g.vertices.push_back(f.vertices[v]);
                    subs[i].push_back(std::move(g));
                }
            }

            for (int idx = 0; idx < dec.lattice.size(); ++idx) {
                const MultiIndex& alpha = dec.lattice.point(idx);
                const int s = distance(alpha, f);
                if (s > sm.r[l])
                    continue;
                bool excluded = false;
                for (int i = 0; i < l && !excluded; ++i)
                    for (const AbstractFace& e : subs[i])
                        if (distance(alpha, e) <= sm.r[i]) {
                            excluded = true;
                            break;
                        }
                if (excluded)
                    continue;
                blk.layers[s].push_back(idx);
                if (owner[idx] != -1)
                    throw std::runtime_error("decompose: lattice point " + alpha.to_string() +
                                             " assigned to two blocks");
                owner[idx] = l;
            }
            dec.blocks[l][fi] = std::move(blk);
        }
    }

    for (int idx = 0; idx < dec.lattice.size(); ++idx)
        if (owner[idx] == -1)
            throw std::runtime_error("decompose: lattice point " +
                                     dec.lattice.point(idx).to_string() + " unassigned");
    return dec;
}

ReferenceLatticeSet reference_set(const AbstractFace& f_global, const SmoothnessVector& sm, int d)
{
    if (!f_global.ascending())
        throw std::invalid_argument("reference_set: face " + f_global.to_string() +
                                    " is not ascending");
    const int l = f_global.dim();
    if (l < 0 || l > d)
        throw std::invalid_argument("reference_set: face dimension out of range");

    // R_f(S_l(f)) is independent of the face, so compute it on the standard
    // face {0, ..., l} of S_d.
    LatticeDecomposition dec = decompose(sm, d);
    const LatticeDecomposition::Block& blk = dec.blocks[l][0];
    std::vector<int> fstd(l + 1);
    for (int i = 0; i <= l; ++i)
        fstd[i] = i;

    ReferenceLatticeSet ref;
    ref.face = f_global;
    ref.l = l;
    ref.d = d;

    for (int s = 0; s < static_cast<int>(blk.layers.size()); ++s) {
        // distinct tangential restrictions at layer s, lex-sorted
        std::set<MultiIndex> afs;
        for (int idx : blk.layers[s])
            afs.insert(restrict_to(dec.lattice.point(idx), fstd));
        const int nd = d - l - 1;  // gamma lives in T^{d-l-1}_s
        std::vector<MultiIndex> gammas;
        if (nd < 0) {
            if (s == 0)
                gammas.push_back(MultiIndex(std::vector<int>{}));
        } else {
            gammas = generate_lattice(s, nd);
        }
        for (const MultiIndex& af : afs)
            for (const MultiIndex& g : gammas)
                ref.entries.push_back(ReferenceEntry{af, g, s});
    }
    return ref;
}

BijectionReport bijection_check(const LatticeDecomposition& dec,
                                const LatticeDecomposition::Block& block,
                                const ReferenceLatticeSet& ref)
{
    const int d = dec.d;
    const AbstractFace& f = block.face;
    const AbstractFace fstar = f.complement(d);

    std::multiset<std::pair<std::vector<int>, std::vector<int>>> mapped;
    for (int idx : block.all_indices()) {
        const MultiIndex& alpha = dec.lattice.point(idx);
        mapped.insert({restrict_to(alpha, f.vertices).entries(),
                       restrict_to(alpha, fstar.vertices).entries()});
    }

    BijectionReport rep;
    for (const ReferenceEntry& e : ref.entries) {
        auto key = std::make_pair(e.alpha_f.entries(), e.gamma.entries());
        auto it = mapped.find(key);
        if (it == mapped.end()) {
            rep.ok = false;
            rep.detail = "missing entry (alpha_f=" + e.alpha_f.to_string() +
                         ", gamma=" + e.gamma.to_string() + ")";
            return rep;
        }
        mapped.erase(it);
    }
    if (!mapped.empty()) {
        rep.ok = false;
        rep.detail = "block has " + std::to_string(mapped.size()) +
                     " entries not present in the reference set";
    }
    return rep;
}

} // namespace sfem
