#include "operadics/chainq.hpp"

#include <map>
#include <tuple>
#include <algorithm>
#include <cassert>
#include <numeric>

namespace operadics {

namespace {
constexpr long long RANK_PRIME = 1000003;
}

int koszul_sign(const std::vector<int>& sigma, const std::vector<int>& degs) {
    int n = (int)sigma.size();
    assert((int)degs.size() == n);
    int s = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sigma[i] > sigma[j] && (degs[i] & 1) && (degs[j] & 1)) s = -s;
    return s;
}

long long ChObj::total_dim() const {
    long long t = 0;
    for (int v : dims) t += v;
    return t;
}

ChObjP ChainQ::make(int D, std::vector<int> dims, std::vector<SpQ> d, int valid_through) {
    assert((int)dims.size() == D + 1 && (int)d.size() == D + 1);
    auto x = std::make_shared<ChObj>();
    x->D = D;
    x->dims = std::move(dims);
    x->d = std::move(d);
    x->valid_through = valid_through < 0 ? D : valid_through;
    for (int k = 0; k <= D; ++k) {
        int prev = k == 0 ? 0 : x->dims[k - 1];
        assert(x->d[k].rows == prev && x->d[k].cols == x->dims[k]);
        x->d[k].normalize();
    }
    for (int k = 2; k <= D; ++k)
        assert((x->d[k - 1] * x->d[k]).is_zero() && "differential does not square to zero");
    return x;
}

ChObjP ChainQ::zero(int D) {
    std::vector<int> dims(D + 1, 0);
    std::vector<SpQ> d(D + 1);
    for (int k = 0; k <= D; ++k) d[k] = SpQ(0, 0);
    return make(D, std::move(dims), std::move(d));
}

ChObjP ChainQ::unit(int D) { return sphere(D, 0); }

ChObjP ChainQ::sphere(int D, int n) {
    assert(n >= 0 && n <= D);
    std::vector<int> dims(D + 1, 0);
    dims[n] = 1;
    std::vector<SpQ> d(D + 1);
    for (int k = 0; k <= D; ++k) d[k] = SpQ(k == 0 ? 0 : dims[k - 1], dims[k]);
    return make(D, std::move(dims), std::move(d));
}

ChObjP ChainQ::disk(int D, int n) {
    assert(n >= 1 && n <= D);
    std::vector<int> dims(D + 1, 0);
    dims[n] = dims[n - 1] = 1;
    std::vector<SpQ> d(D + 1);
    for (int k = 0; k <= D; ++k) d[k] = SpQ(k == 0 ? 0 : dims[k - 1], dims[k]);
    d[n].add(0, 0, Q(1));
    return make(D, std::move(dims), std::move(d));
}

bool ChainQ::obj_eq(const Obj& a, const Obj& b) {
    if (a->D != b->D || a->dims != b->dims) return false;
    for (int k = 0; k <= a->D; ++k)
        if (!(a->d[k] == b->d[k])) return false;
    return true;
}

ChMor ChainQ::mor(const Obj& s, const Obj& t, std::vector<SpQ> comp) {
    assert(s->D == t->D && (int)comp.size() == s->D + 1);
    for (int k = 0; k <= s->D; ++k) {
        assert(comp[k].rows == t->dims[k] && comp[k].cols == s->dims[k]);
        comp[k].normalize();
    }
    return ChMor{s, t, std::move(comp)};
}

ChMor ChainQ::id(const Obj& x) {
    std::vector<SpQ> c(x->D + 1);
    for (int k = 0; k <= x->D; ++k) c[k] = SpQ::identity(x->dims[k]);
    return ChMor{x, x, std::move(c)};
}

ChMor ChainQ::zero_mor(const Obj& s, const Obj& t) {
    assert(s->D == t->D);
    std::vector<SpQ> c(s->D + 1);
    for (int k = 0; k <= s->D; ++k) c[k] = SpQ(t->dims[k], s->dims[k]);
    return ChMor{s, t, std::move(c)};
}

ChMor ChainQ::compose(const Mor& g, const Mor& f) {
    assert(f.dst->dims == g.src->dims && "compose: endpoint mismatch");
    std::vector<SpQ> c(f.src->D + 1);
    for (int k = 0; k <= f.src->D; ++k) c[k] = g.comp[k] * f.comp[k];
    return ChMor{f.src, g.dst, std::move(c)};
}

ChMor ChainQ::add(const Mor& f, const Mor& g) {
    std::vector<SpQ> c(f.src->D + 1);
    for (int k = 0; k <= f.src->D; ++k) c[k] = f.comp[k] + g.comp[k];
    return ChMor{f.src, f.dst, std::move(c)};
}

ChMor ChainQ::sub(const Mor& f, const Mor& g) {
    std::vector<SpQ> c(f.src->D + 1);
    for (int k = 0; k <= f.src->D; ++k) c[k] = f.comp[k] - g.comp[k];
    return ChMor{f.src, f.dst, std::move(c)};
}

ChMor ChainQ::scale(const Mor& f, const Q& c0) {
    std::vector<SpQ> c(f.src->D + 1);
    for (int k = 0; k <= f.src->D; ++k) c[k] = f.comp[k].scaled(c0);
    return ChMor{f.src, f.dst, std::move(c)};
}

bool ChainQ::mor_eq(const Mor& f, const Mor& g) {
    if (f.src->dims != g.src->dims || f.dst->dims != g.dst->dims) return false;
    for (int k = 0; k <= f.src->D; ++k)
        if (!(f.comp[k] == g.comp[k])) return false;
    return true;
}

bool ChainQ::is_chain_map(const Mor& f) {
    int vt = std::min(f.src->valid_through, f.dst->valid_through);
    for (int k = 1; k <= vt; ++k)
        if (!(f.comp[k - 1] * f.src->d[k] == f.dst->d[k] * f.comp[k])) return false;
    return true;
}

bool ChainQ::is_iso(const Mor& f) {
    for (int k = 0; k <= f.src->D; ++k) {
        if (f.src->dims[k] != f.dst->dims[k]) return false;
        if (f.comp[k].rank_exact() != f.src->dims[k]) return false;
    }
    return true;
}

int ChainQ::block_offset(const Obj& a, const Obj& b, int k, int p) {
    int off = 0;
    for (int q = 0; q < p; ++q) off += a->dim(q) * b->dim(k - q);
    return off;
}

ChObjP ChainQ::tensor(const Obj& a, const Obj& b) {
    assert(a->D == b->D);
    /* same memo scheme as the set side: diagram assembly asks for the same
       pair constantly; operands are pinned so pointer keys stay valid */
    static std::map<std::pair<const ChObj*, const ChObj*>, std::tuple<Obj, Obj, Obj>> cache;
    auto key = std::make_pair(a.get(), b.get());
    auto it = cache.find(key);
    if (it != cache.end()) return std::get<2>(it->second);
    int D = a->D;
    std::vector<int> dims(D + 1, 0);
    for (int k = 0; k <= D; ++k)
        for (int p = 0; p <= k; ++p) dims[k] += a->dims[p] * b->dims[k - p];
    std::vector<SpQ> d(D + 1);
    for (int k = 0; k <= D; ++k) d[k] = SpQ(k == 0 ? 0 : dims[k - 1], dims[k]);
    for (int k = 1; k <= D; ++k) {
        for (int p = 0; p <= k; ++p) {
            int q = k - p;
            int ap = a->dims[p], bq = b->dims[q];
            if (ap == 0 || bq == 0) continue;
            int off_s = block_offset(a, b, k, p);
            /* d_a ⊗ id lands in block (p-1, q) */
            if (p >= 1) {
                int off_t = block_offset(a, b, k - 1, p - 1);
                for (int ia = 0; ia < ap; ++ia)
                    for (auto& [r, v] : a->d[p].col[ia])
                        for (int ib = 0; ib < bq; ++ib)
                            d[k].add(off_t + r * bq + ib, off_s + ia * bq + ib, v);
            }
            /* (-1)^p id ⊗ d_b lands in block (p, q-1) */
            if (q >= 1) {
                int off_t = block_offset(a, b, k - 1, p);
                int bq1 = b->dims[q - 1];
                Q sgn = (p & 1) ? Q(-1) : Q(1);
                for (int ib = 0; ib < bq; ++ib)
                    for (auto& [r, v] : b->d[q].col[ib])
                        for (int ia = 0; ia < ap; ++ia)
                            d[k].add(off_t + ia * bq1 + r, off_s + ia * bq + ib, v * sgn);
            }
        }
    }
    Obj r = make(D, std::move(dims), std::move(d), std::min(a->valid_through, b->valid_through));
    cache.emplace(key, std::make_tuple(a, b, r));
    return r;
}

ChMor ChainQ::tensor_mor(const Mor& f, const Mor& g) {
    Obj s = tensor(f.src, g.src), t = tensor(f.dst, g.dst);
    int D = s->D;
    std::vector<SpQ> c(D + 1);
    for (int k = 0; k <= D; ++k) {
        c[k] = SpQ(t->dims[k], s->dims[k]);
        for (int p = 0; p <= k; ++p) {
            int q = k - p;
            int sp = f.src->dims[p], sq = g.src->dims[q];
            if (sp == 0 || sq == 0) continue;
            int off_s = block_offset(f.src, g.src, k, p);
            int off_t = block_offset(f.dst, g.dst, k, p);
            int tq = g.dst->dims[q];
            for (int ia = 0; ia < sp; ++ia)
                for (auto& [ra, va] : f.comp[p].col[ia])
                    for (int ib = 0; ib < sq; ++ib)
                        for (auto& [rb, vb] : g.comp[q].col[ib])
                            c[k].add(off_t + ra * tq + rb, off_s + ia * sq + ib, va * vb);
        }
    }
    return mor(s, t, std::move(c));
}

ChObjP ChainQ::tensor_list(const std::vector<Obj>& xs) {
    if (xs.empty()) {
        assert(false && "tensor_list needs at least one factor to know the cap");
    }
    Obj acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = tensor(acc, xs[i]);
    return acc;
}

ChMor ChainQ::tensor_list_mor(const std::vector<Mor>& fs) {
    assert(!fs.empty());
    Mor acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = tensor_mor(acc, fs[i]);
    return acc;
}

ChMor ChainQ::symmetry(const Obj& a, const Obj& b) {
    Obj s = tensor(a, b), t = tensor(b, a);
    int D = s->D;
    std::vector<SpQ> c(D + 1);
    for (int k = 0; k <= D; ++k) {
        c[k] = SpQ(t->dims[k], s->dims[k]);
        for (int p = 0; p <= k; ++p) {
            int q = k - p;
            int ap = a->dims[p], bq = b->dims[q];
            if (ap == 0 || bq == 0) continue;
            int off_s = block_offset(a, b, k, p);
            int off_t = block_offset(b, a, k, q);
            Q sgn = ((p & 1) && (q & 1)) ? Q(-1) : Q(1);
            for (int ia = 0; ia < ap; ++ia)
                for (int ib = 0; ib < bq; ++ib)
                    c[k].add(off_t + ib * ap + ia, off_s + ia * bq + ib, sgn);
        }
    }
    return mor(s, t, std::move(c));
}

/* per-prefix degreewise dimensions of the left-associated tensors */
static std::vector<std::vector<int>> prefix_dims(const std::vector<ChObjP>& xs) {
    int n = (int)xs.size(), D = xs[0]->D;
    std::vector<std::vector<int>> pd(n, std::vector<int>(D + 1, 0));
    pd[0] = xs[0]->dims;
    for (int j = 1; j < n; ++j)
        for (int k = 0; k <= D; ++k)
            for (int p = 0; p <= k; ++p) pd[j][k] += pd[j - 1][p] * xs[j]->dim(k - p);
    return pd;
}

std::vector<ChainQ::MultiIndex> ChainQ::tensor_positions(const std::vector<Obj>& xs, int k) {
    int n = (int)xs.size();
    std::vector<MultiIndex> out;
    if (n == 0) {
        if (k == 0) out.push_back({{}, {}});
        return out;
    }
    if (n == 1) {
        for (int i = 0; i < xs[0]->dim(k); ++i) out.push_back({{k}, {i}});
        return out;
    }
    std::vector<Obj> prefix(xs.begin(), xs.end() - 1);
    const Obj& last = xs.back();
    for (int s = 0; s <= k; ++s) {
        int ld = last->dim(k - s);
        if (ld == 0) continue;
        for (auto& mi : tensor_positions(prefix, s)) {
            for (int i = 0; i < ld; ++i) {
                MultiIndex m = mi;
                m.degs.push_back(k - s);
                m.idxs.push_back(i);
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

int ChainQ::tensor_position_index(const std::vector<Obj>& xs, const MultiIndex& mi) {
    int n = (int)xs.size();
    assert((int)mi.degs.size() == n);
    if (n == 0) return 0;
    auto pd = prefix_dims(xs);
    int idx = mi.idxs[0];
    int S = mi.degs[0];
    for (int j = 1; j < n; ++j) {
        int kj = S + mi.degs[j];
        int off = 0;
        for (int p = 0; p < S; ++p) off += pd[j - 1][p] * xs[j]->dim(kj - p);
        idx = off + idx * xs[j]->dim(mi.degs[j]) + mi.idxs[j];
        S = kj;
    }
    return idx;
}

ChMor ChainQ::permute_factors(const std::vector<Obj>& xs, const std::vector<int>& sigma) {
    int n = (int)xs.size();
    assert((int)sigma.size() == n);
    std::vector<Obj> ys(n);
    for (int i = 0; i < n; ++i) ys[sigma[i]] = xs[i];
    Obj s = tensor_list(xs), t = tensor_list(ys);
    int D = s->D;
    std::vector<SpQ> c(D + 1);
    for (int k = 0; k <= D; ++k) {
        c[k] = SpQ(t->dims[k], s->dims[k]);
        auto pos = tensor_positions(xs, k);
        assert((int)pos.size() == s->dims[k]);
        for (int col = 0; col < (int)pos.size(); ++col) {
            const auto& mi = pos[col];
            MultiIndex mt;
            mt.degs.assign(n, 0);
            mt.idxs.assign(n, 0);
            for (int i = 0; i < n; ++i) {
                mt.degs[sigma[i]] = mi.degs[i];
                mt.idxs[sigma[i]] = mi.idxs[i];
            }
            int row = tensor_position_index(ys, mt);
            c[k].add(row, col, Q(koszul_sign(sigma, mi.degs)));
        }
    }
    return mor(s, t, std::move(c));
}

ChMor ChainQ::lunit(const Obj& a) {
    Obj s = tensor(unit(a->D), a);
    assert(s->dims == a->dims);
    std::vector<SpQ> c(a->D + 1);
    for (int k = 0; k <= a->D; ++k) c[k] = SpQ::identity(a->dims[k]);
    return ChMor{s, a, std::move(c)};
}

ChMor ChainQ::runit(const Obj& a) {
    Obj s = tensor(a, unit(a->D));
    assert(s->dims == a->dims);
    std::vector<SpQ> c(a->D + 1);
    for (int k = 0; k <= a->D; ++k) c[k] = SpQ::identity(a->dims[k]);
    return ChMor{s, a, std::move(c)};
}

ChainQ::Coprod ChainQ::coproduct(const std::vector<Obj>& xs) {
    assert(!xs.empty());
    int D = xs[0]->D;
    std::vector<int> dims(D + 1, 0);
    int vt = D;
    for (auto& x : xs) {
        assert(x->D == D);
        vt = std::min(vt, x->valid_through);
        for (int k = 0; k <= D; ++k) dims[k] += x->dims[k];
    }
    std::vector<SpQ> d(D + 1);
    for (int k = 0; k <= D; ++k) d[k] = SpQ(k == 0 ? 0 : dims[k - 1], dims[k]);
    std::vector<std::vector<int>> offs(xs.size(), std::vector<int>(D + 1, 0));
    for (int k = 0; k <= D; ++k) {
        int o = 0;
        for (size_t j = 0; j < xs.size(); ++j) {
            offs[j][k] = o;
            o += xs[j]->dims[k];
        }
    }
    for (int k = 1; k <= D; ++k)
        for (size_t j = 0; j < xs.size(); ++j)
            for (int col = 0; col < xs[j]->dims[k]; ++col)
                for (auto& [r, v] : xs[j]->d[k].col[col])
                    d[k].add(offs[j][k - 1] + r, offs[j][k] + col, v);
    Obj c = make(D, std::move(dims), std::move(d), vt);
    Coprod out{c, {}, {}};
    for (size_t j = 0; j < xs.size(); ++j) {
        std::vector<SpQ> ic(D + 1), pc(D + 1);
        for (int k = 0; k <= D; ++k) {
            ic[k] = SpQ(c->dims[k], xs[j]->dims[k]);
            pc[k] = SpQ(xs[j]->dims[k], c->dims[k]);
            for (int i = 0; i < xs[j]->dims[k]; ++i) {
                ic[k].add(offs[j][k] + i, i, Q(1));
                pc[k].add(i, offs[j][k] + i, Q(1));
            }
        }
        out.in.push_back(ChMor{xs[j], c, std::move(ic)});
        out.pr.push_back(ChMor{c, xs[j], std::move(pc)});
    }
    return out;
}

ChainQ::Quot ChainQ::quotient(const Obj& x, const std::vector<SpQ>& rels) {
    int D = x->D;
    assert((int)rels.size() == D + 1);
    std::vector<std::vector<int>> free_cols(D + 1);
    std::vector<SpQ> proj(D + 1), sect(D + 1);
    std::vector<int> ndims(D + 1, 0);
    for (int k = 0; k <= D; ++k) {
        int n = x->dims[k];
        assert(rels[k].rows == n);
        /* row-reduce the transposed relations; pivots get eliminated */
        QMat RT(rels[k].cols, n);
        for (int j = 0; j < rels[k].cols; ++j)
            for (auto& [i, v] : rels[k].col[j]) RT.at(j, i) += v;
        RrefResult rr = rref(RT);
        std::vector<char> is_pivot(n, 0);
        for (int c : rr.pivot_cols) is_pivot[c] = 1;
        std::vector<int> pos(n, -1);
        for (int j = 0; j < n; ++j)
            if (!is_pivot[j]) {
                pos[j] = (int)free_cols[k].size();
                free_cols[k].push_back(j);
            }
        ndims[k] = (int)free_cols[k].size();
        proj[k] = SpQ(ndims[k], n);
        sect[k] = SpQ(n, ndims[k]);
        for (int j = 0; j < n; ++j)
            if (pos[j] >= 0) {
                proj[k].add(pos[j], j, Q(1));
                sect[k].add(j, pos[j], Q(1));
            }
        for (int r = 0; r < rr.rank; ++r) {
            int c = rr.pivot_cols[r];
            for (int j = 0; j < n; ++j)
                if (pos[j] >= 0 && rr.R.at(r, j) != 0) proj[k].add(pos[j], c, -rr.R.at(r, j));
        }
        proj[k].normalize();
    }
    std::vector<SpQ> nd(D + 1);
    nd[0] = SpQ(0, ndims[0]);
    for (int k = 1; k <= D; ++k) nd[k] = proj[k - 1] * (x->d[k] * sect[k]);
    Obj q = make(D, std::move(ndims), std::move(nd), x->valid_through);
    return Quot{q, ChMor{x, q, std::move(proj)}, std::move(sect)};
}

namespace {

/* union-find with sign relative to the root; an orbit dies when forced
   to satisfy e = -e */
struct SignedUF {
    std::vector<int> p, sg;
    std::vector<char> dead;
    explicit SignedUF(int n) : p(n), sg(n, 1), dead(n, 0) {
        std::iota(p.begin(), p.end(), 0);
    }
    int find(int x) {
        std::vector<int> path;
        while (p[x] != x) {
            path.push_back(x);
            x = p[x];
        }
        int s = 1;
        for (int i = (int)path.size() - 1; i >= 0; --i) {
            s *= sg[path[i]];
            int keep = s;
            sg[path[i]] = keep;
            p[path[i]] = x;
        }
        return x;
    }
    int sign_to_root(int x) {
        find(x);
        return p[x] == x ? 1 : sg[x];
    }
    /* impose e_a = s * e_b */
    void unite(int a, int b, int s) {
        int ra = find(a), rb = find(b);
        int sa = (p[a] == a) ? 1 : sg[a];
        int sb = (p[b] == b) ? 1 : sg[b];
        if (ra == rb) {
            if (sa != s * sb) dead[ra] = 1;
            return;
        }
        p[ra] = rb;
        sg[ra] = sa * s * sb;
        if (dead[ra]) dead[rb] = 1;
    }
};

} // namespace

ChainQ::Quot ChainQ::quotient_by_signed_pairs(const Obj& x,
                                              const std::vector<std::vector<SignedPair>>& rel) {
    int D = x->D;
    assert((int)rel.size() == D + 1);
    std::vector<SpQ> proj(D + 1), sect(D + 1);
    std::vector<int> ndims(D + 1, 0);
    for (int k = 0; k <= D; ++k) {
        int n = x->dims[k];
        SignedUF uf(n);
        for (auto& [a, b, s] : rel[k]) uf.unite(a, b, s);
        /* class ids by first appearance, so reps are the smallest members */
        std::vector<int> rep;
        std::vector<int> root_cls(n, -1);
        for (int i = 0; i < n; ++i) {
            int r = uf.find(i);
            if (uf.dead[r]) continue;
            if (root_cls[r] < 0) {
                root_cls[r] = (int)rep.size();
                rep.push_back(i);
            }
        }
        ndims[k] = (int)rep.size();
        proj[k] = SpQ(ndims[k], n);
        sect[k] = SpQ(n, ndims[k]);
        for (int i = 0; i < n; ++i) {
            int r = uf.find(i);
            if (uf.dead[r]) continue;
            int s = uf.sign_to_root(i) * uf.sign_to_root(rep[root_cls[r]]);
            proj[k].add(root_cls[r], i, Q(s));
        }
        for (int c = 0; c < ndims[k]; ++c) sect[k].add(rep[c], c, Q(1));
    }
    std::vector<SpQ> nd(D + 1);
    nd[0] = SpQ(0, ndims[0]);
    for (int k = 1; k <= D; ++k) nd[k] = proj[k - 1] * (x->d[k] * sect[k]);
    Obj q = make(D, std::move(ndims), std::move(nd), x->valid_through);
    return Quot{q, ChMor{x, q, std::move(proj)}, std::move(sect)};
}

ChainQ::Quot ChainQ::coequalizer(const Mor& f, const Mor& g) {
    assert(f.src->dims == g.src->dims && f.dst->dims == g.dst->dims);
    std::vector<SpQ> rels(f.src->D + 1);
    for (int k = 0; k <= f.src->D; ++k) rels[k] = f.comp[k] - g.comp[k];
    return quotient(f.dst, rels);
}

ChainQ::Pushout ChainQ::pushout(const Mor& f, const Mor& g) {
    assert(f.src->dims == g.src->dims && "pushout legs need a shared source");
    Coprod c = coproduct({f.dst, g.dst});
    Mor h = sub(compose(c.in[0], f), compose(c.in[1], g));
    Quot q = quotient(c.obj, h.comp);
    return Pushout{q.obj, compose(q.proj, c.in[0]), compose(q.proj, c.in[1]), q.section};
}

ChMor ChainQ::pushout_induced(const Pushout& po, const Mor& u, const Mor& v) {
    assert(u.dst->dims == v.dst->dims);
    int D = po.obj->D;
    std::vector<SpQ> c(D + 1);
    for (int k = 0; k <= D; ++k) {
        int xk = u.src->dims[k];
        SpQ uv(u.dst->dims[k], xk + v.src->dims[k]);
        for (int j = 0; j < xk; ++j) uv.col[j] = u.comp[k].col[j];
        for (int j = 0; j < v.src->dims[k]; ++j) uv.col[xk + j] = v.comp[k].col[j];
        c[k] = uv * po.section[k];
    }
    Mor ind = mor(po.obj, u.dst, std::move(c));
    assert(mor_eq(compose(ind, po.from_x), u) && "cocone does not respect the pushout");
    assert(mor_eq(compose(ind, po.from_y), v) && "cocone does not respect the pushout");
    return ind;
}

ChMor ChainQ::quot_induced(const Quot& q, const Mor& u) {
    int D = q.obj->D;
    std::vector<SpQ> c(D + 1);
    for (int k = 0; k <= D; ++k) c[k] = u.comp[k] * q.section[k];
    Mor ind = mor(q.obj, u.dst, std::move(c));
    assert(mor_eq(compose(ind, q.proj), u) && "map does not kill the quotient relations");
    return ind;
}

bool ChainQ::is_signed_perm(const Mor& f) {
    for (int k = 0; k <= f.src->D; ++k) {
        if (f.src->dims[k] != f.dst->dims[k]) return false;
        SpQ m = f.comp[k];
        m.normalize();
        std::vector<char> row_seen(m.rows, 0);
        for (int j = 0; j < m.cols; ++j) {
            if (m.col[j].size() != 1) return false;
            auto& [i, v] = m.col[j][0];
            if (!(v == Q(1) || v == Q(-1))) return false;
            if (row_seen[i]) return false;
            row_seen[i] = 1;
        }
    }
    return true;
}

ChainQ::Quot ChainQ::coinvariants(const Action& a) {
    int D = a.obj->D;
    bool fast = true;
    for (auto& g : a.gens)
        if (!is_signed_perm(g)) {
            fast = false;
            break;
        }
    if (fast) {
        std::vector<std::vector<SignedPair>> rel(D + 1);
        for (auto& g : a.gens)
            for (int k = 0; k <= D; ++k)
                for (int j = 0; j < g.comp[k].cols; ++j)
                    if (!g.comp[k].col[j].empty()) {
                        auto& [i, v] = g.comp[k].col[j][0];
                        rel[k].push_back({j, i, v == Q(1) ? 1 : -1});
                    }
        return quotient_by_signed_pairs(a.obj, rel);
    }
    std::vector<SpQ> rels(D + 1);
    for (int k = 0; k <= D; ++k) {
        int n = a.obj->dims[k];
        SpQ r(n, n * (int)a.gens.size());
        int off = 0;
        for (auto& g : a.gens) {
            for (int j = 0; j < n; ++j) {
                for (auto& [i, v] : g.comp[k].col[j]) r.add(i, off + j, v);
                r.add(j, off + j, Q(-1));
            }
            off += n;
        }
        rels[k] = std::move(r);
    }
    return quotient(a.obj, rels);
}

ChainQ::Quot ChainQ::rel_tensor(const Action& m, const Action& x) {
    assert(m.gens.size() == x.gens.size());
    Obj t = tensor(m.obj, x.obj);
    int D = t->D;
    bool fast = true;
    for (auto& g : m.gens)
        if (!is_signed_perm(g)) fast = false;
    for (auto& g : x.gens)
        if (!is_signed_perm(g)) fast = false;
    if (fast) {
        std::vector<std::vector<SignedPair>> rel(D + 1);
        for (size_t gi = 0; gi < m.gens.size(); ++gi) {
            Mor r = tensor_mor(m.gens[gi], id(x.obj));
            Mor l = tensor_mor(id(m.obj), x.gens[gi]);
            for (int k = 0; k <= D; ++k)
                for (int j = 0; j < t->dims[k]; ++j) {
                    if (r.comp[k].col[j].empty() || l.comp[k].col[j].empty()) continue;
                    auto& [ia, va] = r.comp[k].col[j][0];
                    auto& [ib, vb] = l.comp[k].col[j][0];
                    int s = (va == vb) ? 1 : -1;
                    rel[k].push_back({ia, ib, s});
                }
        }
        return quotient_by_signed_pairs(t, rel);
    }
    std::vector<SpQ> rels(D + 1);
    for (int k = 0; k <= D; ++k) rels[k] = SpQ(t->dims[k], 0);
    for (size_t gi = 0; gi < m.gens.size(); ++gi) {
        Mor r = tensor_mor(m.gens[gi], id(x.obj));
        Mor l = tensor_mor(id(m.obj), x.gens[gi]);
        for (int k = 0; k <= D; ++k) {
            SpQ diff = r.comp[k] - l.comp[k];
            SpQ merged(t->dims[k], rels[k].cols + diff.cols);
            for (int j = 0; j < rels[k].cols; ++j) merged.col[j] = rels[k].col[j];
            for (int j = 0; j < diff.cols; ++j) merged.col[rels[k].cols + j] = diff.col[j];
            rels[k] = std::move(merged);
        }
    }
    return quotient(t, rels);
}

std::vector<int> ChainQ::averaging_rank(const Obj& x, const std::vector<Mor>& full_group) {
    assert(!full_group.empty());
    int D = x->D;
    std::vector<int> out(D + 1, 0);
    Q inv = Q(1) / Q((long)full_group.size());
    for (int k = 0; k <= D; ++k) {
        SpQ acc(x->dims[k], x->dims[k]);
        for (auto& g : full_group) acc = acc + g.comp[k];
        acc = acc.scaled(inv);
        out[k] = rank_q(acc.to_dense());
    }
    return out;
}

ChObjP ChainQ::cone(const Mor& f) {
    const Obj& X = f.src;
    const Obj& Y = f.dst;
    int D = X->D;
    std::vector<int> dims(D + 1, 0);
    for (int k = 0; k <= D; ++k) dims[k] = X->dim(k - 1) + Y->dims[k];
    std::vector<SpQ> d(D + 1);
    for (int k = 0; k <= D; ++k) d[k] = SpQ(k == 0 ? 0 : dims[k - 1], dims[k]);
    for (int k = 1; k <= D; ++k) {
        int xk1 = X->dim(k - 1);
        /* X-part: -d_X, then f into the Y-part */
        for (int j = 0; j < xk1; ++j) {
            if (k >= 2)
                for (auto& [r, v] : X->d[k - 1].col[j]) d[k].add(r, j, -v);
            for (auto& [r, v] : f.comp[k - 1].col[j]) d[k].add(X->dim(k - 2) + r, j, v);
        }
        for (int j = 0; j < Y->dims[k]; ++j)
            for (auto& [r, v] : Y->d[k].col[j]) d[k].add(X->dim(k - 2) + r, xk1 + j, v);
    }
    int vt = std::min(std::min(X->valid_through + 1, Y->valid_through), D);
    return make(D, std::move(dims), std::move(d), vt);
}

BettiReport ChainQ::betti(const Obj& x, RankPolicy pol) {
    BettiReport out;
    out.through = x->valid_through - 1;
    out.exact = (pol == RankPolicy::Exact);
    if (out.through < 0) return out;
    std::vector<long> rk(x->valid_through + 2, 0);
    for (int k = 1; k <= x->valid_through; ++k)
        rk[k] = (pol == RankPolicy::Exact) ? x->d[k].rank_exact() : x->d[k].rank_modp(RANK_PRIME);
    for (int k = 0; k <= out.through; ++k) out.b.push_back(x->dims[k] - rk[k] - rk[k + 1]);
    return out;
}

Verdict ChainQ::is_weak_equivalence(const Mor& f, RankPolicy pol) {
    Obj C = cone(f);
    int through = C->valid_through - 1;
    if (through < 0) return Verdict::inconclusive("no degrees below the validity cap");
    BettiReport rep = betti(C, pol);
    std::vector<int> suspicious;
    for (int k = 0; k <= rep.through; ++k)
        if (rep.b[k] != 0) suspicious.push_back(k);
    if (pol == RankPolicy::Modular && !suspicious.empty()) {
        /* the modular rank only bounds from below, so confirm exactly */
        for (int k : suspicious) {
            long r1 = C->d[k].rank_exact();
            long r2 = (k + 1 <= C->valid_through) ? C->d[k + 1].rank_exact() : 0;
            long b = C->dims[k] - r1 - r2;
            if (b != 0) {
                Verdict v = Verdict::fail("mapping cone has homology rank " + std::to_string(b) +
                                          " in degree " + std::to_string(k));
                v.valid_through = through;
                return v;
            }
        }
        suspicious.clear();
    }
    if (!suspicious.empty()) {
        Verdict v = Verdict::fail("mapping cone has homology rank " + std::to_string(rep.b[suspicious[0]]) +
                                  " in degree " + std::to_string(suspicious[0]));
        v.valid_through = through;
        return v;
    }
    Verdict v = Verdict::pass("mapping cone acyclic through degree " + std::to_string(through));
    v.valid_through = through;
    return v;
}

ChainQ::PushoutProduct ChainQ::pushout_product(const std::vector<Mor>& fs) {
    PushoutProduct pp;
    pp.maps = fs;
    int n = (int)fs.size();
    assert(n >= 1);
    if (n == 1) {
        pp.summands = {fs[0].src};
        pp.into_domain = {id(fs[0].src)};
        pp.domain = fs[0].src;
        pp.codomain = fs[0].dst;
        pp.assembled = fs[0];
        return pp;
    }
    std::vector<Obj> bs(n);
    for (int i = 0; i < n; ++i) bs[i] = fs[i].dst;
    pp.codomain = tensor_list(bs);

    auto slot_obj = [&](const std::vector<int>& srcslots) {
        std::vector<Obj> v = bs;
        for (int j : srcslots) v[j] = fs[j].src;
        return tensor_list(v);
    };
    auto slot_mor = [&](const std::vector<int>& srcslots, int apply_at) {
        std::vector<Mor> v(n);
        for (int i = 0; i < n; ++i) v[i] = id(bs[i]);
        for (int j : srcslots) v[j] = id(fs[j].src);
        v[apply_at] = fs[apply_at];
        return tensor_list_mor(v);
    };

    for (int j = 0; j < n; ++j) pp.summands.push_back(slot_obj({j}));
    Coprod c = coproduct(pp.summands);
    int D = c.obj->D;
    std::vector<SpQ> rels(D + 1);
    for (int k = 0; k <= D; ++k) rels[k] = SpQ(c.obj->dims[k], 0);
    for (int j = 0; j < n; ++j)
        for (int jp = j + 1; jp < n; ++jp) {
            PushoutProduct::Inter in;
            in.j = j;
            in.jp = jp;
            in.obj = slot_obj({j, jp});
            in.to_j = slot_mor({j, jp}, jp);
            in.to_jp = slot_mor({j, jp}, j);
            Mor h = sub(compose(c.in[j], in.to_j), compose(c.in[jp], in.to_jp));
            for (int k = 0; k <= D; ++k) {
                SpQ merged(c.obj->dims[k], rels[k].cols + h.comp[k].cols);
                for (int q = 0; q < rels[k].cols; ++q) merged.col[q] = rels[k].col[q];
                for (int q = 0; q < h.comp[k].cols; ++q)
                    merged.col[rels[k].cols + q] = h.comp[k].col[q];
                rels[k] = std::move(merged);
            }
            pp.inters.push_back(std::move(in));
        }
    Quot q = quotient(c.obj, rels);
    pp.domain = q.obj;
    for (int j = 0; j < n; ++j) pp.into_domain.push_back(compose(q.proj, c.in[j]));

    /* assembled = (slotwise maps on ⊔S_j) factored through the quotient */
    std::vector<SpQ> ucomp(D + 1);
    for (int k = 0; k <= D; ++k) ucomp[k] = SpQ(pp.codomain->dims[k], c.obj->dims[k]);
    for (int j = 0; j < n; ++j) {
        Mor t = compose(slot_mor({j}, j), c.pr[j]);
        for (int k = 0; k <= D; ++k) ucomp[k] = ucomp[k] + t.comp[k];
    }
    Mor u = mor(c.obj, pp.codomain, std::move(ucomp));
    std::vector<SpQ> acomp(D + 1);
    for (int k = 0; k <= D; ++k) acomp[k] = u.comp[k] * q.section[k];
    pp.assembled = mor(q.obj, pp.codomain, std::move(acomp));
    assert(mor_eq(compose(pp.assembled, q.proj), u) && "pushout product gluing inconsistent");
    pp.section = q.section;
    return pp;
}

ChMor ChainQ::pp_induced(const PushoutProduct& pp, const std::vector<Mor>& phis) {
    assert(phis.size() == pp.summands.size());
    assert(!phis.empty());
    if (pp.summands.size() == 1) return phis[0]; // n=1: domain is the summand itself
    const Obj& t = phis[0].dst;
    int D = pp.domain->D;
    std::vector<SpQ> c(D + 1);
    for (int k = 0; k <= D; ++k) {
        int total = 0;
        for (auto& s : pp.summands) total += s->dims[k];
        SpQ u(t->dims[k], total);
        int off = 0;
        for (size_t j = 0; j < phis.size(); ++j) {
            for (int col = 0; col < pp.summands[j]->dims[k]; ++col)
                u.col[off + col] = phis[j].comp[k].col[col];
            off += pp.summands[j]->dims[k];
        }
        c[k] = u * pp.section[k];
    }
    Mor ind = mor(pp.domain, t, std::move(c));
    for (size_t j = 0; j < phis.size(); ++j)
        assert(mor_eq(compose(ind, pp.into_domain[j]), phis[j]) &&
               "family not compatible on the intersections");
    return ind;
}

HomologyBasis homology_basis(const ChObjP& x) {
    HomologyBasis out;
    out.through = x->valid_through - 1;
    int D = x->D;
    out.reps.resize(D + 1);
    out.bnd.resize(D + 1);
    for (int k = 0; k <= out.through; ++k) {
        QMat dk = x->d[k].to_dense();
        QMat dk1 = x->d[k + 1].to_dense();
        out.bnd[k] = dk1;
        QMat Z = nullspace(dk); // dims[k] x z
        /* pick cycle columns extending the boundary space */
        QMat BZ = dk1.hstack(Z);
        RrefResult rr = rref(BZ);
        int rb = rank_q(dk1);
        QMat reps(x->dims[k], 0);
        for (int c : rr.pivot_cols)
            if (c >= dk1.cols) {
                QMat col(x->dims[k], 1);
                for (int i = 0; i < x->dims[k]; ++i) col.at(i, 0) = Z.at(i, c - dk1.cols);
                reps = reps.hstack(col);
            }
        out.reps[k] = reps;
        out.b.push_back(Z.cols - rb);
        assert(reps.cols == Z.cols - rb);
    }
    return out;
}

QMat homology_map(const HomologyBasis& hx, const HomologyBasis& hy, const ChMor& f, int k) {
    assert(k <= hx.through && k <= hy.through);
    const QMat& rx = hx.reps[k];
    QMat img(f.dst->dims[k], rx.cols);
    for (int c = 0; c < rx.cols; ++c) {
        std::vector<Q> v(f.src->dims[k]);
        for (int i = 0; i < f.src->dims[k]; ++i) v[i] = rx.at(i, c);
        std::vector<Q> w = f.comp[k].apply(v);
        for (int i = 0; i < f.dst->dims[k]; ++i) img.at(i, c) = w[i];
    }
    /* express each image cycle as boundary + combination of reps */
    QMat BR = hy.bnd[k].hstack(hy.reps[k]);
    auto sol = solve_linear(BR, img);
    assert(sol && "image cycle not expressible; not a chain map?");
    QMat out((int)hy.b[k], rx.cols);
    for (int c = 0; c < rx.cols; ++c)
        for (int i = 0; i < (int)hy.b[k]; ++i) out.at(i, c) = sol->at(hy.bnd[k].cols + i, c);
    return out;
}

} // namespace operadics
