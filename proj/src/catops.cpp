#include "operadics/catops.hpp"

#include <cassert>

namespace operadics {

/* ---------------- FinSet ---------------- */

FObjP FinOps::tlist(const std::vector<FObjP>& xs, const Caps&) {
    if (xs.empty()) return FinSet::unit();
    if (xs.size() == 1) return xs[0];
    return FinSet::tensor_list(xs);
}

FMor FinOps::apply_block(const std::vector<FObjP>& pre, const std::vector<FObjP>& fsrc,
                         const std::vector<FObjP>& fdst, const FMor& f,
                         const std::vector<FObjP>& post, const Caps& caps) {
    long long P = 1, S1 = 1, S2 = 1, Q = 1;
    for (auto& x : pre) P *= x->size();
    for (auto& x : fsrc) S1 *= x->size();
    for (auto& x : fdst) S2 *= x->size();
    for (auto& x : post) Q *= x->size();
    assert((long long)f.src->size() == S1 && (long long)f.dst->size() == S2);
    std::vector<FObjP> sf = pre, df = pre;
    sf.insert(sf.end(), fsrc.begin(), fsrc.end());
    sf.insert(sf.end(), post.begin(), post.end());
    df.insert(df.end(), fdst.begin(), fdst.end());
    df.insert(df.end(), post.begin(), post.end());
    FObjP S = tlist(sf, caps), D = tlist(df, caps);
    assert((long long)S->size() == P * S1 * Q && (long long)D->size() == P * S2 * Q);
    std::vector<int> map((size_t)S->size());
    for (long long i = 0; i < P; i++)
        for (long long j = 0; j < S1; j++) {
            long long fj = f.map[(size_t)j];
            for (long long l = 0; l < Q; l++)
                map[(size_t)((i * S1 + j) * Q + l)] = (int)((i * S2 + fj) * Q + l);
        }
    return FinSet::mor(S, D, std::move(map));
}

FinOps::Quot FinOps::quotient_pairs(const FObjP& x,
                                    const std::vector<std::pair<FMor, FMor>>& rel) {
    std::vector<std::pair<int, int>> prs;
    for (auto& [f, g] : rel) {
        assert(f.dst->size() == x->size() && g.dst->size() == x->size());
        assert(f.src->size() == g.src->size());
        for (int s = 0; s < f.src->size(); s++) prs.push_back({f.map[s], g.map[s]});
    }
    auto [q, proj] = FinSet::quotient(x, prs);
    std::vector<int> sec(q->size(), -1);
    for (int i = 0; i < x->size(); i++)
        if (sec[proj.map[i]] < 0) sec[proj.map[i]] = i;
    for (int v : sec) assert(v >= 0);
    return {q, proj, FinSet::mor(q, x, std::move(sec))};
}

FMor FinOps::coprod_induced(const FinSet::Coprod& c, const std::vector<FMor>& fs) {
    assert(!fs.empty() && fs.size() == c.in.size());
    FObjP dst = fs[0].dst;
    std::vector<int> map((size_t)c.obj->size(), -1);
    for (size_t t = 0; t < fs.size(); t++) {
        assert(fs[t].dst->size() == dst->size());
        assert(fs[t].src->size() == c.in[t].src->size());
        for (int s = 0; s < c.in[t].src->size(); s++) map[c.in[t].map[s]] = fs[t].map[s];
    }
    for (int v : map) assert(v >= 0);
    return FinSet::mor(c.obj, dst, std::move(map));
}

FMor FinOps::coprod_map(const FinSet::Coprod& s, const FinSet::Coprod& t,
                        const std::vector<FMor>& fs) {
    assert(fs.size() == s.in.size() && fs.size() == t.in.size());
    std::vector<int> map((size_t)s.obj->size(), -1);
    for (size_t i = 0; i < fs.size(); i++) {
        assert(fs[i].src->size() == s.in[i].src->size());
        assert(fs[i].dst->size() == t.in[i].src->size());
        for (int k = 0; k < s.in[i].src->size(); k++)
            map[s.in[i].map[k]] = t.in[i].map[fs[i].map[k]];
    }
    for (int v : map) assert(v >= 0);
    return FinSet::mor(s.obj, t.obj, std::move(map));
}

FMor FinOps::tensor_pp_induced(const std::vector<FObjP>& pre, const FinSet::PushoutProduct& pp,
                               const std::vector<FObjP>& post, const std::vector<FMor>& phis,
                               const Caps& caps) {
    int nj = (int)pp.summands.size();
    assert((int)phis.size() == nj && nj > 0);
    long long P = 1, Q = 1;
    for (auto& x : pre) P *= x->size();
    for (auto& x : post) Q *= x->size();
    FObjP dst = phis[0].dst;
    long long Dq = pp.domain->size();
    std::vector<FObjP> sf = pre;
    sf.push_back(pp.domain);
    sf.insert(sf.end(), post.begin(), post.end());
    FObjP S = tlist(sf, caps);
    std::vector<int> map((size_t)S->size(), -1);
    for (int j = 0; j < nj; j++) {
        assert(phis[j].dst->size() == dst->size());
        long long Sj = pp.summands[j]->size();
        assert((long long)phis[j].src->size() == P * Sj * Q);
        for (long long s = 0; s < Sj; s++) {
            long long q = pp.into_domain[j].map[(size_t)s];
            for (long long i = 0; i < P; i++)
                for (long long l = 0; l < Q; l++) {
                    int v = phis[j].map[(size_t)((i * Sj + s) * Q + l)];
                    size_t pos = (size_t)((i * Dq + q) * Q + l);
                    if (map[pos] < 0)
                        map[pos] = v;
                    else
                        assert(map[pos] == v); // the family must agree on overlaps
                }
        }
    }
    for (int v : map) assert(v >= 0);
    return FinSet::mor(S, dst, std::move(map));
}

/* ---------------- ChainQ ---------------- */

bool ChOps::eq(const ChMor& a, const ChMor& b, int through) {
    if (a.src->dims != b.src->dims || a.dst->dims != b.dst->dims) return false;
    int D = a.src->D;
    int thr = through < 0 ? D : std::min(through, D);
    for (int k = 0; k <= thr; k++)
        if (!(a.comp[k] - b.comp[k]).is_zero()) return false;
    return true;
}

ChObjP ChOps::tlist(const std::vector<ChObjP>& xs, const Caps& caps) {
    if (xs.empty()) return ChainQ::unit(caps.max_degree);
    if (xs.size() == 1) return xs[0];
    return ChainQ::tensor_list(xs);
}

namespace {

std::vector<ChainQ::MultiIndex> positions(const std::vector<ChObjP>& xs, int k) {
    if (xs.empty())
        return k == 0 ? std::vector<ChainQ::MultiIndex>{ChainQ::MultiIndex{}}
                      : std::vector<ChainQ::MultiIndex>{};
    return ChainQ::tensor_positions(xs, k);
}

int pos_index(const std::vector<ChObjP>& xs, const ChainQ::MultiIndex& mi) {
    if (xs.empty()) return 0;
    return ChainQ::tensor_position_index(xs, mi);
}

} // namespace

ChMor ChOps::apply_block(const std::vector<ChObjP>& pre, const std::vector<ChObjP>& fsrc,
                         const std::vector<ChObjP>& fdst, const ChMor& f,
                         const std::vector<ChObjP>& post, const Caps& caps) {
    std::vector<ChObjP> sf = pre, df = pre;
    sf.insert(sf.end(), fsrc.begin(), fsrc.end());
    sf.insert(sf.end(), post.begin(), post.end());
    df.insert(df.end(), fdst.begin(), fdst.end());
    df.insert(df.end(), post.begin(), post.end());
    ChObjP S = tlist(sf, caps), T = tlist(df, caps);
    int D = S->D;
    int npre = (int)pre.size(), ns = (int)fsrc.size(), nd = (int)fdst.size(),
        npost = (int)post.size();
    std::vector<std::vector<ChainQ::MultiIndex>> dstmid(D + 1);
    for (int k = 0; k <= D; k++) dstmid[k] = positions(fdst, k);
    std::vector<SpQ> comp(D + 1);
    for (int k = 0; k <= D; k++) {
        SpQ m(T->dim(k), S->dim(k));
        auto spos = positions(sf, k);
        assert((int)spos.size() == S->dim(k));
        for (int sI = 0; sI < (int)spos.size(); sI++) {
            const auto& mi = spos[sI];
            ChainQ::MultiIndex mid;
            int km = 0;
            for (int t = 0; t < ns; t++) {
                mid.degs.push_back(mi.degs[npre + t]);
                mid.idxs.push_back(mi.idxs[npre + t]);
                km += mi.degs[npre + t];
            }
            int jm = pos_index(fsrc, mid);
            const SpQ& fc = f.comp[km];
            assert(jm < fc.cols);
            for (auto& [r, cval] : fc.col[jm]) {
                const auto& dmi = dstmid[km][r];
                ChainQ::MultiIndex out;
                for (int t = 0; t < npre; t++) {
                    out.degs.push_back(mi.degs[t]);
                    out.idxs.push_back(mi.idxs[t]);
                }
                for (int t = 0; t < nd; t++) {
                    out.degs.push_back(dmi.degs[t]);
                    out.idxs.push_back(dmi.idxs[t]);
                }
                for (int t = 0; t < npost; t++) {
                    out.degs.push_back(mi.degs[npre + ns + t]);
                    out.idxs.push_back(mi.idxs[npre + ns + t]);
                }
                m.add(pos_index(df, out), sI, cval);
            }
        }
        m.normalize();
        comp[k] = std::move(m);
    }
    return ChainQ::mor(S, T, std::move(comp));
}

ChOps::Quot ChOps::quotient_pairs(const ChObjP& x,
                                  const std::vector<std::pair<ChMor, ChMor>>& rel) {
    int D = x->D;
    std::vector<SpQ> rels(D + 1);
    for (int k = 0; k <= D; k++) rels[k] = SpQ::zero(x->dim(k), 0);
    for (auto& [f, g] : rel) {
        assert(f.dst->dims == x->dims && g.dst->dims == x->dims);
        assert(f.src->dims == g.src->dims);
        for (int k = 0; k <= D; k++) {
            SpQ d = f.comp[k] - g.comp[k];
            for (auto& c : d.col) {
                rels[k].col.push_back(c);
                rels[k].cols++;
            }
        }
    }
    auto q = ChainQ::quotient(x, rels);
    ChMor sec{q.obj, x, q.section};
    return {q, q.obj, q.proj, std::move(sec)};
}

ChMor ChOps::coprod_induced(const ChainQ::Coprod& c, const std::vector<ChMor>& fs) {
    assert(!fs.empty() && fs.size() == c.in.size());
    ChMor acc = ChainQ::compose(fs[0], c.pr[0]);
    for (size_t t = 1; t < fs.size(); t++)
        acc = ChainQ::add(acc, ChainQ::compose(fs[t], c.pr[t]));
    return acc;
}

ChMor ChOps::coprod_map(const ChainQ::Coprod& s, const ChainQ::Coprod& t,
                        const std::vector<ChMor>& fs) {
    assert(fs.size() == s.in.size() && fs.size() == t.in.size());
    ChMor acc = ChainQ::compose(t.in[0], ChainQ::compose(fs[0], s.pr[0]));
    for (size_t i = 1; i < fs.size(); i++)
        acc = ChainQ::add(acc, ChainQ::compose(t.in[i], ChainQ::compose(fs[i], s.pr[i])));
    return acc;
}

ChMor ChOps::tensor_pp_induced(const std::vector<ChObjP>& pre, const ChainQ::PushoutProduct& pp,
                               const std::vector<ChObjP>& post, const std::vector<ChMor>& phis,
                               const Caps& caps) {
    int nj = (int)pp.summands.size();
    assert((int)phis.size() == nj && nj > 0);
    if (nj == 1) return phis[0]; // domain coincides with the lone summand
    int D = pp.domain->D;
    ChMor acc;
    bool first = true;
    for (int j = 0; j < nj; j++) {
        std::vector<SpQ> comp(D + 1);
        for (int k = 0; k <= D; k++) {
            int off = 0;
            for (int l = 0; l < j; l++) off += pp.summands[l]->dim(k);
            int dj = pp.summands[j]->dim(k);
            SpQ m(dj, pp.domain->dim(k));
            for (int cidx = 0; cidx < pp.section[k].cols; cidx++)
                for (auto& [r, v] : pp.section[k].col[cidx])
                    if (r >= off && r < off + dj) m.add(r - off, cidx, v);
            m.normalize();
            comp[k] = std::move(m);
        }
        ChMor secj{pp.domain, pp.summands[j], std::move(comp)};
        ChMor embed = apply_block(pre, {pp.domain}, {pp.summands[j]}, secj, post, caps);
        ChMor term = ChainQ::compose(phis[j], embed);
        acc = first ? term : ChainQ::add(acc, term);
        first = false;
    }
    return acc;
}

} // namespace operadics
