#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "operadics/operad.hpp"
#include "operadics/qlinalg.hpp"

/* Free operads over either coefficient category, built as the decorated-tree
   colimit. Unpointed variants are a plain coproduct over labeled trees; the
   pointed variants glue trees stagewise along pushout products of the
   basepoint, so that a unit decoration on a unary vertex collapses the vertex.
   Symmetric variants identify isomorphic decorated shapes by one quotient at
   the very end. The stage record stored in FreeArity lets later operations
   (actions, functoriality, tree substitution) re-run the same colimit against
   a different target. */

namespace operadics {

namespace {

template <class T>
std::vector<T> cat2(std::vector<T> a, const std::vector<T>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string key_name(const std::vector<int>& key) {
    std::string s = "(";
    for (size_t i = 0; i < key.size(); ++i) s += (i ? "," : "") + std::to_string(key[i]);
    return s + ")";
}

/* category-specific corners */
template <class Cat>
struct FreeBits;

template <>
struct FreeBits<FinSet> {
    static FMor empty_from(const FObjP& s, const FObjP& t) {
        assert(s->size() == 0);
        return FMor{s, t, {}};
    }
    /* bridge between two bracketings of the same flat tensor: both sides list
       basis tuples in the same order, so the map is the identity on indices */
    static FMor rebracket(const FObjP& s, const FObjP& t) {
        assert(s->size() == t->size());
        std::vector<int> m(s->size());
        std::iota(m.begin(), m.end(), 0);
        return FMor{s, t, std::move(m)};
    }
    static FMor section_of(const FMor& assembled) {
        std::vector<int> m(assembled.dst->size(), -1);
        for (int i = 0; i < (int)assembled.map.size(); ++i)
            if (m[assembled.map[i]] < 0) m[assembled.map[i]] = i;
        for (int v : m) {
            assert(v >= 0 && "every class needs a representative decoration");
            (void)v;
        }
        return FMor{assembled.dst, assembled.src, std::move(m)};
    }
};

template <>
struct FreeBits<ChainQ> {
    static ChMor empty_from(const ChObjP& s, const ChObjP& t) {
        assert(s->total_dim() == 0);
        return ChainQ::zero_mor(s, t);
    }
    static ChMor rebracket(const ChObjP& s, const ChObjP& t) {
        assert(s->dims == t->dims);
        std::vector<SpQ> c(s->D + 1);
        for (int k = 0; k <= s->D; ++k) c[k] = SpQ::identity(s->dims[k]);
        return ChainQ::mor(s, t, std::move(c));
    }
};

/* Right inverse of the assembled map whose support sits on the earliest
   summands possible: try the prefix of summands with at most v vertices and
   grow v until every degree solves. Low-vertex representatives matter: the
   composition of the built operad grafts representative shapes, and small
   representatives keep the grafts inside the vertex cap. */
ChMor blockmin_section(const FreeArity<ChainQ>& a) {
    const ChObjP& big = a.cop.obj;
    const ChObjP& obj = a.obj;
    std::vector<int> kept;
    for (int t = 0; t < (int)a.trees.size(); ++t)
        if (a.kept[t]) kept.push_back(t);
    int maxv = 0;
    for (int t : kept) maxv = std::max(maxv, a.trees[t].vcount());

    for (int v = 0; v <= maxv; ++v) {
        /* columns of the summand blocks with at most v vertices */
        std::vector<SpQ> c(big->D + 1);
        bool ok = true;
        for (int k = 0; k <= big->D && ok; ++k) {
            std::vector<int> cols;
            for (size_t j = 0; j < kept.size(); ++j) {
                if (a.trees[kept[j]].vcount() > v) continue;
                const ChObjP& s = a.cop.in[j].src;
                int off = 0;
                for (size_t l = 0; l < j; ++l) off += a.cop.in[l].src->dims[k];
                for (int q = 0; q < s->dims[k]; ++q) cols.push_back(off + q);
            }
            QMat M = a.assembled.comp[k].to_dense();
            QMat Mr(M.rows, (int)cols.size());
            for (int i = 0; i < M.rows; ++i)
                for (size_t j = 0; j < cols.size(); ++j) Mr.at(i, (int)j) = M.at(i, cols[j]);
            auto sol = solve_linear(Mr, QMat::identity(obj->dims[k]));
            if (!sol) {
                ok = false;
                break;
            }
            SpQ full(big->dims[k], obj->dims[k]);
            for (size_t j = 0; j < cols.size(); ++j)
                for (int y = 0; y < obj->dims[k]; ++y)
                    if (sol->at((int)j, y) != 0) full.add(cols[j], y, sol->at((int)j, y));
            full.normalize();
            c[k] = std::move(full);
        }
        if (ok) return ChainQ::mor(obj, big, std::move(c));
    }
    assert(false && "assembled summand map must be degreewise onto");
    return ChMor{};
}

template <class Cat>
typename Cat::Coprod coprod_of(const std::vector<typename Cat::Obj>& xs, const Caps& caps) {
    if (!xs.empty()) return Cat::coproduct(xs);
    typename Cat::Coprod c{};
    c.obj = Ops<Cat>::initialobj(caps);
    return c;
}

/* permute_factors needs a factor to infer the ambient complex; with none or
   one the permutation is the identity anyway */
template <class Cat>
typename Cat::Mor perm_or_id(const std::vector<typename Cat::Obj>& xs, const Perm& s,
                             const Caps& caps) {
    if (xs.size() <= 1) return Cat::id(Ops<Cat>::tlist(xs, caps));
    return Cat::permute_factors(xs, s);
}

/* Replay the colimit: a family g[t]: tlist(dec[t]) -> z over the kept trees
   that respects the gluing induces a unique map obj -> z. The mediator
   constructions assert the respect conditions, so an unlawful family fails
   loudly instead of silently producing garbage. */
template <class Cat>
typename Cat::Mor transport(const FreeArity<Cat>& a, const Caps& caps,
                            const typename Cat::Obj& z,
                            const std::vector<typename Cat::Mor>& g) {
    using O = Ops<Cat>;
    std::vector<typename Cat::Mor> legs;
    for (int t : a.base) legs.push_back(g[t]);
    typename Cat::Mor cur = legs.empty() ? FreeBits<Cat>::empty_from(a.basecop.obj, z)
                                         : O::coprod_induced(a.basecop, legs);
    for (const FreeStage<Cat>& st : a.stages) {
        std::vector<typename Cat::Mor> bl;
        for (int t : st.cells) {
            std::vector<typename Cat::Obj> bodyfac(a.dec[t].size());
            for (size_t p = 0; p < a.dec[t].size(); ++p) bodyfac[a.regroup[t][p]] = a.dec[t][p];
            bl.push_back(Cat::compose(g[t], perm_or_id<Cat>(bodyfac, perm_inv(a.regroup[t]), caps)));
        }
        cur = Cat::pushout_induced(st.po, cur, O::coprod_induced(st.bodies, bl));
    }
    if (a.quotiented) cur = a.quot.induced(cur);
    return cur;
}

/* mixed-radix decode of a tensor index, first factor most significant */
void mr_decode(int idx, const std::vector<int>& sizes, std::vector<int>& out) {
    out.assign(sizes.size(), 0);
    for (int p = (int)sizes.size() - 1; p >= 0; --p) {
        out[p] = idx % sizes[p];
        idx /= sizes[p];
    }
}

int mr_encode(const std::vector<int>& digits, const std::vector<int>& sizes) {
    int idx = 0;
    for (size_t p = 0; p < sizes.size(); ++p) idx = idx * sizes[p] + digits[p];
    return idx;
}

std::vector<int> dec_sizes(const std::vector<FObjP>& dec) {
    std::vector<int> s;
    for (auto& o : dec) s.push_back(o->size());
    return s;
}

/* element-level provenance of one built component: which kept tree and which
   decoration the chosen representative of each class comes from */
struct Prov {
    std::vector<int> tree, loc;
};

Prov provenance(const FreeArity<FinSet>& a) {
    Prov p;
    std::vector<int> kept;
    for (int t = 0; t < (int)a.trees.size(); ++t)
        if (a.kept[t]) kept.push_back(t);
    for (int y = 0; y < a.obj->size(); ++y) {
        int c = a.sec.map[y];
        for (size_t k = 0; k < kept.size(); ++k) {
            int off = a.cop.in[k].map.empty() ? 0 : a.cop.in[k].map[0];
            int sz = (int)a.cop.in[k].map.size();
            if (c >= off && c < off + sz) {
                p.tree.push_back(kept[k]);
                p.loc.push_back(c - off);
                break;
            }
        }
    }
    assert((int)p.tree.size() == a.obj->size());
    return p;
}

FMor build_gamma(const FreeOperadResult<FinSet>& R, const std::vector<int>& key,
                 const std::vector<Prov>& prov, const std::vector<std::vector<char>>&,
                 const FObjP& src, const Caps& caps) {
    const int m = (int)key.size();
    int n = 0;
    for (int k : key) n += k;
    const FreeArity<FinSet>& an = R.ar[n];

    std::vector<int> fs{R.ar[m].obj->size()};
    for (int k : key) fs.push_back(R.ar[k].obj->size());

    std::vector<int> out(src->size());
    std::vector<int> comp, digits, gdig;
    for (int e = 0; e < src->size(); ++e) {
        mr_decode(e, fs, comp);
        int t0 = prov[m].tree[comp[0]];
        std::vector<Tree> parts;
        std::vector<int> flat;
        mr_decode(prov[m].loc[comp[0]], dec_sizes(R.ar[m].dec[t0]), digits);
        flat = digits;
        for (int i = 0; i < m; ++i) {
            int ti = prov[key[i]].tree[comp[1 + i]];
            parts.push_back(R.ar[key[i]].trees[ti]);
            mr_decode(prov[key[i]].loc[comp[1 + i]], dec_sizes(R.ar[key[i]].dec[ti]), digits);
            flat.insert(flat.end(), digits.begin(), digits.end());
        }
        std::vector<int> vmap;
        Tree g = graft(R.ar[m].trees[t0], parts, vmap);
        int gi = an.tindex.at(tree_encode(g));
        assert(an.kept[gi]);
        gdig.assign(vmap.size(), 0);
        for (size_t q = 0; q < vmap.size(); ++q) gdig[vmap[q]] = flat[q];
        out[e] = an.realize[gi].map[mr_encode(gdig, dec_sizes(an.dec[gi]))];
    }
    (void)caps;
    return FMor{src, an.obj, std::move(out)};
}

ChMor build_gamma(const FreeOperadResult<ChainQ>& R, const std::vector<int>& key,
                  const std::vector<Prov>&, const std::vector<std::vector<char>>& supp,
                  const ChObjP& src, const Caps& caps) {
    const int m = (int)key.size();
    int n = 0;
    for (int k : key) n += k;
    const FreeArity<ChainQ>& an = R.ar[n];

    std::vector<ChObjP> sf{R.ar[m].obj};
    for (int k : key) sf.push_back(R.ar[k].obj);

    /* position of each kept tree within its coproduct */
    auto kept_pos = [&](int arity, int t) {
        int pos = 0;
        for (int s = 0; s < t; ++s)
            if (R.ar[arity].kept[s]) ++pos;
        return pos;
    };

    std::vector<SpQ> acc(src->D + 1);
    for (int k = 0; k <= src->D; ++k) acc[k] = SpQ::zero(an.obj->dims[k], src->dims[k]);

    /* one term per tuple of kept trees: extract each factor's decoration,
       graft the shapes, reorder the factors to the graft's preorder */
    std::vector<int> tuple(m + 1);
    std::function<void(int)> rec = [&](int pos) {
        if (pos > m) {
            int t0 = tuple[0];
            std::vector<Tree> parts;
            std::vector<ChObjP> flat = R.ar[m].dec[t0];
            for (int i = 0; i < m; ++i) {
                parts.push_back(R.ar[key[i]].trees[tuple[1 + i]]);
                flat = cat2(flat, R.ar[key[i]].dec[tuple[1 + i]]);
            }
            std::vector<int> vmap;
            Tree g = graft(R.ar[m].trees[t0], parts, vmap);
            int gi = an.tindex.at(tree_encode(g));
            assert(an.kept[gi]);

            ChMor cur;
            std::vector<ChObjP> done;
            for (int p = m; p >= 0; --p) {
                int arity = p == 0 ? m : key[p - 1];
                int t = tuple[p];
                const FreeArity<ChainQ>& ap = R.ar[arity];
                ChMor ext = ChainQ::compose(ap.cop.pr[kept_pos(arity, t)], ap.sec);
                std::vector<ChObjP> pre(sf.begin(), sf.begin() + p);
                ChMor step = ChOps::apply_block(pre, {sf[p]}, ap.dec[t], ext, done, caps);
                done = cat2(ap.dec[t], done);
                cur = p == m ? step : ChainQ::compose(step, cur);
            }
            Perm vp(vmap.begin(), vmap.end());
            ChMor term = ChainQ::compose(an.realize[gi],
                                         ChainQ::compose(perm_or_id<ChainQ>(flat, vp, caps), cur));
            for (int k = 0; k <= src->D; ++k) acc[k] = acc[k] + term.comp[k];
            return;
        }
        int arity = pos == 0 ? m : key[pos - 1];
        /* summands the section cannot reach contribute zero and may graft
           beyond the enumerated shapes, so only the reachable ones enter */
        for (int t = 0; t < (int)R.ar[arity].trees.size(); ++t)
            if (supp[arity][t]) {
                tuple[pos] = t;
                rec(pos + 1);
            }
    };
    rec(0);
    return ChainQ::mor(src, an.obj, std::move(acc));
}

} // namespace

template <class Cat>
FreeOperadResult<Cat> free_operad(const SymSeq<Cat>& x, const Caps& caps) {
    using O = Ops<Cat>;
    using Obj = typename Cat::Obj;
    using Mor = typename Cat::Mor;
    using FB = FreeBits<Cat>;

    const int A = caps.max_arity;
    assert(A >= 1);
    const bool ptd = x.pointed();
    const bool symq = x.symmetric();
    if (ptd) assert(x.e && x.max_arity() >= 1 && "pointed input needs a basepoint in arity 1");

    FreeOperadResult<Cat> R;
    R.x = x;
    R.x.caps = caps;

    Obj init = O::initialobj(caps);
    auto xc = [&](int k) -> const Obj& { return k <= x.max_arity() ? x.comp[k] : init; };

    bool higher = false;
    for (int k = 2; k <= A; ++k) higher = higher || !O::is_zero(xc(k));
    if (!ptd && !O::is_zero(xc(1))) {
        R.exact = false;
        R.flags.hit("unary generators without a basepoint: components truncated at the vertex cap");
    }
    if (ptd && !O::iso(*x.e)) {
        R.exact = false;
        R.flags.hit("basepoint is not invertible: unit chains truncated at the vertex cap");
    }
    if (!O::is_zero(xc(0)) && higher) {
        R.exact = false;
        R.flags.hit("nullary and higher generators pile up beyond the vertex cap");
    }

    TreeEnumOpts topts;
    topts.max_vertices = caps.max_vertices;
    R.ar.resize(A + 1);
    for (int n = 0; n <= A; ++n) {
        FreeArity<Cat>& a = R.ar[n];
        a.trees = enumerate_trees(TreeFamily::plain, n, topts);
        const int NT = (int)a.trees.size();
        a.valid.assign(NT, 0);
        a.kept.assign(NT, 0);
        a.ucnt.assign(NT, 0);
        a.dec.resize(NT);
        a.regroup.resize(NT);
        a.realize.resize(NT);
        a.rep.assign(NT, -1);

        for (int t = 0; t < NT; ++t) {
            const Tree& T = a.trees[t];
            a.tindex[tree_encode(T)] = t;
            const int V = T.vcount();
            bool ok = true, keep = true;
            int uc = 0;
            std::vector<Obj> d;
            for (int v = 0; v < V && ok; ++v) {
                int val = T.valency(v);
                if (val > A) ok = false;
                else {
                    if (val == 1) ++uc;
                    d.push_back(xc(val));
                    if (O::is_zero(xc(val))) keep = false;
                }
            }
            if (!ok) continue;
            a.valid[t] = 1;
            a.ucnt[t] = uc;
            a.dec[t] = std::move(d);
            a.kept[t] = keep ? 1 : 0;
            Perm rg(V);
            int nn = 0, nu = V - uc;
            for (int v = 0; v < V; ++v) rg[v] = (T.valency(v) == 1) ? nu++ : nn++;
            a.regroup[t] = std::move(rg);
        }

        /* gluing: unary-free trees by plain coproduct, then, when pointed, one
           pushout per count of unit-bearing unary vertices */
        std::vector<Mor> real(NT);
        for (int t = 0; t < NT; ++t)
            if (a.kept[t] && (!ptd || a.ucnt[t] == 0)) a.base.push_back(t);
        std::vector<Obj> bsum;
        for (int t : a.base) bsum.push_back(O::tlist(a.dec[t], caps));
        a.basecop = coprod_of<Cat>(bsum, caps);
        Obj cur = a.basecop.obj;
        for (size_t k = 0; k < a.base.size(); ++k) real[a.base[k]] = a.basecop.in[k];

        if (ptd) {
            int maxu = 0;
            for (int t = 0; t < NT; ++t)
                if (a.kept[t]) maxu = std::max(maxu, a.ucnt[t]);
            for (int i = 1; i <= maxu; ++i) {
                std::vector<int> cells;
                for (int t = 0; t < NT; ++t)
                    if (a.kept[t] && a.ucnt[t] == i) cells.push_back(t);
                if (cells.empty()) continue;
                auto pp = Cat::pushout_product(std::vector<Mor>((size_t)i, *x.e));

                FreeStage<Cat> st;
                st.cells = cells;
                std::vector<Obj> bodies, bnds;
                std::vector<Mor> bmaps, attaches;
                for (int t : cells) {
                    const Tree& T = a.trees[t];
                    const int V = T.vcount();
                    std::vector<Obj> fixed;
                    std::vector<int> upos;
                    for (int v = 0; v < V; ++v) {
                        if (T.valency(v) == 1) upos.push_back(v);
                        else fixed.push_back(a.dec[t][v]);
                    }
                    std::vector<Obj> one((size_t)i, xc(1));
                    bodies.push_back(O::tlist(cat2(fixed, one), caps));
                    bnds.push_back(O::tlist(cat2(fixed, {pp.domain}), caps));
                    bmaps.push_back(O::apply_block(fixed, {pp.domain}, one, pp.assembled, {}, caps));

                    /* boundary legs: the summand with the basepoint in unary
                       slot j lands on the tree with that vertex removed,
                       realized one stage back */
                    std::vector<Mor> phis;
                    for (int j = 0; j < i; ++j) {
                        std::vector<Obj> flatj((size_t)i, xc(1));
                        flatj[j] = O::unitobj(caps);
                        Mor m = FB::rebracket(O::tlist(cat2(fixed, {pp.summands[j]}), caps),
                                              O::tlist(cat2(fixed, flatj), caps));
                        std::vector<Obj> pre2 = fixed;
                        pre2.insert(pre2.end(), flatj.begin(), flatj.begin() + j);
                        std::vector<Obj> post2(flatj.begin() + j + 1, flatj.end());
                        m = Cat::compose(O::apply_block(pre2, {O::unitobj(caps)}, {},
                                                        Cat::id(O::unitobj(caps)), post2, caps),
                                         m);
                        Tree Tp = remove_unary_vertex(T, upos[j]);
                        int tp = a.tindex.at(tree_encode(Tp));
                        assert(a.kept[tp] && a.ucnt[tp] == i - 1);
                        /* current order: non-unary in preorder, then remaining
                           unary; target: preorder of the reduced tree, ranks
                           above the removed vertex shifted down by one */
                        std::vector<int> order;
                        for (int v = 0; v < V; ++v)
                            if (T.valency(v) != 1) order.push_back(v);
                        for (int l = 0; l < i; ++l)
                            if (l != j) order.push_back(upos[l]);
                        Perm sg(order.size());
                        for (size_t p = 0; p < order.size(); ++p)
                            sg[p] = order[p] - (order[p] > upos[j] ? 1 : 0);
                        std::vector<Obj> curlist = fixed;
                        for (int l = 0; l < i; ++l)
                            if (l != j) curlist.push_back(xc(1));
                        m = Cat::compose(perm_or_id<Cat>(curlist, sg, caps), m);
                        phis.push_back(Cat::compose(real[tp], m));
                    }
                    attaches.push_back(O::tensor_pp_induced(fixed, pp, {}, phis, caps));
                }
                st.bodies = coprod_of<Cat>(bodies, caps);
                st.bnds = coprod_of<Cat>(bnds, caps);
                st.bmap = O::coprod_map(st.bnds, st.bodies, bmaps);
                st.attach = O::coprod_induced(st.bnds, attaches);
                st.po = Cat::pushout(st.attach, st.bmap);
                for (int t = 0; t < NT; ++t)
                    if (a.kept[t] && a.ucnt[t] < i) real[t] = Cat::compose(st.po.from_x, real[t]);
                for (size_t k = 0; k < cells.size(); ++k) {
                    int t = cells[k];
                    real[t] = Cat::compose(Cat::compose(st.po.from_y, st.bodies.in[k]),
                                           perm_or_id<Cat>(a.dec[t], a.regroup[t], caps));
                }
                cur = st.po.obj;
                a.stages.push_back(std::move(st));
            }
        }

        a.quotiented = symq;
        if (symq) {
            /* identify isomorphic decorated shapes: tail labels fixed, arrow
               order free; a decoration rides along with the inverse child
               permutation at each vertex */
            IsoPolicy pol{true, false, false};
            std::map<std::string, int> keyfirst;
            for (int t = 0; t < NT; ++t) {
                if (!a.kept[t]) continue;
                std::string k = canonical_key(a.trees[t], pol);
                auto it = keyfirst.find(k);
                if (it == keyfirst.end()) {
                    keyfirst.emplace(std::move(k), t);
                    a.rep[t] = t;
                } else {
                    a.rep[t] = it->second;
                }
            }
            std::vector<std::pair<Mor, Mor>> rel;
            for (int t = 0; t < NT; ++t) {
                if (!a.kept[t]) continue;
                int r = a.rep[t];
                const Tree& T = a.trees[t];
                for (const TreeIso& phi : all_isos(T, a.trees[r], pol)) {
                    Mor tw = Cat::id(O::tlist(a.dec[t], caps));
                    for (int v = 0; v < T.vcount(); ++v) {
                        Perm tau = perm_inv(phi.csigma[v]);
                        if (tau == perm_id((int)tau.size())) continue;
                        std::vector<Obj> pre(a.dec[t].begin(), a.dec[t].begin() + v);
                        std::vector<Obj> post(a.dec[t].begin() + v + 1, a.dec[t].end());
                        tw = Cat::compose(O::apply_block(pre, {a.dec[t][v]}, {a.dec[t][v]},
                                                         x.action(T.valency(v), tau), post, caps),
                                          tw);
                    }
                    Perm vperm(phi.vmap.begin(), phi.vmap.end());
                    Mor am = Cat::compose(perm_or_id<Cat>(a.dec[t], vperm, caps), tw);
                    rel.emplace_back(real[t], Cat::compose(real[r], am));
                }
            }
            a.quot = O::quotient_pairs(cur, rel);
            for (int t = 0; t < NT; ++t)
                if (a.kept[t]) real[t] = Cat::compose(a.quot.proj, real[t]);
            a.obj = a.quot.obj;
        } else {
            for (int t = 0; t < NT; ++t)
                if (a.kept[t]) a.rep[t] = t;
            a.obj = cur;
        }

        std::vector<Obj> summands;
        std::vector<Mor> reals;
        for (int t = 0; t < NT; ++t)
            if (a.kept[t]) {
                summands.push_back(O::tlist(a.dec[t], caps));
                reals.push_back(real[t]);
            }
        a.cop = coprod_of<Cat>(summands, caps);
        a.assembled = reals.empty() ? FB::empty_from(a.cop.obj, a.obj)
                                    : O::coprod_induced(a.cop, reals);
        if constexpr (std::is_same_v<Cat, FinSet>) {
            /* first preimage in summand order; summands are sorted by vertex
               count, so representatives are as small as possible */
            a.sec = FB::section_of(a.assembled);
        } else {
            a.sec = blockmin_section(a);
        }
        a.realize = std::move(real);
    }

    /* operad structure on the result */
    R.op.seq.variant = SeqVariant::sym;
    R.op.seq.caps = caps;
    for (int n = 0; n <= A; ++n) R.op.seq.comp.push_back(R.ar[n].obj);
    R.op.seq.act.resize(A + 1);
    for (int n = 0; n <= A; ++n) {
        FreeArity<Cat>& a = R.ar[n];
        for (const Perm& s : all_perms(n)) {
            if (s == perm_id(n)) {
                R.op.seq.act[n].push_back(Cat::id(a.obj));
                continue;
            }
            std::vector<Mor> g(a.trees.size());
            for (int t = 0; t < (int)a.trees.size(); ++t)
                if (a.kept[t])
                    g[t] = a.realize[a.tindex.at(tree_encode(sigma_act(a.trees[t], s)))];
            R.op.seq.act[n].push_back(transport<Cat>(a, caps, a.obj, g));
        }
    }
    R.op.eta = R.ar[1].realize[R.ar[1].tindex.at(tree_encode(empty_tree_labeled()))];
    R.op.seq.e = R.op.eta;

    for (int n = 0; n <= A; ++n) {
        int ci = R.ar[n].tindex.at(tree_encode(corolla(n)));
        R.unit_x.push_back(R.ar[n].kept[ci] ? R.ar[n].realize[ci]
                                            : FB::empty_from(xc(n), R.ar[n].obj));
    }

    /* Composition grafts the representative shapes the sections reach, so the
       shape bound for each key only needs to cover those. In the pointed
       variants the representatives are the collapsed trees, which is what
       keeps composition total when the basepoint is invertible. */
    std::vector<Prov> prov;
    std::vector<std::vector<char>> supp(A + 1);
    std::vector<int> maxV(A + 1, -1);
    for (int n = 0; n <= A; ++n) {
        supp[n].assign(R.ar[n].trees.size(), 0);
        if constexpr (std::is_same_v<Cat, FinSet>) {
            prov.push_back(provenance(R.ar[n]));
            for (int t : prov[n].tree) supp[n][t] = 1;
        } else {
            /* a summand is reachable when its block rows of the section carry
               a nonzero entry in some degree */
            const FreeArity<Cat>& a = R.ar[n];
            std::vector<int> kept;
            for (int t = 0; t < (int)a.trees.size(); ++t)
                if (a.kept[t]) kept.push_back(t);
            for (int k = 0; k <= a.cop.obj->D; ++k) {
                std::vector<int> offs(kept.size() + 1, 0);
                for (size_t j = 0; j < kept.size(); ++j)
                    offs[j + 1] = offs[j] + a.cop.in[j].src->dims[k];
                const SpQ& S = a.sec.comp[k];
                for (int c = 0; c < S.cols; ++c)
                    for (auto& [row, val] : S.col[c]) {
                        if (val == 0) continue;
                        size_t j = std::upper_bound(offs.begin(), offs.end(), row) - offs.begin();
                        supp[n][kept[j - 1]] = 1;
                    }
            }
        }
        for (int t = 0; t < (int)R.ar[n].trees.size(); ++t)
            if (supp[n][t]) maxV[n] = std::max(maxV[n], R.ar[n].trees[t].vcount());
    }

    for (const auto& key : all_gamma_keys(A)) {
        if (key.empty()) {
            R.op.gam[key] = Cat::id(R.ar[0].obj);
            continue;
        }
        const int m = (int)key.size();
        int n = 0;
        for (int k : key) n += k;
        bool empty = maxV[m] < 0;
        for (int k : key) empty = empty || maxV[k] < 0;
        if (!empty) {
            long long bound = maxV[m];
            for (int k : key) bound += maxV[k];
            if (bound > caps.max_vertices) {
                R.flags.hit("composition " + key_name(key) +
                            " exceeds the vertex cap; key omitted");
                continue;
            }
        }
        std::vector<Obj> sf{R.ar[m].obj};
        for (int k : key) sf.push_back(R.ar[k].obj);
        Obj src = O::tlist(sf, caps);
        if (empty) {
            R.op.gam[key] = FB::empty_from(src, R.ar[n].obj);
            continue;
        }
        R.op.gam[key] = build_gamma(R, key, prov, supp, src, caps);
    }
    return R;
}

template <class Cat>
SymSeq<Cat> underlying_seq(const FreeOperadResult<Cat>& fx) {
    SymSeq<Cat> s;
    s.variant = fx.x.variant;
    s.caps = fx.op.seq.caps;
    s.comp = fx.op.seq.comp;
    if (fx.x.symmetric()) s.act = fx.op.seq.act;
    if (fx.x.pointed()) s.e = fx.op.eta;
    return s;
}

template <class Cat>
std::vector<typename Cat::Mor> free_map(const FreeOperadResult<Cat>& fx,
                                        const FreeOperadResult<Cat>& fy,
                                        const std::vector<typename Cat::Mor>& f) {
    using O = Ops<Cat>;
    using Obj = typename Cat::Obj;
    using Mor = typename Cat::Mor;
    const Caps& caps = fx.op.seq.caps;
    const int A = caps.max_arity;

    std::vector<Mor> out;
    for (int n = 0; n <= A; ++n) {
        const FreeArity<Cat>& ax = fx.ar[n];
        const FreeArity<Cat>& ay = fy.ar[n];
        std::vector<Mor> g(ax.trees.size());
        for (int t = 0; t < (int)ax.trees.size(); ++t) {
            if (!ax.kept[t]) continue;
            if (!ay.kept[t]) {
                /* a decoration factor dies in the target; only possible with
                   linear coefficients, where the summand maps to zero */
                if constexpr (std::is_same_v<Cat, ChainQ>) {
                    g[t] = ChainQ::zero_mor(O::tlist(ax.dec[t], caps), ay.obj);
                } else {
                    assert(false && "no map from a nonempty decoration to an empty component");
                }
                continue;
            }
            const Tree& T = ax.trees[t];
            Mor dm = Cat::id(O::tlist(ax.dec[t], caps));
            for (int v = 0; v < T.vcount(); ++v) {
                int val = T.valency(v);
                assert(val < (int)f.size());
                std::vector<Obj> pre(ay.dec[t].begin(), ay.dec[t].begin() + v);
                std::vector<Obj> post(ax.dec[t].begin() + v + 1, ax.dec[t].end());
                dm = Cat::compose(O::apply_block(pre, {ax.dec[t][v]}, {ay.dec[t][v]},
                                                 f[val], post, caps),
                                  dm);
            }
            g[t] = Cat::compose(ay.realize[t], dm);
        }
        out.push_back(transport<Cat>(ax, caps, ay.obj, g));
    }
    return out;
}

template <class Cat>
std::vector<typename Cat::Mor> monad_multiply(const FreeOperadResult<Cat>& outer,
                                              const FreeOperadResult<Cat>& inner) {
    const Caps& caps = outer.op.seq.caps;
    const int A = caps.max_arity;
    std::vector<typename Cat::Mor> out;
    for (int n = 0; n <= A; ++n) {
        const FreeArity<Cat>& a = outer.ar[n];
        std::vector<typename Cat::Mor> g(a.trees.size());
        for (int t = 0; t < (int)a.trees.size(); ++t)
            if (a.kept[t]) g[t] = tree_eval(inner.op, a.trees[t]);
        out.push_back(transport<Cat>(a, caps, inner.ar[n].obj, g));
    }
    return out;
}

template FreeOperadResult<FinSet> free_operad<FinSet>(const SymSeq<FinSet>&, const Caps&);
template FreeOperadResult<ChainQ> free_operad<ChainQ>(const SymSeq<ChainQ>&, const Caps&);
template SymSeq<FinSet> underlying_seq<FinSet>(const FreeOperadResult<FinSet>&);
template SymSeq<ChainQ> underlying_seq<ChainQ>(const FreeOperadResult<ChainQ>&);
template std::vector<FMor> free_map<FinSet>(const FreeOperadResult<FinSet>&,
                                            const FreeOperadResult<FinSet>&,
                                            const std::vector<FMor>&);
template std::vector<ChMor> free_map<ChainQ>(const FreeOperadResult<ChainQ>&,
                                             const FreeOperadResult<ChainQ>&,
                                             const std::vector<ChMor>&);
template std::vector<FMor> monad_multiply<FinSet>(const FreeOperadResult<FinSet>&,
                                                  const FreeOperadResult<FinSet>&);
template std::vector<ChMor> monad_multiply<ChainQ>(const FreeOperadResult<ChainQ>&,
                                                   const FreeOperadResult<ChainQ>&);

} // namespace operadics
