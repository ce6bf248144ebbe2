#include "operadics/finset.hpp"

#include <map>
#include <tuple>
#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>

namespace operadics {

int FObj::find(const std::string& e) const {
    for (int i = 0; i < (int)elems.size(); ++i)
        if (elems[i] == e) return i;
    return -1;
}

FObjP fobj(std::vector<std::string> elems) {
#ifndef NDEBUG
    std::set<std::string> seen(elems.begin(), elems.end());
    assert(seen.size() == elems.size() && "element names must be unique");
#endif
    auto p = std::make_shared<FObj>();
    p->elems = std::move(elems);
    return p;
}

bool FMor::operator==(const FMor& o) const {
    return src->elems == o.src->elems && dst->elems == o.dst->elems && map == o.map;
}

namespace {

struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) {
            p[x] = p[p[x]];
            x = p[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[a] = b;
    }
};

/* classes ordered by smallest member index, named after that member */
std::pair<FObjP, FMor> uf_quotient(const FObjP& x, UF& uf) {
    int n = x->size();
    std::vector<int> root_to_class(n, -1), cls(n, -1);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (root_to_class[r] < 0) {
            root_to_class[r] = (int)names.size();
            names.push_back(x->elems[i]);
        }
        cls[i] = root_to_class[r];
    }
    FObjP q = fobj(std::move(names));
    return {q, FinSet::mor(x, q, std::move(cls))};
}

} // namespace

FObjP FinSet::initial() { return fobj({}); }

FObjP FinSet::unit() { return fobj({"*"}); }

FMor FinSet::mor(const Obj& s, const Obj& t, std::vector<int> map) {
    assert((int)map.size() == s->size());
#ifndef NDEBUG
    for (int v : map) assert(v >= 0 && v < t->size());
#endif
    return FMor{s, t, std::move(map)};
}

FMor FinSet::mor_by_name(const Obj& s, const Obj& t,
                         const std::function<std::string(const std::string&)>& f) {
    std::vector<int> m(s->size());
    for (int i = 0; i < s->size(); ++i) {
        int j = t->find(f(s->elems[i]));
        assert(j >= 0 && "mor_by_name: image not found in target");
        m[i] = j;
    }
    return mor(s, t, std::move(m));
}

FMor FinSet::id(const Obj& x) {
    std::vector<int> m(x->size());
    std::iota(m.begin(), m.end(), 0);
    return FMor{x, x, std::move(m)};
}

FMor FinSet::compose(const Mor& g, const Mor& f) {
    assert(f.dst->elems == g.src->elems && "compose: endpoint mismatch");
    std::vector<int> m(f.map.size());
    for (size_t i = 0; i < f.map.size(); ++i) m[i] = g.map[f.map[i]];
    return FMor{f.src, g.dst, std::move(m)};
}

FMor FinSet::from_initial(const Obj& x) { return FMor{initial(), x, {}}; }

FMor FinSet::to_unit(const Obj& x) {
    return FMor{x, unit(), std::vector<int>(x->size(), 0)};
}

FMor FinSet::point(const Obj& x, int i) {
    assert(i >= 0 && i < x->size());
    return FMor{unit(), x, {i}};
}

bool FinSet::is_injective(const Mor& f) {
    std::set<int> seen(f.map.begin(), f.map.end());
    return (int)seen.size() == f.src->size();
}

bool FinSet::is_bijection(const Mor& f) {
    return f.src->size() == f.dst->size() && is_injective(f);
}

FObjP FinSet::tensor(const Obj& a, const Obj& b) {
    /* object-level memo: the same pair is requested over and over when
       composite diagrams are assembled. Pinning the operands keeps the
       pointer keys valid for the life of the cache. */
    static std::map<std::pair<const FObj*, const FObj*>, std::tuple<Obj, Obj, Obj>> cache;
    auto key = std::make_pair(a.get(), b.get());
    auto it = cache.find(key);
    if (it != cache.end()) return std::get<2>(it->second);
    std::vector<std::string> names;
    names.reserve((size_t)a->size() * b->size());
    for (auto& x : a->elems)
        for (auto& y : b->elems) names.push_back("(" + x + "," + y + ")");
    Obj r = fobj(std::move(names));
    cache.emplace(key, std::make_tuple(a, b, r));
    return r;
}

FMor FinSet::tensor_mor(const Mor& f, const Mor& g) {
    Obj s = tensor(f.src, g.src), t = tensor(f.dst, g.dst);
    int bs = g.src->size(), bt = g.dst->size();
    std::vector<int> m((size_t)f.src->size() * bs);
    for (int i = 0; i < f.src->size(); ++i)
        for (int j = 0; j < bs; ++j) m[(size_t)i * bs + j] = f.map[i] * bt + g.map[j];
    return FMor{s, t, std::move(m)};
}

FObjP FinSet::tensor_list(const std::vector<Obj>& xs) {
    if (xs.empty()) return unit();
    Obj acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = tensor(acc, xs[i]);
    return acc;
}

FMor FinSet::tensor_list_mor(const std::vector<Mor>& fs) {
    if (fs.empty()) return id(unit());
    Mor acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = tensor_mor(acc, fs[i]);
    return acc;
}

int FinSet::tuple_index(const std::vector<int>& sizes, const std::vector<int>& idx) {
    assert(sizes.size() == idx.size());
    int k = 0;
    for (size_t i = 0; i < sizes.size(); ++i) {
        assert(idx[i] >= 0 && idx[i] < sizes[i]);
        k = k * sizes[i] + idx[i];
    }
    return k;
}

std::vector<int> FinSet::tuple_unindex(const std::vector<int>& sizes, int k) {
    std::vector<int> idx(sizes.size());
    for (int i = (int)sizes.size() - 1; i >= 0; --i) {
        idx[i] = k % sizes[i];
        k /= sizes[i];
    }
    assert(k == 0);
    return idx;
}

FMor FinSet::symmetry(const Obj& a, const Obj& b) {
    Obj s = tensor(a, b), t = tensor(b, a);
    std::vector<int> m((size_t)a->size() * b->size());
    for (int i = 0; i < a->size(); ++i)
        for (int j = 0; j < b->size(); ++j) m[(size_t)i * b->size() + j] = j * a->size() + i;
    return FMor{s, t, std::move(m)};
}

FMor FinSet::permute_factors(const std::vector<Obj>& xs, const std::vector<int>& sigma) {
    int n = (int)xs.size();
    assert((int)sigma.size() == n);
    std::vector<Obj> ys(n);
    for (int i = 0; i < n; ++i) ys[sigma[i]] = xs[i];
    Obj s = tensor_list(xs), t = tensor_list(ys);
    std::vector<int> szs(n), szt(n);
    for (int i = 0; i < n; ++i) szs[i] = xs[i]->size();
    for (int i = 0; i < n; ++i) szt[i] = ys[i]->size();
    std::vector<int> m(s->size());
    for (int k = 0; k < s->size(); ++k) {
        std::vector<int> idx = tuple_unindex(szs, k), jdx(n);
        for (int i = 0; i < n; ++i) jdx[sigma[i]] = idx[i];
        m[k] = tuple_index(szt, jdx);
    }
    return FMor{s, t, std::move(m)};
}

FinSet::Coprod FinSet::coproduct(const std::vector<Obj>& xs) {
    std::vector<std::string> names;
    std::vector<int> offs;
    for (size_t k = 0; k < xs.size(); ++k) {
        offs.push_back((int)names.size());
        for (auto& e : xs[k]->elems) names.push_back(std::to_string(k) + ":" + e);
    }
    Obj c = fobj(std::move(names));
    Coprod out{c, {}};
    for (size_t k = 0; k < xs.size(); ++k) {
        std::vector<int> m(xs[k]->size());
        std::iota(m.begin(), m.end(), offs[k]);
        out.in.push_back(FMor{xs[k], c, std::move(m)});
    }
    return out;
}

std::pair<FObjP, FMor> FinSet::quotient(const Obj& x, const std::vector<std::pair<int, int>>& rel) {
    UF uf(x->size());
    for (auto& [a, b] : rel) uf.unite(a, b);
    return uf_quotient(x, uf);
}

std::pair<FObjP, FMor> FinSet::coequalizer(const Mor& f, const Mor& g) {
    assert(f.src->elems == g.src->elems && f.dst->elems == g.dst->elems);
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < f.src->size(); ++i) rel.push_back({f.map[i], g.map[i]});
    return quotient(f.dst, rel);
}

FMor FinSet::quot_induced(const Mor& proj, const Mor& u) {
    assert(proj.src->elems == u.src->elems);
    std::vector<int> m(proj.dst->size(), -1);
    for (int i = 0; i < proj.src->size(); ++i) {
        int cl = proj.map[i];
        assert((m[cl] < 0 || m[cl] == u.map[i]) && "map does not respect the quotient");
        m[cl] = u.map[i];
    }
    for (int v : m) assert(v >= 0 && "projection not surjective?");
    return FMor{proj.dst, u.dst, std::move(m)};
}

FMor FinSet::pushout_induced(const Pushout& po, const Mor& u, const Mor& v) {
    assert(u.dst->elems == v.dst->elems);
    std::vector<int> m(po.obj->size(), -1);
    auto feed = [&](const Mor& leg, const Mor& w) {
        for (int i = 0; i < leg.src->size(); ++i) {
            int cl = leg.map[i];
            assert((m[cl] < 0 || m[cl] == w.map[i]) && "cocone does not respect the pushout");
            m[cl] = w.map[i];
        }
    };
    feed(po.from_x, u);
    feed(po.from_y, v);
    for (int w : m) assert(w >= 0);
    return FMor{po.obj, u.dst, std::move(m)};
}

FinSet::Pushout FinSet::pushout(const Mor& f, const Mor& g) {
    assert(f.src->elems == g.src->elems && "pushout legs need a shared source");
    Coprod c = coproduct({f.dst, g.dst});
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < f.src->size(); ++i)
        rel.push_back({c.in[0].map[f.map[i]], c.in[1].map[g.map[i]]});
    auto [q, proj] = quotient(c.obj, rel);
    return Pushout{q, compose(proj, c.in[0]), compose(proj, c.in[1])};
}

std::pair<FObjP, FMor> FinSet::coinvariants(const Action& a) {
    UF uf(a.obj->size());
    for (auto& g : a.gens) {
        assert((int)g.size() == a.obj->size());
        for (int i = 0; i < (int)g.size(); ++i) uf.unite(i, g[i]);
    }
    return uf_quotient(a.obj, uf);
}

std::pair<FObjP, FMor> FinSet::rel_tensor(const Action& m, const Action& x) {
    assert(m.gens.size() == x.gens.size());
    Obj t = tensor(m.obj, x.obj);
    int nx = x.obj->size();
    UF uf(t->size());
    for (size_t k = 0; k < m.gens.size(); ++k) {
        auto& rho = m.gens[k];
        auto& lam = x.gens[k];
        for (int i = 0; i < m.obj->size(); ++i)
            for (int j = 0; j < nx; ++j) uf.unite(rho[i] * nx + j, i * nx + lam[j]);
    }
    return uf_quotient(t, uf);
}

std::vector<FMor> FinSet::all_mors(const Obj& x, const Obj& y, long long cap) {
    int n = x->size(), m = y->size();
    if (n == 0) return {FMor{x, y, {}}};
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        total *= m;
        assert(total <= cap && "all_mors: hom-set too large");
    }
    if (m == 0) return {};
    std::vector<FMor> out;
    out.reserve((size_t)total);
    std::vector<int> cur(n, 0);
    for (;;) {
        out.push_back(FMor{x, y, cur});
        int i = n - 1;
        while (i >= 0 && cur[i] == m - 1) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

FinSet::PushoutProduct FinSet::pushout_product(const std::vector<Mor>& fs) {
    PushoutProduct pp;
    pp.maps = fs;
    int n = (int)fs.size();
    if (n == 0) {
        pp.domain = pp.codomain = unit();
        pp.assembled = id(pp.domain);
        return pp;
    }
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

    /* S_j: source of f_j at slot j, targets elsewhere */
    auto slot_obj = [&](const std::vector<int>& srcslots) {
        std::vector<Obj> v(n);
        for (int i = 0; i < n; ++i) v[i] = fs[i].dst;
        for (int j : srcslots) v[j] = fs[j].src;
        return tensor_list(v);
    };
    auto slot_mor = [&](const std::vector<int>& srcslots, int apply_at) {
        /* from the object with sources at srcslots to the one with
           srcslots minus apply_at, applying f_{apply_at} there */
        std::vector<Mor> v(n);
        for (int i = 0; i < n; ++i) v[i] = id(fs[i].dst);
        for (int j : srcslots) v[j] = id(fs[j].src);
        v[apply_at] = fs[apply_at];
        return tensor_list_mor(v);
    };

    for (int j = 0; j < n; ++j) pp.summands.push_back(slot_obj({j}));

    Coprod c = coproduct(pp.summands);
    std::vector<std::pair<int, int>> rel;
    for (int j = 0; j < n; ++j)
        for (int jp = j + 1; jp < n; ++jp) {
            PushoutProduct::Inter in;
            in.j = j;
            in.jp = jp;
            in.obj = slot_obj({j, jp});
            in.to_j = slot_mor({j, jp}, jp);  // lands in S_j
            in.to_jp = slot_mor({j, jp}, j);  // lands in S_jp
            for (int e = 0; e < in.obj->size(); ++e)
                rel.push_back({c.in[j].map[in.to_j.map[e]], c.in[jp].map[in.to_jp.map[e]]});
            pp.inters.push_back(std::move(in));
        }
    auto [dom, proj] = quotient(c.obj, rel);
    pp.domain = dom;
    for (int j = 0; j < n; ++j) pp.into_domain.push_back(compose(proj, c.in[j]));

    /* assembled map: each class maps via f_j applied to any member's slot */
    std::vector<int> am(dom->size(), -1);
    for (int j = 0; j < n; ++j) {
        Mor to_cod = slot_mor({j}, j); // S_j -> ⊗B
        for (int e = 0; e < pp.summands[j]->size(); ++e) {
            int cl = pp.into_domain[j].map[e];
            int im = to_cod.map[e];
            assert((am[cl] < 0 || am[cl] == im) && "pushout product gluing is inconsistent");
            am[cl] = im;
        }
    }
    for (int v : am) assert(v >= 0);
    pp.assembled = FMor{dom, pp.codomain, std::move(am)};
    return pp;
}

FMor FinSet::pp_induced(const PushoutProduct& pp, const std::vector<Mor>& phis) {
    assert(phis.size() == pp.summands.size());
    assert(!phis.empty());
    const Obj& t = phis[0].dst;
    std::vector<int> m(pp.domain->size(), -1);
    for (size_t j = 0; j < phis.size(); ++j) {
        assert(phis[j].dst->elems == t->elems);
        for (int e = 0; e < pp.summands[j]->size(); ++e) {
            int cl = pp.into_domain[j].map[e];
            assert((m[cl] < 0 || m[cl] == phis[j].map[e]) &&
                   "family not compatible on the intersections");
            m[cl] = phis[j].map[e];
        }
    }
    for (int v : m) assert(v >= 0);
    return FMor{pp.domain, t, std::move(m)};
}

} // namespace operadics
