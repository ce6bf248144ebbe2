#include "operadics/operad.hpp"

#include <cassert>
#include <functional>
#include <sstream>

namespace operadics {

namespace {

template <class Cat>
long long obj_size(const typename Cat::Obj& x) {
    if constexpr (std::is_same_v<Cat, FinSet>)
        return x->size();
    else
        return x->total_dim();
}

/* compare morphisms through the degrees both endpoint objects are valid in */
template <class Cat>
bool eqm(const typename Cat::Mor& a, const typename Cat::Mor& b) {
    int thr = std::min(Ops<Cat>::vt(a.src), Ops<Cat>::vt(a.dst));
    return Ops<Cat>::eq(a, b, thr);
}

std::string key_str(const std::vector<int>& ns) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < ns.size(); ++i) os << (i ? "," : "") << ns[i];
    os << ")";
    return os.str();
}

} // namespace

template <class Cat>
typename Cat::Mor SymSeq<Cat>::action(int n, const Perm& s) const {
    assert(n >= 0 && n < (int)comp.size());
    assert((int)s.size() == n);
    if (act.empty() || act[n].empty()) return Cat::id(comp[n]);
    return act[n][perm_rank(s)];
}

std::vector<std::vector<int>> all_gamma_keys(int arity_cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        out.push_back(cur);
        if ((int)cur.size() >= arity_cap) return;
        for (int v = 0; v <= left; ++v) {
            cur.push_back(v);
            rec(left - v);
            cur.pop_back();
        }
    };
    rec(arity_cap);
    return out;
}

template <class Cat>
Verdict check_axioms(const Operad<Cat>& O, const AxiomOptions& opt) {
    using Op = Ops<Cat>;
    using Mor = typename Cat::Mor;
    using Obj = typename Cat::Obj;
    const Caps& caps = O.seq.caps;
    int A = O.max_arity();
    long long checked = 0, skipped = 0;
    std::string note;

    auto domsize = [&](const std::vector<Obj>& fs) {
        long long p = 1;
        for (auto& x : fs) {
            p *= std::max<long long>(obj_size<Cat>(x), 1);
            if (p > opt.size_budget) return p;
        }
        return p;
    };
    auto have = [&](const std::vector<int>& key) { return O.has_gamma(key); };
    auto miss = [&](const std::vector<int>& key) -> bool {
        if (opt.require_all_keys) return false;
        ++skipped;
        return true;
    };

    if constexpr (std::is_same_v<Cat, ChainQ>) {
        if (!ChainQ::is_chain_map(O.eta)) return Verdict::fail("eta is not a chain map");
        for (auto& [k, g] : O.gam)
            if (!ChainQ::is_chain_map(g))
                return Verdict::fail("gamma " + key_str(k) + " is not a chain map");
        for (int n = 0; n <= A; ++n)
            for (auto& am : O.seq.act[n])
                if (!ChainQ::is_chain_map(am))
                    return Verdict::fail("action at arity " + std::to_string(n) +
                                         " is not a chain map");
    }

    /* identity convention at the empty key */
    if (have({})) {
        if (!eqm<Cat>(O.gamma({}), Cat::id(O.o(0)))) return Verdict::fail("gamma() is not id");
        ++checked;
    }

    /* unit laws */
    for (int n = 0; n <= A; ++n) {
        if (have({n})) {
            Mor ins = Op::apply_block({}, {}, {O.o(1)}, O.eta, {O.o(n)}, caps);
            Mor lhs = Cat::compose(O.gamma({n}), ins);
            if (!eqm<Cat>(lhs, Cat::id(O.o(n))))
                return Verdict::fail("left unit law fails at arity " + std::to_string(n));
            ++checked;
        } else if (!miss({n}))
            return Verdict::fail("missing gamma " + key_str({n}));
        std::vector<int> ones(n, 1);
        if (n >= 1) {
            if (have(ones)) {
                Mor m = Cat::id(O.o(n));
                std::vector<Obj> pre = {O.o(n)};
                for (int i = 0; i < n; ++i) {
                    m = Cat::compose(Op::apply_block(pre, {}, {O.o(1)}, O.eta, {}, caps), m);
                    pre.push_back(O.o(1));
                }
                Mor lhs = Cat::compose(O.gamma(ones), m);
                if (!eqm<Cat>(lhs, Cat::id(O.o(n))))
                    return Verdict::fail("right unit law fails at arity " + std::to_string(n));
                ++checked;
            } else if (!miss(ones))
                return Verdict::fail("missing gamma " + key_str(ones));
        }
    }

    /* the action tables form right group actions */
    for (int n = 0; n <= A; ++n) {
        auto ps = all_perms(n);
        if (!eqm<Cat>(O.seq.action(n, perm_id(n)), Cat::id(O.o(n))))
            return Verdict::fail("action of id is not id at arity " + std::to_string(n));
        for (auto& s : ps)
            for (auto& u : ps) {
                Mor lhs = O.seq.action(n, perm_mul(s, u));
                Mor rhs = Cat::compose(O.seq.action(n, u), O.seq.action(n, s));
                if (!eqm<Cat>(lhs, rhs))
                    return Verdict::fail("action composition fails at arity " + std::to_string(n));
                ++checked;
            }
    }

    /* equivariance */
    for (auto& ns : all_gamma_keys(A)) {
        int m = (int)ns.size();
        if (m == 0) continue;
        int nout = 0;
        for (int v : ns) nout += v;
        if (!have(ns)) {
            if (!miss(ns)) return Verdict::fail("missing gamma " + key_str(ns));
            continue;
        }
        std::vector<Obj> factors = {O.o(m)};
        for (int v : ns) factors.push_back(O.o(v));
        if (domsize(factors) > opt.size_budget) {
            ++skipped;
            continue;
        }
        /* outer permutations */
        for (auto& s : all_perms(m)) {
            std::vector<int> nss(m), msig(m);
            for (int i = 0; i < m; ++i) nss[i] = msig[i] = ns[s[i]];
            if (!have(nss)) {
                if (!miss(nss)) return Verdict::fail("missing gamma " + key_str(nss));
                continue;
            }
            Mor lhs = Cat::compose(O.seq.action(nout, block_perm(s, msig)), O.gamma(ns));
            Mor x1 = Op::apply_block({}, {O.o(m)}, {O.o(m)}, O.seq.action(m, s),
                                     std::vector<Obj>(factors.begin() + 1, factors.end()), caps);
            Perm sinv = perm_inv(s);
            Perm pi(m + 1);
            pi[0] = 0;
            for (int i = 0; i < m; ++i) pi[1 + i] = 1 + sinv[i];
            Mor x2 = Cat::permute_factors(factors, pi);
            Mor rhs = Cat::compose(O.gamma(nss), Cat::compose(x2, x1));
            if (!eqm<Cat>(lhs, rhs))
                return Verdict::fail("outer equivariance fails at " + key_str(ns));
            ++checked;
        }
        /* inner permutations, one slot at a time */
        for (int i = 0; i < m; ++i) {
            for (auto& t : all_perms(ns[i])) {
                if (perm_is_id(t)) continue;
                std::vector<Obj> pre(factors.begin(), factors.begin() + 1 + i);
                std::vector<Obj> post(factors.begin() + 2 + i, factors.end());
                Mor tw =
                    Op::apply_block(pre, {O.o(ns[i])}, {O.o(ns[i])}, O.seq.action(ns[i], t), post, caps);
                Mor lhs = Cat::compose(O.gamma(ns), tw);
                std::vector<Perm> taus;
                for (int l = 0; l < m; ++l) taus.push_back(l == i ? t : perm_id(ns[l]));
                Mor rhs = Cat::compose(O.seq.action(nout, perm_direct_sum(taus)), O.gamma(ns));
                if (!eqm<Cat>(lhs, rhs))
                    return Verdict::fail("inner equivariance fails at " + key_str(ns));
                ++checked;
            }
        }
    }

    /* associativity: both ways of collapsing a two-level composition */
    for (auto& ms : all_gamma_keys(A)) {
        int k = (int)ms.size();
        if (k == 0) continue;
        if (!have(ms)) continue; // reported above
        int m = 0;
        for (int v : ms) m += v;
        /* enumerate the inner keys jointly: a flat list of sum(ms) entries */
        std::vector<int> flat(m, 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == m) {
                std::vector<std::vector<int>> nsi(k);
                int off = 0;
                for (int i = 0; i < k; ++i) {
                    nsi[i] = std::vector<int>(flat.begin() + off, flat.begin() + off + ms[i]);
                    off += ms[i];
                }
                std::vector<int> ts(k);
                int nout = 0;
                for (int i = 0; i < k; ++i) {
                    int t = 0;
                    for (int v : nsi[i]) t += v;
                    ts[i] = t;
                    nout += t;
                }
                bool ok = have(flat) && have(ts);
                for (int i = 0; i < k; ++i) ok = ok && have(nsi[i]);
                if (!ok) {
                    ++skipped;
                    return;
                }
                std::vector<Obj> L = {O.o(k)};
                for (int i = 0; i < k; ++i) L.push_back(O.o(ms[i]));
                for (int v : flat) L.push_back(O.o(v));
                if (domsize(L) > opt.size_budget) {
                    ++skipped;
                    return;
                }
                /* outer first */
                std::vector<Obj> front(L.begin(), L.begin() + 1 + k);
                std::vector<Obj> tail(L.begin() + 1 + k, L.end());
                Mor b1 = Op::apply_block({}, front, {O.o(m)}, O.gamma(ms), tail, caps);
                Mor pathB = Cat::compose(O.gamma(flat), b1);
                /* inner first: regroup, collapse each block, then compose */
                Perm pi(L.size());
                pi[0] = 0;
                {
                    std::vector<int> blockstart(k);
                    int acc = 1;
                    for (int i = 0; i < k; ++i) {
                        blockstart[i] = acc;
                        acc += 1 + ms[i];
                    }
                    for (int i = 0; i < k; ++i) pi[1 + i] = blockstart[i];
                    int src = 1 + k;
                    for (int i = 0; i < k; ++i)
                        for (int j = 0; j < ms[i]; ++j) pi[src++] = blockstart[i] + 1 + j;
                }
                Mor acc = Cat::permute_factors(L, pi);
                for (int i = k - 1; i >= 0; --i) {
                    std::vector<Obj> pre = {O.o(k)};
                    for (int l = 0; l < i; ++l) {
                        pre.push_back(O.o(ms[l]));
                        for (int v : nsi[l]) pre.push_back(O.o(v));
                    }
                    std::vector<Obj> mid = {O.o(ms[i])};
                    for (int v : nsi[i]) mid.push_back(O.o(v));
                    std::vector<Obj> post;
                    for (int l = i + 1; l < k; ++l) post.push_back(O.o(ts[l]));
                    acc = Cat::compose(Op::apply_block(pre, mid, {O.o(ts[i])}, O.gamma(nsi[i]), post, caps),
                                       acc);
                }
                Mor pathA = Cat::compose(O.gamma(ts), acc);
                if (!eqm<Cat>(pathA, pathB)) {
                    note = "associativity fails at outer " + key_str(ms) + " inner " + key_str(flat);
                    return;
                }
                ++checked;
                return;
            }
            for (int v = 0; v <= left; ++v) {
                flat[pos] = v;
                rec(pos + 1, left - v);
                if (!note.empty()) return;
            }
        };
        rec(0, A);
        if (!note.empty()) return Verdict::fail(note);
    }

    std::string detail = std::to_string(checked) + " diagrams";
    if (skipped) detail += ", " + std::to_string(skipped) + " skipped by caps/budget";
    return Verdict::pass(detail);
}

template <class Cat>
typename Cat::Mor tree_eval(const Operad<Cat>& O, const Tree& t) {
    using Op = Ops<Cat>;
    using Mor = typename Cat::Mor;
    using Obj = typename Cat::Obj;
    const Caps& caps = O.seq.caps;
    tree_validate(t);
    assert(t.marks.empty());
    if (t.is_empty_tree()) return O.eta;
    assert(t.n_tails == 0 || !t.labels.empty());

    /* ev(v) returns the structural evaluation of the subtree at v together
       with its flat preorder factor list and tail count */
    struct Sub {
        Mor m;
        std::vector<Obj> flat;
        int tails;
    };
    std::function<Sub(int)> ev = [&](int v) -> Sub {
        int k = t.valency(v);
        assert(k <= O.max_arity());
        if (k == 0) return {Cat::id(O.o(0)), {O.o(0)}, 0};
        std::vector<std::optional<Sub>> subs(k);
        std::vector<int> as(k);
        std::vector<Obj> flat = {O.o(k)};
        for (int c = 0; c < k; ++c) {
            if (t.kids[v][c].is_tail) {
                as[c] = 1;
            } else {
                subs[c] = ev(t.kids[v][c].idx);
                as[c] = subs[c]->tails;
                flat.insert(flat.end(), subs[c]->flat.begin(), subs[c]->flat.end());
            }
        }
        int total = 0;
        for (int c = 0; c < k; ++c) total += as[c];
        std::vector<int> key(as);
        assert(O.has_gamma(key) && "composition shape exceeds the caps");
        /* convert child blocks right-to-left into single factors */
        Mor acc = Cat::id(Op::tlist(flat, caps));
        for (int c = k - 1; c >= 0; --c) {
            std::vector<Obj> pre = {O.o(k)};
            for (int l = 0; l < c; ++l)
                if (subs[l]) pre.insert(pre.end(), subs[l]->flat.begin(), subs[l]->flat.end());
            std::vector<Obj> post;
            for (int l = c + 1; l < k; ++l) post.push_back(O.o(as[l]));
            Mor step;
            if (subs[c])
                step = Op::apply_block(pre, subs[c]->flat, {O.o(as[c])}, subs[c]->m, post, caps);
            else
                step = Op::apply_block(pre, {}, {O.o(1)}, O.eta, post, caps);
            acc = Cat::compose(step, acc);
        }
        return {Cat::compose(O.gamma(key), acc), flat, total};
    };
    Sub root = ev(0);
    assert(root.tails == t.n_tails);
    if (t.n_tails == 0) return root.m;
    /* label twist: the structural result computes the canonical labeling */
    Perm l(t.n_tails);
    for (int s = 0; s < t.n_tails; ++s) l[s] = t.labels[s];
    Mor tw = O.seq.action(t.n_tails, perm_inv(l));
    return Cat::compose(tw, root.m);
}

/* ---------------- instances ---------------- */

namespace {

template <class Cat>
typename Cat::Mor collapse_to_unit(const typename Cat::Obj& src, const typename Cat::Obj& u) {
    if constexpr (std::is_same_v<Cat, FinSet>) {
        (void)u;
        return FinSet::to_unit(src);
    } else {
        std::vector<SpQ> comp(src->D + 1);
        for (int k = 0; k <= src->D; ++k) comp[k] = SpQ::zero(u->dim(k), src->dim(k));
        if (src->dim(0) == 1 && u->dim(0) == 1) comp[0] = SpQ::identity(1);
        return ChainQ::mor(src, u, std::move(comp));
    }
}

template <class Cat>
typename Cat::Mor empty_to(const typename Cat::Obj& src, const typename Cat::Obj& dst) {
    if constexpr (std::is_same_v<Cat, FinSet>) {
        assert(src->size() == 0);
        return FinSet::mor(src, dst, {});
    } else {
        return ChainQ::zero_mor(src, dst);
    }
}

} // namespace

template <class Cat>
Operad<Cat> n_operad(const Caps& caps) {
    using Op = Ops<Cat>;
    Operad<Cat> r;
    r.seq.variant = SeqVariant::sym;
    r.seq.caps = caps;
    int A = caps.max_arity;
    auto u = Op::unitobj(caps);
    r.seq.comp.assign(A + 1, u);
    r.seq.act.resize(A + 1);
    for (int n = 0; n <= A; ++n)
        r.seq.act[n].assign(all_perms(n).size(), Cat::id(u));
    r.eta = Cat::id(u);
    for (auto& key : all_gamma_keys(A)) {
        std::vector<typename Cat::Obj> fs(1 + key.size(), u);
        r.gam[key] = collapse_to_unit<Cat>(Op::tlist(fs, caps), u);
    }
    r.seq.e = r.eta;
    return r;
}

template <class Cat>
Operad<Cat> p_operad(const Caps& caps) {
    using Op = Ops<Cat>;
    Operad<Cat> r;
    r.seq.variant = SeqVariant::sym;
    r.seq.caps = caps;
    int A = caps.max_arity;
    auto u = Op::unitobj(caps);
    auto z = Op::initialobj(caps);
    for (int n = 0; n <= A; ++n) r.seq.comp.push_back(n <= 1 ? u : z);
    r.seq.act.resize(A + 1);
    for (int n = 0; n <= A; ++n)
        r.seq.act[n].assign(all_perms(n).size(), Cat::id(r.seq.comp[n]));
    r.eta = Cat::id(u);
    for (auto& key : all_gamma_keys(A)) {
        int m = (int)key.size(), n = 0;
        bool zero = m > 1;
        for (int v : key) {
            n += v;
            if (v > 1) zero = true;
        }
        std::vector<typename Cat::Obj> fs = {r.seq.comp[m]};
        for (int v : key) fs.push_back(r.seq.comp[v]);
        auto src = Op::tlist(fs, caps);
        r.gam[key] = zero ? empty_to<Cat>(src, r.seq.comp[n]) : collapse_to_unit<Cat>(src, u);
    }
    r.seq.e = r.eta;
    return r;
}

Operad<FinSet> tree_operad(const Caps& caps) {
    int A = caps.max_arity;
    TreeEnumOpts topts;
    topts.max_vertices = caps.max_vertices;
    topts.binary_only = true;
    Operad<FinSet> r;
    r.seq.variant = SeqVariant::sym;
    r.seq.caps = caps;
    std::vector<std::vector<Tree>> trees(A + 1);
    std::vector<std::map<std::string, int>> index(A + 1);
    for (int n = 0; n <= A; ++n) {
        trees[n] = enumerate_trees(TreeFamily::plain, n, topts);
        std::vector<std::string> names;
        for (int i = 0; i < (int)trees[n].size(); ++i) {
            names.push_back(tree_encode(trees[n][i]));
            index[n][names.back()] = i;
        }
        r.seq.comp.push_back(fobj(names));
    }
    r.seq.act.resize(A + 1);
    for (int n = 0; n <= A; ++n) {
        for (auto& s : all_perms(n)) {
            std::vector<int> map(trees[n].size());
            for (int i = 0; i < (int)trees[n].size(); ++i)
                map[i] = index[n].at(tree_encode(sigma_act(trees[n][i], s)));
            r.seq.act[n].push_back(FinSet::mor(r.seq.comp[n], r.seq.comp[n], std::move(map)));
        }
    }
    r.eta = FinSet::point(r.seq.comp[1], index[1].at(tree_encode(empty_tree_labeled())));
    for (auto& key : all_gamma_keys(A)) {
        int m = (int)key.size(), n = 0;
        for (int v : key) n += v;
        std::vector<FObjP> fs = {r.seq.comp[m]};
        std::vector<int> sizes = {r.seq.comp[m]->size()};
        for (int v : key) {
            fs.push_back(r.seq.comp[v]);
            sizes.push_back(r.seq.comp[v]->size());
        }
        auto src = FinOps::tlist(fs, caps);
        std::vector<int> map(src->size());
        for (int t = 0; t < src->size(); ++t) {
            auto idx = FinSet::tuple_unindex(sizes, t);
            std::vector<Tree> parts(m);
            for (int i = 0; i < m; ++i) parts[i] = trees[key[i]][idx[1 + i]];
            map[t] = index[n].at(tree_encode(graft(trees[m][idx[0]], parts)));
        }
        r.gam[key] = FinSet::mor(src, r.seq.comp[n], std::move(map));
    }
    r.seq.e = r.eta;
    return r;
}

Operad<FinSet> endomorphism_operad(const FObjP& a, const Caps& caps) {
    int A = caps.max_arity;
    int s = a->size();
    Operad<FinSet> r;
    r.seq.variant = SeqVariant::sym;
    r.seq.caps = caps;
    /* maps a^n -> a, named by their image lists */
    std::vector<std::vector<std::vector<int>>> tab(A + 1);
    std::vector<std::map<std::vector<int>, int>> lookup(A + 1);
    auto powsz = [&](int n) {
        long long p = 1;
        for (int i = 0; i < n; ++i) p *= s;
        return p;
    };
    for (int n = 0; n <= A; ++n) {
        long long dom = powsz(n);
        long long count = 1;
        for (long long i = 0; i < dom; ++i) {
            count *= s;
            assert(count <= caps.max_basis && "endomorphism component too large for the caps");
        }
        std::vector<int> img(dom, 0);
        std::vector<std::string> names;
        for (long long e = 0; e < count; ++e) {
            std::string nm = "g";
            for (long long i = 0; i < dom; ++i) nm += std::to_string(img[i]);
            lookup[n][img] = (int)tab[n].size();
            tab[n].push_back(img);
            names.push_back(nm);
            /* mixed-radix increment, last digit fastest */
            for (long long i = dom - 1; i >= 0; --i) {
                if (++img[i] < s) break;
                img[i] = 0;
            }
        }
        r.seq.comp.push_back(fobj(names));
    }
    r.seq.act.resize(A + 1);
    std::vector<int> radix;
    for (int n = 0; n <= A; ++n) {
        radix.assign(n, s);
        for (auto& sg : all_perms(n)) {
            Perm sinv = perm_inv(sg);
            std::vector<int> map(tab[n].size());
            for (int g = 0; g < (int)tab[n].size(); ++g) {
                std::vector<int> img(tab[n][g].size());
                for (long long x = 0; x < (long long)img.size(); ++x) {
                    auto digs = FinSet::tuple_unindex(radix, (int)x);
                    std::vector<int> moved(n);
                    for (int j = 0; j < n; ++j) moved[j] = digs[sinv[j]];
                    img[x] = tab[n][g][FinSet::tuple_index(radix, moved)];
                }
                map[g] = lookup[n].at(img);
            }
            r.seq.act[n].push_back(FinSet::mor(r.seq.comp[n], r.seq.comp[n], std::move(map)));
        }
    }
    {
        std::vector<int> idimg(s);
        for (int i = 0; i < s; ++i) idimg[i] = i;
        r.eta = FinSet::point(r.seq.comp[1], lookup[1].at(idimg));
    }
    for (auto& key : all_gamma_keys(A)) {
        int m = (int)key.size(), n = 0;
        for (int v : key) n += v;
        std::vector<FObjP> fs = {r.seq.comp[m]};
        std::vector<int> sizes = {r.seq.comp[m]->size()};
        for (int v : key) {
            fs.push_back(r.seq.comp[v]);
            sizes.push_back(r.seq.comp[v]->size());
        }
        long long total = 1;
        for (int z : sizes) total *= z;
        if (total > caps.max_basis) continue; // key unavailable at these caps
        auto src = FinOps::tlist(fs, caps);
        std::vector<int> map(src->size());
        std::vector<int> bigradix(n, s), mradix(m, s);
        for (int t = 0; t < src->size(); ++t) {
            auto idx = FinSet::tuple_unindex(sizes, t);
            const auto& g = tab[m][idx[0]];
            std::vector<int> img(powsz(n));
            for (long long x = 0; x < (long long)img.size(); ++x) {
                auto digs = n ? FinSet::tuple_unindex(bigradix, (int)x) : std::vector<int>{};
                std::vector<int> ys(m);
                int off = 0;
                for (int i = 0; i < m; ++i) {
                    std::vector<int> sub(digs.begin() + off, digs.begin() + off + key[i]);
                    std::vector<int> subradix(key[i], s);
                    int xi = key[i] ? FinSet::tuple_index(subradix, sub) : 0;
                    ys[i] = tab[key[i]][idx[1 + i]][xi];
                    off += key[i];
                }
                img[x] = g[m ? FinSet::tuple_index(mradix, ys) : 0];
            }
            map[t] = lookup[n].at(img);
        }
        r.gam[key] = FinSet::mor(src, r.seq.comp[n], std::move(map));
    }
    r.seq.e = r.eta;
    return r;
}

Operad<ChainQ> endomorphism_operad_deg0(const FObjP& a, const Caps& caps) {
    /* linear maps (Q^s)^{⊗n} -> Q^s in degree 0; basis of Hom is (col,row),
       flattened col-major as col*s+row */
    int A = caps.max_arity;
    int s = a->size();
    int D = caps.max_degree;
    Operad<ChainQ> r;
    r.seq.variant = SeqVariant::sym;
    r.seq.caps = caps;
    auto powsz = [&](int n) {
        long long p = 1;
        for (int i = 0; i < n; ++i) p *= s;
        return p;
    };
    auto homobj = [&](int n) {
        std::vector<int> dims(D + 1, 0);
        dims[0] = (int)(powsz(n) * s);
        std::vector<SpQ> d(D + 1);
        d[0] = SpQ::zero(0, dims[0]);
        for (int k = 1; k <= D; ++k) d[k] = SpQ::zero(dims[k - 1], dims[k]);
        return ChainQ::make(D, dims, d, D);
    };
    for (int n = 0; n <= A; ++n) r.seq.comp.push_back(homobj(n));
    r.seq.act.resize(A + 1);
    for (int n = 0; n <= A; ++n) {
        std::vector<int> radix(n, s);
        for (auto& sg : all_perms(n)) {
            Perm sinv = perm_inv(sg);
            SpQ m0((int)(powsz(n) * s), (int)(powsz(n) * s));
            for (long long col = 0; col < powsz(n); ++col) {
                auto digs = n ? FinSet::tuple_unindex(radix, (int)col) : std::vector<int>{};
                std::vector<int> moved(n);
                for (int j = 0; j < n; ++j) moved[j] = digs[sinv[j]];
                long long mc = n ? FinSet::tuple_index(radix, moved) : 0;
                /* basis element (col, row) -> (moved col, row) of the domain twist */
                for (int row = 0; row < s; ++row)
                    m0.add((int)(col * s + row), (int)(mc * s + row), 1);
            }
            m0.normalize();
            std::vector<SpQ> comp(D + 1);
            comp[0] = std::move(m0);
            for (int k = 1; k <= D; ++k) comp[k] = SpQ::zero(0, 0);
            r.seq.act[n].push_back(ChainQ::mor(r.seq.comp[n], r.seq.comp[n], std::move(comp)));
        }
    }
    {
        std::vector<SpQ> comp(D + 1);
        SpQ e(s * s, 1);
        for (int i = 0; i < s; ++i) e.add(i * s + i, 0, 1);
        e.normalize();
        comp[0] = std::move(e);
        for (int k = 1; k <= D; ++k) comp[k] = SpQ::zero(0, 0);
        r.eta = ChainQ::mor(ChainQ::unit(D), r.seq.comp[1], std::move(comp));
    }
    for (auto& key : all_gamma_keys(A)) {
        int m = (int)key.size(), n = 0;
        for (int v : key) n += v;
        std::vector<ChObjP> fs = {r.seq.comp[m]};
        for (int v : key) fs.push_back(r.seq.comp[v]);
        long long total = 1;
        for (auto& x : fs) total *= x->dim(0);
        if (total > caps.max_basis) continue;
        auto src = ChOps::tlist(fs, caps);
        SpQ g0((int)(powsz(n) * s), src->dim(0));
        std::vector<long long> fsz;
        for (auto& x : fs) fsz.push_back(x->dim(0));
        std::vector<int> bigradix(n, s), mradix(m, s);
        for (long long t = 0; t < src->dim(0); ++t) {
            /* decode the degree-0 basis tuple, left-major */
            long long rem = t;
            std::vector<long long> idx(fs.size());
            for (int i = (int)fs.size() - 1; i >= 0; --i) {
                idx[i] = rem % fsz[i];
                rem /= fsz[i];
            }
            long long gcol = idx[0] / s;
            int grow = (int)(idx[0] % s);
            auto gdigs = m ? FinSet::tuple_unindex(mradix, (int)gcol) : std::vector<int>{};
            std::vector<int> rows(m);
            std::vector<std::vector<int>> cols(m);
            bool keep = true;
            std::vector<int> bigcol;
            for (int i = 0; i < m && keep; ++i) {
                long long ci = idx[1 + i] / s;
                int ri = (int)(idx[1 + i] % s);
                if (ri != gdigs[i]) keep = false;
                std::vector<int> subradix(key[i], s);
                auto cd = key[i] ? FinSet::tuple_unindex(subradix, (int)ci) : std::vector<int>{};
                bigcol.insert(bigcol.end(), cd.begin(), cd.end());
            }
            if (!keep) continue;
            long long bc = n ? FinSet::tuple_index(bigradix, bigcol) : 0;
            g0.add((int)(bc * s + grow), (int)t, 1);
        }
        g0.normalize();
        std::vector<SpQ> comp(D + 1);
        comp[0] = std::move(g0);
        for (int k = 1; k <= D; ++k) comp[k] = SpQ::zero(r.seq.comp[n]->dim(k), src->dim(k));
        r.gam[key] = ChainQ::mor(src, r.seq.comp[n], std::move(comp));
    }
    r.seq.e = r.eta;
    return r;
}

std::vector<std::vector<FMor>> operad_morphisms(const Operad<FinSet>& A, const Operad<FinSet>& B) {
    int Am = std::min(A.max_arity(), B.max_arity());
    std::vector<std::vector<FMor>> cand(Am + 1);
    for (int n = 0; n <= Am; ++n) {
        for (auto& f : FinSet::all_mors(A.o(n), B.o(n))) {
            bool ok = true;
            if (n == 1) ok = FinSet::compose(f, A.eta) == B.eta;
            for (auto& s : all_perms(n)) {
                if (!ok) break;
                ok = FinSet::compose(f, A.seq.action(n, s)) ==
                     FinSet::compose(B.seq.action(n, s), f);
            }
            if (ok) cand[n].push_back(f);
        }
    }
    /* keys grouped by the largest arity they involve */
    std::vector<std::vector<std::vector<int>>> bylevel(Am + 1);
    for (auto& key : all_gamma_keys(Am)) {
        if (!A.has_gamma(key) || !B.has_gamma(key)) continue;
        int m = (int)key.size(), n = 0, top = (int)key.size();
        for (int v : key) {
            n += v;
            top = std::max(top, v);
        }
        top = std::max({top, m, n});
        if (top <= Am) bylevel[top].push_back(key);
    }
    std::vector<std::vector<FMor>> out;
    std::vector<FMor> cur(Am + 1);
    std::function<void(int)> rec = [&](int lvl) {
        if (lvl > Am) {
            out.push_back(cur);
            return;
        }
        for (auto& f : cand[lvl]) {
            cur[lvl] = f;
            bool ok = true;
            for (auto& key : bylevel[lvl]) {
                int m = (int)key.size(), n = 0;
                for (int v : key) n += v;
                std::vector<FMor> comps = {cur[m]};
                for (int v : key) comps.push_back(cur[v]);
                FMor lhs = FinSet::compose(cur[n], A.gamma(key));
                FMor rhs = FinSet::compose(B.gamma(key), FinSet::tensor_list_mor(comps));
                if (lhs.map != rhs.map) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(lvl + 1);
        }
    };
    rec(0);
    return out;
}

/* ---------------- explicit instantiation ---------------- */

template struct SymSeq<FinSet>;
template struct SymSeq<ChainQ>;
template struct Operad<FinSet>;
template struct Operad<ChainQ>;
template Verdict check_axioms<FinSet>(const Operad<FinSet>&, const AxiomOptions&);
template Verdict check_axioms<ChainQ>(const Operad<ChainQ>&, const AxiomOptions&);
template FMor tree_eval<FinSet>(const Operad<FinSet>&, const Tree&);
template ChMor tree_eval<ChainQ>(const Operad<ChainQ>&, const Tree&);
template Operad<FinSet> n_operad<FinSet>(const Caps&);
template Operad<ChainQ> n_operad<ChainQ>(const Caps&);
template Operad<FinSet> p_operad<FinSet>(const Caps&);
template Operad<ChainQ> p_operad<ChainQ>(const Caps&);

} // namespace operadics
