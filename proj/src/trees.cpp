#include "operadics/trees.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <tuple>

namespace operadics {

namespace {

long long fact_ll(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

VColor color_of(const Tree& t, int v) { return t.colored() ? t.color[v] : VColor::plain; }

bool arrows_respected(VColor c, const IsoPolicy& pol) {
    return c == VColor::newv ? pol.respect_arrows_new : pol.respect_arrows_old;
}

/* loose recursive form used while rebuilding trees */
struct Loose {
    bool is_tail = false;
    int lab = -1;
    int mark = -1;
    VColor col = VColor::plain;
    std::vector<int> origs; // original vertex indices folded into this node
    std::vector<Loose> ch;
};

Loose loose_of(const Tree& t, int v) {
    Loose n;
    n.col = color_of(t, v);
    n.origs = {v};
    bool wl = !t.labels.empty(), wm = !t.marks.empty();
    for (auto c : t.kids[v]) {
        if (c.is_tail) {
            Loose l;
            l.is_tail = true;
            if (wl) l.lab = t.labels[c.idx];
            if (wm) l.mark = (int)t.marks[c.idx];
            n.ch.push_back(std::move(l));
        } else {
            n.ch.push_back(loose_of(t, c.idx));
        }
    }
    return n;
}

int emit(const Loose& n, Tree& out, std::vector<int>& vmap, bool wc, bool wl, bool wm) {
    int me = (int)out.kids.size();
    out.kids.emplace_back();
    if (wc) out.color.push_back(n.col);
    for (int o : n.origs)
        if (o >= 0 && o < (int)vmap.size()) vmap[o] = me;
    std::vector<Child> cs;
    for (const auto& c : n.ch) {
        if (c.is_tail) {
            int slot = out.n_tails++;
            if (wl) out.labels.push_back(c.lab);
            if (wm) out.marks.push_back((TailMark)c.mark);
            cs.push_back({true, slot});
        } else {
            cs.push_back({false, emit(c, out, vmap, wc, wl, wm)});
        }
    }
    out.kids[me] = std::move(cs);
    return me;
}

Tree from_loose(const Loose& root, bool wc, bool wl, bool wm,
                std::vector<int>* vmap_out = nullptr, int orig_v = 0) {
    Tree out;
    std::vector<int> vmap(orig_v, -1);
    if (root.is_tail) {
        out.n_tails = 1;
        if (wl) out.labels = {root.lab};
        if (wm) out.marks = {(TailMark)root.mark};
    } else {
        emit(root, out, vmap, wc, wl, wm);
    }
    if (vmap_out) *vmap_out = std::move(vmap);
    tree_validate(out);
    return out;
}

std::string tail_token(const Tree& t, int slot, bool use_labels) {
    if (!t.marks.empty()) return t.marks[slot] == TailMark::a ? "a" : "m";
    if (use_labels && !t.labels.empty()) return "t" + std::to_string(t.labels[slot] + 1);
    return "t";
}

/* pol == nullptr gives the literal encoding (everything respected) */
std::string key_rec(const Tree& t, int v, const IsoPolicy* pol) {
    std::string pre = !t.colored() ? "" : (t.color[v] == VColor::oldv ? "o" : "n");
    std::vector<std::string> ks;
    for (auto c : t.kids[v])
        ks.push_back(c.is_tail ? tail_token(t, c.idx, pol ? pol->respect_tail_labels : true)
                               : key_rec(t, c.idx, pol));
    if (pol && !arrows_respected(color_of(t, v), *pol)) std::sort(ks.begin(), ks.end());
    std::string s = pre + "(";
    for (size_t i = 0; i < ks.size(); ++i) {
        if (i) s += ",";
        s += ks[i];
    }
    s += ")";
    return s;
}

} // namespace

void tree_validate(const Tree& t) {
    int V = t.vcount();
    assert(t.labels.empty() || (int)t.labels.size() == t.n_tails);
    assert(t.marks.empty() || (int)t.marks.size() == t.n_tails);
    assert((t.labels.empty() || t.marks.empty()) && "labels and marks are exclusive");
    assert(t.color.empty() || (int)t.color.size() == V);
    if (!t.labels.empty()) {
        std::vector<char> seen(t.n_tails, 0);
        for (int l : t.labels) {
            assert(l >= 0 && l < t.n_tails && !seen[l]);
            seen[l] = 1;
        }
    }
    if (t.colored())
        for (auto c : t.color) assert(c == VColor::oldv || c == VColor::newv);
    if (V == 0) {
        assert(t.n_tails == 1 && "the empty tree has exactly one tail");
        return;
    }
    int nv = 0, nt = 0;
    std::function<void(int)> dfs = [&](int v) {
        assert(v == nv && "vertices must be numbered in preorder");
        ++nv;
        for (auto c : t.kids[v]) {
            if (c.is_tail) {
                assert(c.idx == nt && "tail slots must follow the traversal order");
                ++nt;
            } else {
                assert(c.idx < V);
                dfs(c.idx);
            }
        }
    };
    dfs(0);
    assert(nv == V && nt == t.n_tails);
}

std::string tree_encode(const Tree& t) {
    if (t.is_empty_tree()) return tail_token(t, 0, true);
    return key_rec(t, 0, nullptr);
}

std::string canonical_key(const Tree& t, const IsoPolicy& pol) {
    if (t.is_empty_tree()) return tail_token(t, 0, pol.respect_tail_labels);
    return key_rec(t, 0, &pol);
}

namespace {

Loose loose_of_b(const TreeB& b, bool& any_col, bool& any_lab, bool& any_mark) {
    Loose n;
    n.is_tail = b.is_tail;
    n.lab = b.label;
    n.mark = b.mark;
    n.col = b.col;
    if (b.is_tail) {
        if (b.label >= 0) any_lab = true;
        if (b.mark >= 0) any_mark = true;
    } else if (b.col != VColor::plain) {
        any_col = true;
    }
    for (const auto& c : b.ch) n.ch.push_back(loose_of_b(c, any_col, any_lab, any_mark));
    return n;
}

} // namespace

Tree build_tree(const TreeB& root) {
    bool ac = false, al = false, am = false;
    Loose l = loose_of_b(root, ac, al, am);
    assert(!(al && am));
    return from_loose(l, ac, al, am);
}

Tree empty_tree_labeled() {
    Tree t;
    t.n_tails = 1;
    t.labels = {0};
    return t;
}

Tree empty_tree_shape() {
    Tree t;
    t.n_tails = 1;
    return t;
}

Tree corolla(int n) {
    Tree t;
    t.n_tails = n;
    t.kids.resize(1);
    for (int i = 0; i < n; ++i) {
        t.kids[0].push_back({true, i});
        t.labels.push_back(i);
    }
    return t;
}

namespace {

void relabel_shift(Loose& n, int off, int orig_off) {
    if (n.is_tail) n.lab += off;
    for (auto& o : n.origs) o += orig_off;
    for (auto& c : n.ch) relabel_shift(c, off, orig_off);
}

Tree graft_core(const Tree& t, const std::vector<Tree>& parts, std::vector<int>* vmap_out) {
    tree_validate(t);
    assert((int)parts.size() == t.n_tails);
    assert(t.marks.empty());
    assert(t.n_tails == 0 || !t.labels.empty());
    if (t.is_empty_tree()) {
        tree_validate(parts[0]);
        if (vmap_out) {
            vmap_out->resize(parts[0].vcount());
            for (int v = 0; v < parts[0].vcount(); ++v) (*vmap_out)[v] = v;
        }
        return parts[0];
    }
    bool col = t.colored();
    std::vector<int> off(t.n_tails + 1, 0);
    for (int i = 0; i < t.n_tails; ++i) off[i + 1] = off[i] + parts[i].n_tails;
    std::vector<int> voff(t.n_tails + 1, t.vcount());
    for (int i = 0; i < t.n_tails; ++i) voff[i + 1] = voff[i] + parts[i].vcount();
    std::vector<Loose> pl(t.n_tails);
    for (int i = 0; i < t.n_tails; ++i) {
        const Tree& p = parts[i];
        tree_validate(p);
        assert(p.marks.empty());
        assert(p.n_tails == 0 || !p.labels.empty());
        assert(p.vcount() == 0 || p.colored() == col);
        if (p.is_empty_tree()) {
            Loose l;
            l.is_tail = true;
            l.lab = off[i];
            pl[i] = l;
        } else {
            pl[i] = loose_of(p, 0);
            relabel_shift(pl[i], off[i], voff[i]);
        }
    }
    Loose base = loose_of(t, 0);
    std::function<void(Loose&)> subst = [&](Loose& n) {
        for (auto& c : n.ch) {
            if (c.is_tail)
                c = pl[c.lab];
            else
                subst(c);
        }
    };
    subst(base);
    return from_loose(base, col, off[t.n_tails] > 0, false, vmap_out, voff[t.n_tails]);
}

} // namespace

Tree graft(const Tree& t, const std::vector<Tree>& parts) {
    return graft_core(t, parts, nullptr);
}

Tree graft(const Tree& t, const std::vector<Tree>& parts, std::vector<int>& vmap_out) {
    return graft_core(t, parts, &vmap_out);
}

Tree sigma_act(const Tree& t, const Perm& sigma) {
    tree_validate(t);
    assert((int)sigma.size() == t.n_tails);
    assert(t.n_tails == 0 || !t.labels.empty());
    Perm inv = perm_inv(sigma);
    Tree r = t;
    for (auto& l : r.labels) l = inv[l];
    return r;
}

Tree canonical_tail_labeling(const Tree& shape) {
    tree_validate(shape);
    assert(shape.marks.empty());
    Tree r = shape;
    r.labels.resize(r.n_tails);
    for (int i = 0; i < r.n_tails; ++i) r.labels[i] = i;
    return r;
}

bool is_proper_dc(const Tree& t) {
    if (!t.colored()) return t.vcount() == 0;
    for (int v = 0; v < t.vcount(); ++v)
        if (t.color[v] == VColor::oldv)
            for (auto c : t.kids[v])
                if (!c.is_tail && t.color[c.idx] == VColor::oldv) return false;
    return true;
}

bool is_proper_am(const Tree& t) {
    if (!is_proper_dc(t)) return false;
    if (t.n_tails > 0 && t.marks.empty()) return false;
    for (int v = 0; v < t.vcount(); ++v) {
        bool all_tails = true, has_m = false;
        for (auto c : t.kids[v]) {
            if (!c.is_tail)
                all_tails = false;
            else if (t.marks[c.idx] == TailMark::m)
                has_m = true;
        }
        if (all_tails) {
            /* covers valency 0: such a vertex can never satisfy this */
            if (!t.colored() || t.color[v] != VColor::newv) return false;
            if (!has_m) return false;
        }
    }
    return true;
}

bool is_zero_special(const Tree& t) {
    int V = t.vcount();
    if (V == 0) return true;
    std::vector<char> reach(V, 0);
    std::function<bool(int)> dfs = [&](int v) -> bool {
        bool r = false;
        for (auto c : t.kids[v]) {
            bool cr = c.is_tail ? true : dfs(c.idx);
            r = r || cr;
        }
        reach[v] = r;
        return r;
    };
    dfs(0);
    for (int v = 0; v < V; ++v) {
        if (!reach[v] && t.valency(v) != 0) return false;
        if (t.valency(v) == 0 && (!t.colored() || t.color[v] != VColor::oldv)) return false;
    }
    return true;
}

int u_count(const Tree& t) {
    int c = 0;
    for (int v = 0; v < t.vcount(); ++v)
        if (t.valency(v) == 1) ++c;
    return c;
}

int u_old_count(const Tree& t) {
    int c = 0;
    for (int v = 0; v < t.vcount(); ++v)
        if (t.valency(v) == 1 && color_of(t, v) == VColor::oldv) ++c;
    return c;
}

int v_new_count(const Tree& t) {
    int c = 0;
    for (int v = 0; v < t.vcount(); ++v)
        if (color_of(t, v) == VColor::newv) ++c;
    return c;
}

namespace {

/* contract every arrow joining two old vertices, splicing in planar order */
Loose contracted_loose(const Tree& t, int u, bool wl, bool wm) {
    Loose n;
    n.col = t.color[u];
    n.origs = {u};
    for (auto c : t.kids[u]) {
        if (c.is_tail) {
            Loose l;
            l.is_tail = true;
            if (wl) l.lab = t.labels[c.idx];
            if (wm) l.mark = (int)t.marks[c.idx];
            n.ch.push_back(std::move(l));
        } else {
            Loose w = contracted_loose(t, c.idx, wl, wm);
            if (n.col == VColor::oldv && w.col == VColor::oldv) {
                for (int o : w.origs) n.origs.push_back(o);
                for (auto& wc : w.ch) n.ch.push_back(std::move(wc));
            } else {
                n.ch.push_back(std::move(w));
            }
        }
    }
    return n;
}

TreeChange contract_all(const Tree& t) {
    bool wl = !t.labels.empty(), wm = !t.marks.empty();
    Loose root = contracted_loose(t, 0, wl, wm);
    TreeChange res;
    res.tree = from_loose(root, true, wl, wm, &res.vmap, t.vcount());
    res.proper = wm ? is_proper_am(res.tree) : is_proper_dc(res.tree);
    if (!wm) assert(res.proper && "contraction keeps colored trees proper");
    return res;
}

} // namespace

TreeChange change_vertex(const Tree& t, int v) {
    tree_validate(t);
    assert(t.colored() && v >= 0 && v < t.vcount());
    assert(t.color[v] == VColor::newv && "only new vertices can be changed");
    Tree tmp = t;
    tmp.color[v] = VColor::oldv;
    return contract_all(tmp);
}

TreeChange contract_old_arrows(const Tree& t) {
    tree_validate(t);
    if (t.vcount() == 0) return {t, true, {}};
    assert(t.colored());
    return contract_all(t);
}

TreeChange change_tail(const Tree& t, int slot) {
    tree_validate(t);
    assert(!t.marks.empty() && slot >= 0 && slot < t.n_tails);
    assert(t.marks[slot] == TailMark::m);
    TreeChange res;
    res.tree = t;
    res.tree.marks[slot] = TailMark::a;
    res.proper = is_proper_am(res.tree);
    res.vmap.resize(t.vcount());
    for (int i = 0; i < t.vcount(); ++i) res.vmap[i] = i;
    return res;
}

Tree remove_unary_vertex(const Tree& t, int v) {
    tree_validate(t);
    assert(v >= 0 && v < t.vcount() && t.valency(v) == 1);
    bool wl = !t.labels.empty(), wm = !t.marks.empty(), wc = t.colored();
    std::function<Loose(int)> build = [&](int u) -> Loose {
        if (u == v) {
            auto c = t.kids[u][0];
            if (c.is_tail) {
                Loose l;
                l.is_tail = true;
                if (wl) l.lab = t.labels[c.idx];
                if (wm) l.mark = (int)t.marks[c.idx];
                return l;
            }
            return build(c.idx);
        }
        Loose n;
        n.col = color_of(t, u);
        for (auto c : t.kids[u]) {
            if (c.is_tail) {
                Loose l;
                l.is_tail = true;
                if (wl) l.lab = t.labels[c.idx];
                if (wm) l.mark = (int)t.marks[c.idx];
                n.ch.push_back(std::move(l));
            } else {
                n.ch.push_back(build(c.idx));
            }
        }
        return n;
    };
    Loose root = build(0);
    return from_loose(root, wc, wl, wm);
}

namespace {

struct IsoBuild {
    std::vector<int> vmap, tmap;
    std::vector<Perm> csigma;
};

bool tails_ok(const Tree& s, int a, const Tree& t, int b, const IsoPolicy& pol) {
    bool sm = !s.marks.empty(), tm = !t.marks.empty();
    if (sm != tm) return false;
    if (sm && s.marks[a] != t.marks[b]) return false;
    if (pol.respect_tail_labels) {
        bool sl = !s.labels.empty(), tl = !t.labels.empty();
        if (sl != tl) return false;
        if (sl && s.labels[a] != t.labels[b]) return false;
    }
    return true;
}

std::vector<std::string> subtree_keys(const Tree& t, const IsoPolicy& pol) {
    std::vector<std::string> ks(t.vcount());
    for (int v = 0; v < t.vcount(); ++v) ks[v] = key_rec(t, v, &pol);
    return ks;
}

std::vector<IsoBuild> match_sub(const Tree& s, int vs, const Tree& t, int vt,
                                const IsoPolicy& pol,
                                const std::vector<std::string>& ks,
                                const std::vector<std::string>& kt, IsoBuild cur) {
    if (color_of(s, vs) != color_of(t, vt)) return {};
    int d = s.valency(vs);
    if (d != t.valency(vt)) return {};
    cur.vmap[vs] = vt;
    std::vector<Perm> assigns;
    if (arrows_respected(color_of(s, vs), pol)) {
        assigns.push_back(perm_id(d));
    } else {
        Perm a(d, -1);
        std::vector<char> used(d, 0);
        std::function<void(int)> gen = [&](int i) {
            if (i == d) {
                assigns.push_back(a);
                return;
            }
            auto cs = s.kids[vs][i];
            for (int j = 0; j < d; ++j) {
                if (used[j]) continue;
                auto ct = t.kids[vt][j];
                if (cs.is_tail != ct.is_tail) continue;
                if (cs.is_tail ? !tails_ok(s, cs.idx, t, ct.idx, pol)
                               : ks[cs.idx] != kt[ct.idx])
                    continue;
                a[i] = j;
                used[j] = 1;
                gen(i + 1);
                used[j] = 0;
            }
        };
        gen(0);
    }
    std::vector<IsoBuild> out;
    for (const auto& a : assigns) {
        std::vector<IsoBuild> acc{cur};
        acc[0].csigma[vs] = a;
        for (int i = 0; i < d && !acc.empty(); ++i) {
            auto cs = s.kids[vs][i];
            auto ct = t.kids[vt][a[i]];
            std::vector<IsoBuild> nxt;
            if (cs.is_tail != ct.is_tail) {
                acc.clear();
                break;
            }
            for (auto& b : acc) {
                if (cs.is_tail) {
                    if (tails_ok(s, cs.idx, t, ct.idx, pol)) {
                        IsoBuild b2 = b;
                        b2.tmap[cs.idx] = ct.idx;
                        nxt.push_back(std::move(b2));
                    }
                } else {
                    for (auto& x : match_sub(s, cs.idx, t, ct.idx, pol, ks, kt, b))
                        nxt.push_back(std::move(x));
                }
            }
            acc = std::move(nxt);
        }
        for (auto& b : acc) out.push_back(std::move(b));
    }
    return out;
}

} // namespace

std::vector<TreeIso> all_isos(const Tree& s, const Tree& t, const IsoPolicy& pol) {
    tree_validate(s);
    tree_validate(t);
    std::vector<TreeIso> res;
    if (s.vcount() == 0 || t.vcount() == 0) {
        if (s.vcount() == 0 && t.vcount() == 0 && tails_ok(s, 0, t, 0, pol))
            res.push_back(TreeIso{{}, {0}, {}});
        return res;
    }
    if (s.vcount() != t.vcount() || s.n_tails != t.n_tails) return res;
    auto ks = subtree_keys(s, pol), kt = subtree_keys(t, pol);
    IsoBuild cur;
    cur.vmap.assign(s.vcount(), -1);
    cur.tmap.assign(s.n_tails, -1);
    cur.csigma.assign(s.vcount(), {});
    for (auto& b : match_sub(s, 0, t, 0, pol, ks, kt, cur))
        res.push_back(TreeIso{std::move(b.vmap), std::move(b.tmap), std::move(b.csigma)});
    return res;
}

std::optional<TreeIso> find_iso(const Tree& s, const Tree& t, const IsoPolicy& pol) {
    auto v = all_isos(s, t, pol);
    if (v.empty()) return std::nullopt;
    return v.front();
}

AutGroup automorphisms(const Tree& t, const IsoPolicy& pol) {
    tree_validate(t);
    if (t.vcount() == 0) return AutGroup{};
    std::function<AutGroup(int)> rec = [&](int v) -> AutGroup {
        AutGroup g;
        g.permutable = !arrows_respected(color_of(t, v), pol);
        std::vector<std::pair<std::string, int>> items; // key, vertex index or -1 for a tail
        for (auto c : t.kids[v])
            items.emplace_back(c.is_tail
                                   ? "#" + tail_token(t, c.idx, pol.respect_tail_labels)
                                   : key_rec(t, c.idx, &pol),
                               c.is_tail ? -1 : c.idx);
        std::map<std::string, std::vector<int>> groups;
        std::vector<std::string> order_seen;
        for (auto& [k, idx] : items) {
            if (!groups.count(k)) order_seen.push_back(k);
            groups[k].push_back(idx);
        }
        for (const auto& k : order_seen) {
            const auto& members = groups[k];
            int m = (int)members.size();
            g.mult.push_back(m);
            long long fo = 1;
            if (members[0] == -1) {
                g.factors.push_back(nullptr);
            } else {
                auto sub = std::make_shared<AutGroup>(rec(members[0]));
                fo = sub->order;
                g.factors.push_back(std::move(sub));
            }
            g.factor_orders.push_back(fo);
            g.order *= (g.permutable ? fact_ll(m) : 1) * pow_ll(fo, m);
        }
        return g;
    };
    return rec(0);
}

namespace {

struct ChildSpec {
    bool tail;
    Tree sub;
};

std::map<std::tuple<int, int, bool>, std::vector<Tree>> g_shape_memo;
std::map<std::tuple<int, int, bool>, std::vector<std::vector<ChildSpec>>> g_seq_memo;

const std::vector<Tree>& gen_shapes(int V, int n, bool binary);

const std::vector<std::vector<ChildSpec>>& gen_seqs(int V, int n, bool binary) {
    auto key = std::make_tuple(V, n, binary);
    auto it = g_seq_memo.find(key);
    if (it != g_seq_memo.end()) return it->second;
    std::vector<std::vector<ChildSpec>> out;
    if (V == 0 && n == 0) out.push_back({});
    if (n >= 1)
        for (const auto& r : gen_seqs(V, n - 1, binary)) {
            std::vector<ChildSpec> s;
            s.push_back({true, {}});
            s.insert(s.end(), r.begin(), r.end());
            out.push_back(std::move(s));
        }
    for (int v1 = 1; v1 <= V; ++v1)
        for (int t1 = 0; t1 <= n; ++t1) {
            const auto& subs = gen_shapes(v1, t1, binary);
            if (subs.empty()) continue;
            const auto& rests = gen_seqs(V - v1, n - t1, binary);
            for (const auto& sub : subs)
                for (const auto& r : rests) {
                    std::vector<ChildSpec> s;
                    s.push_back({false, sub});
                    s.insert(s.end(), r.begin(), r.end());
                    out.push_back(std::move(s));
                }
        }
    return g_seq_memo[key] = std::move(out);
}

const std::vector<Tree>& gen_shapes(int V, int n, bool binary) {
    auto key = std::make_tuple(V, n, binary);
    auto it = g_shape_memo.find(key);
    if (it != g_shape_memo.end()) return it->second;
    std::vector<Tree> out;
    if (V == 0) {
        if (n == 1) out.push_back(empty_tree_shape());
    } else {
        for (const auto& seq : gen_seqs(V - 1, n, binary)) {
            if (binary && (int)seq.size() != 2) continue;
            Loose root;
            for (const auto& cs : seq) {
                if (cs.tail) {
                    Loose l;
                    l.is_tail = true;
                    root.ch.push_back(l);
                } else {
                    root.ch.push_back(loose_of(cs.sub, 0));
                }
            }
            out.push_back(from_loose(root, false, false, false));
        }
    }
    return g_shape_memo[key] = std::move(out);
}

} // namespace

std::vector<Tree> enumerate_trees(TreeFamily fam, int n, const TreeEnumOpts& opts) {
    std::vector<Tree> out;
    std::map<std::string, Tree> am_classes;
    auto perms = all_perms(n);
    auto add_labeled = [&](const Tree& base) {
        for (const auto& p : perms) {
            Tree t = base;
            t.labels = p;
            tree_validate(t);
            out.push_back(std::move(t));
        }
    };
    for (int V = 0; V <= opts.max_vertices; ++V) {
        for (const Tree& shape : gen_shapes(V, n, opts.binary_only)) {
            switch (fam) {
            case TreeFamily::plain:
                add_labeled(shape);
                break;
            case TreeFamily::dc:
            case TreeFamily::dc_proper:
            case TreeFamily::zero_special:
                for (int mask = 0; mask < (1 << V); ++mask) {
                    Tree t = shape;
                    t.color.resize(V);
                    for (int v = 0; v < V; ++v)
                        t.color[v] = ((mask >> v) & 1) ? VColor::newv : VColor::oldv;
                    if (fam != TreeFamily::dc && !is_proper_dc(t)) continue;
                    if (fam == TreeFamily::zero_special && !is_zero_special(t)) continue;
                    add_labeled(t);
                }
                break;
            case TreeFamily::am:
            case TreeFamily::am_proper:
                for (int mask = 0; mask < (1 << V); ++mask) {
                    Tree base = shape;
                    base.color.resize(V);
                    for (int v = 0; v < V; ++v)
                        base.color[v] = ((mask >> v) & 1) ? VColor::newv : VColor::oldv;
                    for (int mm = 0; mm < (1 << n); ++mm) {
                        Tree t = base;
                        t.marks.resize(n);
                        for (int i = 0; i < n; ++i)
                            t.marks[i] = ((mm >> i) & 1) ? TailMark::m : TailMark::a;
                        tree_validate(t);
                        if (fam == TreeFamily::am_proper && !is_proper_am(t)) continue;
                        std::string k = canonical_key(t, IsoPolicy{false, false, false});
                        auto it = am_classes.find(k);
                        if (it == am_classes.end() || tree_encode(t) < tree_encode(it->second))
                            am_classes[k] = t;
                    }
                }
                break;
            }
        }
    }
    if (fam == TreeFamily::am || fam == TreeFamily::am_proper)
        for (auto& [k, t] : am_classes) out.push_back(t);
    std::sort(out.begin(), out.end(), [](const Tree& a, const Tree& b) {
        if (a.vcount() != b.vcount()) return a.vcount() < b.vcount();
        return tree_encode(a) < tree_encode(b);
    });
    return out;
}

} // namespace operadics
