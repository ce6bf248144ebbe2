#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <set>

#include "operadics/trees.hpp"

using namespace operadics;

namespace {

TreeB tl(int label1) {
    TreeB b;
    b.is_tail = true;
    b.label = label1 - 1;
    return b;
}

TreeB tmk(char mk) {
    TreeB b;
    b.is_tail = true;
    b.mark = mk == 'm' ? 1 : 0;
    return b;
}

TreeB tsh() {
    TreeB b;
    b.is_tail = true;
    return b;
}

TreeB vx(std::vector<TreeB> ch) {
    TreeB b;
    b.ch = std::move(ch);
    return b;
}

TreeB vo(std::vector<TreeB> ch) {
    TreeB b;
    b.col = VColor::oldv;
    b.ch = std::move(ch);
    return b;
}

TreeB vn(std::vector<TreeB> ch) {
    TreeB b;
    b.col = VColor::newv;
    b.ch = std::move(ch);
    return b;
}

long long fact(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/* The block action on sum(m_i) letters: position j of the i-th block in the
   sigma-arranged order (sizes m[sigma[i]]) goes to position j of block
   sigma(i) in the original order. Built from scratch as an oracle. */
Perm block_perm_oracle(const Perm& sigma, const std::vector<int>& m) {
    int n = (int)sigma.size();
    std::vector<int> off(n + 1, 0);
    for (int i = 0; i < n; ++i) off[i + 1] = off[i] + m[i];
    Perm bp(off[n], -1);
    int pos = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m[sigma[i]]; ++j) bp[pos + j] = off[sigma[i]] + j;
        pos += m[sigma[i]];
    }
    return bp;
}

void for_each_tuple(const std::vector<int>& sizes,
                    const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx(sizes.size(), 0);
    while (true) {
        f(idx);
        size_t k = 0;
        while (k < sizes.size()) {
            if (++idx[k] < sizes[k]) break;
            idx[k++] = 0;
        }
        if (k == sizes.size()) break;
        if (sizes.empty()) break;
    }
}

} // namespace

TEST_CASE("encodings and builders") {
    CHECK(tree_encode(corolla(2)) == "(t1,t2)");
    CHECK(tree_encode(empty_tree_labeled()) == "t1");
    CHECK(tree_encode(build_tree(vo({vn({tmk('a'), tmk('m')})}))) == "o(n(a,m))");
    tree_validate(corolla(0));
    CHECK(corolla(0).n_tails == 0);
}

TEST_CASE("graft oracle examples") {
    auto c2 = corolla(2);
    auto emp = empty_tree_labeled();
    CHECK(graft(emp, {c2}) == c2);
    CHECK(graft(c2, {emp, emp}) == c2);
    auto lc = graft(c2, {c2, emp});
    CHECK(tree_encode(lc) == "((t1,t2),t3)");
    CHECK(lc.vcount() == 2);
    CHECK(lc.n_tails == 3);
}

TEST_CASE("tail relabeling is a right action") {
    auto c2 = corolla(2);
    CHECK(sigma_act(c2, perm_id(2)) == c2);
    Perm sw{1, 0};
    auto c2s = sigma_act(c2, sw);
    CHECK(c2s != c2);
    CHECK(tree_encode(c2s) == "(t2,t1)");
    CHECK(sigma_act(c2s, sw) == c2);
    for (auto& t : enumerate_trees(TreeFamily::plain, 3, {2, false}))
        for (auto& s : all_perms(3))
            for (auto& u : all_perms(3))
                CHECK(sigma_act(sigma_act(t, s), u) == sigma_act(t, perm_mul(s, u)));
}

TEST_CASE("canonical labeling goes left to right") {
    CHECK(tree_encode(canonical_tail_labeling(build_tree(vx({tsh(), tsh()})))) == "(t1,t2)");
    CHECK(tree_encode(canonical_tail_labeling(build_tree(vx({vx({tsh(), tsh()}), tsh()})))) ==
          "((t1,t2),t3)");
    CHECK(tree_encode(canonical_tail_labeling(empty_tree_shape())) == "t1");
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_trees(TreeFamily::plain, 2, {1, true}).size() == 2);
    auto b3 = enumerate_trees(TreeFamily::plain, 3, {2, true});
    CHECK(b3.size() == 12);
    std::set<std::string> classes;
    for (auto& t : b3) classes.insert(canonical_key(t, {true, false, false}));
    CHECK(classes.size() == 3); /* planar orderings collapse */
    for (int n = 0; n <= 2; ++n) {
        auto ap = enumerate_trees(TreeFamily::am_proper, n, {3, false});
        for (auto& t : ap)
            for (int v = 0; v < t.vcount(); ++v) CHECK(t.valency(v) > 0);
        if (n == 0) CHECK(ap.empty());
    }
}

TEST_CASE("enumerations are canonical, duplicate free and sorted") {
    for (int n = 0; n <= 3; ++n)
        for (auto fam : {TreeFamily::plain, TreeFamily::dc, TreeFamily::dc_proper,
                         TreeFamily::am, TreeFamily::am_proper, TreeFamily::zero_special}) {
            auto ts = enumerate_trees(fam, n, {2, false});
            std::set<std::string> enc;
            for (auto& t : ts) {
                tree_validate(t);
                enc.insert(tree_encode(t));
            }
            CHECK(enc.size() == ts.size());
            for (size_t i = 1; i < ts.size(); ++i)
                CHECK(ts[i - 1].vcount() <= ts[i].vcount());
        }
}

TEST_CASE("properness filters agree with brute filtering") {
    for (int n = 0; n <= 2; ++n) {
        auto dc = enumerate_trees(TreeFamily::dc, n, {3, false});
        auto dcp = enumerate_trees(TreeFamily::dc_proper, n, {3, false});
        std::vector<Tree> fil;
        for (auto& t : dc)
            if (is_proper_dc(t)) fil.push_back(t);
        CHECK(fil == dcp);
        auto zs = enumerate_trees(TreeFamily::zero_special, n, {3, false});
        std::vector<Tree> fz;
        for (auto& t : dcp)
            if (is_zero_special(t)) fz.push_back(t);
        CHECK(fz == zs);
    }
}

TEST_CASE("am classes partition the raw decorated trees") {
    IsoPolicy pol{false, false, false};
    for (int n = 1; n <= 2; ++n) {
        auto reps = enumerate_trees(TreeFamily::am, n, {2, false});
        std::set<std::string> repkeys;
        for (auto& r : reps) repkeys.insert(canonical_key(r, pol));
        CHECK(repkeys.size() == reps.size());
        auto dc = enumerate_trees(TreeFamily::dc, n, {2, false});
        for (auto& d : dc) {
            bool idlab = true;
            for (int i = 0; i < d.n_tails; ++i)
                if (d.labels[i] != i) idlab = false;
            if (!idlab) continue; /* one raw tree per shape and coloring */
            for (int mm = 0; mm < (1 << n); ++mm) {
                Tree t = d;
                t.labels.clear();
                t.marks.assign(n, TailMark::a);
                for (int i = 0; i < n; ++i)
                    if ((mm >> i) & 1) t.marks[i] = TailMark::m;
                int hits = 0;
                for (auto& r : reps)
                    if (find_iso(t, r, pol)) ++hits;
                CHECK(hits == 1);
            }
        }
    }
}

TEST_CASE("vertex recoloring contracts merged chains") {
    auto T = build_tree(vo({vn({vo({tl(1), tl(2)})})}));
    CHECK(T.vcount() == 3);
    auto ch = change_vertex(T, 1);
    CHECK(ch.proper);
    CHECK(ch.tree.vcount() == 1);
    CHECK(tree_encode(ch.tree) == "o(t1,t2)");
    CHECK(ch.vmap == std::vector<int>{0, 0, 0});

    auto A = build_tree(vn({vn({tl(1)}), tl(2)}));
    auto c2 = change_vertex(A, 1);
    CHECK(c2.proper);
    CHECK(c2.tree.vcount() == 2);
    CHECK(c2.tree.color[0] == VColor::newv);
    CHECK(c2.tree.color[1] == VColor::oldv);
}

TEST_CASE("vertex changes commute and shrink the new count") {
    for (int n = 1; n <= 2; ++n) {
        auto ts = enumerate_trees(TreeFamily::dc_proper, n, {3, false});
        for (auto& t : ts) {
            std::vector<int> nv;
            for (int v = 0; v < t.vcount(); ++v)
                if (t.color[v] == VColor::newv) nv.push_back(v);
            for (int v : nv) {
                auto c = change_vertex(t, v);
                CHECK(c.proper);
                CHECK(v_new_count(c.tree) == v_new_count(t) - 1);
            }
            for (int v : nv)
                for (int w : nv) {
                    if (v == w) continue;
                    auto cv = change_vertex(t, v);
                    auto cw = change_vertex(t, w);
                    CHECK(change_vertex(cv.tree, cv.vmap[w]).tree ==
                          change_vertex(cw.tree, cw.vmap[v]).tree);
                }
        }
    }
}

TEST_CASE("tail remarking and the properness signal") {
    auto mm = build_tree(vn({tmk('m'), tmk('m')}));
    auto c = change_tail(mm, 0);
    CHECK(c.proper);
    CHECK(c.tree.marks[0] == TailMark::a);
    CHECK(c.tree.marks[1] == TailMark::m);

    auto single = build_tree(vn({tmk('m')}));
    CHECK_FALSE(change_tail(single, 0).proper);
    auto am1 = build_tree(vn({tmk('a'), tmk('m')}));
    CHECK_FALSE(change_tail(am1, 1).proper);

    for (int n = 1; n <= 3; ++n)
        for (auto& t : enumerate_trees(TreeFamily::am_proper, n, {3, false}))
            for (int s = 0; s < t.n_tails; ++s) {
                if (t.marks[s] != TailMark::m) continue;
                auto r = change_tail(t, s);
                int ma = 0, mb = 0;
                for (auto x : t.marks)
                    if (x == TailMark::m) ++ma;
                for (auto x : r.tree.marks)
                    if (x == TailMark::m) ++mb;
                CHECK(mb == ma - 1);
            }
}

TEST_CASE("unary vertex removal") {
    auto chain = build_tree(vx({vx({tl(1)})}));
    CHECK(u_count(chain) == 2);
    CHECK(tree_encode(remove_unary_vertex(chain, 1)) == "(t1)");
    CHECK(tree_encode(remove_unary_vertex(chain, 0)) == "(t1)");
    auto single = build_tree(vx({tl(1)}));
    CHECK(remove_unary_vertex(single, 0) == empty_tree_labeled());
    auto mid = build_tree(vo({vn({tl(1)}), tl(2)}));
    CHECK(u_old_count(mid) == 0);
    CHECK(v_new_count(mid) == 1);
}

TEST_CASE("zero special trees") {
    auto zs = enumerate_trees(TreeFamily::zero_special, 1, {3, false});
    CHECK(!zs.empty());
    for (auto& t : zs) {
        CHECK(is_proper_dc(t));
        CHECK(is_zero_special(t));
        for (int v = 0; v < t.vcount(); ++v)
            if (t.valency(v) == 0) CHECK(t.color[v] == VColor::oldv);
    }
    CHECK_FALSE(is_zero_special(build_tree(vo({vn({}), tl(1)}))));
    CHECK(is_zero_special(build_tree(vn({vo({}), tl(1)}))));
    /* a deep no-tail branch with positive valency is rejected */
    CHECK_FALSE(is_zero_special(build_tree(vn({vo({vo({})}), tl(1)}))));
}

TEST_CASE("automorphism groups via the recursive decomposition") {
    IsoPolicy stage{false, false, true};
    for (int n = 2; n <= 4; ++n) {
        Tree c = corolla(n);
        c.labels.clear();
        c.color.assign(1, VColor::oldv);
        auto g = automorphisms(c, stage);
        CHECK(g.order == fact(n));
        CHECK((long long)all_isos(c, c, stage).size() == g.order);
    }
    Tree lab = corolla(3);
    lab.color.assign(1, VColor::oldv);
    CHECK(automorphisms(lab, {true, false, true}).order == 1);

    auto two = build_tree(vo({vn({tsh(), tsh()}), vn({tsh(), tsh()})}));
    auto g2 = automorphisms(two, stage);
    CHECK(g2.order == 2);
    CHECK(g2.mult == std::vector<int>{2});
    CHECK(all_isos(two, two, stage).size() == 2);
}

TEST_CASE("decomposition order matches naive search") {
    std::vector<IsoPolicy> pols = {{false, false, true}, {false, false, false}};
    for (int n = 0; n <= 3; ++n) {
        auto ts = enumerate_trees(TreeFamily::dc, n, {4, false});
        for (auto& t0 : ts) {
            bool idlab = true;
            for (int i = 0; i < t0.n_tails; ++i)
                if (t0.labels[i] != i) idlab = false;
            if (!idlab) continue;
            Tree t = t0;
            t.labels.clear();
            for (auto& pol : pols)
                CHECK(automorphisms(t, pol).order == (long long)all_isos(t, t, pol).size());
        }
    }
    /* a five vertex spot check */
    auto big = build_tree(vo({vn({tsh()}), vn({tsh()}), vn({tsh()}), vo({tsh()}), tsh()}));
    CHECK(automorphisms(big, {false, false, true}).order == 6);
    CHECK(all_isos(big, big, {false, false, true}).size() == 6);
}

TEST_CASE("grafting unit laws") {
    for (int n = 0; n <= 3; ++n)
        for (auto& t : enumerate_trees(TreeFamily::plain, n, {3, false})) {
            std::vector<Tree> empties(n, empty_tree_labeled());
            CHECK(graft(t, empties) == t);
        }
    for (int n = 0; n <= 3; ++n)
        for (auto& t : enumerate_trees(TreeFamily::plain, n, {2, false}))
            CHECK(graft(empty_tree_labeled(), {t}) == t);
}

TEST_CASE("grafting block equivariance") {
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::vector<Tree>> pool(3);
        pool[1] = enumerate_trees(TreeFamily::plain, 1, {1, false});
        pool[2] = enumerate_trees(TreeFamily::plain, 2, {1, false});
        auto ts = enumerate_trees(TreeFamily::plain, n, {2, false});
        auto sigmas = all_perms(n);
        std::vector<int> arsz(n, 2);
        for (auto& T : ts) {
            for_each_tuple(arsz, [&](const std::vector<int>& arn) {
                std::vector<int> m(n);
                std::vector<int> csz(n);
                for (int i = 0; i < n; ++i) {
                    m[i] = arn[i] + 1;
                    csz[i] = (int)pool[m[i]].size();
                }
                for_each_tuple(csz, [&](const std::vector<int>& pick) {
                    std::vector<Tree> parts(n);
                    for (int i = 0; i < n; ++i) parts[i] = pool[m[i]][pick[i]];
                    for (auto& s : sigmas) {
                        std::vector<int> msig(n);
                        for (int i = 0; i < n; ++i) msig[i] = m[s[i]];
                        Perm bp = block_perm_oracle(s, m);
                        CHECK(bp == block_perm(s, msig));
                        std::vector<Tree> psig(n);
                        for (int i = 0; i < n; ++i) psig[i] = parts[s[i]];
                        CHECK(sigma_act(graft(T, parts), bp) ==
                              graft(sigma_act(T, s), psig));
                    }
                });
            });
        }
    }
}

TEST_CASE("grafting associativity") {
    std::vector<std::vector<Tree>> pool(3);
    pool[1] = enumerate_trees(TreeFamily::plain, 1, {1, false});
    pool[2] = enumerate_trees(TreeFamily::plain, 2, {1, false});
    for (int n = 1; n <= 2; ++n) {
        auto ts = enumerate_trees(TreeFamily::plain, n, {1, false});
        std::vector<int> arsz(n, 2);
        for (auto& T : ts)
            for_each_tuple(arsz, [&](const std::vector<int>& arn) {
                std::vector<int> m(n), csz(n);
                for (int i = 0; i < n; ++i) {
                    m[i] = arn[i] + 1;
                    csz[i] = (int)pool[m[i]].size();
                }
                for_each_tuple(csz, [&](const std::vector<int>& pick) {
                    std::vector<Tree> S(n);
                    int msum = 0;
                    for (int i = 0; i < n; ++i) {
                        S[i] = pool[m[i]][pick[i]];
                        msum += m[i];
                    }
                    std::vector<int> karsz(msum, 2);
                    for_each_tuple(karsz, [&](const std::vector<int>& karn) {
                        std::vector<int> k(msum), kcsz(msum);
                        for (int j = 0; j < msum; ++j) {
                            k[j] = karn[j] + 1;
                            kcsz[j] = (int)pool[k[j]].size();
                        }
                        /* deterministic choice instead of a full sweep */
                        std::vector<Tree> R(msum);
                        for (int j = 0; j < msum; ++j) R[j] = pool[k[j]][j % kcsz[j]];
                        auto lhs = graft(graft(T, S), R);
                        std::vector<Tree> inner(n);
                        int off = 0;
                        for (int i = 0; i < n; ++i) {
                            std::vector<Tree> blk(R.begin() + off, R.begin() + off + m[i]);
                            inner[i] = graft(S[i], blk);
                            off += m[i];
                        }
                        CHECK(lhs == graft(T, inner));
                    });
                });
            });
    }
}

TEST_CASE("graft reports vertex provenance") {
    /* base root is input 0, part vertices follow in part order */
    std::vector<int> vmap;
    Tree c2 = corolla(2);
    Tree g = graft(c2, {c2, empty_tree_labeled()}, vmap);
    CHECK(tree_encode(g) == "((t1,t2),t3)");
    CHECK(vmap == std::vector<int>{0, 1});

    /* base with swapped labels: part i still goes to the tail labeled i+1 */
    Tree base = build_tree(vx({tl(2), tl(1)}));
    vmap.clear();
    Tree h = graft(base, {corolla(2), corolla(3)}, vmap);
    /* preorder: root, then the label-2 part (slot 0), then the label-1 part */
    CHECK(vmap == std::vector<int>{0, 2, 1});
    CHECK(h.valency(1) == 3);
    CHECK(h.valency(2) == 2);

    /* empty base: identity on the lone part */
    vmap.clear();
    Tree e = graft(empty_tree_labeled(), {c2}, vmap);
    CHECK(e == c2);
    CHECK(vmap == std::vector<int>{0});
}

TEST_CASE("contract_old_arrows merges old clusters in place") {
    Tree two = build_tree(vo({vo({tl(1)}), tl(2)}));
    TreeChange c = contract_old_arrows(two);
    CHECK(tree_encode(c.tree) == "o(t1,t2)");
    CHECK(c.vmap == std::vector<int>{0, 0});
    CHECK(c.proper);

    /* only old-old arrows contract; new vertices split clusters */
    Tree mixed = build_tree(vn({vo({vo({})})}));
    TreeChange m = contract_old_arrows(mixed);
    CHECK(tree_encode(m.tree) == "n(o())");
    CHECK(m.vmap == std::vector<int>{0, 1, 1});

    /* proper trees pass through unchanged */
    Tree ok = build_tree(vo({vn({tl(1)}), tl(2)}));
    TreeChange p = contract_old_arrows(ok);
    CHECK(p.tree == ok);
    CHECK(p.vmap == std::vector<int>{0, 1});

    /* agreement with change_vertex on a recolored middle vertex */
    Tree chain = build_tree(vo({vn({vo({tl(1), tl(2)})}), tl(3)}));
    TreeChange via_cv = change_vertex(chain, 1);
    Tree recol = chain;
    recol.color[1] = VColor::oldv;
    TreeChange via_c = contract_old_arrows(recol);
    CHECK(via_cv.tree == via_c.tree);
    CHECK(via_cv.vmap == via_c.vmap);
}
