#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "operadics/catops.hpp"
#include "operadics/operad.hpp"
#include "operadics/perm.hpp"

using namespace operadics;

namespace {

const Caps caps{};

/* one generator in arity 2, nothing else */
SymSeq<FinSet> binary_gen() {
    SymSeq<FinSet> x;
    x.variant = SeqVariant::plain;
    x.caps = caps;
    x.comp = {FinSet::initial(), FinSet::initial(), fobj({"g"})};
    return x;
}

ChObjP qunit() { return ChainQ::unit(caps.max_degree); }
ChObjP qzero() { return ChainQ::zero(caps.max_degree); }

} // namespace

TEST_CASE("free operad on one binary generator counts labeled binary trees") {
    auto fx = free_operad(binary_gen(), caps);
    CHECK(fx.exact);
    CHECK(!fx.flags.truncated);
    CHECK(fx.op.o(0)->size() == 0);
    CHECK(fx.op.o(1)->size() == 1);
    CHECK(fx.op.o(2)->size() == 2);
    CHECK(fx.op.o(3)->size() == 12);
    CHECK(fx.op.o(4)->size() == 120);
    /* every decomposition summand is a bijective piece of the component */
    for (int n = 0; n <= 4; ++n) CHECK(FinSet::is_bijection(fx.ar[n].assembled));
    Verdict v = check_axioms(fx.op);
    CHECK(v.ok());
}

TEST_CASE("free operad composition grafts the underlying trees") {
    auto fx = free_operad(binary_gen(), caps);
    int c2 = fx.ar[2].tindex.at(tree_encode(corolla(2)));
    int e2 = fx.ar[2].realize[c2].map[0];
    const FMor& g = fx.op.gamma({2, 2});
    int src = (e2 * 2 + e2) * 2 + e2; // the tuple (c2, c2, c2)
    std::vector<int> vmap;
    Tree expect = graft(corolla(2), {corolla(2), corolla(2)}, vmap);
    int gi = fx.ar[4].tindex.at(tree_encode(expect));
    CHECK(g.map[src] == fx.ar[4].realize[gi].map[0]);
}

TEST_CASE("nullary and unary generators truncate at the caps") {
    /* one unary generator: each chain length survives once per decoration */
    SymSeq<FinSet> x1;
    x1.variant = SeqVariant::plain;
    x1.comp = {FinSet::initial(), fobj({"a"})};
    auto f1 = free_operad(x1, caps);
    CHECK(!f1.exact);
    CHECK(f1.flags.truncated);
    CHECK(f1.op.o(1)->size() == 7); // chains with 0..6 vertices

    /* a lone nullary generator stays finite */
    SymSeq<FinSet> x0;
    x0.variant = SeqVariant::plain;
    x0.comp = {fobj({"z"})};
    auto f0 = free_operad(x0, caps);
    CHECK(f0.exact);
    CHECK(f0.op.o(0)->size() == 1);

    /* nullary next to binary piles up towers */
    SymSeq<FinSet> xb;
    xb.variant = SeqVariant::plain;
    xb.comp = {fobj({"z"}), FinSet::initial(), fobj({"g"})};
    auto fb = free_operad(xb, caps);
    CHECK(!fb.exact);
    CHECK(fb.flags.truncated);
}

TEST_CASE("pointed unary chains collapse along the basepoint") {
    SymSeq<FinSet> x;
    x.variant = SeqVariant::pointed;
    x.comp = {FinSet::initial(), fobj({"e", "a"})};
    x.e = FinSet::mor(FinSet::unit(), x.comp[1], {0});
    auto fp = free_operad(x, caps);
    /* classes: pure-a chains of each length */
    CHECK(fp.op.o(1)->size() == 7);
    CHECK(!fp.exact); // the a-chains still grow without bound
    CHECK(fp.ar[1].stages.size() == 6);

    /* without the basepoint every decorated chain survives */
    SymSeq<FinSet> y = x;
    y.variant = SeqVariant::plain;
    y.e.reset();
    auto fl = free_operad(y, caps);
    CHECK(fl.op.o(1)->size() == 127);
}

TEST_CASE("an invertible basepoint leaves exactly the collapsed trees") {
    SymSeq<FinSet> x;
    x.variant = SeqVariant::pointed;
    x.comp = {FinSet::initial(), fobj({"e"}), fobj({"g"})};
    x.e = FinSet::mor(FinSet::unit(), x.comp[1], {0});
    auto fx = free_operad(x, caps);
    CHECK(fx.exact);
    CHECK(!fx.flags.truncated);
    CHECK(fx.op.o(1)->size() == 1);
    CHECK(fx.op.o(2)->size() == 2);
    CHECK(fx.op.o(3)->size() == 12);
    CHECK(fx.op.o(4)->size() == 120);
    CHECK(!fx.ar[2].stages.empty()); // the unit-bearing trees really were glued
    CHECK(check_axioms(fx.op).ok());

    /* the same shape collapse with chain coefficients; a tighter vertex cap
       keeps the stage matrices small and changes no collapsed class */
    Caps qc = caps;
    qc.max_vertices = 3;
    SymSeq<ChainQ> c;
    c.variant = SeqVariant::pointed;
    c.caps = qc;
    c.comp = {qzero(), qunit(), qunit()};
    c.e = ChainQ::id(qunit());
    auto fc = free_operad(c, qc);
    CHECK(fc.exact);
    CHECK(fc.op.o(2)->total_dim() == 2);
    CHECK(fc.op.o(3)->total_dim() == 12);
    CHECK(fc.op.o(4)->total_dim() == 120);
    CHECK(fc.op.o(4)->dims[0] == 120); // all in degree zero
    CHECK(check_axioms(fc.op).ok());
}

TEST_CASE("symmetric quotient folds a free binary action") {
    SymSeq<FinSet> x;
    x.variant = SeqVariant::sym;
    x.comp = {FinSet::initial(), FinSet::initial(), fobj({"p", "q"})};
    x.act = {{}, {}, {FinSet::id(x.comp[2]), FinSet::mor(x.comp[2], x.comp[2], {1, 0})}};
    auto fx = free_operad(x, caps);
    /* same counts as one plain generator: the two labelings fold onto the
       two decorations */
    CHECK(fx.op.o(2)->size() == 2);
    CHECK(fx.op.o(3)->size() == 12);
    CHECK(fx.op.o(4)->size() == 120);
    CHECK(check_axioms(fx.op).ok());
    /* sections split the assembled map after the quotient */
    for (int n = 2; n <= 4; ++n) {
        FMor rt = FinSet::compose(fx.ar[n].assembled, fx.ar[n].sec);
        CHECK(FinOps::eq(rt, FinSet::id(fx.op.o(n))));
    }
}

TEST_CASE("symmetric quotient respects a regular action in arity three") {
    auto perms = all_perms(3);
    std::vector<std::string> names;
    for (auto& p : perms) {
        std::string s = "s";
        for (int v : p) s += char('0' + v);
        names.push_back(s);
    }
    FObjP s3 = fobj(names);
    SymSeq<FinSet> x;
    x.variant = SeqVariant::sym;
    x.comp = {FinSet::initial(), FinSet::initial(), FinSet::initial(), s3};
    x.act.resize(4);
    for (auto& s : perms) {
        std::vector<int> m;
        for (auto& w : perms) m.push_back((int)perm_rank(perm_mul(w, s)));
        x.act[3].push_back(FinSet::mor(s3, s3, std::move(m)));
    }
    auto fx = free_operad(x, caps);
    CHECK(fx.op.o(3)->size() == 6); // one free orbit
    CHECK(fx.op.o(1)->size() == 1);
    CHECK(fx.op.o(2)->size() == 0);
    CHECK(check_axioms(fx.op).ok());
}

TEST_CASE("symmetric free operad dimensions with a commutative generator") {
    SymSeq<ChainQ> x;
    x.variant = SeqVariant::sym;
    x.caps = caps;
    x.comp = {qzero(), qzero(), qunit()}; // trivial action carried implicitly
    auto fx = free_operad(x, caps);
    CHECK(fx.exact);
    CHECK(fx.op.o(1)->total_dim() == 1);
    CHECK(fx.op.o(2)->total_dim() == 1);
    CHECK(fx.op.o(3)->total_dim() == 3);
    CHECK(fx.op.o(4)->total_dim() == 15);
    CHECK(check_axioms(fx.op).ok());
    for (int n = 1; n <= 4; ++n) {
        ChMor rt = ChainQ::compose(fx.ar[n].assembled, fx.ar[n].sec);
        CHECK(ChOps::eq(rt, ChainQ::id(fx.op.o(n))));
    }
}

TEST_CASE("chain coefficients in odd degree keep the axioms") {
    std::vector<int> dims(caps.max_degree + 1, 0);
    dims[1] = 1;
    std::vector<SpQ> d(caps.max_degree + 1);
    d[0] = SpQ(0, dims[0]);
    for (int k = 1; k <= caps.max_degree; ++k) d[k] = SpQ(dims[k - 1], dims[k]);
    ChObjP g = ChainQ::make(caps.max_degree, dims, d);
    SymSeq<ChainQ> x;
    x.variant = SeqVariant::plain;
    x.caps = caps;
    x.comp = {qzero(), qzero(), g};
    auto fx = free_operad(x, caps);
    CHECK(fx.op.o(2)->dims[1] == 2);
    CHECK(fx.op.o(3)->dims[2] == 12);
    CHECK(fx.op.o(4)->dims[3] == 120);
    CHECK(check_axioms(fx.op).ok()); // the sign bookkeeping in every diagram
}

TEST_CASE("the symmetric action permutes the decomposition summands") {
    auto fx = free_operad(binary_gen(), caps);
    for (int n = 2; n <= 4; ++n) {
        const FreeArity<FinSet>& a = fx.ar[n];
        for (const Perm& s : all_perms(n)) {
            const FMor& as = fx.op.seq.act[n][perm_rank(s)];
            for (int t = 0; t < (int)a.trees.size(); ++t) {
                if (!a.kept[t]) continue;
                int ts = a.tindex.at(tree_encode(sigma_act(a.trees[t], s)));
                CHECK(FinOps::eq(FinSet::compose(as, a.realize[t]), a.realize[ts]));
            }
        }
    }
    /* and through the symmetric quotient with chain coefficients */
    SymSeq<ChainQ> y;
    y.variant = SeqVariant::sym;
    y.caps = caps;
    y.comp = {qzero(), qzero(), qunit()};
    auto fy = free_operad(y, caps);
    for (int n = 2; n <= 4; ++n) {
        const FreeArity<ChainQ>& a = fy.ar[n];
        for (const Perm& s : all_perms(n)) {
            const ChMor& as = fy.op.seq.act[n][perm_rank(s)];
            for (int t = 0; t < (int)a.trees.size(); ++t) {
                if (!a.kept[t]) continue;
                int ts = a.tindex.at(tree_encode(sigma_act(a.trees[t], s)));
                CHECK(ChOps::eq(ChainQ::compose(as, a.realize[t]), a.realize[ts]));
            }
        }
    }
}

TEST_CASE("tree substitution is unital and associative in the pointed tower") {
    Caps small = caps;
    small.max_arity = 3;
    SymSeq<FinSet> x;
    x.variant = SeqVariant::pointed;
    x.comp = {FinSet::initial(), fobj({"e"}), fobj({"g"})};
    x.e = FinSet::mor(FinSet::unit(), x.comp[1], {0});

    auto fx = free_operad(x, small);
    auto ffx = free_operad(underlying_seq(fx), small);
    auto fffx = free_operad(underlying_seq(ffx), small);
    CHECK(fx.exact);
    CHECK(ffx.exact);
    CHECK(fffx.exact);
    CHECK(ffx.op.o(3)->size() == 120); // 6 corolla labelings * 12 + 12 shapes * 2 * 2

    auto mu = monad_multiply(ffx, fx);
    auto mu2 = monad_multiply(fffx, ffx);
    for (int n = 0; n <= 3; ++n) {
        /* unit on the outside */
        CHECK(FinOps::eq(FinSet::compose(mu[n], ffx.unit_x[n]), FinSet::id(fx.op.o(n))));
    }
    /* unit on the inside */
    auto fof = free_map(fx, ffx, fx.unit_x);
    for (int n = 0; n <= 3; ++n)
        CHECK(FinOps::eq(FinSet::compose(mu[n], fof[n]), FinSet::id(fx.op.o(n))));
    /* substitution twice, both ways around */
    auto fmu = free_map(fffx, ffx, mu);
    for (int n = 0; n <= 3; ++n)
        CHECK(FinOps::eq(FinSet::compose(mu[n], mu2[n]), FinSet::compose(mu[n], fmu[n])));
}

TEST_CASE("free maps are functorial and natural in the generators") {
    SymSeq<FinSet> x = binary_gen();
    SymSeq<FinSet> y;
    y.variant = SeqVariant::plain;
    y.comp = {FinSet::initial(), FinSet::initial(), fobj({"h1", "h2"})};
    auto fx = free_operad(x, caps);
    auto fy = free_operad(y, caps);

    std::vector<FMor> f{FinSet::mor(x.comp[0], y.comp[0], {}),
                        FinSet::mor(x.comp[1], y.comp[1], {}),
                        FinSet::mor(x.comp[2], y.comp[2], {1})};
    /* arities past the carried components are empty on both sides */
    for (int n = 3; n <= 4; ++n) f.push_back(FinSet::mor(FinSet::initial(), FinSet::initial(), {}));
    auto ff = free_map(fx, fy, f);
    for (int n = 0; n <= 4; ++n)
        CHECK(FinOps::eq(FinSet::compose(ff[n], fx.unit_x[n]),
                         FinSet::compose(fy.unit_x[n], f[n])));

    std::vector<FMor> ids{FinSet::id(x.comp[0]), FinSet::id(x.comp[1]), FinSet::id(x.comp[2])};
    auto fid = free_map(fx, fx, ids);
    for (int n = 0; n <= 4; ++n) CHECK(FinOps::eq(fid[n], FinSet::id(fx.op.o(n))));

    /* the induced map is a map of operads: check one composition square */
    FMor lhs = FinSet::compose(ff[4], fx.op.gamma({2, 2}));
    FMor rhs = FinSet::compose(fy.op.gamma({2, 2}),
                               FinSet::tensor_list_mor({ff[2], ff[2], ff[2]}));
    CHECK(FinOps::eq(lhs, rhs));
}

TEST_CASE("maps out of a free operad are determined by the generators") {
    Caps c2 = caps;
    c2.max_arity = 2;
    SymSeq<FinSet> x;
    x.variant = SeqVariant::plain;
    x.comp = {FinSet::initial(), FinSet::initial(), fobj({"g"})};
    auto fx = free_operad(x, c2);

    auto T = tree_operad(c2);
    auto homT = operad_morphisms(fx.op, T);
    CHECK((int)homT.size() == T.o(2)->size()); // one map per target of the generator

    auto E = endomorphism_operad(fobj({"0", "1"}), c2);
    auto homE = operad_morphisms(fx.op, E);
    CHECK((int)homE.size() == E.o(2)->size());
    CHECK(FinSet::all_mors(x.comp[2], E.o(2)).size() == homE.size());
}
