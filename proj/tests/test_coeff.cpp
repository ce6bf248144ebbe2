#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "operadics/chainq.hpp"
#include "operadics/finset.hpp"

using namespace operadics;

namespace {

const int D = 6;

/* Q^2 in every degree with d = [[(-1)^k, 1], [1, (-1)^k]]: the normalized
   chains of the nerve of the contractible groupoid on two objects */
ChObjP nerve_complex() {
    std::vector<int> dims(D + 1, 2);
    std::vector<SpQ> d(D + 1);
    d[0] = SpQ(0, 2);
    for (int k = 1; k <= D; ++k) {
        d[k] = SpQ(2, 2);
        int s = (k % 2 == 0) ? 1 : -1;
        d[k].add(0, 0, Q(s));
        d[k].add(1, 0, Q(1));
        d[k].add(0, 1, Q(1));
        d[k].add(1, 1, Q(s));
    }
    return ChainQ::make(D, dims, d);
}

ChObjP deg0_plane() {
    std::vector<int> dims(D + 1, 0);
    dims[0] = 2;
    std::vector<SpQ> d(D + 1);
    d[0] = SpQ(0, 2);
    for (int k = 1; k <= D; ++k) d[k] = SpQ(k == 1 ? 2 : 0, 0);
    return ChainQ::make(D, dims, d);
}

ChMor deg0_auto(const ChObjP& v, std::vector<std::vector<Q>> m) {
    std::vector<SpQ> c(D + 1);
    c[0] = SpQ(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[0].add(i, j, m[i][j]);
    for (int k = 1; k <= D; ++k) c[k] = SpQ(0, 0);
    return ChainQ::mor(v, v, c);
}

ChObjP random_base(std::mt19937& rng) {
    std::vector<ChObjP> parts;
    int n = 2 + rng() % 2;
    for (int i = 0; i < n; ++i) {
        int top = 1 + rng() % 3;
        if (rng() % 2)
            parts.push_back(ChainQ::disk(D, top));
        else
            parts.push_back(ChainQ::sphere(D, top - 1));
    }
    return ChainQ::coproduct(parts).obj;
}

QMat qmat_inverse(const QMat& r) {
    auto x = solve_linear(r, QMat::identity(r.rows));
    REQUIRE(x.has_value());
    return *x;
}

struct Transported {
    ChObjP obj;
    std::vector<QMat> R, Rinv; // degreewise change of basis from the base
};

/* transport a complex along random unit-triangular changes of basis; keeps
   d exact while making all matrices dense-ish */
Transported transported(const ChObjP& base, std::mt19937& rng) {
    Transported t;
    t.R.resize(D + 1);
    t.Rinv.resize(D + 1);
    for (int k = 0; k <= D; ++k) {
        int n = base->dims[k];
        QMat L = QMat::identity(n), U = QMat::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                if (rng() % 2) L.at(i, j) = Q((long)(rng() % 5) - 2);
                if (rng() % 2) U.at(j, i) = Q((long)(rng() % 5) - 2);
            }
        t.R[k] = L * U;
        t.Rinv[k] = qmat_inverse(t.R[k]);
    }
    std::vector<SpQ> d(D + 1);
    d[0] = SpQ(0, base->dims[0]);
    for (int k = 1; k <= D; ++k)
        d[k] = SpQ::from_dense(t.R[k - 1] * base->d[k].to_dense() * t.Rinv[k]);
    t.obj = ChainQ::make(D, base->dims, d);
    return t;
}

/* a morphism between transports, conjugating a morphism of the bases */
ChMor transport_mor(const Transported& s, const Transported& t, const ChMor& f0) {
    std::vector<SpQ> c(D + 1);
    for (int k = 0; k <= D; ++k)
        c[k] = SpQ::from_dense(t.R[k] * f0.comp[k].to_dense() * s.Rinv[k]);
    return ChainQ::mor(s.obj, t.obj, c);
}

} // namespace

TEST_CASE("finset pushout product small example") {
    auto A = fobj({"x"});
    auto B = fobj({"x", "y"});
    auto C = fobj({"u"});
    auto Dd = fobj({"u", "v"});
    auto f = FinSet::mor_by_name(A, B, [](const std::string& s) { return s; });
    auto g = FinSet::mor_by_name(C, Dd, [](const std::string& s) { return s; });
    auto pp = FinSet::pushout_product({f, g});
    CHECK(pp.domain->size() == 3);
    CHECK(pp.codomain->size() == 4);
    CHECK(FinSet::is_injective(pp.assembled));

    auto pp1 = FinSet::pushout_product({f});
    CHECK(pp1.assembled == f);
    CHECK(FinSet::obj_eq(pp1.domain, A));
}

TEST_CASE("finset pushout product domain has the gluing universal property") {
    auto A1 = fobj({"a"});
    auto B1 = fobj({"a", "b"});
    auto A2 = fobj({"u"});
    auto B2 = fobj({"u", "v"});
    auto A3 = fobj({"p", "q"});
    auto B3 = fobj({"r"});
    auto f1 = FinSet::mor_by_name(A1, B1, [](const std::string& s) { return s; });
    auto f2 = FinSet::mor_by_name(A2, B2, [](const std::string& s) { return s; });
    auto f3 = FinSet::mor(A3, B3, {0, 0});

    for (auto& fs : std::vector<std::vector<FMor>>{{f1, f2}, {f1, f2, f3}}) {
        auto pp = FinSet::pushout_product(fs);
        auto T = fobj({"0", "1"});
        int n = (int)fs.size();

        /* families phi_j: S_j -> T, one big mixed-radix walk */
        std::vector<std::vector<FMor>> per;
        for (auto& s : pp.summands) per.push_back(FinSet::all_mors(s, T));
        long long compatible = 0;
        std::vector<int> pick(n, 0);
        for (;;) {
            bool ok = true;
            for (auto& in : pp.inters) {
                auto lhs = FinSet::compose(per[in.j][pick[in.j]], in.to_j);
                auto rhs = FinSet::compose(per[in.jp][pick[in.jp]], in.to_jp);
                if (!(lhs == rhs)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                ++compatible;
                /* the family must factor uniquely through the domain */
                std::vector<int> m(pp.domain->size(), -1);
                for (int j = 0; j < n; ++j)
                    for (int e = 0; e < pp.summands[j]->size(); ++e) {
                        int cl = pp.into_domain[j].map[e];
                        int im = per[j][pick[j]].map[e];
                        CHECK((m[cl] < 0 || m[cl] == im));
                        m[cl] = im;
                    }
                for (int v : m) CHECK(v >= 0);
            }
            int i = n - 1;
            while (i >= 0 && pick[i] + 1 == (int)per[i].size()) pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
        }
        long long homs = 1;
        for (int e = 0; e < pp.domain->size(); ++e) homs *= T->size();
        CHECK(compatible == homs);
    }
}

TEST_CASE("finset coinvariants and rel tensor") {
    auto two = fobj({"a", "b"});
    auto [orb, proj] = FinSet::coinvariants({two, {{1, 0}}});
    CHECK(orb->size() == 1);

    auto [triv, tproj] = FinSet::coinvariants({two, {}});
    CHECK(triv->size() == 2);

    /* sigma_2 on 2x2: (m g, x) ~ (m, g x) leaves |M x X| / |G| = 2 classes */
    auto [rt, rproj] = FinSet::rel_tensor({two, {{1, 0}}}, {two, {{1, 0}}});
    CHECK(rt->size() == 2);
}

TEST_CASE("finset tensor interchanges with pushout") {
    auto A = fobj({"s", "t"});
    auto X = fobj({"x1", "x2", "x3"});
    auto Y = fobj({"y1", "y2"});
    auto Z = fobj({"z1", "z2"});
    auto f = FinSet::mor(A, X, {0, 1});
    auto g = FinSet::mor(A, Y, {0, 0});
    auto po = FinSet::pushout(f, g);
    auto po2 = FinSet::pushout(FinSet::tensor_mor(f, FinSet::id(Z)), FinSet::tensor_mor(g, FinSet::id(Z)));
    auto kappa = FinSet::pushout_induced(po2, FinSet::tensor_mor(po.from_x, FinSet::id(Z)),
                                         FinSet::tensor_mor(po.from_y, FinSet::id(Z)));
    CHECK(FinSet::is_bijection(kappa));
    CHECK(po2.obj->size() == po.obj->size() * Z->size());
}

TEST_CASE("finset permutation of factors composes") {
    auto a = fobj({"a1", "a2"});
    auto b = fobj({"b1"});
    auto c = fobj({"c1", "c2", "c3"});
    std::vector<FObjP> xs{a, b, c};
    std::vector<int> tau{1, 2, 0}, sigma{2, 0, 1};
    std::vector<FObjP> ys(3);
    for (int i = 0; i < 3; ++i) ys[tau[i]] = xs[i];
    auto at = FinSet::permute_factors(xs, tau);
    auto as = FinSet::permute_factors(ys, sigma);
    std::vector<int> st(3);
    for (int i = 0; i < 3; ++i) st[i] = sigma[tau[i]];
    auto ast = FinSet::permute_factors(xs, st);
    CHECK(FinSet::compose(as, at) == ast);
}

TEST_CASE("chainq homology oracle examples") {
    auto zero = ChainQ::zero(D);
    auto bz = ChainQ::betti(zero);
    for (auto b : bz.b) CHECK(b == 0);

    auto dk = ChainQ::disk(D, 1); // Q --id--> Q in degrees 1, 0
    auto bd = ChainQ::betti(dk);
    for (auto b : bd.b) CHECK(b == 0);

    auto N = nerve_complex();
    auto bn = ChainQ::betti(N);
    REQUIRE(bn.through == 5);
    CHECK(bn.b[0] == 1);
    for (int k = 1; k <= 5; ++k) CHECK(bn.b[k] == 0);
    auto bnp = ChainQ::betti(N, RankPolicy::Modular);
    CHECK(bnp.b == bn.b);
}

TEST_CASE("chainq coinvariants examples") {
    auto V = deg0_plane();
    auto sw = deg0_auto(V, {{Q(0), Q(1)}, {Q(1), Q(0)}});
    auto ssw = deg0_auto(V, {{Q(0), Q(-1)}, {Q(-1), Q(0)}});
    CHECK(ChainQ::coinvariants({V, {sw}}).obj->dims[0] == 1);
    CHECK(ChainQ::coinvariants({V, {ssw}}).obj->dims[0] == 1);
    CHECK(ChainQ::coinvariants({V, {}}).obj->dims[0] == 2);
    CHECK(ChainQ::averaging_rank(V, {ChainQ::id(V), sw})[0] == 1);
    CHECK(ChainQ::averaging_rank(V, {ChainQ::id(V), ssw})[0] == 1);
}

TEST_CASE("chainq averaging agrees with quotient coinvariants on random actions") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 6; ++trial) {
        auto W = random_base(rng);
        auto c2 = ChainQ::coproduct({W, W});
        /* order-2 swap of the two copies */
        auto swap0 = ChainQ::add(ChainQ::compose(c2.in[1], c2.pr[0]),
                                 ChainQ::compose(c2.in[0], c2.pr[1]));
        REQUIRE(ChainQ::is_chain_map(swap0));

        /* fast signed-permutation path on the nose */
        auto qf = ChainQ::coinvariants({c2.obj, {swap0}});
        auto af = ChainQ::averaging_rank(c2.obj, {ChainQ::id(c2.obj), swap0});
        for (int k = 0; k <= D; ++k) CHECK(qf.obj->dims[k] == af[k]);

        /* conjugate to force the generic quotient path */
        auto t = transported(c2.obj, rng);
        auto swapc = transport_mor(t, t, swap0);
        REQUIRE(ChainQ::is_chain_map(swapc));
        if (!ChainQ::is_signed_perm(swapc)) {
            auto qg = ChainQ::coinvariants({t.obj, {swapc}});
            auto ag = ChainQ::averaging_rank(t.obj, {ChainQ::id(t.obj), swapc});
            for (int k = 0; k <= D; ++k) {
                CHECK(qg.obj->dims[k] == af[k]);
                CHECK(ag[k] == af[k]);
            }
        }
    }
}

TEST_CASE("chainq tensor interchanges with pushout") {
    auto S1 = ChainQ::sphere(D, 1);
    auto D2 = ChainQ::disk(D, 2);
    std::vector<SpQ> inc(D + 1);
    for (int k = 0; k <= D; ++k) inc[k] = SpQ(D2->dims[k], S1->dims[k]);
    inc[1].add(0, 0, Q(1));
    auto i1 = ChainQ::mor(S1, D2, inc);
    auto po = ChainQ::pushout(i1, i1);

    auto Z = ChainQ::coproduct({ChainQ::sphere(D, 1), ChainQ::unit(D)}).obj;
    auto po2 = ChainQ::pushout(ChainQ::tensor_mor(i1, ChainQ::id(Z)),
                               ChainQ::tensor_mor(i1, ChainQ::id(Z)));
    auto kappa = ChainQ::pushout_induced(po2, ChainQ::tensor_mor(po.from_x, ChainQ::id(Z)),
                                         ChainQ::tensor_mor(po.from_y, ChainQ::id(Z)));
    CHECK(ChainQ::is_chain_map(kappa));
    CHECK(ChainQ::is_iso(kappa));
}

TEST_CASE("chainq symmetry and permutation signs") {
    auto S1 = ChainQ::sphere(D, 1);
    auto S2 = ChainQ::sphere(D, 2);
    auto sym = ChainQ::symmetry(S1, S1);
    CHECK(sym.comp[2].to_dense().at(0, 0) == Q(-1));
    auto T = ChainQ::tensor(S1, S1);
    CHECK(ChainQ::mor_eq(ChainQ::compose(ChainQ::symmetry(S1, S1), sym), ChainQ::id(T)));

    std::vector<ChObjP> xs{S1, S2, S1};
    std::vector<int> tau{1, 2, 0}, sigma{2, 0, 1};
    std::vector<ChObjP> ys(3);
    for (int i = 0; i < 3; ++i) ys[tau[i]] = xs[i];
    auto at = ChainQ::permute_factors(xs, tau);
    auto as = ChainQ::permute_factors(ys, sigma);
    std::vector<int> st(3);
    for (int i = 0; i < 3; ++i) st[i] = sigma[tau[i]];
    auto ast = ChainQ::permute_factors(xs, st);
    CHECK(ChainQ::mor_eq(ChainQ::compose(as, at), ast));
    CHECK(ChainQ::is_chain_map(at));

    /* swapping the two degree-1 factors across the degree-2 one: total sign -1 */
    std::vector<int> flip{2, 1, 0};
    auto af = ChainQ::permute_factors(xs, flip);
    auto TT = ChainQ::tensor_list(xs);
    CHECK(TT->dims[4] == 1);
    CHECK(af.comp[4].to_dense().at(0, 0) == Q(-1));
}

TEST_CASE("chainq unitors and pushout product unit example") {
    auto N = nerve_complex();
    auto lu = ChainQ::lunit(N);
    auto ru = ChainQ::runit(N);
    CHECK(ChainQ::is_chain_map(lu));
    CHECK(ChainQ::is_chain_map(ru));
    CHECK(ChainQ::is_iso(lu));
    CHECK(ChainQ::is_iso(ru));

    auto U = ChainQ::unit(D);
    auto uz = ChainQ::from_initial(U);
    auto pp = ChainQ::pushout_product({uz, uz});
    CHECK(pp.domain->total_dim() == 0);
    CHECK(pp.codomain->total_dim() == 1);
    CHECK(ChainQ::pushout_product({uz}).assembled.src->total_dim() == 0);
}

TEST_CASE("chainq homology is functorial") {
    std::mt19937 rng(99);
    auto W = random_base(rng);
    auto c2 = ChainQ::coproduct({W, W});
    auto tw = transported(W, rng);
    auto t2 = transported(c2.obj, rng);

    auto in1 = transport_mor(tw, t2, c2.in[0]);
    auto pr1 = transport_mor(t2, tw, c2.pr[0]);
    auto swp = transport_mor(t2, t2, ChainQ::add(ChainQ::compose(c2.in[1], c2.pr[0]),
                                                 ChainQ::compose(c2.in[0], c2.pr[1])));
    auto hw = homology_basis(tw.obj);
    auto h2 = homology_basis(t2.obj);

    auto check_functorial = [&](const ChMor& f, const ChMor& g, const HomologyBasis& hs,
                                const HomologyBasis& hm, const HomologyBasis& ht) {
        auto gf = ChainQ::compose(g, f);
        for (int k = 0; k <= std::min(hs.through, ht.through); ++k) {
            QMat lhs = homology_map(hs, ht, gf, k);
            QMat rhs = homology_map(hm, ht, g, k) * homology_map(hs, hm, f, k);
            CHECK(lhs == rhs);
        }
    };
    check_functorial(in1, swp, hw, h2, h2);
    check_functorial(in1, pr1, hw, h2, hw);
    check_functorial(swp, pr1, h2, h2, hw);
}

TEST_CASE("chainq cone detects weak equivalences") {
    auto Dk = ChainQ::disk(D, 3);
    auto w = ChainQ::is_weak_equivalence(ChainQ::from_initial(Dk));
    CHECK(w.kind == VerdictKind::Pass);

    auto Sp = ChainQ::sphere(D, 2);
    auto w2 = ChainQ::is_weak_equivalence(ChainQ::from_initial(Sp), RankPolicy::Modular);
    CHECK(w2.kind == VerdictKind::Fail);

    /* id is always a weak equivalence; modular path certifies it */
    auto N = nerve_complex();
    auto w3 = ChainQ::is_weak_equivalence(ChainQ::id(N), RankPolicy::Modular);
    CHECK(w3.kind == VerdictKind::Pass);
    CHECK(w3.valid_through == 5);
}
