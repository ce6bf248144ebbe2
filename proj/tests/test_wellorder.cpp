#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "operadics/finset.hpp"
#include "operadics/wellorder.hpp"

using namespace operadics;

namespace {

SElement sel(std::vector<int> dv) { return s_from_doubled(std::move(dv)); }

int pair_cmp(const std::pair<SElement, SElement>& a, const std::pair<SElement, SElement>& b) {
    int c = s_compare(a.first, b.first);
    if (c != 0) return c;
    return s_compare(a.second, b.second);
}

} // namespace

TEST_CASE("s_compare basics") {
    CHECK(s_compare(sel({2, 0}), sel({0, 1})) < 0); // (1,0) < (0,1/2) at position 1
    CHECK(s_compare(s_bottom(2), sel({0, 0})) < 0);
    CHECK(s_compare(sel({4, 2}), sel({4, 2})) == 0);
    CHECK(s_compare(sel({0, 1}), sel({2, 0})) > 0);
}

TEST_CASE("s_enumerate oracle prefixes") {
    auto e21 = s_enumerate(2, 2);
    std::vector<SElement> want21{s_bottom(2), sel({0, 0}), sel({1, 0}),
                                 sel({2, 0}), sel({0, 1}), sel({0, 2})};
    CHECK(e21 == want21);

    auto e05 = s_enumerate(0, 10);
    REQUIRE(e05.size() == 2);
    CHECK(e05[0] == s_bottom(0));
    CHECK(e05[1] == s_zero(0));

    auto e12 = s_enumerate(1, 4);
    std::vector<SElement> want12{s_bottom(1), sel({0}), sel({1}), sel({2}), sel({3}), sel({4})};
    CHECK(e12 == want12);
}

TEST_CASE("enumerations are strictly increasing and valid") {
    for (int lambda = 0; lambda <= 3; ++lambda)
        for (int cap2 = 0; cap2 <= 8; ++cap2) {
            auto e = s_enumerate(lambda, cap2);
            for (auto& f : e) CHECK(s_valid(f));
            for (size_t i = 1; i < e.size(); ++i) CHECK(s_compare(e[i - 1], e[i]) < 0);
        }
}

TEST_CASE("s_successor_data examples") {
    auto d = s_successor_data(sel({2, 2}));
    CHECK(d.is_successor);
    REQUIRE(d.predecessor.has_value());
    CHECK(*d.predecessor == sel({1, 2}));
    CHECK(d.weight2 == 4);
    CHECK(d.sigma == std::vector<int>{1, 1});

    auto l = s_successor_data(sel({0, 1}));
    CHECK_FALSE(l.is_successor);
    CHECK_FALSE(l.predecessor.has_value());
    CHECK(l.weight2 == 1);

    auto z = s_successor_data(sel({0, 0}));
    CHECK(z.is_successor);
    REQUIRE(z.predecessor.has_value());
    CHECK(z.predecessor->bottom);

    CHECK_FALSE(s_successor_data(s_bottom(2)).is_successor);
}

TEST_CASE("predecessors agree with the sorted enumeration") {
    for (int lambda = 1; lambda <= 3; ++lambda) {
        int cap2 = 6;
        auto e = s_enumerate(lambda, cap2);
        for (size_t i = 0; i < e.size(); ++i) {
            auto d = s_successor_data(e[i]);
            if (d.is_successor) {
                REQUIRE(i > 0);
                CHECK(*d.predecessor == e[i - 1]);
            }
        }
    }
}

TEST_CASE("s_successor is immediate") {
    for (int lambda = 1; lambda <= 2; ++lambda) {
        auto e = s_enumerate(lambda, 6);
        for (auto& f : e) {
            auto s = s_successor(f);
            CHECK(s_valid(s));
            CHECK(s_compare(f, s) < 0);
            for (auto& h : e)
                if (s_compare(f, h) < 0) CHECK(s_compare(h, s) >= 0);
        }
    }
}

TEST_CASE("s_product_iso bottom and Remark cases") {
    auto [g0, h0] = s_product_iso(1, 1, s_bottom(2));
    CHECK(g0.bottom);
    CHECK(h0.bottom);

    /* f' = (1) over lambda, g' = (1) over mu; (f' join g') - 1 = (1/2, 1) */
    SElement fg = sel({2, 2});
    auto pd = s_successor_data(fg);
    REQUIRE(pd.predecessor.has_value());
    CHECK(*pd.predecessor == sel({1, 2}));
    auto [g, h] = s_product_iso(1, 1, *pd.predecessor);
    CHECK(g == sel({1})); // g' - 1
    CHECK(h == sel({1})); // f' - 1
}

TEST_CASE("s_product_iso is monotone on capped prefixes and inverts") {
    for (int lambda = 0; lambda <= 3; ++lambda)
        for (int mu = 0; mu <= 3; ++mu) {
            if (lambda + mu == 0) continue;
            for (int cap2 = 0; cap2 <= 8; cap2 += 2) {
                auto e = s_enumerate(lambda + mu, cap2);
                std::vector<std::pair<SElement, SElement>> imgs;
                for (auto& f : e) {
                    auto gh = s_product_iso(lambda, mu, f);
                    CHECK(s_valid(gh.first));
                    CHECK(s_valid(gh.second));
                    auto back = s_product_iso_inverse(lambda, mu, gh.first, gh.second);
                    REQUIRE(back.has_value());
                    CHECK(*back == f);
                    imgs.push_back(gh);
                }
                for (size_t i = 1; i < imgs.size(); ++i)
                    CHECK(pair_cmp(imgs[i - 1], imgs[i]) < 0);
            }
        }
}

TEST_CASE("s_product_iso satisfies the join-minus-one rule everywhere") {
    int lambda = 2, mu = 2;
    auto el = s_enumerate(lambda, 4);
    auto em = s_enumerate(mu, 4);
    for (auto& fp : el) {
        if (fp.bottom || !s_is_integral(fp)) continue;
        for (auto& gp : em) {
            if (gp.bottom || !s_is_integral(gp)) continue;
            SElement join;
            join.dv = fp.dv;
            join.dv.insert(join.dv.end(), gp.dv.begin(), gp.dv.end());
            auto d = s_successor_data(join);
            REQUIRE(d.is_successor);
            if (!d.predecessor) continue;
            auto [g, h] = s_product_iso(lambda, mu, *d.predecessor);
            auto dg = s_successor_data(gp);
            auto df = s_successor_data(fp);
            CHECK(g == *dg.predecessor);
            CHECK(h == *df.predecessor);
        }
    }
}

TEST_CASE("product_sequence on finite set chains") {
    auto E = FinSet::initial();
    auto A1 = fobj({"a"});
    auto B1 = fobj({"b"});

    /* one-step, one-step: a single transition equal to f0 □ g0 */
    auto f0 = FinSet::from_initial(A1);
    auto g0 = FinSet::from_initial(B1);
    auto seq = product_sequence<FinSet>({f0}, {g0});
    REQUIRE(seq.steps.size() == 1);
    CHECK(seq.steps[0].i == 0);
    CHECK(seq.steps[0].j == 0);
    CHECK(seq.full.domain->size() == 0);
    CHECK(seq.full.codomain->size() == 1);
    CHECK(seq.full.codomain->elems[0] == "(a,b)");

    /* transition order for a 2-step by 3-step product */
    auto A2 = fobj({"a", "x"});
    auto B2 = fobj({"b", "y"});
    auto B3 = fobj({"b", "y", "z"});
    auto f1 = FinSet::mor_by_name(A1, A2, [](const std::string& s) { return s; });
    auto g1 = FinSet::mor_by_name(B1, B2, [](const std::string& s) { return s; });
    auto g2 = FinSet::mor_by_name(B2, B3, [](const std::string& s) { return s; });
    auto seq2 = product_sequence<FinSet>({f0, f1}, {g0, g1, g2});
    REQUIRE(seq2.steps.size() == 6);
    std::vector<std::pair<int, int>> order;
    for (auto& st : seq2.steps) order.push_back({st.i, st.j});
    std::vector<std::pair<int, int>> want{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}};
    CHECK(order == want);

    CHECK(seq.trivial == false);
    CHECK(product_sequence<FinSet>({}, {g0}).trivial);
}

TEST_CASE("product_sequence composes to the direct pushout product") {
    /* a few chains with 2-element steps, including a collapse */
    auto E = FinSet::initial();
    auto P = fobj({"p"});
    auto PQ = fobj({"p", "q"});
    auto R = fobj({"r"});
    auto U = fobj({"u"});
    auto UV = fobj({"u", "v"});

    std::vector<std::vector<FMor>> fchains = {
        {FinSet::from_initial(P)},
        {FinSet::from_initial(P), FinSet::mor_by_name(P, PQ, [](const std::string& s) { return s; })},
        {FinSet::mor_by_name(P, PQ, [](const std::string& s) { return s; }),
         FinSet::mor(PQ, R, {0, 0})},
        {FinSet::from_initial(P), FinSet::mor_by_name(P, PQ, [](const std::string& s) { return s; }),
         FinSet::mor(PQ, R, {0, 0})},
    };
    std::vector<std::vector<FMor>> gchains = {
        {FinSet::from_initial(U)},
        {FinSet::from_initial(U), FinSet::mor_by_name(U, UV, [](const std::string& s) { return s; })},
        {FinSet::mor_by_name(U, UV, [](const std::string& s) { return s; })},
    };

    for (auto& fc : fchains)
        for (auto& gc : gchains) {
            auto seq = product_sequence<FinSet>(fc, gc);
            REQUIRE(seq.steps.size() == fc.size() * gc.size());
            /* the stepwise composite matches the direct construction: the
               corner map is an iso carrying the assembled map to the total */
            CHECK(FinSet::is_bijection(seq.corner));
            CHECK(FinSet::compose(seq.corner, seq.full.assembled) == seq.total);
        }
}
