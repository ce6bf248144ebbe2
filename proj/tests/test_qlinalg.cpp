#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "operadics/qlinalg.hpp"

using namespace operadics;

TEST_CASE("rref, rank, solve, nullspace") {
    QMat m(3, 3);
    m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
    m.at(1, 0) = 2; m.at(1, 1) = 4; m.at(1, 2) = 6;
    m.at(2, 0) = Q(1, 2); m.at(2, 2) = 1;
    CHECK(rank_q(m) == 2);

    QMat n = nullspace(m);
    CHECK(n.cols == 1);
    CHECK((m * n).is_zero());

    // solvable system
    QMat b(3, 1);
    b.at(0, 0) = 3; b.at(1, 0) = 6; b.at(2, 0) = Q(3, 2);
    auto x = solve_linear(m, b);
    REQUIRE(x.has_value());
    CHECK(m * *x == b);

    // unsolvable system
    QMat b2(3, 1);
    b2.at(0, 0) = 1; b2.at(1, 0) = 0; b2.at(2, 0) = 0;
    CHECK_FALSE(solve_linear(m, b2).has_value());

    RrefResult rr = rref(m);
    CHECK(rr.rank == 2);
    CHECK(rr.pivot_cols == std::vector<int>{0, 1});
}

TEST_CASE("sparse ranks agree with dense on random matrices") {
    std::mt19937 rng(20260823);
    for (int trial = 0; trial < 40; ++trial) {
        int r = 1 + (int)(rng() % 9), c = 1 + (int)(rng() % 9);
        QMat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng() % 3 == 0) m.at(i, j) = Q((long)(rng() % 7) - 3);
        int rd = rank_q(m);
        SpQ s = SpQ::from_dense(m);
        CHECK(s.rank_exact() == rd);
        CHECK(s.rank_modp(1000003) == rd);

        SparseMatQ sq(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (m.at(i, j) != 0) sq.add(i, j, m.at(i, j));
        CHECK(sparse_rank_q(sq) == rd);
    }
}

TEST_CASE("SpQ arithmetic roundtrips") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 1 + (int)(rng() % 6), k = 1 + (int)(rng() % 6), c = 1 + (int)(rng() % 6);
        QMat a(r, k), b(k, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < k; ++j)
                if (rng() % 2) a.at(i, j) = Q((long)(rng() % 5) - 2, 1 + rng() % 3);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < c; ++j)
                if (rng() % 2) b.at(i, j) = Q((long)(rng() % 5) - 2);
        SpQ sa = SpQ::from_dense(a), sb = SpQ::from_dense(b);
        CHECK((sa * sb).to_dense() == a * b);
        CHECK(sa.transpose().transpose() == sa);
        CHECK((sa - sa).is_zero());
        CHECK((sa + sa) == sa.scaled(Q(2)));

        std::vector<Q> v(k);
        for (int i = 0; i < k; ++i) v[i] = Q((long)(rng() % 5) - 2);
        std::vector<Q> w1 = sa.apply(v);
        QMat vm(k, 1);
        for (int i = 0; i < k; ++i) vm.at(i, 0) = v[i];
        QMat w2 = a * vm;
        for (int i = 0; i < r; ++i) CHECK(w1[i] == w2.at(i, 0));
    }
}

TEST_CASE("identity and zero") {
    SpQ i5 = SpQ::identity(5);
    CHECK(i5.rank_exact() == 5);
    CHECK(i5.nnz() == 5);
    SpQ z = SpQ::zero(4, 7);
    CHECK(z.is_zero());
    CHECK(z.rank_exact() == 0);
}
