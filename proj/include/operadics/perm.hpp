#pragma once
#include <algorithm>
#include <cassert>
#include <numeric>
#include <vector>

namespace operadics {

// Permutations are 0-based: p[i] is the image of i. p has size n for an
// element of the symmetric group on n letters.
using Perm = std::vector<int>;

inline Perm perm_id(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline bool perm_is_id(const Perm& p) {
    for (int i = 0; i < (int)p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

// (p*q)(i) = p(q(i)), composition right-to-left.
inline Perm perm_mul(const Perm& p, const Perm& q) {
    assert(p.size() == q.size());
    Perm r(p.size());
    for (size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

inline Perm perm_inv(const Perm& p) {
    Perm r(p.size());
    for (int i = 0; i < (int)p.size(); ++i) r[p[i]] = i;
    return r;
}

inline int perm_sign(const Perm& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

// All of Σ_n in lexicographic order (deterministic; n is expected tiny).
inline std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm p = perm_id(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Rank of p within the lexicographic enumeration all_perms(n), via the Lehmer
// code. perm_unrank inverts it.
inline long long perm_rank(const Perm& p) {
    int n = (int)p.size();
    long long r = 0;
    std::vector<long long> fact(n + 1, 1);
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (p[j] < p[i]) ++smaller;
        r += smaller * fact[n - 1 - i];
    }
    return r;
}

inline Perm perm_unrank(int n, long long r) {
    std::vector<long long> fact(n + 1, 1);
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
    std::vector<int> avail(n);
    std::iota(avail.begin(), avail.end(), 0);
    Perm p(n);
    for (int i = 0; i < n; ++i) {
        long long f = fact[n - 1 - i];
        int k = (int)(r / f);
        r %= f;
        p[i] = avail[k];
        avail.erase(avail.begin() + k);
    }
    return p;
}

// Block permutation sigma<m_0,...,m_{n-1}>: the i-th block (of size m_i) moves
// to the slot sigma(i), keeping the internal order of each block. This is the
// permutation on sum(m_i) letters used in the composition of the symmetric
// groups operad: gamma(sigma; tau_0..tau_{n-1}) = block(sigma, m) * (tau_0 + ... + tau_{n-1}).
inline Perm block_perm(const Perm& sigma, const std::vector<int>& m) {
    assert(sigma.size() == m.size());
    int n = (int)m.size();
    std::vector<int> src_off(n, 0), dst_off(n, 0);
    for (int i = 1; i < n; ++i) src_off[i] = src_off[i - 1] + m[i - 1];
    // Destination layout: slot j holds the block coming from sigma^{-1}(j).
    Perm sinv = perm_inv(sigma);
    std::vector<int> dst_start(n, 0);
    {
        int acc = 0;
        for (int j = 0; j < n; ++j) {
            dst_start[j] = acc;
            acc += m[sinv[j]];
        }
    }
    int total = src_off.empty() ? 0 : src_off[n - 1] + m[n - 1];
    Perm r(total);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m[i]; ++k) r[src_off[i] + k] = dst_start[sigma[i]] + k;
    return r;
}

// Direct sum tau_0 + ... + tau_{n-1} acting blockwise.
inline Perm perm_direct_sum(const std::vector<Perm>& taus) {
    int total = 0;
    for (auto& t : taus) total += (int)t.size();
    Perm r(total);
    int off = 0;
    for (auto& t : taus) {
        for (int i = 0; i < (int)t.size(); ++i) r[off + i] = off + t[i];
        off += (int)t.size();
    }
    return r;
}

// Operadic composition in the symmetric groups operad.
inline Perm perm_operad_gamma(const Perm& sigma, const std::vector<Perm>& taus) {
    std::vector<int> m(taus.size());
    for (size_t i = 0; i < taus.size(); ++i) m[i] = (int)taus[i].size();
    return perm_mul(block_perm(sigma, m), perm_direct_sum(taus));
}

} // namespace operadics
