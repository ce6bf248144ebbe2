#include "operadics/wellorder.hpp"

#include <algorithm>

namespace operadics {

SElement s_bottom(int lambda) {
    SElement f;
    f.bottom = true;
    f.dv.assign(lambda, 0);
    return f;
}

SElement s_zero(int lambda) {
    SElement f;
    f.dv.assign(lambda, 0);
    return f;
}

SElement s_from_doubled(std::vector<int> dv) {
    SElement f;
    f.dv = std::move(dv);
    assert(s_valid(f));
    return f;
}

bool s_valid(const SElement& f) {
    if (f.bottom) {
        for (int v : f.dv)
            if (v != 0) return false;
        return true;
    }
    int odd_at = -1;
    for (int i = 0; i < f.lambda(); ++i) {
        if (f.dv[i] < 0) return false;
        if (f.dv[i] & 1) {
            if (odd_at >= 0) return false; // a second half-integral value
            odd_at = i;
        }
    }
    if (odd_at >= 0)
        for (int i = 0; i < odd_at; ++i)
            if (f.dv[i] != 0) return false; // zeros must sit strictly below it
    return true;
}

bool s_is_integral(const SElement& f) {
    if (f.bottom) return false;
    for (int v : f.dv)
        if (v & 1) return false;
    return true;
}

int s_compare(const SElement& f, const SElement& g) {
    assert(f.lambda() == g.lambda() && "comparing elements over different ordinals");
    if (f.bottom || g.bottom) {
        if (f.bottom && g.bottom) return 0;
        return f.bottom ? -1 : 1;
    }
    for (int i = f.lambda() - 1; i >= 0; --i)
        if (f.dv[i] != g.dv[i]) return f.dv[i] < g.dv[i] ? -1 : 1;
    return 0;
}

namespace {

void enumerate_rec(int lambda, int pos, int left2, bool odd_used, std::vector<int>& cur,
                   std::vector<SElement>& out) {
    if (pos == lambda) {
        SElement f;
        f.dv = cur;
        out.push_back(std::move(f));
        return;
    }
    for (int v = 0; v <= left2; ++v) {
        if (v & 1) {
            /* a half value needs zeros strictly below and no earlier half */
            if (odd_used) continue;
            bool zeros = true;
            for (int i = 0; i < pos; ++i)
                if (cur[i] != 0) zeros = false;
            if (!zeros) continue;
        }
        cur[pos] = v;
        enumerate_rec(lambda, pos + 1, left2 - v, odd_used || (v & 1), cur, out);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<SElement> s_enumerate(int lambda, int cap2) {
    std::vector<SElement> out;
    out.push_back(s_bottom(lambda));
    std::vector<SElement> rest;
    std::vector<int> cur(lambda, 0);
    if (cap2 >= 0) enumerate_rec(lambda, 0, cap2, false, cur, rest);
    std::sort(rest.begin(), rest.end(),
              [](const SElement& a, const SElement& b) { return s_compare(a, b) < 0; });
    for (auto& f : rest) out.push_back(std::move(f));
    return out;
}

SSuccessorData s_successor_data(const SElement& f) {
    assert(s_valid(f));
    SSuccessorData out;
    for (int v : f.dv) out.weight2 += v;
    if (f.bottom) return out; // bottom is a limit of nothing below it
    if (!s_is_integral(f)) return out; // a half value makes it a limit
    out.is_successor = true;
    for (int v : f.dv) out.sigma.push_back(v / 2);
    bool zero = true;
    for (int v : f.dv)
        if (v != 0) zero = false;
    if (zero) {
        out.predecessor = s_bottom(f.lambda());
        return out;
    }
    int i0 = 0;
    while (f.dv[i0] == 0) ++i0;
    SElement p = f;
    p.dv[i0] -= 1;
    assert(s_valid(p));
    out.predecessor = p;
    return out;
}

SElement s_successor(const SElement& f) {
    assert(s_valid(f));
    if (f.bottom) return s_zero(f.lambda());
    SElement s = f;
    int odd = -1;
    for (int i = 0; i < f.lambda(); ++i)
        if (f.dv[i] & 1) odd = i;
    if (odd >= 0) {
        s.dv[odd] += 1; // integralize the half value
        return s;
    }
    assert(f.lambda() > 0 && "the empty map over lambda=0 has no successor here");
    /* integral: a half step at position 0 is always valid and immediate */
    s.dv[0] += 1;
    assert(s_valid(s));
    return s;
}

std::pair<SElement, SElement> s_product_iso(int lambda, int mu, const SElement& f) {
    assert(f.lambda() == lambda + mu && s_valid(f));
    if (f.bottom) return {s_bottom(mu), s_bottom(lambda)};
    SElement inner;
    inner.dv.assign(f.dv.begin(), f.dv.begin() + lambda);
    SElement outer_raw;
    outer_raw.dv.assign(f.dv.begin() + lambda, f.dv.end());
    bool outer_zero = true, outer_half = false;
    for (int v : outer_raw.dv) {
        if (v != 0) outer_zero = false;
        if (v & 1) outer_half = true;
    }
    if (outer_zero) return {s_bottom(mu), inner};
    if (outer_half) {
        /* the validity constraint zeroes the whole inner part */
        return {outer_raw, s_bottom(lambda)};
    }
    /* integral nonzero outer: step it down by a half at its lowest support */
    int i0 = 0;
    while (outer_raw.dv[i0] == 0) ++i0;
    SElement outer = outer_raw;
    outer.dv[i0] -= 1;
    return {outer, inner};
}

std::optional<SElement> s_product_iso_inverse(int lambda, int mu, const SElement& outer,
                                              const SElement& inner) {
    assert(outer.lambda() == mu && inner.lambda() == lambda);
    assert(s_valid(outer) && s_valid(inner));
    SElement f;
    f.dv.assign(lambda + mu, 0);
    if (outer.bottom) {
        if (inner.bottom) return s_bottom(lambda + mu);
        for (int i = 0; i < lambda; ++i) f.dv[i] = inner.dv[i];
        return s_valid(f) ? std::optional<SElement>(f) : std::nullopt;
    }
    bool outer_half = false;
    for (int v : outer.dv)
        if (v & 1) outer_half = true;
    if (!outer_half) return std::nullopt; // integral outers are never hit
    if (inner.bottom) {
        for (int j = 0; j < mu; ++j) f.dv[lambda + j] = outer.dv[j];
        return s_valid(f) ? std::optional<SElement>(f) : std::nullopt;
    }
    /* integralize the half value back up */
    SElement o = outer;
    for (int j = 0; j < mu; ++j)
        if (o.dv[j] & 1) {
            o.dv[j] += 1;
            break;
        }
    for (int i = 0; i < lambda; ++i) f.dv[i] = inner.dv[i];
    for (int j = 0; j < mu; ++j) f.dv[lambda + j] = o.dv[j];
    return s_valid(f) ? std::optional<SElement>(f) : std::nullopt;
}

} // namespace operadics
