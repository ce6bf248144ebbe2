#pragma once

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

namespace operadics {

/* An element of the weight well-order: a finitely supported map from
   positions 0..lambda-1 to half-integers, at most one half-integral value
   with zeros strictly below it, plus a bottom element below everything.
   Values are stored doubled so everything stays integral. */
struct SElement {
    bool bottom = false;
    std::vector<int> dv; // doubled values; size = lambda
    int lambda() const { return (int)dv.size(); }
    bool operator==(const SElement& o) const {
        return bottom == o.bottom && dv == o.dv;
    }
};

SElement s_bottom(int lambda);
SElement s_zero(int lambda);
/* from doubled values; asserts validity */
SElement s_from_doubled(std::vector<int> dv);
bool s_valid(const SElement& f);
bool s_is_integral(const SElement& f); // all values integral (false for bottom)

/* total order: bottom least, otherwise decided at the highest differing
   position */
int s_compare(const SElement& f, const SElement& g);

/* every element of weight <= cap2/2, sorted ascending, bottom first */
std::vector<SElement> s_enumerate(int lambda, int cap2);

struct SSuccessorData {
    bool is_successor = false;
    std::optional<SElement> predecessor; // absent for bottom and limits
    int weight2 = 0;                     // doubled total weight
    std::vector<int> sigma;              // the integral values, successors only
};
SSuccessorData s_successor_data(const SElement& f);

/* the next element in the order (add a half step at the lowest position
   allowed to carry one, or integralize the half value) */
SElement s_successor(const SElement& f);

/* order iso onto its image in (outer over mu) x (inner over lambda),
   lexicographic with outer dominant; the outer component of a non-bottom
   image is bottom or half-integral */
std::pair<SElement, SElement> s_product_iso(int lambda, int mu, const SElement& f);
/* left inverse; empty when the pair is outside the image */
std::optional<SElement> s_product_iso_inverse(int lambda, int mu, const SElement& outer,
                                              const SElement& inner);

/* A composite of pushout products, step by step: the product-order sequence
   whose (i,j) transition pushes out along f_i □ g_j, with i (the f side)
   more significant. Templated over the coefficient category. */
template <class Cat>
struct ProductSequence {
    struct Step {
        int i, j;
        typename Cat::PushoutProduct pp; // the f_i □ g_j data
        typename Cat::Mor attach;        // pp.domain -> before
        typename Cat::Obj before, after;
        typename Cat::Mor transition;    // before -> after
    };
    bool trivial = false; // an input sequence was empty
    typename Cat::Obj start;
    std::vector<Step> steps;
    typename Cat::Mor total;  // start -> final, the composite
    typename Cat::Mor corner; // tensor of the composite codomains -> final
    typename Cat::PushoutProduct full; // (composite f) □ (composite g)
};

template <class Cat>
ProductSequence<Cat> product_sequence(const std::vector<typename Cat::Mor>& fs,
                                      const std::vector<typename Cat::Mor>& gs) {
    using Mor = typename Cat::Mor;
    ProductSequence<Cat> out;
    if (fs.empty() || gs.empty()) {
        out.trivial = true;
        return out;
    }
    int mu = (int)fs.size(), la = (int)gs.size();

    /* composites f: A_0 -> A_mu and g: C_0 -> C_la */
    Mor f = fs[0];
    for (int i = 1; i < mu; ++i) f = Cat::compose(fs[i], f);
    Mor g = gs[0];
    for (int j = 1; j < la; ++j) g = Cat::compose(gs[j], g);
    out.full = Cat::pushout_product({f, g});
    out.start = out.full.domain;

    /* canonical maps A_i ⊗ C_j -> current object, extended as we go; only
       the frontier entries below are ever read */
    std::vector<std::vector<std::optional<Mor>>> kappa(
        mu + 1, std::vector<std::optional<Mor>>(la + 1));
    auto tail_f = [&](int i) -> Mor { // A_i -> A_mu
        if (i >= mu) return Cat::id(fs[mu - 1].dst);
        Mor m = fs[i];
        for (int k = i + 1; k < mu; ++k) m = Cat::compose(fs[k], m);
        return m;
    };
    auto tail_g = [&](int j) -> Mor { // C_j -> C_la
        if (j >= la) return Cat::id(gs[la - 1].dst);
        Mor m = gs[j];
        for (int k = j + 1; k < la; ++k) m = Cat::compose(gs[k], m);
        return m;
    };
    /* the full pushout product has summands S_0 = A_0 ⊗ C_la and
       S_1 = A_mu ⊗ C_0 */
    for (int i = 0; i <= mu; ++i)
        kappa[i][0] = Cat::compose(out.full.into_domain[1],
                                   Cat::tensor_mor(tail_f(i), Cat::id(gs[0].src)));
    for (int j = 0; j <= la; ++j)
        kappa[0][j] = Cat::compose(out.full.into_domain[0],
                                   Cat::tensor_mor(Cat::id(fs[0].src), tail_g(j)));

    typename Cat::Obj cur = out.start;
    Mor total = Cat::id(cur);
    for (int i = 0; i < mu; ++i)
        for (int j = 0; j < la; ++j) {
            typename ProductSequence<Cat>::Step st;
            st.i = i;
            st.j = j;
            st.before = cur;
            st.pp = Cat::pushout_product({fs[i], gs[j]});
            /* summand order matches: S_0 = A_i ⊗ C_{j+1}, S_1 = A_{i+1} ⊗ C_j */
            assert(kappa[i][j + 1] && kappa[i + 1][j]);
            st.attach = Cat::pp_induced(st.pp, {*kappa[i][j + 1], *kappa[i + 1][j]});
            auto po = Cat::pushout(st.pp.assembled, st.attach);
            st.after = po.obj;
            st.transition = po.from_y;
            /* push every known canonical map forward, then record the new one */
            for (int a = 0; a <= mu; ++a)
                for (int b = 0; b <= la; ++b)
                    if (kappa[a][b]) kappa[a][b] = Cat::compose(po.from_y, *kappa[a][b]);
            kappa[i + 1][j + 1] = po.from_x;
            cur = po.obj;
            total = Cat::compose(po.from_y, total);
            out.steps.push_back(std::move(st));
        }
    out.total = total;
    out.corner = *kappa[mu][la];
    return out;
}

} // namespace operadics
