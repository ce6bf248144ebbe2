#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace operadics {

/* Finite sets with named elements. Objects are immutable once built and get
   shared freely; morphisms carry their endpoints. */
struct FObj {
    std::vector<std::string> elems;
    int size() const { return (int)elems.size(); }
    int find(const std::string& e) const;
    bool operator==(const FObj& o) const { return elems == o.elems; }
};

using FObjP = std::shared_ptr<const FObj>;

FObjP fobj(std::vector<std::string> elems);

struct FMor {
    FObjP src, dst;
    std::vector<int> map; // map[i] = index in dst of the image of src->elems[i]
    int operator()(int i) const { return map[i]; }
    bool operator==(const FMor& o) const;
};

/* The cartesian instance. All ops are static so templated machinery can take
   the category as a type parameter. */
struct FinSet {
    using Obj = FObjP;
    using Mor = FMor;

    static Obj initial();
    static Obj unit();
    static bool obj_eq(const Obj& a, const Obj& b) { return a->elems == b->elems; }

    static Mor mor(const Obj& s, const Obj& t, std::vector<int> map);
    /* build a map by element names; every source name must resolve */
    static Mor mor_by_name(const Obj& s, const Obj& t,
                           const std::function<std::string(const std::string&)>& f);
    static Mor id(const Obj& x);
    static Mor compose(const Mor& g, const Mor& f); // g after f
    static Mor from_initial(const Obj& x);
    static Mor to_unit(const Obj& x);
    static Mor point(const Obj& x, int i); // 1l -> x picking element i

    static bool is_injective(const Mor& f);
    static bool is_bijection(const Mor& f);
    /* weak equivalences in the cartesian instance are the bijections */
    static bool is_weak_equivalence(const Mor& f) { return is_bijection(f); }

    /* tensor = cartesian product, left-major indexing: (i,j) -> i*|b|+j */
    static Obj tensor(const Obj& a, const Obj& b);
    static Mor tensor_mor(const Mor& f, const Mor& g);
    static Obj tensor_list(const std::vector<Obj>& xs); // left-associated
    static Mor tensor_list_mor(const std::vector<Mor>& fs);
    static Mor symmetry(const Obj& a, const Obj& b); // a⊗b -> b⊗a
    /* slot i of the source goes to slot sigma(i) of the target */
    static Mor permute_factors(const std::vector<Obj>& xs, const std::vector<int>& sigma);

    /* tuple index arithmetic shared with the element naming */
    static int tuple_index(const std::vector<int>& sizes, const std::vector<int>& idx);
    static std::vector<int> tuple_unindex(const std::vector<int>& sizes, int k);

    struct Coprod {
        Obj obj;
        std::vector<Mor> in;
    };
    static Coprod coproduct(const std::vector<Obj>& xs);

    struct Pushout {
        Obj obj;
        Mor from_x, from_y;
    };
    /* f: A -> X, g: A -> Y, shared source */
    static Pushout pushout(const Mor& f, const Mor& g);

    /* quotient of x by the symmetric-transitive closure of the given pairs */
    static std::pair<Obj, Mor> quotient(const Obj& x, const std::vector<std::pair<int, int>>& rel);
    static std::pair<Obj, Mor> coequalizer(const Mor& f, const Mor& g);
    /* mediating map out of a quotient: u must be constant on classes */
    static Mor quot_induced(const Mor& proj, const Mor& u);
    /* mediating map out of a pushout: u∘f = v∘g assumed */
    static Mor pushout_induced(const Pushout& po, const Mor& u, const Mor& v);

    /* finite group acting by permutations; gens suffice, closure is implicit */
    struct Action {
        Obj obj;
        std::vector<std::vector<int>> gens;
    };
    static std::pair<Obj, Mor> coinvariants(const Action& a);
    /* m carries a right action, x a left action, generator lists aligned;
       result is m⊗x modulo (m·g, x) ~ (m, g·x) */
    static std::pair<Obj, Mor> rel_tensor(const Action& m, const Action& x);

    /* every map x -> y, mixed radix order; asserts |y|^|x| <= cap */
    static std::vector<Mor> all_mors(const Obj& x, const Obj& y, long long cap = 4000000);

    struct PushoutProduct {
        std::vector<Mor> maps;
        std::vector<Obj> summands;      // S_j = B_0⊗..⊗A_j⊗..⊗B_{n-1}
        std::vector<Mor> into_domain;   // S_j -> domain
        struct Inter {
            int j, jp;
            Obj obj;
            Mor to_j, to_jp;
        };
        std::vector<Inter> inters;      // I_{j,j'} for j < j'
        Obj domain, codomain;
        Mor assembled;                  // domain -> ⊗B_i
    };
    static PushoutProduct pushout_product(const std::vector<Mor>& fs);
    /* mediating map out of the glued domain, given a compatible family on
       the summands */
    static Mor pp_induced(const PushoutProduct& pp, const std::vector<Mor>& phis);
};

} // namespace operadics
