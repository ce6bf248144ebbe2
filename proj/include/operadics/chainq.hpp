#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "operadics/caps.hpp"
#include "operadics/qlinalg.hpp"

namespace operadics {

/* sign picked up when permuting graded factors: product of (-1)^{d_i d_j}
   over inversions of sigma (slot i moves to slot sigma(i)) */
int koszul_sign(const std::vector<int>& sigma, const std::vector<int>& degs);

/* Bounded non-negatively graded chain complex over Q. dims has size D+1 and
   d[k] maps degree k to degree k-1 as a dims[k-1] x dims[k] matrix; d[0] has
   zero rows. valid_through marks the top degree where dims and d agree with
   the untruncated object; homology is then reliable through valid_through-1. */
struct ChObj {
    int D = 0;
    std::vector<int> dims;
    std::vector<SpQ> d;
    int valid_through = 0;
    int dim(int k) const { return (k < 0 || k > D) ? 0 : dims[k]; }
    long long total_dim() const;
};

using ChObjP = std::shared_ptr<const ChObj>;

struct ChMor {
    ChObjP src, dst;
    std::vector<SpQ> comp; // comp[k]: dst.dims[k] x src.dims[k]
};

enum class RankPolicy { Exact, Modular };

struct BettiReport {
    std::vector<long> b;  // b[k] for k = 0..through
    int through = -1;
    bool exact = true;    // false when ranks came from the modular bound only
};

struct ChainQ {
    using Obj = ChObjP;
    using Mor = ChMor;

    static Obj make(int D, std::vector<int> dims, std::vector<SpQ> d, int valid_through = -1);
    static Obj zero(int D);
    static Obj initial(int D) { return zero(D); }
    static Obj unit(int D);          // Q in degree 0
    static Obj sphere(int D, int n); // Q in degree n
    static Obj disk(int D, int n);   // Q in degrees n, n-1, identity differential
    static bool obj_eq(const Obj& a, const Obj& b);

    static Mor mor(const Obj& s, const Obj& t, std::vector<SpQ> comp);
    static Mor id(const Obj& x);
    static Mor zero_mor(const Obj& s, const Obj& t);
    static Mor from_initial(const Obj& x) { return zero_mor(zero(x->D), x); }
    static Mor compose(const Mor& g, const Mor& f); // g after f
    static Mor add(const Mor& f, const Mor& g);
    static Mor sub(const Mor& f, const Mor& g);
    static Mor scale(const Mor& f, const Q& c);
    static bool mor_eq(const Mor& f, const Mor& g);
    static bool is_chain_map(const Mor& f);
    static bool is_iso(const Mor& f); // degreewise invertible

    static Obj tensor(const Obj& a, const Obj& b);
    static Mor tensor_mor(const Mor& f, const Mor& g);
    static Obj tensor_list(const std::vector<Obj>& xs); // left-associated
    static Mor tensor_list_mor(const std::vector<Mor>& fs);
    static Mor symmetry(const Obj& a, const Obj& b); // a⊗b -> b⊗a with Koszul signs
    static Mor permute_factors(const std::vector<Obj>& xs, const std::vector<int>& sigma);
    static Mor lunit(const Obj& a); // unit⊗a -> a (identity matrices)
    static Mor runit(const Obj& a); // a⊗unit -> a

    /* offset of the (p, k-p) block in degree k of tensor(a,b); blocks are
       laid out with p ascending, left-major inside */
    static int block_offset(const Obj& a, const Obj& b, int k, int p);

    /* basis bookkeeping for left-associated iterated tensors: entry order in
       degree k is exactly the order tensor_list produces */
    struct MultiIndex {
        std::vector<int> degs, idxs;
    };
    static std::vector<MultiIndex> tensor_positions(const std::vector<Obj>& xs, int k);
    static int tensor_position_index(const std::vector<Obj>& xs, const MultiIndex& mi);

    struct Coprod {
        Obj obj;
        std::vector<Mor> in, pr;
    };
    static Coprod coproduct(const std::vector<Obj>& xs);

    /* quotient by the span of the given relation columns; the span must be
       closed under d (callers pass images of chain maps, which are). section
       is a degreewise right inverse of proj, not a chain map. */
    struct Quot {
        Obj obj;
        Mor proj;
        std::vector<SpQ> section;
    };
    static Quot quotient(const Obj& x, const std::vector<SpQ>& rels);
    /* relations of the shape e_a = sign * e_b, resolvable by union-find; the
       cheap path for big signed-permutation actions */
    struct SignedPair {
        int a, b;
        int sign;
    };
    static Quot quotient_by_signed_pairs(const Obj& x,
                                         const std::vector<std::vector<SignedPair>>& rel);
    static Quot coequalizer(const Mor& f, const Mor& g);

    struct Pushout {
        Obj obj;
        Mor from_x, from_y;
        std::vector<SpQ> section; // obj -> X⊕Y degreewise, X block first
    };
    static Pushout pushout(const Mor& f, const Mor& g); // f: A->X, g: A->Y
    /* mediating map out of a pushout: u∘f = v∘g assumed (and asserted) */
    static Mor pushout_induced(const Pushout& po, const Mor& u, const Mor& v);
    /* mediating map out of a quotient: u must kill the relations */
    static Mor quot_induced(const Quot& q, const Mor& u);

    /* finite group acting by chain automorphisms; gens suffice */
    struct Action {
        Obj obj;
        std::vector<Mor> gens;
    };
    static Quot coinvariants(const Action& a);
    /* m right action, x left action, aligned generator lists */
    static Quot rel_tensor(const Action& m, const Action& x);
    /* rank of the averaging idempotent (1/|G|) sum over the full element
       list; cross-check oracle for coinvariants */
    static std::vector<int> averaging_rank(const Obj& x, const std::vector<Mor>& full_group);

    static Obj cone(const Mor& f); // X[k-1] ⊕ Y[k], d(x,y) = (-dx, dy + f x)

    static BettiReport betti(const Obj& x, RankPolicy pol = RankPolicy::Exact);
    /* quasi-isomorphism test via acyclicity of the cone; modular policy
       certifies passes and escalates suspected failures to exact */
    static Verdict is_weak_equivalence(const Mor& f, RankPolicy pol = RankPolicy::Exact);

    struct PushoutProduct {
        std::vector<Mor> maps;
        std::vector<Obj> summands;
        std::vector<Mor> into_domain;
        struct Inter {
            int j, jp;
            Obj obj;
            Mor to_j, to_jp;
        };
        std::vector<Inter> inters;
        Obj domain, codomain;
        Mor assembled;
        std::vector<SpQ> section; // domain -> ⊕summands degreewise
    };
    static PushoutProduct pushout_product(const std::vector<Mor>& fs);
    /* mediating map out of the glued domain, given a compatible family on
       the summands */
    static Mor pp_induced(const PushoutProduct& pp, const std::vector<Mor>& phis);

    static bool is_signed_perm(const Mor& f);
};

/* homology with representatives, for functoriality checks on small objects */
struct HomologyBasis {
    std::vector<QMat> reps;   // reps[k]: dims[k] x b_k cycle representatives
    std::vector<QMat> bnd;    // bnd[k]: dense d[k+1], spans the boundaries
    std::vector<long> b;
    int through = -1;
};
HomologyBasis homology_basis(const ChObjP& x);
/* induced map on homology in degree k as a b_k(dst) x b_k(src) matrix */
QMat homology_map(const HomologyBasis& hx, const HomologyBasis& hy, const ChMor& f, int k);

} // namespace operadics
