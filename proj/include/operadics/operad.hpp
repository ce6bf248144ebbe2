#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "operadics/caps.hpp"
#include "operadics/catops.hpp"
#include "operadics/perm.hpp"
#include "operadics/trees.hpp"

namespace operadics {

/* Symmetric-sequence variants: plain or pointed, with or without symmetric
   group actions. Pointed sequences carry a distinguished map e: 1l -> X(1). */
enum class SeqVariant { plain, pointed, sym, sym_pointed };

template <class Cat>
struct SymSeq {
    using Obj = typename Cat::Obj;
    using Mor = typename Cat::Mor;

    SeqVariant variant = SeqVariant::plain;
    Caps caps;
    std::vector<Obj> comp;              // comp[n] for n = 0..max_arity
    std::vector<std::vector<Mor>> act;  // act[n][perm_rank]; empty when no actions carried
    std::optional<Mor> e;               // pointed variants only

    int max_arity() const { return (int)comp.size() - 1; }
    bool pointed() const {
        return variant == SeqVariant::pointed || variant == SeqVariant::sym_pointed;
    }
    bool symmetric() const {
        return variant == SeqVariant::sym || variant == SeqVariant::sym_pointed;
    }
    /* right action morphism of s on comp[n]; identity for plain variants */
    Mor action(int n, const Perm& s) const;
};

/* Operad data over the capped arities. gam is keyed by the list of input
   arities (n_1..n_m); the stored morphism has source
   tlist([O(m), O(n_1), .., O(n_m)]) and target O(n_1+..+n_m). The key {} is
   the identity of O(0). Instances may be missing keys the caps cannot
   support; checks skip those and say so. */
template <class Cat>
struct Operad {
    using Obj = typename Cat::Obj;
    using Mor = typename Cat::Mor;

    SymSeq<Cat> seq; // variant sym; actions always filled
    Mor eta;         // 1l -> O(1)
    std::map<std::vector<int>, Mor> gam;

    const Obj& o(int n) const { return seq.comp[n]; }
    int max_arity() const { return seq.max_arity(); }
    bool has_gamma(const std::vector<int>& key) const { return gam.count(key) > 0; }
    const Mor& gamma(const std::vector<int>& key) const { return gam.at(key); }
};

/* every composition shape within the arity cap: lists (n_1..n_m) with
   m <= arity_cap, n_i <= arity_cap, sum <= arity_cap */
std::vector<std::vector<int>> all_gamma_keys(int arity_cap);

struct AxiomOptions {
    long long size_budget = 300000; // skip diagrams with larger domains, with a note
    bool require_all_keys = false;  // missing in-cap keys fail instead of skipping
};

template <class Cat>
Verdict check_axioms(const Operad<Cat>& O, const AxiomOptions& opt = {});

/* evaluate a decorated labeled tree: tlist([O(val v)] in preorder) -> O(n).
   Tails compose in the operad unit and the label twist acts at the root; the
   empty tree gives eta. */
template <class Cat>
typename Cat::Mor tree_eval(const Operad<Cat>& O, const Tree& t);

/* instances */
template <class Cat>
Operad<Cat> n_operad(const Caps& caps); // every component 1l
template <class Cat>
Operad<Cat> p_operad(const Caps& caps); // 1l in arities 0 and 1, initial above
/* trees with all valencies 2 under grafting; the one tree family that is
   closed under composition inside finite caps */
Operad<FinSet> tree_operad(const Caps& caps);
Operad<FinSet> endomorphism_operad(const FObjP& a, const Caps& caps);
/* the same maps viewed in degree 0 */
Operad<ChainQ> endomorphism_operad_deg0(const FObjP& a, const Caps& caps);

/* exhaustive enumeration of operad maps A -> B, componentwise */
std::vector<std::vector<FMor>> operad_morphisms(const Operad<FinSet>& A,
                                                const Operad<FinSet>& B);

/* ---------------- free operads ---------------- */

/* One attaching step of the pointed construction: every kept tree with the
   same count of unit-decorated unary vertices enters in a single pushout. The
   cell bodies are regrouped so the unary factors sit at the end; bmap glues
   the pushout-product comparisons of the basepoint, attach evaluates the
   boundary in the previous stage object. */
template <class Cat>
struct FreeStage {
    std::vector<int> cells;
    typename Cat::Coprod bodies;
    typename Cat::Coprod bnds;
    typename Cat::Mor bmap;   // bnds.obj -> bodies.obj
    typename Cat::Mor attach; // bnds.obj -> previous stage object
    typename Cat::Pushout po; // pushout of (attach, bmap); from_x is the transition
};

/* Decorated-tree decomposition of one arity of a free operad. Kept trees
   are the enumerated shapes whose decoration has no initial factor; realize
   lands each decoration summand in the built component. The stage record is
   enough to replay the construction: any family of maps tlist(dec[t]) -> Z
   that respects the gluing induces a unique map obj -> Z. */
template <class Cat>
struct FreeArity {
    std::vector<Tree> trees;
    std::map<std::string, int> tindex; // tree_encode -> index
    std::vector<char> valid;           // all valencies within the arity cap
    std::vector<char> kept;            // valid and no initial decoration factor
    std::vector<int> ucnt;             // unary vertex count per tree
    std::vector<std::vector<typename Cat::Obj>> dec;
    std::vector<Perm> regroup;              // factor slots: preorder -> others first, unary last
    std::vector<typename Cat::Mor> realize; // tlist(dec[t]) -> obj
    std::vector<int> rep;                   // class representative (self for plain variants)
    typename Cat::Obj obj;

    /* construction record */
    std::vector<int> base; // trees glued by plain coproduct (all kept trees
                           // when unpointed, the unary-free ones when pointed)
    typename Cat::Coprod basecop;
    std::vector<FreeStage<Cat>> stages;
    bool quotiented = false; // symmetric variants identify isomorphic shapes once at the end
    typename Ops<Cat>::Quot quot;

    /* section data: the assembled summand map and a chosen right inverse */
    typename Cat::Coprod cop; // coproduct of tlist(dec[t]) over all kept t
    typename Cat::Mor assembled;
    typename Cat::Mor sec;
};

template <class Cat>
struct FreeOperadResult {
    Operad<Cat> op;
    SymSeq<Cat> x;
    std::vector<FreeArity<Cat>> ar;
    std::vector<typename Cat::Mor> unit_x; // monad unit components X(n) -> FX(n)
    bool exact = true;
    Flags flags;
};

template <class Cat>
FreeOperadResult<Cat> free_operad(const SymSeq<Cat>& x, const Caps& caps);

/* underlying sequence of the built operad in the variant of the input, with
   the operad unit as basepoint when pointed */
template <class Cat>
SymSeq<Cat> underlying_seq(const FreeOperadResult<Cat>& fx);

/* functorial action on a componentwise map f: X -> Y of input sequences */
template <class Cat>
std::vector<typename Cat::Mor> free_map(const FreeOperadResult<Cat>& fx,
                                        const FreeOperadResult<Cat>& fy,
                                        const std::vector<typename Cat::Mor>& f);

/* tree-substitution counit: components F((FX)#)(n) -> FX(n); outer must be
   built on underlying_seq(inner) */
template <class Cat>
std::vector<typename Cat::Mor> monad_multiply(const FreeOperadResult<Cat>& outer,
                                              const FreeOperadResult<Cat>& inner);

/* ---------------- pushouts along free maps ---------------- */

struct OperadPushoutStage {
    int n = 0, i = 0, j = 0; // arity, new-vertex count, old-unary count
    long long cells = 0;     // cell trees attached at this stage
};

/* Pushout of operads along F(f): F(A) -> F(B) against phi: F(A) -> O, given
   by the componentwise f and phi on the sequence level. Built stagewise over
   colored trees; from_o and phi_b are the two structure maps into the result. */
template <class Cat>
struct OperadPushoutResult {
    Operad<Cat> op;
    std::vector<typename Cat::Mor> from_o;
    std::vector<typename Cat::Mor> phi_b;
    std::vector<OperadPushoutStage> stages;
    bool exact = true;
    Flags flags;
};

template <class Cat>
OperadPushoutResult<Cat> operad_pushout(const Operad<Cat>& O,
                                        const std::vector<typename Cat::Mor>& f,
                                        const std::vector<typename Cat::Mor>& phi,
                                        const Caps& caps);

} // namespace operadics
