#pragma once

#include <utility>
#include <vector>

#include "operadics/caps.hpp"
#include "operadics/chainq.hpp"
#include "operadics/finset.hpp"

namespace operadics {

/* Cross-category plumbing. Generic machinery (free operads, pushout stages,
   filtrations) works over either coefficient category through Ops<Cat>; the
   two structs below provide the same surface with category-native guts.

   Convention used throughout: composite objects are built as tensor_list of a
   flat factor list. apply_block rewrites a contiguous factor range through a
   morphism while leaving the other factors alone, which is the only tensor
   surgery the higher layers ever need (unit insertion and removal included,
   via empty factor lists). */

struct FinQuot {
    FObjP obj;
    FMor proj; // source object -> obj
    FMor sec;  // obj -> source, least-index representative per class
    FMor induced(const FMor& u) const { return FinSet::quot_induced(proj, u); }
};

struct ChQuot {
    ChainQ::Quot q;
    ChObjP obj;
    ChMor proj;
    ChMor sec; // degreewise right inverse of proj, not a chain map
    ChMor induced(const ChMor& u) const { return ChainQ::quot_induced(q, u); }
};

struct FinOps {
    using Cat = FinSet;
    using Obj = FObjP;
    using Mor = FMor;
    using Quot = FinQuot;

    static Obj unitobj(const Caps&) { return FinSet::unit(); }
    static Obj initialobj(const Caps&) { return FinSet::initial(); }
    static bool is_zero(const Obj& x) { return x->size() == 0; }
    static int vt(const Obj&) { return 1 << 30; }
    static bool eq(const Mor& a, const Mor& b, int = -1) { return a == b; }
    static bool iso(const Mor& f) { return FinSet::is_bijection(f); }
    static Obj tlist(const std::vector<Obj>& xs, const Caps& caps);

    static Mor apply_block(const std::vector<Obj>& pre, const std::vector<Obj>& fsrc,
                           const std::vector<Obj>& fdst, const Mor& f,
                           const std::vector<Obj>& post, const Caps& caps);

    /* quotient by the identifications f(x) ~ g(x) for every pair and every x */
    static Quot quotient_pairs(const Obj& x, const std::vector<std::pair<Mor, Mor>>& rel);

    static Mor coprod_induced(const FinSet::Coprod& c, const std::vector<Mor>& fs);
    static Mor coprod_map(const FinSet::Coprod& s, const FinSet::Coprod& t,
                          const std::vector<Mor>& fs);

    /* mediating map out of tlist(pre + [pp.domain] + post), one phi per
       summand, phis[j] defined on tlist(pre + [pp.summands[j]] + post) */
    static Mor tensor_pp_induced(const std::vector<Obj>& pre, const FinSet::PushoutProduct& pp,
                                 const std::vector<Obj>& post, const std::vector<Mor>& phis,
                                 const Caps& caps);
};

struct ChOps {
    using Cat = ChainQ;
    using Obj = ChObjP;
    using Mor = ChMor;
    using Quot = ChQuot;

    static Obj unitobj(const Caps& caps) { return ChainQ::unit(caps.max_degree); }
    static Obj initialobj(const Caps& caps) { return ChainQ::zero(caps.max_degree); }
    static bool is_zero(const Obj& x) { return x->total_dim() == 0; }
    static int vt(const Obj& x) { return x->valid_through; }
    static bool eq(const Mor& a, const Mor& b, int through = -1);
    static bool iso(const Mor& f) { return ChainQ::is_iso(f); }
    static Obj tlist(const std::vector<Obj>& xs, const Caps& caps);

    static Mor apply_block(const std::vector<Obj>& pre, const std::vector<Obj>& fsrc,
                           const std::vector<Obj>& fdst, const Mor& f,
                           const std::vector<Obj>& post, const Caps& caps);

    static Quot quotient_pairs(const Obj& x, const std::vector<std::pair<Mor, Mor>>& rel);

    static Mor coprod_induced(const ChainQ::Coprod& c, const std::vector<Mor>& fs);
    static Mor coprod_map(const ChainQ::Coprod& s, const ChainQ::Coprod& t,
                          const std::vector<Mor>& fs);

    static Mor tensor_pp_induced(const std::vector<Obj>& pre, const ChainQ::PushoutProduct& pp,
                                 const std::vector<Obj>& post, const std::vector<Mor>& phis,
                                 const Caps& caps);
};

template <class Cat>
struct OpsOf;
template <>
struct OpsOf<FinSet> {
    using type = FinOps;
};
template <>
struct OpsOf<ChainQ> {
    using type = ChOps;
};
template <class Cat>
using Ops = typename OpsOf<Cat>::type;

} // namespace operadics
