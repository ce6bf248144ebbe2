#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "operadics/perm.hpp"

namespace operadics {

/* Rooted planar trees with optional decorations: vertex colors (old/new),
   tail labels, or tail marks (a/m).  Canonical form everywhere: vertices are
   numbered in depth-first preorder with the root at index 0, and tail slots
   are numbered in the same traversal order.  Every operation returns trees in
   canonical form, so structural equality is plain ==. */

enum class VColor : int8_t { plain = 0, oldv = 1, newv = 2 };
enum class TailMark : int8_t { a = 0, m = 1 };

struct Child {
    bool is_tail;
    int idx; // vertex index, or tail slot
    bool operator==(const Child&) const = default;
};

struct Tree {
    int n_tails = 0;
    std::vector<std::vector<Child>> kids; // per vertex, in arrow order
    std::vector<VColor> color;            // per vertex; empty for uncolored trees
    std::vector<int> labels;              // per tail slot, 0-based label; empty if unlabeled
    std::vector<TailMark> marks;          // per tail slot; empty if unmarked

    bool operator==(const Tree&) const = default;
    int vcount() const { return (int)kids.size(); }
    bool is_empty_tree() const { return kids.empty(); }
    bool colored() const { return !color.empty(); }
    int valency(int v) const { return (int)kids[v].size(); }
};

/* builder nodes for writing trees down by hand */
struct TreeB {
    bool is_tail = false;
    int label = -1; // 0-based, for labeled tails
    int mark = -1;  // 0 = a, 1 = m, for marked tails
    VColor col = VColor::plain;
    std::vector<TreeB> ch;
};

Tree build_tree(const TreeB& root);
Tree empty_tree_labeled(); // the one-tail tree with no vertices, tail labeled 1
Tree empty_tree_shape();
Tree corolla(int n); // single vertex, n tails labeled 1..n
void tree_validate(const Tree& t);
std::string tree_encode(const Tree& t);

/* Which decorations an isomorphism of trees must respect.  Marks and colors
   are always respected; arrow numbering can be freed per vertex color (the
   old flag also governs uncolored vertices). */
struct IsoPolicy {
    bool respect_tail_labels = true;
    bool respect_arrows_old = true;
    bool respect_arrows_new = true;
};

/* Equal keys characterize isomorphic trees under the policy: children of a
   vertex whose arrow order is not respected are sorted by their own keys. */
std::string canonical_key(const Tree& t, const IsoPolicy& pol);

struct TreeIso {
    std::vector<int> vmap; // source vertex -> target vertex
    std::vector<int> tmap; // source slot -> target slot
    /* child position i of v goes to child position csigma[v][i] of vmap[v] */
    std::vector<Perm> csigma;
};

std::vector<TreeIso> all_isos(const Tree& s, const Tree& t, const IsoPolicy& pol);
std::optional<TreeIso> find_iso(const Tree& s, const Tree& t, const IsoPolicy& pol);

/* Automorphism group computed by the recursive decomposition over isomorphism
   types of root subtrees: with types Γ_1..Γ_k of multiplicities n_1..n_k and
   groups G_i, the order is Π n_i!·|G_i|^{n_i} when the root's children may be
   permuted, and Π |G_i|^{n_i} otherwise. */
struct AutGroup {
    long long order = 1;
    bool permutable = false;
    std::vector<int> mult;
    std::vector<long long> factor_orders;
    std::vector<std::shared_ptr<AutGroup>> factors; // null entries are bare tails
};

AutGroup automorphisms(const Tree& t, const IsoPolicy& pol);

/* the tree operad: glue the root of parts[i] onto the tail labeled i+1 */
Tree graft(const Tree& t, const std::vector<Tree>& parts);
/* same, also reporting where each input vertex landed; inputs are numbered
   base vertices first, then the vertices of parts[0], parts[1], ... */
Tree graft(const Tree& t, const std::vector<Tree>& parts, std::vector<int>& vmap_out);
/* right symmetric action: the tail labeled i is relabeled sigma^{-1}(i) */
Tree sigma_act(const Tree& t, const Perm& sigma);
/* label tails 1..n left to right in the planar order */
Tree canonical_tail_labeling(const Tree& shape);

enum class TreeFamily { plain, dc, dc_proper, am, am_proper, zero_special };

struct TreeEnumOpts {
    int max_vertices = 6;
    bool binary_only = false; // keep only trees all of whose vertices have valency 2
};

/* One canonical representative per identity class of the family, sorted by
   (vertex count, encoding).  The labeled families (plain, dc, dc_proper,
   zero_special) are rigid, so every tree is its own class; the marked families
   (am, am_proper) are quotiented by isomorphisms ignoring arrow numbering. */
std::vector<Tree> enumerate_trees(TreeFamily fam, int n_tails, const TreeEnumOpts& opts);

struct TreeChange {
    Tree tree;
    bool proper = true;
    std::vector<int> vmap; // original vertex -> result vertex (merged vertices coincide)
};

/* Turn the new vertex v old, then contract every arrow joining two old
   vertices (planar splice).  For marked trees the result can fail the
   properness condition; the flag reports it. */
TreeChange change_vertex(const Tree& t, int v);
/* Contract every arrow joining two old vertices without recoloring anything;
   the splice is the same planar one change_vertex performs. */
TreeChange contract_old_arrows(const Tree& t);
/* Remark the m-tail at the given slot as a; flags a properness failure. */
TreeChange change_tail(const Tree& t, int slot);
/* Drop a valency-1 vertex, attaching its child in its place. */
Tree remove_unary_vertex(const Tree& t, int v);

bool is_proper_dc(const Tree& t);
bool is_proper_am(const Tree& t);
bool is_zero_special(const Tree& t);

int u_count(const Tree& t); // number of valency-1 vertices
int u_old_count(const Tree& t);
int v_new_count(const Tree& t);

} // namespace operadics
