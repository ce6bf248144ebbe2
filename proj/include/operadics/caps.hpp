#pragma once
#include <string>
#include <vector>

namespace operadics {

// Finite computation bounds. Everything infinite in the theory is exposed as a
// capped prefix; operations record in Flags whether a cap was actually hit.
struct Caps {
    int max_arity = 4;      // largest operad arity materialized
    int max_degree = 6;     // chain degree cap D (complexes stored in degrees 0..D)
    int max_vertices = 6;   // tree enumeration cap
    int max_weight = 6;     // weight cap for well-order prefixes / filtrations
    long max_basis = 4000000; // safety valve on basis sizes
};

struct Flags {
    bool truncated = false;
    std::vector<std::string> notes;

    void hit(const std::string& what) {
        truncated = true;
        notes.push_back(what);
    }
    void merge(const Flags& o) {
        truncated = truncated || o.truncated;
        notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    }
};

// Outcome of a decidable check that may be blocked by caps.
enum class VerdictKind { Pass, Fail, Inconclusive };

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::string detail;     // witness on failure, cap name on inconclusive
    int valid_through = -1; // highest degree the verdict covers (ChainQ checks)

    static Verdict pass(std::string d = "", int vt = -1) { return {VerdictKind::Pass, std::move(d), vt}; }
    static Verdict fail(std::string d, int vt = -1) { return {VerdictKind::Fail, std::move(d), vt}; }
    static Verdict inconclusive(std::string d, int vt = -1) { return {VerdictKind::Inconclusive, std::move(d), vt}; }
    bool ok() const { return kind == VerdictKind::Pass; }
};

} // namespace operadics
