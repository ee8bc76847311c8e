// Equitable acyclic coloring engine.
//
// The driver inserts vertices one at a time into an initially edgeless padded
// graph, keeping a good coloring at every step.  Inserting the edges of one
// vertex can break its class; the vertex is then moved to a class it cannot
// close a cycle in, which costs equitability, and the resulting nearly
// equitable ("useful") coloring is repaired.
//
// Repair works on the class digraph H: classes are nodes, and U -> W is an
// edge when some y in U keeps W + y acyclic (y "witnesses" the edge).  If the
// long class reaches the short class in H, switching witnesses along a
// shortest path rebalances the sizes.  Otherwise a class is split around a
// carefully chosen vertex pair and the engine recurses on the two sides.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "equitile/coloring.hpp"
#include "equitile/digraph.hpp"

namespace equitile {

struct ColoringOptions {
    // strict: reject inputs violating the degree bound d(v) <= 2k-1 up front
    // and treat repair exhaustion as an internal invariant failure.
    // Non-strict: attempt anyway and report no_solution_found on dead ends.
    bool strict = true;
    std::uint64_t seed = 0;  // reserved; the engine is fully deterministic
};

struct EngineStats {
    int pad_count = 0;
    long long insertions = 0;
    long long moves = 0;           // vertex relocations after an edge insertion
    long long repairs = 0;         // useful colorings handed to repair
    long long path_switches = 0;   // repairs resolved by a witness path
    long long class_splits = 0;    // repairs resolved by splitting off a class
    long long witness_moves = 0;   // individual witness relocations
    int max_depth = 0;             // deepest repair recursion
};

// Pads D with extra vertices until k divides the order.  Pad vertices are
// pairwise joined by 2-cycles and have no arcs into D, so no two of them fit
// in one acyclic class and each pad degree is 2(p-1) <= 2k-1.  Returns the
// padded graph and the number of pads (0 when k already divides |D|).
std::pair<Digraph, int> pad_to_divisible(const Digraph& D, int k);

// One insertion step.  `before` must partition V(D) into equal-size acyclic
// classes when u is ignored.  If u's class became cyclic, u moves to a class
// in which it has no in-arcs or no out-arcs (exists when d(u) <= 2k-1) with
// the fewest arcs to u, lowest index on ties.  Returns the good coloring
// unchanged or the useful coloring after the move.
Coloring insert_vertex_edges(const Digraph& D, const Coloring& before, int u);

// Eager snapshot of the class digraph of a useful coloring, for inspection
// and tests.  The repair path recomputes these facts lazily instead.
struct ClassGraphSnapshot {
    int small_index = -1;
    int large_index = -1;
    // witnesses[u][w]: vertices y in class u with class w + y acyclic,
    // ascending; nonempty exactly when u -> w is an H-edge.
    std::vector<std::vector<std::vector<int>>> witnesses;
    std::vector<char> reaches_small;        // per class: can reach the small class
    std::vector<int> dist_to_small;         // H-distance, -1 if unreachable
    std::vector<char> terminal;             // reaches_small, and every other
                                            // reaching class still reaches the
                                            // small class with this one removed
    std::vector<char> reachable_from_large; // per class: large reaches it
    // movability[c]: (vertex, q) per vertex of class c, ascending by vertex,
    // where q counts reaching classes U != c with U + vertex acyclic.  Only
    // filled for classes with reaches_small set.
    std::vector<std::vector<std::pair<int, int>>> movability;
};

ClassGraphSnapshot build_snapshot(const Digraph& D, const Coloring& useful);

// Moves one witness per consecutive class pair along class_path, which must
// run from the large class to the small one.  Witnesses are recomputed
// against the current classes at every step (lowest vertex first) and the
// step is rejected if none exists, so stale paths fail loudly instead of
// corrupting the partition.  Class positions are preserved.
Coloring switch_witness_path(const Digraph& D, const Coloring& useful,
                             const std::vector<int>& class_path);

// Turns a useful coloring into a good one.  Throws invariant_violation with
// a diagnostic report if every repair avenue is exhausted, which is
// impossible when every vertex satisfies d(v) <= 2k-1.
Coloring repair(const Digraph& D, const Coloring& useful, EngineStats* stats = nullptr);

// Arcs between the classes that reach the small class ("A side") and the
// rest of the vertices ("B side") of a useful coloring, classified by the
// roles the repair argument assigns them.  Directions are relative to the
// A-side class: an arc is "inbound" when it runs from the B vertex into the
// class.  vital: lies on a cycle of class + y through itself.  lonely: vital
// and the only vital arc in its direction for (class, y).  solo: the only
// arc of its direction for (class, y).
struct CrossingArc {
    int tail = -1;
    int head = -1;
    int a_class = -1;  // class containing the A-side endpoint
    int b_vertex = -1;
    bool inbound = false;  // true: tail == b_vertex, head in a_class
    bool vital = false;
    bool lonely = false;
    bool solo = false;
};

struct CrossingCounts {
    int arcs_in = 0, arcs_out = 0;
    int vital_in = 0, vital_out = 0;
    int lonely_in = 0, lonely_out = 0;
    int solo_in = 0, solo_out = 0;
    int arcs() const { return arcs_in + arcs_out; }
    int vital() const { return vital_in + vital_out; }
    int lonely() const { return lonely_in + lonely_out; }
    int solo() const { return solo_in + solo_out; }
};

struct EdgeClassification {
    std::vector<CrossingArc> arcs;
    CrossingCounts counts(int a_class, int b_vertex) const;
};

EdgeClassification classify_edges(const Digraph& D, const Coloring& useful,
                                  const ClassGraphSnapshot& snap);

// Multi-line human-readable report on a useful coloring: side sizes, blocked
// and crossing-count facts, and which structural inequalities fail.  Used in
// invariant_violation messages and exercised by tests.
std::string repair_diagnostics(const Digraph& D, const Coloring& useful);

// Whole pipeline: pad, insert vertices by descending static degree, repair
// after every insertion that breaks equitability, then drop the pads.
// Requires max total degree <= 2k-1 in strict mode; the result is always a
// certified good k-coloring.
Coloring equitable_acyclic_coloring(const Digraph& D, int k,
                                    const ColoringOptions& opts = {},
                                    EngineStats* stats = nullptr);

}  // namespace equitile
