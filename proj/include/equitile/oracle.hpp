// Exhaustive reference searches.  Deliberately independent from the
// engines: different traversal order, no shared solver state, so they can
// arbitrate correctness at small orders.  Budgets fail hard instead of
// silently truncating the search.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equitile/coloring.hpp"
#include "equitile/digraph.hpp"
#include "equitile/multigraph.hpp"
#include "equitile/vertex_set.hpp"

namespace equitile {

struct OracleBudget {
    int max_vertices = 15;
    std::uint64_t max_nodes = 200'000'000;
};

// Is there a partition of V(D) into k classes, sizes differing by at most
// one, each inducing an acyclic subdigraph?  Backtracking over vertices in
// index order with first-empty-class symmetry breaking.
std::optional<std::vector<VertexSet>> oracle_equitable_acyclic(const Digraph& D, int k,
                                                               const OracleBudget& budget = {});

enum class TilePredicate {
    transitive,      // tile spans a transitive tournament
    cyclic_triangle, // tile is a directed 3-cycle (s must be 3)
    any_tournament,  // every pair joined by at least one arc
    mixed,           // s = 3: exactly c cyclic and t transitive triangles
};

TilePredicate tile_predicate_from_string(const std::string& s);

struct MixedCounts {
    int cyclic = 0;
    int transitive = 0;
};

// Is there a partition of V(D) into tiles of order s, each satisfying the
// predicate?  |D| must be divisible by s.
std::optional<std::vector<VertexSet>> oracle_factor(const Digraph& D, int s, TilePredicate pred,
                                                    const MixedCounts& mixed = {},
                                                    const OracleBudget& budget = {});

// K must have complete support in M (every pair multiplicity >= 1; the
// light pairs may form any graph).  True iff every orientation of K's
// light pairs (heavy pairs orient both ways) contains every tournament on
// |K| vertices; checked through the equivalent embedding form: every
// orientation of the light pairs embeds into every tournament.  Supported
// for |K| <= 5.
bool is_universal_clique(const StandardMultigraph& M, const VertexSet& K);

enum class CliquePredicate { full, fit, near_matching, acceptable, universal };

CliquePredicate clique_predicate_from_string(const std::string& s);

// Partition of V(M) into s-sets each satisfying the predicate.
std::optional<std::vector<VertexSet>> oracle_multigraph_tiling(const StandardMultigraph& M, int s,
                                                               CliquePredicate pred,
                                                               const OracleBudget& budget = {});

}  // namespace equitile
