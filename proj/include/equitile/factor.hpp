// Partitioning a digraph into vertex-disjoint transitive tournaments of a
// fixed order s, via acyclic coloring of the complement.
#pragma once

#include <optional>
#include <vector>

#include "equitile/digraph.hpp"
#include "equitile/vertex_set.hpp"

namespace equitile {

struct TournamentFactor {
    int s = 0;
    // Each tile is listed in certified transitive order: every earlier
    // vertex has an arc to every later one.
    std::vector<std::vector<int>> tiles;
};

// If D restricted to `tile` contains a spanning transitive tournament,
// returns a witnessing order; otherwise nullopt.
std::optional<std::vector<int>> certify_transitive(const Digraph& D, const VertexSet& tile);

struct FactorOptions {
    bool strict = true;  // enforce the minimum-degree precondition
    std::uint64_t seed = 0;
};

// Requires |D| = s*k and, in strict mode, min total degree
// >= 2(1-1/s)|D| - 1.  The returned tiles partition V(D).
TournamentFactor transitive_factor(const Digraph& D, int s, const FactorOptions& opts = {});

// Re-checks a claimed factor from scratch: partition, tile sizes, and the
// transitive order of every tile.
bool certify_factor(const Digraph& D, const TournamentFactor& F);

}  // namespace equitile
