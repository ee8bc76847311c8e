// Vertex partitions into acyclic classes.  "good" means class sizes differ
// by at most one; "useful" means one class one short and one class one long
// of the common size s with all classes still acyclic.
#pragma once

#include <string>
#include <vector>

#include "equitile/digraph.hpp"
#include "equitile/vertex_set.hpp"

namespace equitile {

enum class ColoringStatus { good, useful, invalid };

std::string to_string(ColoringStatus s);
ColoringStatus coloring_status_from_string(const std::string& s);

struct Coloring {
    std::vector<VertexSet> classes;
    ColoringStatus status = ColoringStatus::invalid;
    // Indices of the short and long class when status == useful, else -1.
    int small_index = -1;
    int large_index = -1;

    int k() const { return static_cast<int>(classes.size()); }
    int total_vertices() const;
};

// Recomputes the status of `classes` as a partition of V(D) from scratch:
// disjointness, coverage, per-class acyclicity, size profile.  This is the
// certification path; it shares nothing with the coloring engine.
Coloring validate_coloring(const Digraph& D, const std::vector<VertexSet>& classes);

// Same, but for a partition of an arbitrary vertex subset (the union of the
// classes).  Used on sub-families during repairs.
Coloring validate_coloring_of(const Digraph& D, const std::vector<VertexSet>& classes,
                              const VertexSet& ground);

}  // namespace equitile
