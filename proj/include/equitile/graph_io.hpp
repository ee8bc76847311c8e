// Plain-text file formats.  Lines starting with '#' are comments anywhere
// in a file; all parse failures carry a line number.
//
//   digraph:    "n m" then m lines "u v"            (duplicate arcs rejected)
//   multigraph: "n m" then m lines "u v c", c in {1,2}  (duplicate pairs rejected)
//   coloring:   "k status" then k class lines (possibly empty)
//   factor:     "k s" then k tile lines in transitive order
//   tiling:     "count s" then tile lines "v1 .. vs flag", flag fit|near|both
#pragma once

#include <iosfwd>
#include <string>

#include "equitile/coloring.hpp"
#include "equitile/digraph.hpp"
#include "equitile/factor.hpp"
#include "equitile/multigraph.hpp"
#include "equitile/tiling.hpp"

namespace equitile {

Digraph read_digraph(std::istream& in);
Digraph read_digraph_file(const std::string& path);
void write_digraph(std::ostream& out, const Digraph& D, const std::string& header = "");
void write_digraph_file(const std::string& path, const Digraph& D, const std::string& header = "");

StandardMultigraph read_multigraph(std::istream& in);
StandardMultigraph read_multigraph_file(const std::string& path);
void write_multigraph(std::ostream& out, const StandardMultigraph& M,
                      const std::string& header = "");
void write_multigraph_file(const std::string& path, const StandardMultigraph& M,
                           const std::string& header = "");

Coloring read_coloring(std::istream& in);
Coloring read_coloring_file(const std::string& path);
void write_coloring(std::ostream& out, const Coloring& C);
void write_coloring_file(const std::string& path, const Coloring& C);

TournamentFactor read_factor(std::istream& in);
TournamentFactor read_factor_file(const std::string& path);
void write_factor(std::ostream& out, const TournamentFactor& F);
void write_factor_file(const std::string& path, const TournamentFactor& F);

// Tile flags are recomputed by the writer from M when available; the reader
// returns them verbatim and verification recomputes them anyway.
struct TilingFile {
    int s = 0;
    std::vector<VertexSet> tiles;
    std::vector<std::string> flags;  // "fit", "near" or "both", per tile
};

TilingFile read_tiling(std::istream& in);
TilingFile read_tiling_file(const std::string& path);
void write_tiling(std::ostream& out, const StandardMultigraph& M, const CliqueTiling& T);
void write_tiling_file(const std::string& path, const StandardMultigraph& M,
                       const CliqueTiling& T);

enum class ArtifactKind { coloring, factor, tiling };

// Guess the artifact type from its first lines: a status token on line one
// means coloring; a trailing fit/near/both token on a tile line means
// tiling; otherwise factor.
ArtifactKind sniff_artifact_kind(const std::string& path);

}  // namespace equitile
