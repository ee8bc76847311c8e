// Clique tiling of dense standard multigraphs: local improvement, greedy
// almost-tiling, and the randomized absorbing-family driver that upgrades an
// almost-tiling to a perfect one.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equitile/multigraph.hpp"
#include "equitile/rng.hpp"
#include "equitile/vertex_set.hpp"

namespace equitile {

// Classification of K inside M relative to the target tile order s.
//   complete:      every pair has multiplicity >= 1
//   full:          complete and the light pairs form a forest
//   fit:           full and  light-edge count <= max{0, |K| - s/2}
//   near_matching: full and light degrees <= 1; or |K| = s, light degrees
//                  <= 2 with at most one vertex of light degree 2
//   acceptable:    fit or near matching
struct CliqueStatus {
    bool complete = false;
    bool full = false;
    int light_edges = 0;
    int max_light_degree = 0;
    int light_degree_two_count = 0;
    bool fit = false;
    bool near_matching = false;
    bool acceptable = false;
};

CliqueStatus clique_status(const StandardMultigraph& M, const VertexSet& K, int s);

// Exchange step: given disjoint fit t-cliques X1, X2 and a fit s-clique Y
// with mult_between(X_i, Y) >= 2(s-1)t + 2 - i, rebuilds two disjoint fit
// cliques of orders t+1 and s inside X1 u X2 u Y.
struct ImproveResult {
    VertexSet grown;    // t+1 vertices
    VertexSet rebuilt;  // s vertices
};

ImproveResult improve(const StandardMultigraph& M, const VertexSet& X1, const VertexSet& X2,
                      const VertexSet& Y, int s);

struct CliqueTiling {
    int s = 0;
    std::vector<VertexSet> tiles;
    VertexSet leftover;
};

struct AlmostTilingOptions {
    bool strict = true;  // enforce min degree >= 2(1-1/s)n - 1
    std::uint64_t seed = 0;
};

// Greedy growth plus improvement moves until no move applies.  Under the
// degree precondition the leftover has at most s(s-1)(2s-1)/3 vertices.
CliqueTiling almost_tiling(const StandardMultigraph& M, int s,
                           const AlmostTilingOptions& opts = {});

// Tuples T of |T| vertices such that im(T)+x1 and im(T)+x2 are both near
// matchings, with the light load on x1 and x2 capped while the tuple is
// short.  Randomized greedy with restarts; returns at most `limit` tuples
// with pairwise distinct images, possibly fewer (or none) within budget.
std::vector<std::vector<int>> sponge_tuples(const StandardMultigraph& M, int s, int x1, int x2,
                                            int length, int limit, Rng& rng,
                                            const VertexSet& avoid = {});

// An S-sponge: d = s*s vertices disjoint from S such that the sponge alone
// and sponge+S both admit perfect acceptable tilings.  Built from one
// near-matching seed clique plus one (s-1)-tuple per vertex of S.
std::optional<VertexSet> construct_sponge(const StandardMultigraph& M, int s, const VertexSet& S,
                                          Rng& rng, const VertexSet& avoid = {});

struct TilerParams {
    double epsilon = 0.2;
    // 0 means auto-scaled from epsilon/n; explicit values are taken as-is
    // (the asymptotic regime makes tiny instances infeasible otherwise).
    double beta = 0.0;
    double gamma = 0.0;
    int max_retries = 20;
    std::uint64_t seed = 0;
    int coverage_samples = 200;
    // Internal retry budget for build_absorbing_family when called
    // standalone; full_tiling drives retries itself and sets this to 1.
    int build_retries = 0;  // 0 = use max_retries
};

struct AbsorbingFamily {
    int d = 0;
    std::vector<VertexSet> images;                // pairwise disjoint d-sets
    std::vector<std::vector<VertexSet>> tilings;  // cached tiling of each image
    // Diagnostics from the build.
    int sampled_tuples = 0;
    int coverage_checked = 0;
    int min_coverage = 0;
};

// Samples random d-tuples, keeps those whose image induces a perfectly
// acceptably tilable multigraph with images pairwise disjoint, capped at
// beta*n/d, then validates sponge coverage on sampled s-sets.
AbsorbingFamily build_absorbing_family(const StandardMultigraph& M, int s,
                                       const TilerParams& params);

struct FullTilingReport {
    int attempts = 0;
    int family_size = 0;
    int leftover_after_almost = 0;
    int absorbed_sets = 0;
};

// Perfect acceptable tiling driver: absorbing family, almost-tiling of the
// rest, leftover absorbed through unused sponges.  Throws
// probabilistic_failure when max_retries attempts all fall short.
CliqueTiling full_tiling(const StandardMultigraph& M, int s, const TilerParams& params = {},
                         FullTilingReport* report = nullptr);

// Re-checks a claimed tiling from scratch: partition of V(M) minus the
// claimed leftover, every tile of order s and acceptable.
bool certify_tiling(const StandardMultigraph& M, const CliqueTiling& T);

// True iff V(M) can be partitioned into acceptable s-cliques, by exhaustive
// search anchored at the lowest unplaced vertex.  Intended for tiny orders
// (absorbing-family validation on d or d+s vertices).
bool perfectly_tilable(const StandardMultigraph& M, int s);
std::optional<std::vector<VertexSet>> find_perfect_tiling(const StandardMultigraph& M, int s);

}  // namespace equitile
