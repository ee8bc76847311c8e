#include "equitile/tiling.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "equitile/errors.hpp"

namespace equitile {
namespace {

// Number of zero-multiplicity pairs between v and S.
int zero_pairs(const StandardMultigraph& M, int v, const VertexSet& S) {
    int z = 0;
    for (int u : S.items()) {
        if (u != v && M.multiplicity(u, v) == 0) ++z;
    }
    return z;
}

// Union-find over the members of K, for the light-forest test.
struct MiniDsu {
    std::vector<int> p;
    explicit MiniDsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

}  // namespace

CliqueStatus clique_status(const StandardMultigraph& M, const VertexSet& K, int s) {
    if (s <= 0) throw precondition_error("tile order must be positive");
    CliqueStatus st;
    const auto& v = K.items();
    const int m = K.size();
    st.complete = true;
    MiniDsu dsu(m);
    bool forest = true;
    std::vector<int> ldeg(m, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            int mu = M.multiplicity(v[i], v[j]);
            if (mu == 0) st.complete = false;
            if (mu == 1) {
                ++st.light_edges;
                ++ldeg[i];
                ++ldeg[j];
                if (!dsu.unite(i, j)) forest = false;
            }
        }
    }
    for (int i = 0; i < m; ++i) {
        st.max_light_degree = std::max(st.max_light_degree, ldeg[i]);
        if (ldeg[i] == 2) ++st.light_degree_two_count;
    }
    st.full = st.complete && forest;
    // light count at most |K| - s/2: doubled to stay in integers.
    st.fit = st.full && 2 * st.light_edges <= std::max(0, 2 * m - s);
    st.near_matching =
        st.full && (st.max_light_degree <= 1 ||
                    (m == s && st.max_light_degree <= 2 && st.light_degree_two_count <= 1));
    st.acceptable = st.fit || st.near_matching;
    return st;
}

namespace {

// Deficit of y against the t-clique X: 2t minus the multiplicity sum, i.e.
// light pairs count once and missing pairs twice.
int deficit(const StandardMultigraph& M, const VertexSet& X, int y) {
    return 2 * X.size() - M.mult_between(y, X);
}

// Vertex of X fully adjacent to Y with at most one light pair into it;
// minimal light count, then lowest index.  The degree assumptions make one
// exist; -1 signals they were violated.
int pick_heavy_anchor(const StandardMultigraph& M, const VertexSet& X, const VertexSet& Y) {
    int best = -1, best_light = 0;
    for (int x : X.items()) {
        if (zero_pairs(M, x, Y) > 0) continue;
        int l = M.light_between(x, Y);
        if (l > 1) continue;
        if (best < 0 || l < best_light) {
            best = x;
            best_light = l;
        }
    }
    return best;
}

// Maximum independent set of the light graph restricted to `verts`, by leaf
// peeling (exact on forests; the host clique is full, so this is one).
VertexSet forest_independent_set(const StandardMultigraph& M, const VertexSet& verts) {
    std::vector<int> vs = verts.items();
    const int m = static_cast<int>(vs.size());
    std::vector<std::vector<int>> adj(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (M.is_light(vs[i], vs[j])) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    std::vector<char> gone(m, 0);
    std::vector<int> deg(m);
    for (int i = 0; i < m; ++i) deg[i] = static_cast<int>(adj[i].size());
    VertexSet out;
    int remaining = m;
    while (remaining > 0) {
        int pick = -1;
        for (int i = 0; i < m; ++i) {
            if (!gone[i] && deg[i] <= 1) {
                pick = i;
                break;
            }
        }
        if (pick < 0) throw invariant_violation("light graph of a full clique is not a forest");
        out.insert(vs[pick]);
        gone[pick] = 1;
        --remaining;
        for (int nb : adj[pick]) {
            if (gone[nb]) continue;
            gone[nb] = 1;
            --remaining;
            for (int nb2 : adj[nb]) {
                if (!gone[nb2]) --deg[nb2];
            }
        }
    }
    return out;
}

}  // namespace

ImproveResult improve(const StandardMultigraph& M, const VertexSet& X1, const VertexSet& X2,
                      const VertexSet& Y, int s) {
    const int t = X1.size();
    if (t < 1 || t > s - 1) throw precondition_error("small cliques must have order in [1, s-1]");
    if (X2.size() != t) throw precondition_error("the two small cliques must have equal order");
    if (Y.size() != s) throw precondition_error("the big clique must have order s");
    if (X1.intersects(X2) || X1.intersects(Y) || X2.intersects(Y)) {
        throw precondition_error("improvement cliques must be pairwise disjoint");
    }
    if (!clique_status(M, X1, s).fit || !clique_status(M, X2, s).fit ||
        !clique_status(M, Y, s).fit) {
        throw precondition_error("improvement cliques must be fit");
    }
    if (M.mult_between(X1, Y) < 2 * (s - 1) * t + 1 || M.mult_between(X2, Y) < 2 * (s - 1) * t) {
        throw precondition_error("multiplicity between the small cliques and the big one is too low");
    }

    auto finish = [&](VertexSet grown, VertexSet rebuilt) {
        if (grown.size() != t + 1 || rebuilt.size() != s || grown.intersects(rebuilt) ||
            !clique_status(M, grown, s).fit || !clique_status(M, rebuilt, s).fit) {
            throw invariant_violation("improvement produced an unfit pair");
        }
        return ImproveResult{std::move(grown), std::move(rebuilt)};
    };

    const int x1 = pick_heavy_anchor(M, X1, Y);
    if (x1 < 0) throw invariant_violation("no anchor vertex in the first small clique");

    // A vertex of Y heavy to one small clique and carrying a light edge
    // inside Y trades places directly.
    for (int y : Y.items()) {
        if (M.light_between(y, Y.without(y)) == 0) continue;
        if (deficit(M, X2, y) == 0) {
            return finish(X2.with(y), Y.without(y).with(x1));
        }
        if (deficit(M, X1, y) == 0) {
            int x2 = pick_heavy_anchor(M, X2, Y.without(y));
            if (x2 < 0) throw invariant_violation("no anchor vertex in the second small clique");
            return finish(X1.with(y), Y.without(y).with(x2));
        }
    }

    // Otherwise vertices heavy to a small clique have no light edges in Y.
    // Grow X2 by a low-deficit vertex and rebuild the s-clique from X1 plus
    // a light-independent selection of low-deficit vertices.
    int y2 = -1;
    for (int c = 0; c <= (2 * t < s ? 0 : 1) && y2 < 0; ++c) {
        for (int y : Y.items()) {
            if (deficit(M, X2, y) == c) {
                y2 = y;
                break;
            }
        }
    }
    if (y2 < 0) throw invariant_violation("no growth vertex despite the multiplicity bound");

    VertexSet pool0;  // deficit 0 against X1: heavy throughout
    VertexSet pool1;  // deficit 1: one light pair into X1
    for (int y : Y.items()) {
        int c = deficit(M, X1, y);
        if (c == 0) pool0.insert(y);
        if (c == 1) pool1.insert(y);
    }
    VertexSet indep = forest_independent_set(M, pool1);

    VertexSet Z1;
    for (int y : pool0.items()) {
        if (y != y2 && Z1.size() < s - t) Z1.insert(y);
    }
    for (int y : indep.items()) {
        if (y != y2 && Z1.size() < s - t) Z1.insert(y);
    }
    if (Z1.size() != s - t) {
        throw invariant_violation("not enough low-deficit vertices to rebuild the big clique");
    }
    return finish(X2.with(y2), X1.unite(Z1));
}

namespace {

long long leftover_bound(int s) { return static_cast<long long>(s) * (s - 1) * (2 * s - 1) / 3; }

}  // namespace

CliqueTiling almost_tiling(const StandardMultigraph& M, int s, const AlmostTilingOptions& opts) {
    if (s <= 0) throw precondition_error("tile order must be positive");
    const int n = M.size();
    CliqueTiling out;
    out.s = s;
    if (s == 1) {
        for (int v = 0; v < n; ++v) out.tiles.push_back(VertexSet{v});
        return out;
    }
    if (opts.strict) {
        // delta >= 2(1-1/s)n - 1, kept in integers as s*delta >= 2(s-1)n - s.
        if (n > 0 && static_cast<long long>(s) * M.min_degree() <
                         2LL * (s - 1) * n - s) {
            throw precondition_error("min degree is below 2(1-1/s)n - 1");
        }
    }

    std::vector<VertexSet> parts;
    parts.reserve(n);
    for (int v = 0; v < n; ++v) parts.push_back(VertexSet{v});
    std::vector<int> part_of(n);
    std::iota(part_of.begin(), part_of.end(), 0);

    Rng rng(opts.seed);
    std::vector<int> vorder(n);
    std::iota(vorder.begin(), vorder.end(), 0);
    rng.shuffle(vorder);

    auto rebuild_index = [&]() {
        for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
            for (int v : parts[i].items()) part_of[v] = i;
        }
    };

    // Every move strictly raises the clique-size profile lexicographically,
    // so the loop terminates; the cap only guards against implementation
    // bugs turning into hangs.
    long long guard = 8LL * n * s + 1000;
    while (guard-- > 0) {
        // Growth: move a vertex from a small clique into one at least as
        // large (but below s) that stays fit with it.
        bool moved = false;
        std::vector<int> targets;
        for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
            if (parts[i].size() < s) targets.push_back(i);
        }
        std::stable_sort(targets.begin(), targets.end(), [&](int l, int r) {
            return parts[l].size() != parts[r].size() ? parts[l].size() > parts[r].size()
                                                      : parts[l][0] < parts[r][0];
        });
        for (int tgt : targets) {
            for (int x : vorder) {
                int src = part_of[x];
                if (src == tgt || parts[src].size() > parts[tgt].size()) continue;
                if (!clique_status(M, parts[tgt].with(x), s).fit) continue;
                parts[src].erase(x);
                parts[tgt].insert(x);
                part_of[x] = tgt;
                if (parts[src].empty()) {
                    parts[src] = std::move(parts.back());
                    parts.pop_back();
                    rebuild_index();
                }
                moved = true;
                break;
            }
            if (moved) break;
        }
        if (moved) continue;

        // No growth applies.  Count the vertices outside full tiles.
        long long usize = 0;
        for (const auto& p : parts) {
            if (p.size() < s) usize += p.size();
        }
        if (usize <= leftover_bound(s)) break;

        // Improvement: some clique order t is overrepresented; trade two of
        // its cliques against a full tile rich in multiplicity toward them.
        int t = -1;
        for (int cand = s - 1; cand >= 1; --cand) {
            int count = 0;
            for (const auto& p : parts) count += p.size() == cand;
            if (count >= 2 * cand + 1) {
                t = cand;
                break;
            }
        }
        if (t < 0) {
            if (!opts.strict) break;
            throw invariant_violation("leftover is oversized but no clique order is plentiful");
        }
        std::vector<int> xs;
        for (int i = 0; i < static_cast<int>(parts.size()) &&
                        static_cast<int>(xs.size()) < 2 * t + 1;
             ++i) {
            if (parts[i].size() == t) xs.push_back(i);
        }
        VertexSet uprime;
        for (int i : xs) uprime = uprime.unite(parts[i]);

        int ybest = -1;
        int ymult = -1;
        for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
            if (parts[i].size() != s) continue;
            int mm = M.mult_between(uprime, parts[i]);
            if (mm > ymult) {
                ymult = mm;
                ybest = i;
            }
        }
        if (ybest < 0 || ymult < 2 * (s - 1) * t * (2 * t + 1) + 1) {
            if (!opts.strict) break;
            throw invariant_violation("no full tile is rich enough for an improvement step");
        }
        std::stable_sort(xs.begin(), xs.end(), [&](int l, int r) {
            return M.mult_between(parts[l], parts[ybest]) > M.mult_between(parts[r], parts[ybest]);
        });

        ImproveResult res = improve(M, parts[xs[0]], parts[xs[1]], parts[ybest], s);
        VertexSet displaced =
            parts[xs[0]].unite(parts[xs[1]]).unite(parts[ybest]).minus(res.grown).minus(
                res.rebuilt);
        std::vector<int> dying{xs[0], xs[1], ybest};
        std::sort(dying.begin(), dying.end(), std::greater<int>());
        for (int i : dying) {
            parts[i] = std::move(parts.back());
            parts.pop_back();
        }
        parts.push_back(std::move(res.grown));
        parts.push_back(std::move(res.rebuilt));
        for (int v : displaced.items()) parts.push_back(VertexSet{v});
        rebuild_index();
    }
    if (guard <= 0) throw invariant_violation("tiling move loop exceeded its budget");

    for (const auto& p : parts) {
        if (p.size() == s) {
            out.tiles.push_back(p);
        } else {
            out.leftover = out.leftover.unite(p);
        }
    }
    if (opts.strict && out.leftover.size() > leftover_bound(s)) {
        throw invariant_violation("leftover exceeds s(s-1)(2s-1)/3 despite the degree bound");
    }
    return out;
}

namespace {

bool tiling_search(const StandardMultigraph& M, int s, std::vector<char>& used, int placed,
                   std::vector<VertexSet>& acc, long long& nodes) {
    const int n = M.size();
    if (placed == n) return true;
    if (--nodes <= 0) throw budget_exceeded("perfect tiling search budget exhausted");
    int anchor = 0;
    while (used[anchor]) ++anchor;

    // Enumerate the other s-1 members above the anchor, pruning any pick
    // with a missing pair.
    std::vector<int> pick{anchor};
    used[anchor] = 1;
    auto rec = [&](auto&& self, int from) -> bool {
        if (static_cast<int>(pick.size()) == s) {
            VertexSet K{std::vector<int>(pick)};
            if (!clique_status(M, K, s).acceptable) return false;
            acc.push_back(K);
            if (tiling_search(M, s, used, placed + s, acc, nodes)) return true;
            acc.pop_back();
            return false;
        }
        for (int v = from; v < n; ++v) {
            if (used[v]) continue;
            bool ok = true;
            for (int u : pick) {
                if (M.multiplicity(u, v) == 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            pick.push_back(v);
            used[v] = 1;
            if (self(self, v + 1)) return true;
            used[v] = 0;
            pick.pop_back();
        }
        return false;
    };
    if (rec(rec, anchor + 1)) return true;
    used[anchor] = 0;
    return false;
}

}  // namespace

std::optional<std::vector<VertexSet>> find_perfect_tiling(const StandardMultigraph& M, int s) {
    if (s <= 0) throw precondition_error("tile order must be positive");
    const int n = M.size();
    if (n % s != 0) return std::nullopt;
    std::vector<char> used(n, 0);
    std::vector<VertexSet> acc;
    long long nodes = 20'000'000;
    if (tiling_search(M, s, used, 0, acc, nodes)) return acc;
    return std::nullopt;
}

bool perfectly_tilable(const StandardMultigraph& M, int s) {
    return find_perfect_tiling(M, s).has_value();
}

bool certify_tiling(const StandardMultigraph& M, const CliqueTiling& T) {
    if (T.s <= 0) return false;
    const int n = M.size();
    std::vector<char> seen(n, 0);
    long long covered = 0;
    for (const auto& tile : T.tiles) {
        if (tile.size() != T.s) return false;
        for (int v : tile.items()) {
            if (v < 0 || v >= n || seen[v]) return false;
            seen[v] = 1;
        }
        covered += tile.size();
        if (!clique_status(M, tile, T.s).acceptable) return false;
    }
    for (int v : T.leftover.items()) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return covered + T.leftover.size() == n;
}

std::vector<std::vector<int>> sponge_tuples(const StandardMultigraph& M, int s, int x1, int x2,
                                            int length, int limit, Rng& rng,
                                            const VertexSet& avoid) {
    const int n = M.size();
    if (s <= 0) throw precondition_error("tile order must be positive");
    if (x1 < 0 || x1 >= n || x2 < 0 || x2 >= n || x1 == x2) {
        throw precondition_error("tuple endpoints must be two distinct vertices");
    }
    if (length < 0 || length > s - 1) {
        throw precondition_error("tuple length must lie in [0, s-1]");
    }

    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> images;
    if (limit <= 0) return out;

    const int restarts = std::max(60, 40 * limit);
    for (int r = 0; r < restarts && static_cast<int>(out.size()) < limit; ++r) {
        std::vector<int> tup;
        VertexSet im;
        bool dead = false;
        for (int j = 0; j < length && !dead; ++j) {
            // At length t the light load on each endpoint may not exceed
            // max{0, t-s+3}, which keeps early picks heavy to the anchors.
            const int cap = std::max(0, (j + 1) - s + 3);
            bool found = false;
            for (int tries = 0; tries < 4 * n && !found; ++tries) {
                int v = rng.below(n);
                if (v == x1 || v == x2 || im.contains(v) || avoid.contains(v)) continue;
                VertexSet im2 = im.with(v);
                if (M.light_between(x1, im2) > cap || M.light_between(x2, im2) > cap) continue;
                if (!clique_status(M, im2.with(x1), s).near_matching) continue;
                if (!clique_status(M, im2.with(x2), s).near_matching) continue;
                tup.push_back(v);
                im = std::move(im2);
                found = true;
            }
            dead = !found;
        }
        if (dead) continue;
        std::vector<int> key = im.items();
        if (images.insert(key).second) out.push_back(std::move(tup));
    }
    return out;
}

std::optional<VertexSet> construct_sponge(const StandardMultigraph& M, int s, const VertexSet& S,
                                          Rng& rng, const VertexSet& avoid) {
    const int n = M.size();
    if (s <= 0) throw precondition_error("tile order must be positive");
    if (S.size() != s) throw precondition_error("the absorbed set must have exactly s vertices");

    for (int outer = 0; outer < 40; ++outer) {
        // Seed tile: a near-matching s-clique away from S and the avoid set.
        VertexSet seed;
        bool dead = false;
        for (int j = 0; j < s && !dead; ++j) {
            bool found = false;
            for (int tries = 0; tries < 4 * n && !found; ++tries) {
                int v = rng.below(n);
                if (S.contains(v) || avoid.contains(v) || seed.contains(v)) continue;
                if (!clique_status(M, seed.with(v), s).near_matching) continue;
                seed.insert(v);
                found = true;
            }
            dead = !found;
        }
        if (dead) continue;

        // One bridging tuple per member of S: its image extends both that
        // member and one seed vertex to a near matching.
        VertexSet used = avoid.unite(S).unite(seed);
        VertexSet sponge = seed;
        std::vector<int> svec = S.items();
        std::vector<int> zvec = seed.items();
        bool complete = true;
        for (int i = 0; i < s; ++i) {
            auto tuples = sponge_tuples(M, s, svec[i], zvec[i], s - 1, 1, rng, used);
            if (tuples.empty()) {
                complete = false;
                break;
            }
            for (int v : tuples[0]) {
                used.insert(v);
                sponge.insert(v);
            }
        }
        if (!complete) continue;
        if (sponge.size() != s * s || sponge.intersects(S)) {
            throw invariant_violation("sponge assembly produced a malformed vertex set");
        }
        return sponge;
    }
    return std::nullopt;
}

namespace {

std::vector<VertexSet> lift_tiles(const std::vector<VertexSet>& tiles,
                                  const std::vector<int>& ids) {
    std::vector<VertexSet> out;
    out.reserve(tiles.size());
    for (const auto& t : tiles) {
        VertexSet lifted;
        for (int v : t.items()) lifted.insert(ids[v]);
        out.push_back(std::move(lifted));
    }
    return out;
}

}  // namespace

AbsorbingFamily build_absorbing_family(const StandardMultigraph& M, int s,
                                       const TilerParams& params) {
    if (s <= 0) throw precondition_error("tile order must be positive");
    if (params.epsilon <= 0) throw precondition_error("epsilon must be positive");
    const int n = M.size();
    const int d = s * s;

    AbsorbingFamily fam;
    fam.d = d;
    if (n < d) return fam;

    const double beta = params.beta > 0 ? params.beta : params.epsilon / 2;
    const double p = 0.9 * beta / d;
    // Hard cap: the family's footprint d*|F| stays strictly under eps*n/2.
    int cap = 0;
    while ((cap + 1) * static_cast<double>(d) < params.epsilon * n / 2) ++cap;

    Rng rng(params.seed);
    const int attempts = params.build_retries > 0 ? params.build_retries
                                                  : std::max(1, params.max_retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        fam.images.clear();
        fam.tilings.clear();
        fam.sampled_tuples = 0;

        const long long draws = rng.poisson(p * n);
        VertexSet used;
        for (long long i = 0; i < draws && static_cast<int>(fam.images.size()) < cap; ++i) {
            ++fam.sampled_tuples;
            VertexSet image;
            bool distinct = true;
            for (int j = 0; j < d; ++j) {
                int v = rng.below(n);
                if (image.contains(v)) {
                    distinct = false;
                    break;
                }
                image.insert(v);
            }
            if (!distinct || image.intersects(used)) continue;
            auto [sub, ids] = M.induced(image);
            auto tiling = find_perfect_tiling(sub, s);
            if (!tiling) continue;
            fam.tilings.push_back(lift_tiles(*tiling, ids));
            used = used.unite(image);
            fam.images.push_back(std::move(image));
        }
        if (!fam.images.empty()) break;
    }

    // Sampled sanity check: how many family members can absorb a random
    // s-set outside the family footprint.  Diagnostic only; absorption is
    // re-checked exactly when a leftover set is assigned a sponge.
    fam.coverage_checked = 0;
    fam.min_coverage = 0;
    if (!fam.images.empty() && params.coverage_samples > 0) {
        VertexSet footprint;
        for (const auto& im : fam.images) footprint = footprint.unite(im);
        if (n - footprint.size() >= s) {
            fam.min_coverage = static_cast<int>(fam.images.size());
            for (int it = 0; it < params.coverage_samples; ++it) {
                VertexSet S;
                while (S.size() < s) {
                    int v = rng.below(n);
                    if (!footprint.contains(v)) S.insert(v);
                }
                int cover = 0;
                for (const auto& im : fam.images) {
                    auto [sub, ids] = M.induced(im.unite(S));
                    if (perfectly_tilable(sub, s)) ++cover;
                }
                ++fam.coverage_checked;
                fam.min_coverage = std::min(fam.min_coverage, cover);
            }
        }
    }
    return fam;
}

CliqueTiling full_tiling(const StandardMultigraph& M, int s, const TilerParams& params,
                         FullTilingReport* report) {
    if (s <= 0) throw precondition_error("tile order must be positive");
    const int n = M.size();
    if (n % s != 0) throw precondition_error("order is not divisible by the tile order");
    if (params.epsilon <= 0) throw precondition_error("epsilon must be positive");

    FullTilingReport local;
    FullTilingReport* rep = report ? report : &local;
    *rep = FullTilingReport{};

    CliqueTiling out;
    out.s = s;
    if (s == 1) {
        for (int v = 0; v < n; ++v) out.tiles.push_back(VertexSet{v});
        return out;
    }
    if (n == 0) return out;

    // delta >= 2(1-1/s)n + eps*n
    const double need = 2.0 * (s - 1) * n / s + params.epsilon * n;
    if (M.min_degree() + 1e-9 < need) {
        throw precondition_error("min degree is below 2(1-1/s)n + eps*n");
    }

    const int retries = std::max(1, params.max_retries);
    for (int attempt = 0; attempt < retries; ++attempt) {
        rep->attempts = attempt + 1;
        TilerParams p2 = params;
        p2.seed = params.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt + 1);
        p2.build_retries = 1;
        AbsorbingFamily fam = build_absorbing_family(M, s, p2);
        rep->family_size = static_cast<int>(fam.images.size());

        VertexSet footprint;
        for (const auto& im : fam.images) footprint = footprint.unite(im);
        VertexSet rest = VertexSet::range(0, n).minus(footprint);
        auto [sub, ids] = M.induced(rest);

        AlmostTilingOptions aopts;
        aopts.strict = true;
        aopts.seed = p2.seed;
        CliqueTiling almost = almost_tiling(sub, s, aopts);
        rep->leftover_after_almost = almost.leftover.size();

        std::vector<VertexSet> tiles = lift_tiles(almost.tiles, ids);
        VertexSet leftover;
        for (int v : almost.leftover.items()) leftover.insert(ids[v]);

        if (leftover.size() % s != 0) {
            throw invariant_violation("leftover size is not divisible by the tile order");
        }

        std::vector<char> sponge_used(fam.images.size(), 0);
        bool failed = false;
        int absorbed = 0;
        std::vector<int> lv = leftover.items();
        for (std::size_t off = 0; off < lv.size() && !failed; off += s) {
            VertexSet S{std::vector<int>(lv.begin() + off, lv.begin() + off + s)};
            bool placed = false;
            for (std::size_t f = 0; f < fam.images.size() && !placed; ++f) {
                if (sponge_used[f]) continue;
                auto [sub2, ids2] = M.induced(fam.images[f].unite(S));
                auto tiling = find_perfect_tiling(sub2, s);
                if (!tiling) continue;
                for (auto& tl : lift_tiles(*tiling, ids2)) tiles.push_back(std::move(tl));
                sponge_used[f] = 1;
                placed = true;
                ++absorbed;
            }
            failed = !placed;
        }
        if (failed) continue;

        for (std::size_t f = 0; f < fam.images.size(); ++f) {
            if (sponge_used[f]) continue;
            for (auto& tl : fam.tilings[f]) tiles.push_back(tl);
        }
        rep->absorbed_sets = absorbed;

        out.tiles = std::move(tiles);
        out.leftover = VertexSet{};
        if (!certify_tiling(M, out)) {
            throw invariant_violation("assembled tiling failed certification");
        }
        return out;
    }
    throw probabilistic_failure("no perfect tiling found in " + std::to_string(retries) +
                                " attempts; consider more retries or a larger instance");
}

}  // namespace equitile
