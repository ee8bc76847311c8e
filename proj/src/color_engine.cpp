#include "equitile/color_engine.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "equitile/errors.hpp"

namespace equitile {
namespace {

// Lowest y in classes[u] with classes[w] + y acyclic, or -1.  The witness of
// the class-digraph edge u -> w.
int witness_for(const Digraph& G, const std::vector<VertexSet>& cls, int u, int w) {
    for (int y : cls[u].items()) {
        if (is_acyclic_with(G, cls[w], y)) return y;
    }
    return -1;
}

VertexSet union_of(const std::vector<VertexSet>& cls) {
    VertexSet all;
    for (const auto& c : cls) all = all.unite(c);
    return all;
}

// Shape of a family: every class acyclic, sizes equal except possibly one
// class one short and one class one long.
struct Shape {
    bool good = false;   // all sizes equal
    int small = -1;
    int large = -1;
    int s = 0;           // the common size (of the good classes)
};

Shape family_shape(const Digraph& G, const std::vector<VertexSet>& cls) {
    if (cls.empty()) throw invariant_violation("repair invoked on an empty family");
    for (const auto& c : cls) {
        if (!is_acyclic(G, c)) throw invariant_violation("repair family contains a cyclic class");
    }
    int mn = cls[0].size(), mx = cls[0].size();
    for (const auto& c : cls) {
        mn = std::min(mn, c.size());
        mx = std::max(mx, c.size());
    }
    Shape sh;
    if (mn == mx) {
        sh.good = true;
        sh.s = mn;
        return sh;
    }
    if (mx != mn + 2) throw invariant_violation("repair family sizes are not nearly equitable");
    sh.s = mn + 1;
    for (int i = 0; i < static_cast<int>(cls.size()); ++i) {
        if (cls[i].size() == mn) {
            if (sh.small >= 0) throw invariant_violation("repair family has two short classes");
            sh.small = i;
        } else if (cls[i].size() == mx) {
            if (sh.large >= 0) throw invariant_violation("repair family has two long classes");
            sh.large = i;
        }
    }
    return sh;
}

// Memoized class-digraph adjacency for one fixed family state.  Entries go
// stale on any class mutation, so contexts are rebuilt per repair pass.
struct AdjMemo {
    const Digraph& G;
    const std::vector<VertexSet>& cls;
    int k;
    std::vector<signed char> memo;  // -1 unknown, 0 no edge, 1 edge

    AdjMemo(const Digraph& g, const std::vector<VertexSet>& c)
        : G(g), cls(c), k(static_cast<int>(c.size())), memo(static_cast<std::size_t>(k) * k, -1) {}

    bool edge(int u, int w) {
        if (u == w) return false;
        signed char& e = memo[static_cast<std::size_t>(u) * k + w];
        if (e < 0) e = witness_for(G, cls, u, w) >= 0 ? 1 : 0;
        return e == 1;
    }
};

// Reverse BFS from the small class.  Fills dist (-1 = cannot reach) level by
// level; if stop_at is a valid class, stops as soon as its distance is known
// and leaves deeper levels unexplored.
void bfs_to_small(AdjMemo& adj, int small, int stop_at, std::vector<int>& dist) {
    dist.assign(adj.k, -1);
    dist[small] = 0;
    std::vector<int> frontier{small};
    int level = 0;
    while (!frontier.empty()) {
        if (stop_at >= 0 && dist[stop_at] < 0) {
            // Probe the target against the current frontier first; the usual
            // case resolves at depth one and skips the full level scan.
            for (int w : frontier) {
                if (adj.edge(stop_at, w)) {
                    dist[stop_at] = level + 1;
                    return;
                }
            }
        }
        std::vector<int> next;
        ++level;
        for (int u = 0; u < adj.k; ++u) {
            if (dist[u] >= 0) continue;
            for (int w : frontier) {
                if (adj.edge(u, w)) {
                    dist[u] = level;
                    next.push_back(u);
                    break;
                }
            }
        }
        if (stop_at >= 0 && dist[stop_at] >= 0) return;
        frontier = std::move(next);
    }
}

// Shortest path from `from` down the BFS levels to the small class, taking
// the lowest-indexed class at every step.
std::vector<int> path_by_levels(AdjMemo& adj, const std::vector<int>& dist, int from) {
    std::vector<int> path{from};
    int cur = from;
    while (dist[cur] > 0) {
        int next = -1;
        for (int z = 0; z < adj.k; ++z) {
            if (dist[z] == dist[cur] - 1 && adj.edge(cur, z)) {
                next = z;
                break;
            }
        }
        if (next < 0) throw invariant_violation("class path reconstruction lost the trail");
        path.push_back(next);
        cur = next;
    }
    return path;
}

// Moves one witness per hop along path (large end first).  Witnesses are
// recomputed against the mutated classes; the original witness of each hop
// is still present when its turn comes, so a witness always exists.
void switch_along(const Digraph& G, std::vector<VertexSet>& cls, const std::vector<int>& path,
                  EngineStats* st) {
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
        int y = witness_for(G, cls, path[j], path[j + 1]);
        if (y < 0) throw invariant_violation("witness vanished while switching along a class path");
        cls[path[j]].erase(y);
        cls[path[j + 1]].insert(y);
        if (st) ++st->witness_moves;
    }
}

std::string diag_for_family(const Digraph& G, const std::vector<VertexSet>& cls);

std::vector<VertexSet> repair_family(const Digraph& G, std::vector<VertexSet> cls,
                                     EngineStats* st, int depth);

// Step used by both split constructions: good coloring of the classes that
// reach the small one, minus W, after moving `mover` out of W into the
// lowest-indexed reaching class it does not block.
std::vector<VertexSet> rebalance_reach_side(const Digraph& G, const std::vector<VertexSet>& cls,
                                            const std::vector<int>& reach, int W, int mover,
                                            EngineStats* st, int depth) {
    int target = -1;
    for (int u : reach) {
        if (u != W && is_acyclic_with(G, cls[u], mover)) {
            target = u;
            break;
        }
    }
    if (target < 0) throw invariant_violation("movable vertex has no receiving class");
    std::vector<VertexSet> F;
    F.reserve(reach.size() - 1);
    for (int u : reach) {
        if (u == W) continue;
        F.push_back(u == target ? cls[u].with(mover) : cls[u]);
    }
    return repair_family(G, std::move(F), st, depth + 1);
}

// Good coloring of the non-reaching side with y removed from its class.
std::vector<VertexSet> rebalance_other_side(const Digraph& G, const std::vector<VertexSet>& cls,
                                            const std::vector<int>& others, int y,
                                            EngineStats* st, int depth) {
    std::vector<VertexSet> F;
    F.reserve(others.size());
    for (int u : others) {
        F.push_back(cls[u].contains(y) ? cls[u].without(y) : cls[u]);
    }
    return repair_family(G, std::move(F), st, depth + 1);
}

// Turns a nearly equitable family into an equitable one.  Strategy:
//   1. if the long class reaches the short one in the class digraph, switch
//      witnesses along a shortest path;
//   2. otherwise find a terminal reaching class W, a vertex x in W and an
//      outside vertex y with W - x + y acyclic, and split: either x moves to
//      another reaching class directly, or a second vertex x' moves instead
//      and x is re-seated on the other side; both sides are repaired
//      recursively and reassembled;
//   3. if no such configuration exists the degree precondition was violated.
std::vector<VertexSet> repair_family(const Digraph& G, std::vector<VertexSet> cls,
                                     EngineStats* st, int depth) {
    if (st) st->max_depth = std::max(st->max_depth, depth);
    Shape sh = family_shape(G, cls);
    if (sh.good) return cls;
    const int k = static_cast<int>(cls.size());

    AdjMemo adj(G, cls);
    std::vector<int> dist;
    bfs_to_small(adj, sh.small, sh.large, dist);

    if (dist[sh.large] >= 0) {
        std::vector<int> path = path_by_levels(adj, dist, sh.large);
        switch_along(G, cls, path, st);
        if (st) ++st->path_switches;
        for (const auto& c : cls) {
            if (c.size() != sh.s || !is_acyclic(G, c)) {
                throw invariant_violation("path switch produced an invalid class");
            }
        }
        return cls;
    }

    // The long class cannot reach the short one.  dist is now complete, so
    // the reaching side and distances are final.
    std::vector<int> reach, others;
    for (int u = 0; u < k; ++u) (dist[u] >= 0 ? reach : others).push_back(u);
    const int a = static_cast<int>(reach.size());

    // Classes reachable *from* the long class; their members are the
    // second-vertex candidates for the two-vertex split.
    VertexSet coreach_vertices;
    {
        std::vector<char> seen(k, 0);
        std::vector<int> stack{sh.large};
        seen[sh.large] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            coreach_vertices = coreach_vertices.unite(cls[u]);
            for (int w = 0; w < k; ++w) {
                if (!seen[w] && adj.edge(u, w)) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }

    VertexSet outside;
    for (int u : others) outside = outside.unite(cls[u]);

    // Candidate terminal classes, farthest from the short class first.
    std::vector<int> terminals;
    for (int W : reach) {
        if (W == sh.small) continue;
        // W is terminal when removing it keeps every other reaching class
        // connected to the short one.
        std::vector<char> ok(k, 0);
        ok[sh.small] = 1;
        std::vector<int> stack{sh.small};
        int seen_count = 1;
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            for (int u : reach) {
                if (u == W || ok[u]) continue;
                if (adj.edge(u, w)) {
                    ok[u] = 1;
                    ++seen_count;
                    stack.push_back(u);
                }
            }
        }
        if (seen_count == a - 1) terminals.push_back(W);
    }
    std::stable_sort(terminals.begin(), terminals.end(),
                     [&](int l, int r) { return dist[l] != dist[r] ? dist[l] > dist[r] : l < r; });

    for (int W : terminals) {
        // q(x): how many other reaching classes accept x.
        const auto& wverts = cls[W].items();
        std::vector<int> q(wverts.size(), 0);
        for (std::size_t i = 0; i < wverts.size(); ++i) {
            for (int u : reach) {
                if (u != W && is_acyclic_with(G, cls[u], wverts[i])) ++q[i];
            }
        }
        std::vector<std::size_t> xs(wverts.size());
        std::iota(xs.begin(), xs.end(), 0u);
        std::stable_sort(xs.begin(), xs.end(), [&](std::size_t l, std::size_t r) {
            return q[l] != q[r] ? q[l] > q[r] : wverts[l] < wverts[r];
        });

        std::vector<int> ys = outside.items();
        std::vector<int> weight(ys.size());
        for (std::size_t i = 0; i < ys.size(); ++i) weight[i] = G.arcs_between(ys[i], cls[W]);
        std::vector<std::size_t> yo(ys.size());
        std::iota(yo.begin(), yo.end(), 0u);
        std::stable_sort(yo.begin(), yo.end(), [&](std::size_t l, std::size_t r) {
            return weight[l] != weight[r] ? weight[l] < weight[r] : ys[l] < ys[r];
        });

        for (std::size_t xi : xs) {
            const int x = wverts[xi];
            VertexSet Wx = cls[W].without(x);
            for (std::size_t yi : yo) {
                const int y = ys[yi];
                if (!is_acyclic_with(G, Wx, y)) continue;

                if (q[xi] > 0) {
                    // x itself moves to another reaching class; the vacated
                    // seat takes y and both sides rebalance.
                    auto g1 = rebalance_reach_side(G, cls, reach, W, x, st, depth);
                    VertexSet Wp = Wx.with(y);
                    auto g2 = rebalance_other_side(G, cls, others, y, st, depth);
                    if (st) ++st->class_splits;
                    std::vector<VertexSet> out = std::move(g1);
                    out.push_back(std::move(Wp));
                    for (auto& c : g2) out.push_back(std::move(c));
                    return out;
                }

                // x is stuck: look for a second outside vertex compatible
                // with W - x + y, seat both, and re-home x on the far side.
                VertexSet Wxy = Wx.with(y);
                for (int y2 : coreach_vertices.items()) {
                    if (y2 == y || !is_acyclic_with(G, Wxy, y2)) continue;

                    int x2 = -1;
                    for (std::size_t j = 0; j < wverts.size(); ++j) {
                        if (wverts[j] != x && q[j] > 0) {
                            x2 = wverts[j];
                            break;
                        }
                    }
                    if (x2 < 0) {
                        throw invariant_violation(
                            "terminal class has no movable vertex\n" + diag_for_family(G, cls));
                    }

                    auto g1 = rebalance_reach_side(G, cls, reach, W, x2, st, depth);
                    VertexSet Wp = Wxy.without(x2);  // W - x - x2 + y, one short
                    auto g2 = rebalance_other_side(G, cls, others, y, st, depth);

                    // Re-seat x: x was unmovable, so it is heavily tied to the
                    // reaching side and has few arcs here; some class of the
                    // far side plus Wp accepts it.
                    int seat = -1;
                    for (std::size_t z = 0; z < g2.size(); ++z) {
                        if (is_acyclic_with(G, g2[z], x)) {
                            seat = static_cast<int>(z);
                            break;
                        }
                    }
                    std::vector<VertexSet> F3 = std::move(g2);
                    std::vector<VertexSet> g3;
                    if (seat < 0) {
                        if (!is_acyclic_with(G, Wp, x)) {
                            throw invariant_violation(
                                "displaced vertex fits no class on the far side\n" +
                                diag_for_family(G, cls));
                        }
                        F3.push_back(Wp.with(x));  // sizes already equal
                        g3 = std::move(F3);
                    } else {
                        F3[seat] = F3[seat].with(x);
                        F3.push_back(Wp);  // short class last; long class at seat
                        g3 = repair_family(G, std::move(F3), st, depth + 1);
                    }
                    if (st) ++st->class_splits;
                    std::vector<VertexSet> out = std::move(g1);
                    for (auto& c : g3) out.push_back(std::move(c));
                    return out;
                }
            }
        }
    }

    throw invariant_violation("repair exhausted every avenue; degree precondition must fail\n" +
                              diag_for_family(G, cls));
}

std::string diag_for_family(const Digraph& G, const std::vector<VertexSet>& cls) {
    Coloring c = validate_coloring_of(G, cls, union_of(cls));
    return repair_diagnostics(G, c);
}

// Lowest-impact target class for a vertex whose own class went cyclic: some
// class with no arcs to u in one direction (then u cannot lie on a new
// cycle), fewest total arcs to u, lowest index.  -1 if none exists, which
// d(u) <= 2k-1 rules out.
int pick_move_class(const Digraph& D, const std::vector<VertexSet>& cls, int u, int skip) {
    int best = -1, best_arcs = -1;
    for (int j = 0; j < static_cast<int>(cls.size()); ++j) {
        if (j == skip) continue;
        int in = D.arcs_from(u, cls[j]);
        int out = D.arcs_to(u, cls[j]);
        if (in != 0 && out != 0) continue;
        if (best < 0 || in + out < best_arcs) {
            best = j;
            best_arcs = in + out;
        }
    }
    return best;
}

}  // namespace

std::pair<Digraph, int> pad_to_divisible(const Digraph& D, int k) {
    if (k <= 0) throw precondition_error("class count must be positive");
    const int n = D.size();
    const int p = (k - n % k) % k;
    Digraph P(n + p);
    for (auto [u, v] : D.edges()) P.add_edge(u, v);
    for (int i = n; i < n + p; ++i) {
        for (int j = i + 1; j < n + p; ++j) {
            P.add_edge(i, j);
            P.add_edge(j, i);
        }
    }
    return {std::move(P), p};
}

Coloring insert_vertex_edges(const Digraph& D, const Coloring& before, int u) {
    const auto& cls = before.classes;
    const int k = static_cast<int>(cls.size());
    if (k <= 0) throw precondition_error("insertion requires at least one class");
    if (u < 0 || u >= D.size()) throw precondition_error("inserted vertex is out of range");

    int cu = -1;
    int total = 0;
    for (int j = 0; j < k; ++j) {
        total += cls[j].size();
        if (cls[j].contains(u)) cu = j;
        if (cls[j].size() != cls[0].size()) {
            throw precondition_error("insertion requires equal class sizes");
        }
    }
    if (cu < 0) throw precondition_error("inserted vertex is not in any class");
    if (total != D.size()) throw precondition_error("classes must partition the vertex set");
    if (D.degree(u) > 2 * k - 1) {
        throw precondition_error("inserted vertex degree exceeds 2k-1");
    }
    for (int j = 0; j < k; ++j) {
        const VertexSet& body = j == cu ? cls[j].without(u) : cls[j];
        if (!is_acyclic(D, body)) {
            throw precondition_error("classes are not acyclic before the insertion");
        }
    }

    if (is_acyclic(D, cls[cu])) {
        Coloring out;
        out.classes = cls;
        out.status = ColoringStatus::good;
        return out;
    }

    int w = pick_move_class(D, cls, u, cu);
    if (w < 0) throw invariant_violation("no receiving class despite the degree bound");
    Coloring out;
    out.classes = cls;
    out.classes[cu].erase(u);
    out.classes[w].insert(u);
    out.status = ColoringStatus::useful;
    out.small_index = cu;
    out.large_index = w;
    return out;
}

ClassGraphSnapshot build_snapshot(const Digraph& D, const Coloring& useful) {
    Coloring v = validate_coloring_of(D, useful.classes, union_of(useful.classes));
    if (v.status != ColoringStatus::useful) {
        throw precondition_error("snapshot requires a nearly equitable coloring");
    }
    const auto& cls = v.classes;
    const int k = static_cast<int>(cls.size());

    ClassGraphSnapshot snap;
    snap.small_index = v.small_index;
    snap.large_index = v.large_index;
    snap.witnesses.assign(k, std::vector<std::vector<int>>(k));
    for (int u = 0; u < k; ++u) {
        for (int w = 0; w < k; ++w) {
            if (u == w) continue;
            for (int y : cls[u].items()) {
                if (is_acyclic_with(D, cls[w], y)) snap.witnesses[u][w].push_back(y);
            }
        }
    }
    auto edge = [&](int u, int w) { return u != w && !snap.witnesses[u][w].empty(); };

    snap.dist_to_small.assign(k, -1);
    snap.dist_to_small[v.small_index] = 0;
    {
        std::vector<int> frontier{v.small_index};
        int level = 0;
        while (!frontier.empty()) {
            std::vector<int> next;
            ++level;
            for (int u = 0; u < k; ++u) {
                if (snap.dist_to_small[u] >= 0) continue;
                for (int w : frontier) {
                    if (edge(u, w)) {
                        snap.dist_to_small[u] = level;
                        next.push_back(u);
                        break;
                    }
                }
            }
            frontier = std::move(next);
        }
    }
    snap.reaches_small.assign(k, 0);
    int a = 0;
    for (int u = 0; u < k; ++u) {
        if (snap.dist_to_small[u] >= 0) {
            snap.reaches_small[u] = 1;
            ++a;
        }
    }

    snap.terminal.assign(k, 0);
    for (int W = 0; W < k; ++W) {
        if (!snap.reaches_small[W]) continue;
        if (W == v.small_index) {
            snap.terminal[W] = a == 1;
            continue;
        }
        std::vector<char> ok(k, 0);
        ok[v.small_index] = 1;
        std::vector<int> stack{v.small_index};
        int seen = 1;
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            for (int u = 0; u < k; ++u) {
                if (!snap.reaches_small[u] || u == W || ok[u] || !edge(u, w)) continue;
                ok[u] = 1;
                ++seen;
                stack.push_back(u);
            }
        }
        snap.terminal[W] = seen == a - 1;
    }

    snap.reachable_from_large.assign(k, 0);
    {
        std::vector<int> stack{v.large_index};
        snap.reachable_from_large[v.large_index] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w = 0; w < k; ++w) {
                if (!snap.reachable_from_large[w] && edge(u, w)) {
                    snap.reachable_from_large[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }

    snap.movability.assign(k, {});
    for (int c = 0; c < k; ++c) {
        if (!snap.reaches_small[c]) continue;
        for (int x : cls[c].items()) {
            int q = 0;
            for (int u = 0; u < k; ++u) {
                if (u != c && snap.reaches_small[u] && is_acyclic_with(D, cls[u], x)) ++q;
            }
            snap.movability[c].emplace_back(x, q);
        }
    }
    return snap;
}

Coloring switch_witness_path(const Digraph& D, const Coloring& useful,
                             const std::vector<int>& class_path) {
    Coloring v = validate_coloring_of(D, useful.classes, union_of(useful.classes));
    if (v.status != ColoringStatus::useful) {
        throw precondition_error("witness switching requires a nearly equitable coloring");
    }
    const int k = static_cast<int>(v.classes.size());
    if (class_path.size() < 2) throw precondition_error("class path needs at least two classes");
    std::vector<char> seen(k, 0);
    for (int c : class_path) {
        if (c < 0 || c >= k) throw precondition_error("class path index out of range");
        if (seen[c]) throw precondition_error("class path repeats a class");
        seen[c] = 1;
    }
    if (class_path.front() != v.large_index || class_path.back() != v.small_index) {
        throw precondition_error("class path must run from the long class to the short class");
    }

    std::vector<VertexSet> cls = v.classes;
    for (std::size_t j = 0; j + 1 < class_path.size(); ++j) {
        int y = witness_for(D, cls, class_path[j], class_path[j + 1]);
        if (y < 0) {
            throw precondition_error("stale class path: no witness from class " +
                                     std::to_string(class_path[j]) + " into class " +
                                     std::to_string(class_path[j + 1]));
        }
        cls[class_path[j]].erase(y);
        cls[class_path[j + 1]].insert(y);
    }
    Coloring out = validate_coloring_of(D, cls, union_of(cls));
    if (out.status != ColoringStatus::good) {
        throw invariant_violation("witness switching left the coloring unbalanced");
    }
    return out;
}

Coloring repair(const Digraph& D, const Coloring& useful, EngineStats* stats) {
    Coloring v = validate_coloring_of(D, useful.classes, union_of(useful.classes));
    if (v.status == ColoringStatus::good) return v;
    if (v.status != ColoringStatus::useful) {
        throw precondition_error("repair requires a nearly equitable coloring");
    }
    if (stats) ++stats->repairs;
    auto out = repair_family(D, v.classes, stats, 0);
    Coloring r = validate_coloring_of(D, out, union_of(out));
    if (r.status != ColoringStatus::good) {
        throw invariant_violation("repair finished with an unbalanced coloring");
    }
    return r;
}

CrossingCounts EdgeClassification::counts(int a_class, int b_vertex) const {
    CrossingCounts c;
    for (const auto& e : arcs) {
        if (e.a_class != a_class || e.b_vertex != b_vertex) continue;
        if (e.inbound) {
            ++c.arcs_in;
            c.vital_in += e.vital;
            c.lonely_in += e.lonely;
            c.solo_in += e.solo;
        } else {
            ++c.arcs_out;
            c.vital_out += e.vital;
            c.lonely_out += e.lonely;
            c.solo_out += e.solo;
        }
    }
    return c;
}

namespace {

// Is there a directed path from `from` to `to` inside S?  Used to decide
// whether an arc lies on a cycle of G[S]: arc (t,h) does iff h reaches t.
bool reaches_within(const Digraph& D, const VertexSet& S, int from, int to) {
    if (from == to) return true;
    std::vector<int> stack{from};
    std::vector<char> seen(S.size(), 0);
    auto ord = [&](int v) {
        const auto& it = S.items();
        return static_cast<int>(std::lower_bound(it.begin(), it.end(), v) - it.begin());
    };
    seen[ord(from)] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : S.items()) {
            if (!D.has_edge(u, w) || seen[ord(w)]) continue;
            if (w == to) return true;
            seen[ord(w)] = 1;
            stack.push_back(w);
        }
    }
    return false;
}

}  // namespace

EdgeClassification classify_edges(const Digraph& D, const Coloring& useful,
                                  const ClassGraphSnapshot& snap) {
    const auto& cls = useful.classes;
    const int k = static_cast<int>(cls.size());
    if (static_cast<int>(snap.reaches_small.size()) != k) {
        throw precondition_error("snapshot does not match the coloring");
    }
    VertexSet bverts;
    for (int c = 0; c < k; ++c) {
        if (!snap.reaches_small[c]) bverts = bverts.unite(cls[c]);
    }

    EdgeClassification out;
    for (int c = 0; c < k; ++c) {
        if (!snap.reaches_small[c]) continue;
        for (int y : bverts.items()) {
            VertexSet S = cls[c].with(y);
            std::vector<CrossingArc> local;
            for (int w : cls[c].items()) {
                for (bool in : {true, false}) {
                    int t = in ? y : w, h = in ? w : y;
                    if (!D.has_edge(t, h)) continue;
                    CrossingArc e;
                    e.tail = t;
                    e.head = h;
                    e.a_class = c;
                    e.b_vertex = y;
                    e.inbound = in;
                    e.vital = reaches_within(D, S, h, t);
                    local.push_back(e);
                }
            }
            int vin = 0, vout = 0, ain = 0, aout = 0;
            for (const auto& e : local) {
                (e.inbound ? ain : aout) += 1;
                if (e.vital) (e.inbound ? vin : vout) += 1;
            }
            for (auto& e : local) {
                e.lonely = e.vital && (e.inbound ? vin == 1 : vout == 1);
                e.solo = e.inbound ? ain == 1 : aout == 1;
                out.arcs.push_back(e);
            }
        }
    }
    return out;
}

std::string repair_diagnostics(const Digraph& D, const Coloring& useful) {
    Coloring v = validate_coloring_of(D, useful.classes, union_of(useful.classes));
    std::ostringstream os;
    os << "coloring status: " << to_string(v.status) << "\n";
    if (v.status != ColoringStatus::useful) return os.str();

    ClassGraphSnapshot snap = build_snapshot(D, v);
    const int k = v.k();
    int a = 0, aprime = 0, bprime = 0;
    for (int c = 0; c < k; ++c) {
        a += snap.reaches_small[c];
        aprime += snap.terminal[c];
        bprime += snap.reachable_from_large[c];
    }
    const int b = k - a;
    os << "classes: " << k << ", short #" << v.small_index << ", long #" << v.large_index << "\n";
    os << "reaching side: " << a << " classes (" << aprime << " terminal), far side: " << b
       << " classes (" << bprime << " reachable from the long class)\n";
    os << "long class reaches short: " << (snap.reaches_small[v.large_index] ? "yes" : "no")
       << "\n";

    DegreeStats ds = degree_stats(D);
    os << "max total degree " << ds.max_total << " vs bound " << 2 * k - 1 << "\n";

    EdgeClassification ec = classify_edges(D, v, snap);
    VertexSet bverts;
    for (int c = 0; c < k; ++c) {
        if (!snap.reaches_small[c]) bverts = bverts.unite(v.classes[c]);
    }
    int violations = 0;
    for (int c = 0; c < k && violations < 20; ++c) {
        if (!snap.reaches_small[c]) continue;
        for (int y : bverts.items()) {
            if (is_acyclic_with(D, v.classes[c], y)) {
                os << "unblocked: vertex " << y << " fits reaching class #" << c << "\n";
                ++violations;
                continue;
            }
            CrossingCounts cc = ec.counts(c, y);
            if (cc.vital_in < 1 || cc.vital_out < 1) {
                os << "vital-arc shortfall at class #" << c << ", vertex " << y << ": in "
                   << cc.vital_in << ", out " << cc.vital_out << "\n";
                ++violations;
            }
            if (cc.vital() + cc.lonely() < 4) {
                os << "vital+lonely below 4 at class #" << c << ", vertex " << y << "\n";
                ++violations;
            }
            if (cc.arcs() + cc.solo() < 4) {
                os << "arcs+solo below 4 at class #" << c << ", vertex " << y << "\n";
                ++violations;
            }
        }
    }
    if (violations == 0) os << "all structural crossing-arc facts hold\n";
    return os.str();
}

Coloring equitable_acyclic_coloring(const Digraph& D, int k, const ColoringOptions& opts,
                                    EngineStats* stats) {
    if (k <= 0) throw precondition_error("class count must be positive");
    DegreeStats ds = degree_stats(D);
    if (ds.max_total > 2 * k - 1) {
        if (opts.strict) {
            throw precondition_error("max total degree " + std::to_string(ds.max_total) +
                                     " exceeds 2k-1 = " + std::to_string(2 * k - 1));
        }
        // Non-strict: try anyway; failures surface as no_solution_found.
    }

    auto [G, pads] = pad_to_divisible(D, k);
    const int n = D.size();
    const int np = G.size();
    const int s = np / k;
    EngineStats local;
    EngineStats* st = stats ? stats : &local;
    *st = EngineStats{};
    st->pad_count = pads;

    std::vector<VertexSet> cls(k);
    std::vector<int> vclass(np, -1);
    for (int j = 0; j < k; ++j) {
        cls[j] = VertexSet::range(j * s, (j + 1) * s);
        for (int v : cls[j].items()) vclass[v] = j;
    }

    std::vector<int> order(np);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
        return G.degree(l) != G.degree(r) ? G.degree(l) > G.degree(r) : l < r;
    });

    // Grow the graph one vertex at a time, keeping every class acyclic and
    // all sizes equal.  `cur` holds the arcs among processed vertices only.
    Digraph cur(np);
    std::vector<char> processed(np, 0);
    try {
        for (int u : order) {
            for (int v = 0; v < np; ++v) {
                if (!processed[v]) continue;
                if (G.has_edge(u, v)) cur.add_edge(u, v);
                if (G.has_edge(v, u)) cur.add_edge(v, u);
            }
            processed[u] = 1;
            ++st->insertions;

            const int cu = vclass[u];
            if (is_acyclic(cur, cls[cu])) continue;

            int w = pick_move_class(cur, cls, u, cu);
            if (w < 0) {
                // Impossible under the degree bound; reachable only on an
                // over-degree instance let through in non-strict mode.
                throw invariant_violation("vertex " + std::to_string(u) +
                                          " fits no class after inserting its arcs");
            }
            cls[cu].erase(u);
            cls[w].insert(u);
            ++st->moves;
            ++st->repairs;
            cls = repair_family(cur, std::move(cls), st, 0);
            for (int j = 0; j < k; ++j) {
                for (int v : cls[j].items()) vclass[v] = j;
            }
        }
    } catch (const invariant_violation&) {
        if (opts.strict) throw;
        throw no_solution_found("no good coloring found: search dead-ended on an over-degree instance");
    }

    // Drop the pads.  Pad vertices pairwise form 2-cycles, so no class holds
    // two of them and every class shrinks by at most one.
    std::vector<VertexSet> final_classes;
    final_classes.reserve(cls.size());
    for (const auto& c : cls) {
        VertexSet r;
        for (int v : c.items()) {
            if (v < n) r.insert(v);
        }
        if (c.size() - r.size() > 1) {
            throw invariant_violation("two pad vertices shared an acyclic class");
        }
        final_classes.push_back(std::move(r));
    }

    Coloring out = validate_coloring(D, final_classes);
    if (out.status != ColoringStatus::good) {
        throw invariant_violation("final coloring failed certification");
    }
    return out;
}

}  // namespace equitile
