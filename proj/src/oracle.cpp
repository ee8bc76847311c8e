#include "equitile/oracle.hpp"

#include <algorithm>
#include <set>

#include "equitile/errors.hpp"
#include "equitile/tiling.hpp"

namespace equitile {

namespace {

struct NodeCounter {
    std::uint64_t nodes = 0;
    std::uint64_t limit;
    explicit NodeCounter(std::uint64_t lim) : limit(lim) {}
    void tick() {
        if (++nodes > limit) throw budget_exceeded("oracle search exceeded node budget");
    }
};

void check_order(int n, const OracleBudget& b, const char* what) {
    if (n > b.max_vertices)
        throw budget_exceeded(std::string(what) + ": order " + std::to_string(n) +
                              " exceeds oracle limit " + std::to_string(b.max_vertices));
}

// ---- equitable acyclic coloring ------------------------------------------

struct EqSearch {
    const Digraph& D;
    int k;
    int cap_small, cap_large;  // floor(n/k), ceil(n/k)
    int large_quota;           // how many classes may reach cap_large
    std::vector<VertexSet> classes;
    NodeCounter counter;

    EqSearch(const Digraph& d, int kk, std::uint64_t budget)
        : D(d), k(kk), counter(budget) {
        int n = D.size();
        cap_small = n / k;
        cap_large = (n + k - 1) / k;
        large_quota = n % k == 0 ? 0 : n % k;
        classes.assign(k, {});
    }

    bool place(int v) {
        if (v == D.size()) return true;
        counter.tick();
        int at_large = 0;
        for (const auto& c : classes)
            if (c.size() == cap_large && cap_large != cap_small) ++at_large;
        for (int j = 0; j < k; ++j) {
            int sz = classes[j].size();
            int cap = (at_large < large_quota) ? cap_large : cap_small;
            if (sz >= cap) continue;
            // Symmetry breaking: only the first empty class may be opened.
            if (sz == 0 && j > 0 && classes[j - 1].empty()) break;
            if (!is_acyclic_with(D, classes[j], v)) continue;
            classes[j].insert(v);
            if (place(v + 1)) return true;
            classes[j].erase(v);
        }
        return false;
    }
};

// ---- factor search --------------------------------------------------------

bool spans_transitive(const Digraph& D, const std::vector<int>& tile);

bool tile_ok(const Digraph& D, const std::vector<int>& tile, TilePredicate pred) {
    switch (pred) {
        case TilePredicate::transitive:
            return spans_transitive(D, tile);
        case TilePredicate::cyclic_triangle: {
            const int a = tile[0], b = tile[1], c = tile[2];
            return (D.has_edge(a, b) && D.has_edge(b, c) && D.has_edge(c, a)) ||
                   (D.has_edge(a, c) && D.has_edge(c, b) && D.has_edge(b, a));
        }
        case TilePredicate::any_tournament:
            for (std::size_t i = 0; i < tile.size(); ++i)
                for (std::size_t j = i + 1; j < tile.size(); ++j)
                    if (!D.has_edge(tile[i], tile[j]) && !D.has_edge(tile[j], tile[i]))
                        return false;
            return true;
        default:
            return false;  // mixed handled by the caller
    }
}

// Spanning transitive tournament via permutation backtracking: build the
// order greedily, each appended vertex must receive arcs from all earlier.
bool spans_transitive_rec(const Digraph& D, const std::vector<int>& tile,
                          std::vector<int>& order, std::vector<char>& used) {
    if (order.size() == tile.size()) return true;
    for (std::size_t i = 0; i < tile.size(); ++i) {
        if (used[i]) continue;
        bool ok = true;
        for (int prev : order)
            if (!D.has_edge(prev, tile[i])) { ok = false; break; }
        if (!ok) continue;
        used[i] = 1;
        order.push_back(tile[i]);
        if (spans_transitive_rec(D, tile, order, used)) return true;
        order.pop_back();
        used[i] = 0;
    }
    return false;
}

bool spans_transitive(const Digraph& D, const std::vector<int>& tile) {
    std::vector<int> order;
    std::vector<char> used(tile.size(), 0);
    return spans_transitive_rec(D, tile, order, used);
}

}  // namespace

std::optional<std::vector<VertexSet>> oracle_equitable_acyclic(const Digraph& D, int k,
                                                               const OracleBudget& budget) {
    if (k <= 0) throw precondition_error("class count must be positive");
    check_order(D.size(), budget, "oracle_equitable_acyclic");
    if (D.size() == 0) return std::vector<VertexSet>(k);
    EqSearch s(D, k, budget.max_nodes);
    if (s.place(0)) return s.classes;
    return std::nullopt;
}

TilePredicate tile_predicate_from_string(const std::string& s) {
    if (s == "transitive") return TilePredicate::transitive;
    if (s == "cyclic" || s == "cyclic_triangle") return TilePredicate::cyclic_triangle;
    if (s == "any" || s == "any_tournament") return TilePredicate::any_tournament;
    if (s == "mixed") return TilePredicate::mixed;
    throw precondition_error("unknown tile predicate '" + s + "'");
}

namespace {

// Anchored partition search: the lowest unused vertex always leads the next
// tile, which kills tile-order symmetry.  Successful tiles are recorded.
struct FactorRecorder {
    const Digraph& D;
    int s;
    TilePredicate pred;
    MixedCounts mixed;
    std::vector<char> used;
    std::vector<VertexSet> tiles;
    NodeCounter counter;

    FactorRecorder(const Digraph& d, int ss, TilePredicate p, MixedCounts mc, std::uint64_t b)
        : D(d), s(ss), pred(p), mixed(mc), used(d.size(), 0), counter(b) {}

    bool run() { return search(0, 0); }

    bool search(int pc, int pt) {
        int anchor = -1;
        for (int v = 0; v < D.size(); ++v)
            if (!used[v]) { anchor = v; break; }
        if (anchor == -1) return true;
        counter.tick();

        std::vector<int> rest;
        for (int v = anchor + 1; v < D.size(); ++v)
            if (!used[v]) rest.push_back(v);

        std::vector<int> pick(s - 1);
        std::vector<int> tile(s);
        tile[0] = anchor;
        return choose(rest, 0, 0, pick, tile, pc, pt);
    }

    bool choose(const std::vector<int>& rest, int idx, int from, std::vector<int>& pick,
                std::vector<int>& tile, int pc, int pt) {
        if (idx == s - 1) {
            for (int i = 0; i < s - 1; ++i) tile[i + 1] = pick[i];
            auto try_commit = [&](int npc, int npt) {
                for (int v : tile) used[v] = 1;
                tiles.emplace_back(tile);
                if (search(npc, npt)) return true;
                tiles.pop_back();
                for (int v : tile) used[v] = 0;
                return false;
            };
            if (pred == TilePredicate::mixed) {
                // A dense triple may span both kinds; try either assignment
                // within its quota.
                bool is_cyc = tile_ok(D, tile, TilePredicate::cyclic_triangle);
                bool is_tt = spans_transitive(D, tile);
                if (is_cyc && pc + 1 <= mixed.cyclic && try_commit(pc + 1, pt)) return true;
                if (is_tt && pt + 1 <= mixed.transitive && try_commit(pc, pt + 1)) return true;
                return false;
            }
            if (!tile_ok(D, tile, pred)) return false;
            return try_commit(pc, pt);
        }
        for (int i = from; i < static_cast<int>(rest.size()); ++i) {
            pick[idx] = rest[i];
            if (choose(rest, idx + 1, i + 1, pick, tile, pc, pt)) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<VertexSet>> oracle_factor(const Digraph& D, int s, TilePredicate pred,
                                                    const MixedCounts& mixed,
                                                    const OracleBudget& budget) {
    if (s <= 0) throw precondition_error("tile order must be positive");
    if (D.size() % s != 0)
        throw precondition_error("order " + std::to_string(D.size()) +
                                 " not divisible by tile order " + std::to_string(s));
    if (pred == TilePredicate::cyclic_triangle && s != 3)
        throw precondition_error("cyclic triangle tiles require s = 3");
    if (pred == TilePredicate::mixed) {
        if (s != 3) throw precondition_error("mixed tiles require s = 3");
        if ((mixed.cyclic + mixed.transitive) * 3 != D.size())
            throw precondition_error("mixed counts must sum to |D|/3");
    }
    check_order(D.size(), budget, "oracle_factor");
    FactorRecorder rec(D, s, pred, mixed, budget.max_nodes);
    if (rec.run()) return rec.tiles;
    return std::nullopt;
}

// ---- universal cliques ----------------------------------------------------

namespace {

// Canonical code of a labeled tournament on s vertices: minimum adjacency
// bitstring over all vertex permutations.
std::uint64_t tournament_canon(int s, std::uint64_t code) {
    std::vector<int> perm(s);
    for (int i = 0; i < s; ++i) perm[i] = i;
    auto bit_at = [&](std::uint64_t c, int i, int j) {  // arc i->j, i<j ordering packed
        int idx = 0;
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b) {
                if (a == i && b == j) return (c >> idx) & 1ULL;
                ++idx;
            }
        return 0ULL;  // unreachable
    };
    std::uint64_t best = ~0ULL;
    do {
        std::uint64_t c = 0;
        int idx = 0;
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b) {
                int pa = perm[a], pb = perm[b];
                std::uint64_t forward;
                if (pa < pb) forward = bit_at(code, pa, pb);
                else forward = 1ULL - bit_at(code, pb, pa);
                c |= forward << idx;
                ++idx;
            }
        best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Distinct tournaments on s vertices up to isomorphism, cached per order
// (1, 1, 2, 4, 12 for s = 1..5).
const std::vector<std::vector<std::vector<char>>>& tournament_reps(int s) {
    static std::vector<std::vector<std::vector<std::vector<char>>>> cache(6);
    auto& reps = cache[s];
    if (!reps.empty() || s <= 0) return reps;
    int pairs = s * (s - 1) / 2;
    std::set<std::uint64_t> canon;
    for (std::uint64_t code = 0; code < (1ULL << pairs); ++code) {
        std::uint64_t c = tournament_canon(s, code);
        if (canon.insert(c).second) {
            std::vector<std::vector<char>> t(s, std::vector<char>(s, 0));
            int idx = 0;
            for (int a = 0; a < s; ++a)
                for (int b = a + 1; b < s; ++b) {
                    if ((code >> idx) & 1ULL) t[a][b] = 1;
                    else t[b][a] = 1;
                    ++idx;
                }
            reps.push_back(std::move(t));
        }
    }
    return reps;
}

// Does the digraph on `s` vertices given by oriented light arcs embed into
// the tournament (as arc-preserving injection)?  Backtracking over images.
bool embeds(int s, const std::vector<std::pair<int, int>>& arcs,
            const std::vector<std::vector<char>>& tour) {
    std::vector<int> img(s, -1);
    std::vector<char> taken(s, 0);

    auto consistent = [&](int v, int candidate) {
        for (auto [a, b] : arcs) {
            if (a == v && img[b] != -1 && !tour[candidate][img[b]]) return false;
            if (b == v && img[a] != -1 && !tour[img[a]][candidate]) return false;
        }
        return true;
    };

    // Static order 0..s-1 is fine at s <= 5.
    std::vector<int> stack;
    int v = 0;
    std::vector<int> next_cand(s, 0);
    while (true) {
        if (v == s) return true;
        bool advanced = false;
        for (int c = next_cand[v]; c < s; ++c) {
            if (taken[c] || !consistent(v, c)) continue;
            img[v] = c;
            taken[c] = 1;
            next_cand[v] = c + 1;
            ++v;
            if (v < s) next_cand[v] = 0;
            advanced = true;
            break;
        }
        if (advanced) continue;
        next_cand[v] = 0;
        if (v == 0) return false;
        --v;
        taken[img[v]] = 0;
        img[v] = -1;
    }
}

}  // namespace

bool is_universal_clique(const StandardMultigraph& M, const VertexSet& K) {
    int s = K.size();
    if (s > 5)
        throw budget_exceeded("universality check supported for cliques of order <= 5");
    // Complete support is required; the light edges may form any graph (a light
    // cycle is a legitimate query and answers false for s = 3).
    CliqueStatus st = clique_status(M, K, s);
    if (!st.complete) throw precondition_error("universality needs every pair joined by at least one edge");
    if (s <= 1) return true;

    std::vector<int> ks(K.begin(), K.end());
    std::vector<std::pair<int, int>> light;  // indices into ks
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            if (M.is_light(ks[i], ks[j])) light.emplace_back(i, j);

    const auto& reps = tournament_reps(s);

    std::uint64_t orientations = 1ULL << light.size();
    for (std::uint64_t om = 0; om < orientations; ++om) {
        std::vector<std::pair<int, int>> arcs;
        for (std::size_t i = 0; i < light.size(); ++i) {
            auto [a, b] = light[i];
            if ((om >> i) & 1ULL) arcs.emplace_back(b, a);
            else arcs.emplace_back(a, b);
        }
        for (const auto& t : reps)
            if (!embeds(s, arcs, t)) return false;
    }
    return true;
}

CliquePredicate clique_predicate_from_string(const std::string& s) {
    if (s == "full") return CliquePredicate::full;
    if (s == "fit") return CliquePredicate::fit;
    if (s == "near" || s == "near_matching") return CliquePredicate::near_matching;
    if (s == "acceptable") return CliquePredicate::acceptable;
    if (s == "universal") return CliquePredicate::universal;
    throw precondition_error("unknown clique predicate '" + s + "'");
}

namespace {

bool clique_pred_ok(const StandardMultigraph& M, const VertexSet& tile, int s,
                    CliquePredicate pred) {
    if (pred == CliquePredicate::universal) {
        CliqueStatus st = clique_status(M, tile, s);
        if (!st.full) return false;
        return is_universal_clique(M, tile);
    }
    CliqueStatus st = clique_status(M, tile, s);
    switch (pred) {
        case CliquePredicate::full: return st.full;
        case CliquePredicate::fit: return st.fit;
        case CliquePredicate::near_matching: return st.near_matching;
        case CliquePredicate::acceptable: return st.acceptable;
        default: return false;
    }
}

struct TileSearch {
    const StandardMultigraph& M;
    int s;
    CliquePredicate pred;
    std::vector<char> used;
    std::vector<VertexSet> tiles;
    NodeCounter counter;

    TileSearch(const StandardMultigraph& m, int ss, CliquePredicate p, std::uint64_t b)
        : M(m), s(ss), pred(p), used(m.size(), 0), counter(b) {}

    bool search() {
        int anchor = -1;
        for (int v = 0; v < M.size(); ++v)
            if (!used[v]) { anchor = v; break; }
        if (anchor == -1) return true;
        counter.tick();
        std::vector<int> rest;
        for (int v = anchor + 1; v < M.size(); ++v)
            if (!used[v]) rest.push_back(v);
        std::vector<int> tile{anchor};
        return choose(rest, 0, tile);
    }

    bool choose(const std::vector<int>& rest, int from, std::vector<int>& tile) {
        if (static_cast<int>(tile.size()) == s) {
            VertexSet T(tile);
            if (!clique_pred_ok(M, T, s, pred)) return false;
            for (int v : tile) used[v] = 1;
            tiles.push_back(std::move(T));
            if (search()) return true;
            tiles.pop_back();
            for (int v : tile) used[v] = 0;
            return false;
        }
        for (int i = from; i < static_cast<int>(rest.size()); ++i) {
            tile.push_back(rest[i]);
            if (choose(rest, i + 1, tile)) return true;
            tile.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<VertexSet>> oracle_multigraph_tiling(const StandardMultigraph& M, int s,
                                                               CliquePredicate pred,
                                                               const OracleBudget& budget) {
    if (s <= 0) throw precondition_error("tile order must be positive");
    if (M.size() % s != 0)
        throw precondition_error("order " + std::to_string(M.size()) +
                                 " not divisible by tile order " + std::to_string(s));
    check_order(M.size(), budget, "oracle_multigraph_tiling");
    TileSearch ts(M, s, pred, budget.max_nodes);
    if (ts.search()) return ts.tiles;
    return std::nullopt;
}

}  // namespace equitile
