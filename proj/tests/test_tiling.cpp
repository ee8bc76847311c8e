#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "equitile/errors.hpp"
#include "equitile/oracle.hpp"
#include "equitile/rng.hpp"
#include "equitile/tiling.hpp"
#include "test_support.hpp"

using namespace equitile;
namespace ts = testsupport;

namespace {

// From-scratch reference for clique classification, sharing nothing with the
// library version: adjacency by pair scan, forest check by repeated leaf
// removal.
CliqueStatus reference_status(const StandardMultigraph& M, const VertexSet& K, int s) {
    const auto& v = K.items();
    const int m = K.size();
    CliqueStatus st;
    st.complete = true;
    std::vector<std::vector<int>> light(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int mu = M.multiplicity(v[i], v[j]);
            if (mu == 0) st.complete = false;
            if (mu == 1) {
                ++st.light_edges;
                light[i].push_back(j);
                light[j].push_back(i);
            }
        }
    for (int i = 0; i < m; ++i) {
        int d = static_cast<int>(light[i].size());
        st.max_light_degree = std::max(st.max_light_degree, d);
        if (d == 2) ++st.light_degree_two_count;
    }
    // leaf peeling: a graph is a forest iff it can be deleted leaf by leaf
    std::vector<int> deg(m);
    std::vector<char> gone(m, 0);
    for (int i = 0; i < m; ++i) deg[i] = static_cast<int>(light[i].size());
    int left = m;
    bool stuck = false;
    while (left > 0 && !stuck) {
        stuck = true;
        for (int i = 0; i < m; ++i) {
            if (gone[i] || deg[i] > 1) continue;
            gone[i] = 1;
            --left;
            for (int j : light[i])
                if (!gone[j]) --deg[j];
            stuck = false;
        }
    }
    bool forest = left == 0;
    st.full = st.complete && forest;
    st.fit = st.full && 2 * st.light_edges <= std::max(0, 2 * m - s);
    st.near_matching = st.full && (st.max_light_degree <= 1 ||
                                   (m == s && st.max_light_degree <= 2 &&
                                    st.light_degree_two_count <= 1));
    st.acceptable = st.fit || st.near_matching;
    return st;
}

bool same_status(const CliqueStatus& a, const CliqueStatus& b) {
    return a.complete == b.complete && a.full == b.full && a.light_edges == b.light_edges &&
           a.max_light_degree == b.max_light_degree &&
           a.light_degree_two_count == b.light_degree_two_count && a.fit == b.fit &&
           a.near_matching == b.near_matching && a.acceptable == b.acceptable;
}

StandardMultigraph noisy_complete(Rng& rng, int n, double light_p, double zero_p) {
    StandardMultigraph M = StandardMultigraph::complete(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double r = rng.unit();
            if (r < zero_p)
                M.set_multiplicity(u, v, 0);
            else if (r < zero_p + light_p)
                M.set_multiplicity(u, v, 1);
        }
    return M;
}

}  // namespace

TEST_CASE("clique classification of the canonical small shapes") {
    StandardMultigraph M = StandardMultigraph::complete(6);
    VertexSet tri{0, 1, 2};

    CliqueStatus heavy = clique_status(M, tri, 3);
    CHECK(heavy.complete);
    CHECK(heavy.full);
    CHECK(heavy.light_edges == 0);
    CHECK(heavy.fit);
    CHECK(heavy.near_matching);
    CHECK(heavy.acceptable);

    M.set_multiplicity(0, 1, 1);  // one light pair
    CliqueStatus one = clique_status(M, tri, 3);
    CHECK(one.full);
    CHECK(one.light_edges == 1);
    CHECK(one.max_light_degree == 1);
    CHECK(one.fit);
    CHECK(one.near_matching);

    M.set_multiplicity(1, 2, 1);  // light path 0-1-2
    CliqueStatus path = clique_status(M, tri, 3);
    CHECK(path.full);
    CHECK(path.light_edges == 2);
    CHECK(path.max_light_degree == 2);
    CHECK(path.light_degree_two_count == 1);
    CHECK(!path.fit);            // 2 light > (2*3-3)/2
    CHECK(path.near_matching);   // |K| = s with one degree-2 vertex
    CHECK(path.acceptable);

    M.set_multiplicity(0, 2, 1);  // light triangle: not a forest
    CliqueStatus cyc = clique_status(M, tri, 3);
    CHECK(cyc.complete);
    CHECK(!cyc.full);
    CHECK(!cyc.acceptable);

    M.set_multiplicity(0, 2, 0);  // missing pair
    CliqueStatus hole = clique_status(M, tri, 3);
    CHECK(!hole.complete);
    CHECK(!hole.acceptable);

    // light star on four vertices: forest, but the center has degree 3
    StandardMultigraph N = StandardMultigraph::complete(5);
    for (int leaf : {1, 2, 3}) N.set_multiplicity(0, leaf, 1);
    CliqueStatus star = clique_status(N, VertexSet{0, 1, 2, 3}, 4);
    CHECK(star.full);
    CHECK(star.max_light_degree == 3);
    CHECK(!star.fit);
    CHECK(!star.near_matching);

    // perfect light matching on four vertices is both fit and near
    StandardMultigraph P = StandardMultigraph::complete(4);
    P.set_multiplicity(0, 1, 1);
    P.set_multiplicity(2, 3, 1);
    CliqueStatus match = clique_status(P, VertexSet{0, 1, 2, 3}, 4);
    CHECK(match.fit);
    CHECK(match.near_matching);

    // oversized cliques get the relaxed light budget
    StandardMultigraph Q = StandardMultigraph::complete(5);
    Q.set_multiplicity(0, 1, 1);
    Q.set_multiplicity(1, 2, 1);
    Q.set_multiplicity(3, 4, 1);
    CliqueStatus big = clique_status(Q, VertexSet{0, 1, 2, 3, 4}, 3);
    CHECK(big.fit);  // 3 light <= 5 - 3/2

    CHECK_THROWS_AS(clique_status(M, tri, 0), precondition_error);
}

TEST_CASE("clique classification agrees with a from-scratch reference") {
    Rng rng(81);
    for (int round = 0; round < 400; ++round) {
        int n = 3 + rng.below_int(6);
        StandardMultigraph M = noisy_complete(rng, n, 0.35, 0.15);
        int m = 1 + rng.below_int(n);
        std::vector<int> verts(n);
        std::iota(verts.begin(), verts.end(), 0);
        rng.shuffle(verts);
        verts.resize(m);
        VertexSet K{verts};
        int s = 1 + rng.below_int(5);
        CHECK(same_status(clique_status(M, K, s), reference_status(M, K, s)));
    }
}

TEST_CASE("exchange step, exhaustive for singleton cliques against a triple") {
    // X1 = {0}, X2 = {1}, Y = {2,3,4}.  Every multiplicity pattern that
    // meets the preconditions must produce disjoint fit cliques of orders
    // 2 and 3 inside the five vertices.
    const int light_sets[4][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    int checked = 0;
    for (const auto& ylight : light_sets) {
        for (int a0 = 0; a0 <= 2; ++a0)
            for (int a1 = 0; a1 <= 2; ++a1)
                for (int a2 = 0; a2 <= 2; ++a2) {
                    if (a0 + a1 + a2 < 5) continue;  // X1 bound: 2(s-1)t + 1
                    for (int b0 = 0; b0 <= 2; ++b0)
                        for (int b1 = 0; b1 <= 2; ++b1)
                            for (int b2 = 0; b2 <= 2; ++b2) {
                                if (b0 + b1 + b2 < 4) continue;  // X2 bound
                                StandardMultigraph M = StandardMultigraph::complete(5);
                                const int yv[3] = {2, 3, 4};
                                const int ypair[3][2] = {{2, 3}, {2, 4}, {3, 4}};
                                for (int e = 0; e < 3; ++e)
                                    if (ylight[e]) M.set_multiplicity(ypair[e][0], ypair[e][1], 1);
                                const int am[3] = {a0, a1, a2};
                                const int bm[3] = {b0, b1, b2};
                                for (int e = 0; e < 3; ++e) {
                                    M.set_multiplicity(0, yv[e], am[e]);
                                    M.set_multiplicity(1, yv[e], bm[e]);
                                }
                                VertexSet X1{0}, X2{1}, Y{2, 3, 4};
                                REQUIRE(clique_status(M, Y, 3).fit);
                                ImproveResult r = improve(M, X1, X2, Y, 3);
                                CHECK(r.grown.size() == 2);
                                CHECK(r.rebuilt.size() == 3);
                                CHECK(!r.grown.intersects(r.rebuilt));
                                VertexSet all = X1.unite(X2).unite(Y);
                                for (int v : r.grown.items()) CHECK(all.contains(v));
                                for (int v : r.rebuilt.items()) CHECK(all.contains(v));
                                CHECK(clique_status(M, r.grown, 3).fit);
                                CHECK(clique_status(M, r.rebuilt, 3).fit);
                                ++checked;
                            }
                }
    }
    // X1 patterns: 3^3 triples with sum >= 5 (4 of them); X2: sum >= 4 (10)
    CHECK(checked == 4 * 4 * 10);
}

TEST_CASE("exchange step on random instances") {
    Rng rng(82);
    int exercised = 0;
    for (int round = 0; round < 3000 && exercised < 250; ++round) {
        int s = 3 + rng.below_int(2);
        int t = 1 + rng.below_int(s - 2);  // t in [1, s-2]: growth has room
        int n = 2 * t + s;
        StandardMultigraph M = noisy_complete(rng, n, 0.15, 0.05);
        VertexSet X1 = VertexSet::range(0, t);
        VertexSet X2 = VertexSet::range(t, 2 * t);
        VertexSet Y = VertexSet::range(2 * t, n);
        if (!clique_status(M, X1, s).fit || !clique_status(M, X2, s).fit ||
            !clique_status(M, Y, s).fit)
            continue;
        if (M.mult_between(X1, Y) < 2 * (s - 1) * t + 1) continue;
        if (M.mult_between(X2, Y) < 2 * (s - 1) * t) continue;
        ImproveResult r = improve(M, X1, X2, Y, s);
        CHECK(r.grown.size() == t + 1);
        CHECK(r.rebuilt.size() == s);
        CHECK(!r.grown.intersects(r.rebuilt));
        VertexSet all = X1.unite(X2).unite(Y);
        CHECK(r.grown.minus(all).size() == 0);
        CHECK(r.rebuilt.minus(all).size() == 0);
        CHECK(clique_status(M, r.grown, s).fit);
        CHECK(clique_status(M, r.rebuilt, s).fit);
        ++exercised;
    }
    CHECK(exercised == 250);
}

TEST_CASE("exchange step rejects broken preconditions") {
    StandardMultigraph M = StandardMultigraph::complete(5);
    VertexSet X1{0}, X2{1}, Y{2, 3, 4};
    CHECK_THROWS_AS(improve(M, X1, X1, Y, 3), precondition_error);         // not disjoint
    CHECK_THROWS_AS(improve(M, X1, X2, VertexSet{2, 3}, 3), precondition_error);  // |Y| != s
    CHECK_THROWS_AS(improve(M, VertexSet{}, VertexSet{}, Y, 3), precondition_error);  // t = 0
    CHECK_THROWS_AS(improve(M, Y, Y, Y, 3), precondition_error);           // t > s-1 and overlap

    // unfit big clique: light triangle inside Y
    StandardMultigraph L = StandardMultigraph::complete(5);
    L.set_multiplicity(2, 3, 1);
    L.set_multiplicity(2, 4, 1);
    L.set_multiplicity(3, 4, 1);
    CHECK_THROWS_AS(improve(L, X1, X2, Y, 3), precondition_error);

    // multiplicity sum below the bound
    StandardMultigraph W = StandardMultigraph::complete(5);
    W.set_multiplicity(0, 2, 0);
    W.set_multiplicity(0, 3, 0);  // X1-Y sum now 2 < 5
    CHECK_THROWS_AS(improve(W, X1, X2, Y, 3), precondition_error);
}

TEST_CASE("greedy tiling on complete multigraphs is perfect") {
    for (int s : {2, 3}) {
        StandardMultigraph M = StandardMultigraph::complete(4 * s);
        CliqueTiling T = almost_tiling(M, s);
        CHECK(T.leftover.size() == 0);
        CHECK(static_cast<int>(T.tiles.size()) == 4);
        CHECK(certify_tiling(M, T));
    }
    // s = 1 is all singletons
    CliqueTiling ones = almost_tiling(StandardMultigraph::complete(3), 1);
    CHECK(ones.tiles.size() == 3);
    CHECK(certify_tiling(StandardMultigraph::complete(3), ones));
}

TEST_CASE("greedy tiling respects the leftover bound on dense instances") {
    Rng rng(83);
    const int s = 3;
    for (int round = 0; round < 12; ++round) {
        int n = 18 + 3 * rng.below_int(5);
        // strict bound: delta >= 2(1-1/s)n - 1
        int delta = (2 * (s - 1) * n + s - 1) / s - 1;
        StandardMultigraph M = ts::random_multigraph_min_degree(rng, n, delta);
        AlmostTilingOptions opts;
        opts.seed = rng.next();
        CliqueTiling T = almost_tiling(M, s, opts);
        CHECK(certify_tiling(M, T));
        CHECK(T.leftover.size() <= s * (s - 1) * (2 * s - 1) / 3);
    }
}

TEST_CASE("greedy tiling on planted instances") {
    Rng rng(84);
    const int s = 3;
    for (int round = 0; round < 8; ++round) {
        int n = 30;
        int delta = (2 * (s - 1) * n + s - 1) / s - 1;
        StandardMultigraph M = ts::planted_multigraph(rng, n, s, delta);
        CliqueTiling T = almost_tiling(M, s);
        CHECK(certify_tiling(M, T));
        CHECK(T.leftover.size() <= 10);
    }
}

TEST_CASE("greedy tiling options") {
    // strict mode rejects low-degree instances
    StandardMultigraph M = StandardMultigraph::complete(9);
    for (int v = 1; v <= 6; ++v) M.set_multiplicity(0, v, 0);
    CHECK(M.min_degree() < 2 * (3 - 1) * 9 / 3 - 1);
    CHECK_THROWS_AS(almost_tiling(M, 3), precondition_error);

    // non-strict proceeds and still certifies, leftover unconstrained
    AlmostTilingOptions loose;
    loose.strict = false;
    CliqueTiling T = almost_tiling(M, 3, loose);
    CHECK(certify_tiling(M, T));

    // a fixed seed reproduces the tiling exactly
    Rng rng(85);
    StandardMultigraph R = ts::random_multigraph_min_degree(rng, 18, 23);
    AlmostTilingOptions seeded;
    seeded.seed = 99;
    CliqueTiling a = almost_tiling(R, 3, seeded);
    CliqueTiling b = almost_tiling(R, 3, seeded);
    CHECK(a.tiles == b.tiles);
    CHECK(a.leftover == b.leftover);

    CHECK_THROWS_AS(almost_tiling(M, 0), precondition_error);
}

TEST_CASE("tiling certification rejects malformed claims") {
    StandardMultigraph M = StandardMultigraph::complete(6);
    CliqueTiling T = almost_tiling(M, 3);
    REQUIRE(certify_tiling(M, T));

    CliqueTiling bad = T;
    bad.tiles[0] = bad.tiles[1];  // overlap
    CHECK(!certify_tiling(M, bad));

    bad = T;
    bad.tiles[0] = VertexSet{0, 1};  // wrong order
    CHECK(!certify_tiling(M, bad));

    bad = T;
    bad.tiles[0] = VertexSet{0, 1, 9};  // out of range
    CHECK(!certify_tiling(M, bad));

    bad = T;
    bad.tiles.pop_back();  // three vertices unaccounted for
    CHECK(!certify_tiling(M, bad));
    bad.leftover = VertexSet::range(0, 6).minus(bad.tiles[0]);  // declaring them leftover is honest
    CHECK(certify_tiling(M, bad));

    // a tile that is not acceptable: light triangle
    StandardMultigraph L = StandardMultigraph::complete(6);
    L.set_multiplicity(0, 1, 1);
    L.set_multiplicity(0, 2, 1);
    L.set_multiplicity(1, 2, 1);
    CliqueTiling claim;
    claim.s = 3;
    claim.tiles = {VertexSet{0, 1, 2}, VertexSet{3, 4, 5}};
    CHECK(!certify_tiling(L, claim));
}

TEST_CASE("bridging tuples extend both endpoints to near matchings") {
    Rng rng(86);
    const int s = 3;
    StandardMultigraph M = StandardMultigraph::complete(40);
    // sprinkle light pairs so the near-matching checks bind
    for (int round = 0; round < 80; ++round) {
        int u = rng.below_int(40), v = rng.below_int(40);
        if (u != v) M.set_multiplicity(u, v, 1);
    }
    VertexSet avoid = VertexSet::range(10, 14);
    auto tuples = sponge_tuples(M, s, 0, 1, s - 1, 5, rng, avoid);
    CHECK(tuples.size() == 5);
    std::set<std::vector<int>> images;
    for (const auto& tup : tuples) {
        REQUIRE(static_cast<int>(tup.size()) == s - 1);
        VertexSet im{tup};
        REQUIRE(im.size() == s - 1);
        CHECK(!im.contains(0));
        CHECK(!im.contains(1));
        CHECK(!im.intersects(avoid));
        CHECK(clique_status(M, im.with(0), s).near_matching);
        CHECK(clique_status(M, im.with(1), s).near_matching);
        images.insert(im.items());
    }
    CHECK(images.size() == tuples.size());  // pairwise distinct images

    CHECK(sponge_tuples(M, s, 0, 1, s - 1, 0, rng).empty());
    CHECK_THROWS_AS(sponge_tuples(M, s, 0, 0, s - 1, 1, rng), precondition_error);
    CHECK_THROWS_AS(sponge_tuples(M, s, 0, 1, s, 1, rng), precondition_error);
    CHECK_THROWS_AS(sponge_tuples(M, s, 0, 1, -1, 1, rng), precondition_error);
}

TEST_CASE("sponges absorb their target set") {
    Rng rng(87);
    const int s = 3;
    StandardMultigraph M = StandardMultigraph::complete(40);
    VertexSet S{0, 1, 2};
    auto sponge = construct_sponge(M, s, S, rng);
    REQUIRE(sponge.has_value());
    CHECK(sponge->size() == s * s);
    CHECK(!sponge->intersects(S));

    auto [alone, ids1] = M.induced(*sponge);
    CHECK(perfectly_tilable(alone, s));
    auto [with_s, ids2] = M.induced(sponge->unite(S));
    CHECK(perfectly_tilable(with_s, s));

    CHECK_THROWS_AS(construct_sponge(M, s, VertexSet{0, 1}, rng), precondition_error);
}

TEST_CASE("absorbing family invariants") {
    const int s = 3;
    StandardMultigraph M = StandardMultigraph::complete(120);
    TilerParams params;
    params.epsilon = 0.2;
    params.beta = 0.9;  // high sampling rate so one build attempt suffices
    params.seed = 5;
    AbsorbingFamily fam = build_absorbing_family(M, s, params);
    CHECK(fam.d == s * s);
    REQUIRE(!fam.images.empty());
    // footprint cap: d * |F| < eps * n / 2
    CHECK(fam.d * static_cast<int>(fam.images.size()) < 0.2 * 120 / 2);
    VertexSet seen;
    for (std::size_t f = 0; f < fam.images.size(); ++f) {
        CHECK(fam.images[f].size() == fam.d);
        CHECK(!fam.images[f].intersects(seen));
        seen = seen.unite(fam.images[f]);
        // the cached tiling covers the image with acceptable tiles
        CliqueTiling cached;
        cached.s = s;
        cached.tiles = fam.tilings[f];
        VertexSet covered;
        for (const auto& tile : fam.tilings[f]) covered = covered.unite(tile);
        CHECK(covered == fam.images[f]);
        for (const auto& tile : fam.tilings[f]) CHECK(clique_status(M, tile, s).acceptable);
    }
    // on a complete host every sampled coverage probe succeeds
    CHECK(fam.coverage_checked == params.coverage_samples);
    CHECK(fam.min_coverage == static_cast<int>(fam.images.size()));

    // too few vertices for even one image: empty family
    AbsorbingFamily tiny = build_absorbing_family(StandardMultigraph::complete(5), s, params);
    CHECK(tiny.images.empty());
}

TEST_CASE("perfect tiling driver") {
    const int s = 3;
    StandardMultigraph M = StandardMultigraph::complete(30);
    FullTilingReport rep;
    CliqueTiling T = full_tiling(M, s, {}, &rep);
    CHECK(T.leftover.size() == 0);
    CHECK(static_cast<int>(T.tiles.size()) == 10);
    CHECK(certify_tiling(M, T));
    CHECK(rep.attempts >= 1);

    // planted dense instance
    Rng rng(88);
    const int n = 30;
    const int need = (2 * (s - 1) * n + s - 1) / s + n / 5;  // ceil(2(1-1/s)n) + eps*n
    StandardMultigraph P = ts::planted_multigraph(rng, n, s, need);
    CliqueTiling PT = full_tiling(P, s);
    CHECK(PT.leftover.size() == 0);
    CHECK(certify_tiling(P, PT));

    CHECK_THROWS_AS(full_tiling(StandardMultigraph::complete(10), s), precondition_error);

    // min degree below 2(1-1/s)n + eps*n
    StandardMultigraph W = StandardMultigraph::complete(30);
    for (int v = 1; v <= 20; ++v) W.set_multiplicity(0, v, 0);
    CHECK_THROWS_AS(full_tiling(W, s), precondition_error);

    // trivial orders
    CliqueTiling ones = full_tiling(StandardMultigraph::complete(4), 1);
    CHECK(ones.tiles.size() == 4);
    CHECK(full_tiling(StandardMultigraph(0), 3).tiles.empty());
}

TEST_CASE("exhaustive tiling search agrees with the independent oracle") {
    Rng rng(89);
    const int s = 3;
    for (int round = 0; round < 40; ++round) {
        int n = 6;
        StandardMultigraph M = noisy_complete(rng, n, 0.4, 0.25);
        auto mine = find_perfect_tiling(M, s);
        auto theirs = oracle_multigraph_tiling(M, s, CliquePredicate::acceptable);
        CHECK(mine.has_value() == theirs.has_value());
        if (mine) {
            CliqueTiling T;
            T.s = s;
            T.tiles = *mine;
            CHECK(certify_tiling(M, T));
        }
    }
    // non-divisible orders have no perfect tiling
    CHECK(!perfectly_tilable(StandardMultigraph::complete(7), 3));
}
