#include <doctest.h>

#include "equitile/errors.hpp"
#include "equitile/extremal.hpp"
#include "equitile/oracle.hpp"

using namespace equitile;

TEST_CASE("hollow-set construction degree values") {
    // n = sk, arcs inside the last k+1 vertices removed:
    // min total degree = 2(n-1) - 2k = 2(1-1/s)n - 2
    for (int s = 2; s <= 4; ++s) {
        for (int k = 1; k <= 3; ++k) {
            if (k + 1 > s * k) continue;
            Digraph D = gen_hs_extremal(s, k);
            int n = s * k;
            REQUIRE(D.size() == n);
            DegreeStats st = degree_stats(D);
            CHECK(st.min_total == 2 * n - 2 * k - 2);
        }
    }
    // the (3,2) instance has min degree 6 = 2*(2/3)*6 - 2 exactly
    CHECK(degree_stats(gen_hs_extremal(3, 2)).min_total == 6);
    CHECK_THROWS_AS(gen_hs_extremal(1, 2), precondition_error);
    CHECK_THROWS_AS(gen_hs_extremal(3, 0), precondition_error);
}

TEST_CASE("hollow vertices are pairwise non-adjacent") {
    Digraph D = gen_hs_extremal(3, 2);  // hollow set = last 3 vertices
    for (int u = 3; u < 6; ++u)
        for (int v = 3; v < 6; ++v)
            if (u != v) CHECK(!D.has_edge(u, v));
    CHECK(D.has_edge(0, 5));
    CHECK(D.has_edge(5, 0));
}

TEST_CASE("no tournament factor through the hollow set") {
    // k+1 hollow vertices cannot be spread over k tournament tiles
    CHECK(!oracle_factor(gen_hs_extremal(3, 2), 3, TilePredicate::any_tournament).has_value());
    CHECK(!oracle_factor(gen_hs_extremal(3, 1), 3, TilePredicate::any_tournament).has_value());
    CHECK(!oracle_factor(gen_hs_extremal(4, 1), 4, TilePredicate::any_tournament).has_value());
}

TEST_CASE("one-directional removal construction") {
    // X the first (3k+1)/2 indices: arcs X -> Y removed, Y -> X kept
    for (int k = 1; k <= 5; k += 2) {
        Digraph D = gen_wang_extremal(k);
        int n = 3 * k;
        REQUIRE(D.size() == n);
        CHECK(degree_stats(D).min_total == (3 * n - 5) / 2);
    }
    Digraph D = gen_wang_extremal(1);  // X = {0, 1}, Y = {2}
    CHECK(!D.has_edge(0, 2));
    CHECK(!D.has_edge(1, 2));
    CHECK(D.has_edge(2, 0));
    CHECK(D.has_edge(2, 1));
    CHECK(D.has_edge(0, 1));
    CHECK(degree_stats(D).min_total == 2);
    CHECK_THROWS_AS(gen_wang_extremal(2), precondition_error);
    CHECK_THROWS_AS(gen_wang_extremal(-1), precondition_error);
}

TEST_CASE("one-below-threshold instance has no cyclic triangle factor") {
    CHECK(!oracle_factor(gen_wang_extremal(1), 3, TilePredicate::cyclic_triangle).has_value());
}

TEST_CASE("reversed-vertex variant is strongly connected with exact degree") {
    for (int p = 1; p <= 2; ++p) {
        Digraph D = gen_strong2_extremal(p);
        REQUIRE(D.size() == 6 * p + 3);
        CHECK(degree_stats(D).min_total == 9 * p + 2);
        CHECK(is_strongly_connected(D));
        // 2-connectivity status is recorded, not asserted
        MESSAGE("p=" << p << " strongly 2-connected: " << is_strongly_2_connected(D));
    }
    CHECK_THROWS_AS(gen_strong2_extremal(0), precondition_error);
}

TEST_CASE("reversed-vertex variant has no cyclic triangle factor at p = 1") {
    CHECK(!oracle_factor(gen_strong2_extremal(1), 3, TilePredicate::cyclic_triangle).has_value());
}
