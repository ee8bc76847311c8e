#include <doctest.h>

#include "equitile/coloring.hpp"
#include "equitile/digraph.hpp"

using namespace equitile;

namespace {

Digraph triangle() {
    Digraph D(3);
    D.add_edge(0, 1);
    D.add_edge(1, 2);
    D.add_edge(2, 0);
    return D;
}

}  // namespace

TEST_CASE("status string round trip") {
    CHECK(to_string(ColoringStatus::good) == "good");
    CHECK(to_string(ColoringStatus::useful) == "useful");
    CHECK(coloring_status_from_string("useful") == ColoringStatus::useful);
    CHECK_THROWS_AS(coloring_status_from_string("great"), parse_error);
}

TEST_CASE("good coloring certifies") {
    Digraph D = triangle();
    Coloring C = validate_coloring(D, {VertexSet{0, 1}, VertexSet{2}});
    CHECK(C.status == ColoringStatus::good);
    CHECK(C.small_index == -1);
    CHECK(C.large_index == -1);
    CHECK(C.total_vertices() == 3);
}

TEST_CASE("cyclic class invalidates") {
    Digraph D = triangle();
    Coloring C = validate_coloring(D, {VertexSet{0, 1, 2}, VertexSet{}});
    CHECK(C.status == ColoringStatus::invalid);
}

TEST_CASE("non-partitions invalidate") {
    Digraph D(4);
    // missing vertex
    CHECK(validate_coloring(D, {VertexSet{0, 1}, VertexSet{2}}).status ==
          ColoringStatus::invalid);
    // repeated vertex
    CHECK(validate_coloring(D, {VertexSet{0, 1}, VertexSet{1, 2, 3}}).status ==
          ColoringStatus::invalid);
    // out of range
    CHECK(validate_coloring(D, {VertexSet{0, 1}, VertexSet{2, 7}}).status ==
          ColoringStatus::invalid);
}

TEST_CASE("useful coloring is recognized with its short and long class") {
    Digraph D(9);  // edgeless: every class acyclic, only sizes matter
    Coloring C = validate_coloring(
        D, {VertexSet{0, 1, 2}, VertexSet{3, 4}, VertexSet{5, 6, 7, 8}});
    CHECK(C.status == ColoringStatus::useful);
    CHECK(C.small_index == 1);
    CHECK(C.large_index == 2);

    // sizes s-1 and s+1 with nothing in between is still size-profile good
    // when the gap is one (s=1: {0},{},{..}), not useful
    Coloring gap = validate_coloring(D, {VertexSet{0}, VertexSet{1, 2, 3}, VertexSet{4, 5},
                                         VertexSet{6, 7}, VertexSet{8}});
    CHECK(gap.status == ColoringStatus::invalid);
}

TEST_CASE("size gap of two or more is neither good nor useful") {
    Digraph D(6);
    // sizes 1 and 5: two classes, s would be 3 but the profile fits neither
    CHECK(validate_coloring(D, {VertexSet{0}, VertexSet{1, 2, 3, 4, 5}}).status ==
          ColoringStatus::invalid);
    // sizes 2, 2, 2: good
    CHECK(validate_coloring(D, {VertexSet{0, 1}, VertexSet{2, 3}, VertexSet{4, 5}}).status ==
          ColoringStatus::good);
}

TEST_CASE("validation over a sub-ground set") {
    Digraph D = triangle();
    // classes partition {0, 2} only
    Coloring C = validate_coloring_of(D, {VertexSet{0}, VertexSet{2}}, VertexSet{0, 2});
    CHECK(C.status == ColoringStatus::good);
    Coloring wrong = validate_coloring_of(D, {VertexSet{0}, VertexSet{2}}, VertexSet{0, 1, 2});
    CHECK(wrong.status == ColoringStatus::invalid);
}

TEST_CASE("empty classes participate in the size profile") {
    Digraph D(2);
    // k = 3 on 2 vertices: sizes 1, 1, 0 differ by one: good
    CHECK(validate_coloring(D, {VertexSet{0}, VertexSet{1}, VertexSet{}}).status ==
          ColoringStatus::good);
    // k = 2 on 2 vertices in one class: sizes 2, 0: useful with s = 1
    Coloring C = validate_coloring(D, {VertexSet{0, 1}, VertexSet{}});
    CHECK(C.status == ColoringStatus::useful);
    CHECK(C.small_index == 1);
    CHECK(C.large_index == 0);
}
