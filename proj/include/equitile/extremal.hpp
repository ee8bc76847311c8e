// Generators for the extremal constructions that certify the degree bounds
// are tight.
#pragma once

#include "equitile/digraph.hpp"

namespace equitile {

// Complete digraph on s*k vertices minus the arcs inside the last k+1
// indices.  Order n = sk, min total degree 2n - 2k - 2 = 2(1-1/s)n - 2, and
// no partition into k transitive tournaments of order s exists.
Digraph gen_hs_extremal(int s, int k);

// Complete digraph on 3k vertices (k odd) minus all arcs from X into Y,
// where X is the first (3k+1)/2 indices and Y the rest.  Min total degree
// (3n-5)/2, one below the threshold that forces a cyclic-triangle factor.
Digraph gen_wang_extremal(int k);

// Strongly connected variant on 6p+3 vertices: same X/Y split with
// |X| = 3p+2, except the arcs between X and the last vertex of Y are
// reversed in orientation.  Min total degree 9p+2 = (3n-3)/2 - 1.
Digraph gen_strong2_extremal(int p);

}  // namespace equitile
