#include "equitile/extremal.hpp"

#include "equitile/errors.hpp"

namespace equitile {

namespace {

Digraph complete_digraph(int n) {
    Digraph D(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) D.add_edge(u, v);
    return D;
}

}  // namespace

Digraph gen_hs_extremal(int s, int k) {
    if (s <= 0 || k <= 0) throw precondition_error("s and k must be positive");
    int n = s * k;
    if (k + 1 > n) throw precondition_error("hole of order k+1 does not fit in sk vertices");
    Digraph D = complete_digraph(n);
    // Hollow out all arcs among the last k+1 vertices.
    for (int u = n - (k + 1); u < n; ++u)
        for (int v = n - (k + 1); v < n; ++v)
            if (u != v) D.remove_edge(u, v);
    return D;
}

Digraph gen_wang_extremal(int k) {
    if (k <= 0 || k % 2 == 0) throw precondition_error("k must be a positive odd integer");
    int n = 3 * k;
    int x_size = (3 * k + 1) / 2;
    Digraph D = complete_digraph(n);
    // Delete every arc from X = [0, x_size) into Y = [x_size, n).
    for (int x = 0; x < x_size; ++x)
        for (int y = x_size; y < n; ++y) D.remove_edge(x, y);
    return D;
}

Digraph gen_strong2_extremal(int p) {
    if (p <= 0) throw precondition_error("p must be positive");
    int k = 2 * p + 1;
    int n = 3 * k;           // 6p + 3
    int x_size = 3 * p + 2;  // |Y| = 3p + 1
    Digraph D = complete_digraph(n);
    for (int x = 0; x < x_size; ++x)
        for (int y = x_size; y < n; ++y) D.remove_edge(x, y);
    // Reverse every arc at v = n-1: its X-arcs v->x flip to x->v, which
    // restores strong connectivity; its heavy pairs inside Y are symmetric.
    int v = n - 1;
    for (int x = 0; x < x_size; ++x) {
        D.remove_edge(v, x);
        D.add_edge(x, v);
    }
    return D;
}

}  // namespace equitile
