// Dense digraph on 0..n-1 with bit-matrix adjacency, no loops, at most one
// arc per ordered pair.  Both out- and in-rows are kept so neighborhood
// queries in either direction are cheap.
#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

#include "equitile/vertex_set.hpp"

namespace equitile {

class Digraph {
public:
    explicit Digraph(int n);

    int size() const { return n_; }
    int edge_count() const { return m_; }

    // Hot path: bounds are asserted, not thrown.  Set-level entry points
    // (is_acyclic, arcs_*) validate indices and throw.
    bool has_edge(int u, int v) const {
        assert(u >= 0 && u < n_ && v >= 0 && v < n_);
        return (out_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1ULL;
    }

    void add_edge(int u, int v);     // no-op if already present
    void remove_edge(int u, int v);  // no-op if absent

    int out_degree(int v) const { check_vertex(v); return out_deg_[v]; }
    int in_degree(int v) const { check_vertex(v); return in_deg_[v]; }
    // Total degree d(v) = in + out; a 2-cycle at v contributes 2.
    int degree(int v) const { check_vertex(v); return out_deg_[v] + in_deg_[v]; }

    // Arc counts between v and a set S.  Loops never exist, so a stray v
    // inside S contributes nothing.
    int arcs_to(int v, const VertexSet& S) const;    // |{s in S : v->s}|
    int arcs_from(int v, const VertexSet& S) const;  // |{s in S : s->v}|
    int arcs_between(int v, const VertexSet& S) const { return arcs_to(v, S) + arcs_from(v, S); }

    // Directed arc count from X into Y.
    int arcs_between(const VertexSet& X, const VertexSet& Y) const;

    std::vector<std::pair<int, int>> edges() const;

private:
    void check_vertex(int v) const;
    void set_bit(std::vector<std::uint64_t>& rows, int u, int v, bool on);

    int n_ = 0;
    int words_ = 0;  // 64-bit words per row
    int m_ = 0;
    std::vector<std::uint64_t> out_;
    std::vector<std::uint64_t> in_;
    std::vector<int> out_deg_;
    std::vector<int> in_deg_;
};

// True iff D restricted to S has no directed cycle.  The empty set and
// singletons are acyclic.  Throws std::out_of_range on bad indices.
bool is_acyclic(const Digraph& D, const VertexSet& S);

// Acyclicity of S + y without materializing the union.
bool is_acyclic_with(const Digraph& D, const VertexSet& S, int y);

// Full-vertex-set acyclicity.
bool is_acyclic(const Digraph& D);

// Complement within the loopless complete digraph: arc set becomes
// {(u,v) : u != v, (u,v) not in D}.
Digraph complement(const Digraph& D);

struct DegreeStats {
    int min_total = 0;
    int max_total = 0;
    int min_out = 0;
    int max_out = 0;
    int min_in = 0;
    int max_in = 0;
};

DegreeStats degree_stats(const Digraph& D);

bool is_strongly_connected(const Digraph& D);
// Strong and stays strong after deleting any single vertex.
bool is_strongly_2_connected(const Digraph& D);

}  // namespace equitile
