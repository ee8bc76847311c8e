// Undirected multigraph with pair multiplicities capped at 2.  Multiplicity
// 1 edges are "light", multiplicity 2 "heavy".  Acyclicity means: no heavy
// pair (a heavy pair is already a 2-cycle) and the light edges form a forest.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "equitile/digraph.hpp"
#include "equitile/vertex_set.hpp"

namespace equitile {

class StandardMultigraph {
public:
    explicit StandardMultigraph(int n);

    // Complete multigraph: every pair heavy.
    static StandardMultigraph complete(int n);

    int size() const { return n_; }

    int multiplicity(int u, int v) const;
    void set_multiplicity(int u, int v, int m);  // m in {0,1,2}

    // d(v) = sum of multiplicities at v.
    int degree(int v) const { check_vertex(v); return deg_[v]; }
    int min_degree() const;

    bool is_light(int u, int v) const { return multiplicity(u, v) == 1; }
    bool is_heavy(int u, int v) const { return multiplicity(u, v) == 2; }

    // Multiplicity sums.  mult_between(X, Y) expects disjoint sets; pairs
    // inside X or inside Y are not counted.
    int mult_between(int v, const VertexSet& S) const;
    int mult_between(const VertexSet& X, const VertexSet& Y) const;
    int mult_inside(const VertexSet& S) const;

    // Light-edge counts.
    int light_between(int v, const VertexSet& S) const;
    int light_inside(const VertexSet& S) const;
    int light_degree_in(int v, const VertexSet& S) const { return light_between(v, S); }

    std::size_t total_multiplicity() const;

    // Induced copy plus the original vertex id of each new index.
    std::pair<StandardMultigraph, std::vector<int>> induced(const VertexSet& S) const;

    std::vector<std::tuple<int, int, int>> edges() const;  // (u, v, mult), u < v

private:
    void check_vertex(int v) const;
    std::size_t idx(int u, int v) const {
        return static_cast<std::size_t>(u) * n_ + v;
    }

    int n_ = 0;
    std::vector<std::uint8_t> mult_;  // symmetric n*n, diagonal zero
    std::vector<int> deg_;
};

// Multiplicity image of a digraph: mu(u,v) = number of arcs between u and v.
StandardMultigraph underlying_multigraph(const Digraph& D);

// Pairwise complement: mu'(u,v) = 2 - mu(u,v).
StandardMultigraph complement_multi(const StandardMultigraph& M);

// No heavy pair and the light edges contain no cycle.
bool is_acyclic_multi(const StandardMultigraph& M);
bool is_acyclic_multi(const StandardMultigraph& M, const VertexSet& S);

}  // namespace equitile
