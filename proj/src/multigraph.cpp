#include "equitile/multigraph.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include "equitile/errors.hpp"

namespace equitile {

StandardMultigraph::StandardMultigraph(int n) : n_(n) {
    if (n < 0) throw precondition_error("multigraph order must be non-negative");
    mult_.assign(static_cast<std::size_t>(n) * n, 0);
    deg_.assign(n, 0);
}

StandardMultigraph StandardMultigraph::complete(int n) {
    StandardMultigraph M(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) M.set_multiplicity(u, v, 2);
    return M;
}

void StandardMultigraph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::out_of_range("vertex index " + std::to_string(v) + " out of range [0, " +
                                std::to_string(n_) + ")");
}

int StandardMultigraph::multiplicity(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return 0;
    return mult_[idx(u, v)];
}

void StandardMultigraph::set_multiplicity(int u, int v, int m) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw precondition_error("loops are not allowed");
    if (m < 0 || m > 2) throw precondition_error("multiplicity must be 0, 1 or 2");
    int old = mult_[idx(u, v)];
    mult_[idx(u, v)] = static_cast<std::uint8_t>(m);
    mult_[idx(v, u)] = static_cast<std::uint8_t>(m);
    deg_[u] += m - old;
    deg_[v] += m - old;
}

int StandardMultigraph::min_degree() const {
    if (n_ == 0) return 0;
    return *std::min_element(deg_.begin(), deg_.end());
}

int StandardMultigraph::mult_between(int v, const VertexSet& S) const {
    check_vertex(v);
    int c = 0;
    for (int s : S) {
        check_vertex(s);
        if (s != v) c += mult_[idx(v, s)];
    }
    return c;
}

int StandardMultigraph::mult_between(const VertexSet& X, const VertexSet& Y) const {
    int c = 0;
    for (int x : X) c += mult_between(x, Y);
    return c;
}

int StandardMultigraph::mult_inside(const VertexSet& S) const {
    int c = 0;
    const auto& v = S.items();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) c += multiplicity(v[i], v[j]);
    return c;
}

int StandardMultigraph::light_between(int v, const VertexSet& S) const {
    check_vertex(v);
    int c = 0;
    for (int s : S) {
        check_vertex(s);
        if (s != v && mult_[idx(v, s)] == 1) ++c;
    }
    return c;
}

int StandardMultigraph::light_inside(const VertexSet& S) const {
    int c = 0;
    const auto& v = S.items();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (multiplicity(v[i], v[j]) == 1) ++c;
    return c;
}

std::size_t StandardMultigraph::total_multiplicity() const {
    std::size_t s = std::accumulate(deg_.begin(), deg_.end(), std::size_t{0});
    return s / 2;
}

std::pair<StandardMultigraph, std::vector<int>> StandardMultigraph::induced(
    const VertexSet& S) const {
    std::vector<int> ids(S.begin(), S.end());
    StandardMultigraph M(static_cast<int>(ids.size()));
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            int m = multiplicity(ids[i], ids[j]);
            if (m) M.set_multiplicity(static_cast<int>(i), static_cast<int>(j), m);
        }
    return {std::move(M), std::move(ids)};
}

std::vector<std::tuple<int, int, int>> StandardMultigraph::edges() const {
    std::vector<std::tuple<int, int, int>> es;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (int m = mult_[idx(u, v)]; m > 0) es.emplace_back(u, v, m);
    return es;
}

StandardMultigraph underlying_multigraph(const Digraph& D) {
    int n = D.size();
    StandardMultigraph M(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int m = (D.has_edge(u, v) ? 1 : 0) + (D.has_edge(v, u) ? 1 : 0);
            if (m) M.set_multiplicity(u, v, m);
        }
    return M;
}

StandardMultigraph complement_multi(const StandardMultigraph& M) {
    int n = M.size();
    StandardMultigraph C(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) C.set_multiplicity(u, v, 2 - M.multiplicity(u, v));
    return C;
}

namespace {

// Union-find cycle test over the light edges of M restricted to S; any heavy
// pair inside S fails immediately.
bool acyclic_multi_impl(const StandardMultigraph& M, const std::vector<int>& vs) {
    int len = static_cast<int>(vs.size());
    std::vector<int> parent(len);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j) {
            int m = M.multiplicity(vs[i], vs[j]);
            if (m == 2) return false;
            if (m == 1) {
                int a = find(i), b = find(j);
                if (a == b) return false;
                parent[a] = b;
            }
        }
    return true;
}

}  // namespace

bool is_acyclic_multi(const StandardMultigraph& M, const VertexSet& S) {
    for (int v : S)
        if (v < 0 || v >= M.size())
            throw std::out_of_range("vertex index " + std::to_string(v) + " out of range");
    return acyclic_multi_impl(M, S.items());
}

bool is_acyclic_multi(const StandardMultigraph& M) {
    return is_acyclic_multi(M, VertexSet::range(0, M.size()));
}

}  // namespace equitile
