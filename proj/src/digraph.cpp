#include "equitile/digraph.hpp"

#include <stdexcept>
#include <string>

#include "equitile/errors.hpp"

namespace equitile {

Digraph::Digraph(int n) : n_(n) {
    if (n < 0) throw precondition_error("digraph order must be non-negative");
    words_ = (n + 63) / 64;
    out_.assign(static_cast<std::size_t>(n) * words_, 0);
    in_.assign(static_cast<std::size_t>(n) * words_, 0);
    out_deg_.assign(n, 0);
    in_deg_.assign(n, 0);
}

void Digraph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::out_of_range("vertex index " + std::to_string(v) + " out of range [0, " +
                                std::to_string(n_) + ")");
}

void Digraph::set_bit(std::vector<std::uint64_t>& rows, int u, int v, bool on) {
    std::uint64_t& w = rows[static_cast<std::size_t>(u) * words_ + (v >> 6)];
    std::uint64_t mask = 1ULL << (v & 63);
    if (on) w |= mask;
    else w &= ~mask;
}

void Digraph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw precondition_error("loops are not allowed");
    if (has_edge(u, v)) return;
    set_bit(out_, u, v, true);
    set_bit(in_, v, u, true);
    ++out_deg_[u];
    ++in_deg_[v];
    ++m_;
}

void Digraph::remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v || !has_edge(u, v)) return;
    set_bit(out_, u, v, false);
    set_bit(in_, v, u, false);
    --out_deg_[u];
    --in_deg_[v];
    --m_;
}

int Digraph::arcs_to(int v, const VertexSet& S) const {
    check_vertex(v);
    int c = 0;
    for (int s : S) {
        check_vertex(s);
        if (s != v && has_edge(v, s)) ++c;
    }
    return c;
}

int Digraph::arcs_from(int v, const VertexSet& S) const {
    check_vertex(v);
    int c = 0;
    for (int s : S) {
        check_vertex(s);
        if (s != v && has_edge(s, v)) ++c;
    }
    return c;
}

int Digraph::arcs_between(const VertexSet& X, const VertexSet& Y) const {
    int c = 0;
    for (int x : X) c += arcs_to(x, Y);
    return c;
}

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v = 0; v < n_; ++v)
            if (u != v && has_edge(u, v)) es.emplace_back(u, v);
    return es;
}

namespace {

// Kahn peeling over a small vertex array.  Mutual arcs form a cycle on
// their own, so they are short-circuited before any peeling.
bool acyclic_span(const Digraph& D, const int* vs, int len) {
    if (len <= 1) return true;
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j)
            if (D.has_edge(vs[i], vs[j]) && D.has_edge(vs[j], vs[i])) return false;

    constexpr int kStack = 64;
    int indeg_buf[kStack];
    std::vector<int> indeg_heap;
    int* indeg;
    if (len <= kStack) {
        indeg = indeg_buf;
    } else {
        indeg_heap.assign(len, 0);
        indeg = indeg_heap.data();
    }
    for (int i = 0; i < len; ++i) {
        indeg[i] = 0;
        for (int j = 0; j < len; ++j)
            if (j != i && D.has_edge(vs[j], vs[i])) ++indeg[i];
    }

    bool alive_buf[kStack];
    std::vector<char> alive_heap;
    auto alive_at = [&](int i) -> bool {
        return len <= kStack ? alive_buf[i] : alive_heap[i] != 0;
    };
    auto kill = [&](int i) {
        if (len <= kStack) alive_buf[i] = false;
        else alive_heap[i] = 0;
    };
    if (len <= kStack) for (int i = 0; i < len; ++i) alive_buf[i] = true;
    else alive_heap.assign(len, 1);

    int removed = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < len; ++i) {
            if (!alive_at(i) || indeg[i] != 0) continue;
            kill(i);
            ++removed;
            progress = true;
            for (int j = 0; j < len; ++j)
                if (alive_at(j) && D.has_edge(vs[i], vs[j])) --indeg[j];
        }
    }
    return removed == len;
}

}  // namespace

bool is_acyclic(const Digraph& D, const VertexSet& S) {
    for (int v : S)
        if (v < 0 || v >= D.size())
            throw std::out_of_range("vertex index " + std::to_string(v) + " out of range");
    return acyclic_span(D, S.items().data(), S.size());
}

bool is_acyclic_with(const Digraph& D, const VertexSet& S, int y) {
    if (y < 0 || y >= D.size()) throw std::out_of_range("vertex index out of range");
    if (S.contains(y)) return is_acyclic(D, S);
    constexpr int kStack = 63;
    if (S.size() <= kStack) {
        int buf[kStack + 1];
        int len = S.size();
        for (int i = 0; i < len; ++i) buf[i] = S[i];
        buf[len] = y;
        for (int i = 0; i < len; ++i)
            if (buf[i] < 0 || buf[i] >= D.size())
                throw std::out_of_range("vertex index out of range");
        return acyclic_span(D, buf, len + 1);
    }
    return is_acyclic(D, S.with(y));
}

bool is_acyclic(const Digraph& D) {
    return is_acyclic(D, VertexSet::range(0, D.size()));
}

Digraph complement(const Digraph& D) {
    int n = D.size();
    Digraph H(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && !D.has_edge(u, v)) H.add_edge(u, v);
    return H;
}

DegreeStats degree_stats(const Digraph& D) {
    DegreeStats st;
    int n = D.size();
    if (n == 0) return st;
    st.min_total = st.max_total = D.degree(0);
    st.min_out = st.max_out = D.out_degree(0);
    st.min_in = st.max_in = D.in_degree(0);
    for (int v = 1; v < n; ++v) {
        int t = D.degree(v), o = D.out_degree(v), i = D.in_degree(v);
        st.min_total = std::min(st.min_total, t);
        st.max_total = std::max(st.max_total, t);
        st.min_out = std::min(st.min_out, o);
        st.max_out = std::max(st.max_out, o);
        st.min_in = std::min(st.min_in, i);
        st.max_in = std::max(st.max_in, i);
    }
    return st;
}

namespace {

int reach_count(const Digraph& D, int src, bool forward, int skip) {
    int n = D.size();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{src};
    seen[src] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v) {
            if (v == skip || v == u || seen[v]) continue;
            bool arc = forward ? D.has_edge(u, v) : D.has_edge(v, u);
            if (arc) {
                seen[v] = 1;
                ++cnt;
                stack.push_back(v);
            }
        }
    }
    return cnt;
}

}  // namespace

bool is_strongly_connected(const Digraph& D) {
    int n = D.size();
    if (n <= 1) return true;
    return reach_count(D, 0, true, -1) == n && reach_count(D, 0, false, -1) == n;
}

bool is_strongly_2_connected(const Digraph& D) {
    int n = D.size();
    if (!is_strongly_connected(D)) return false;
    if (n <= 2) return false;  // removing a vertex leaves < 2 vertices
    for (int skip = 0; skip < n; ++skip) {
        int src = skip == 0 ? 1 : 0;
        if (reach_count(D, src, true, skip) != n - 1) return false;
        if (reach_count(D, src, false, skip) != n - 1) return false;
    }
    return true;
}

}  // namespace equitile
