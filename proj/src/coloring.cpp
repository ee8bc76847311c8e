#include "equitile/coloring.hpp"

#include <algorithm>

#include "equitile/errors.hpp"

namespace equitile {

std::string to_string(ColoringStatus s) {
    switch (s) {
        case ColoringStatus::good: return "good";
        case ColoringStatus::useful: return "useful";
        default: return "invalid";
    }
}

ColoringStatus coloring_status_from_string(const std::string& s) {
    if (s == "good") return ColoringStatus::good;
    if (s == "useful") return ColoringStatus::useful;
    if (s == "invalid") return ColoringStatus::invalid;
    throw parse_error("unknown coloring status '" + s + "'");
}

int Coloring::total_vertices() const {
    int t = 0;
    for (const auto& c : classes) t += c.size();
    return t;
}

Coloring validate_coloring_of(const Digraph& D, const std::vector<VertexSet>& classes,
                              const VertexSet& ground) {
    Coloring out;
    out.classes = classes;
    out.status = ColoringStatus::invalid;

    if (classes.empty()) {
        if (ground.empty()) out.status = ColoringStatus::good;
        return out;
    }

    // Partition check: disjoint union equal to the ground set.
    std::vector<char> seen(static_cast<std::size_t>(D.size()), 0);
    int covered = 0;
    for (const auto& c : classes)
        for (int v : c) {
            if (v < 0 || v >= D.size() || !ground.contains(v)) return out;
            if (seen[v]) return out;
            seen[v] = 1;
            ++covered;
        }
    if (covered != ground.size()) return out;

    for (const auto& c : classes)
        if (!is_acyclic(D, c)) return out;

    int mn = classes[0].size(), mx = classes[0].size();
    for (const auto& c : classes) {
        mn = std::min(mn, c.size());
        mx = std::max(mx, c.size());
    }
    if (mx - mn <= 1) {
        out.status = ColoringStatus::good;
        return out;
    }

    // Useful: one class of size s-1, one of size s+1, everything else s.
    if (mx - mn == 2) {
        int s = mn + 1;
        int small = -1, large = -1;
        bool ok = true;
        for (int i = 0; i < static_cast<int>(classes.size()); ++i) {
            int sz = classes[i].size();
            if (sz == s - 1) {
                if (small != -1) { ok = false; break; }
                small = i;
            } else if (sz == s + 1) {
                if (large != -1) { ok = false; break; }
                large = i;
            } else if (sz != s) {
                ok = false;
                break;
            }
        }
        if (ok && small != -1 && large != -1) {
            out.status = ColoringStatus::useful;
            out.small_index = small;
            out.large_index = large;
        }
    }
    return out;
}

Coloring validate_coloring(const Digraph& D, const std::vector<VertexSet>& classes) {
    return validate_coloring_of(D, classes, VertexSet::range(0, D.size()));
}

}  // namespace equitile
