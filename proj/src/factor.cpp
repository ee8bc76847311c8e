#include "equitile/factor.hpp"

#include <algorithm>
#include <string>

#include "equitile/color_engine.hpp"
#include "equitile/errors.hpp"

namespace equitile {

std::optional<std::vector<int>> certify_transitive(const Digraph& D, const VertexSet& tile) {
    // A spanning transitive tournament, if any, can be peeled greedily: its
    // first vertex has arcs to all others, and removing any such dominating
    // vertex keeps the rest spanned.  Lowest index on ties.
    std::vector<int> rest = tile.items();
    std::vector<int> order;
    order.reserve(rest.size());
    while (!rest.empty()) {
        int pick = -1;
        for (std::size_t i = 0; i < rest.size() && pick < 0; ++i) {
            bool dominates = true;
            for (std::size_t j = 0; j < rest.size(); ++j) {
                if (i != j && !D.has_edge(rest[i], rest[j])) {
                    dominates = false;
                    break;
                }
            }
            if (dominates) pick = static_cast<int>(i);
        }
        if (pick < 0) return std::nullopt;
        order.push_back(rest[pick]);
        rest.erase(rest.begin() + pick);
    }
    return order;
}

TournamentFactor transitive_factor(const Digraph& D, int s, const FactorOptions& opts) {
    if (s <= 0) throw precondition_error("tile order must be positive");
    const int n = D.size();
    if (n % s != 0) {
        throw precondition_error("order " + std::to_string(n) + " is not divisible by " +
                                 std::to_string(s));
    }
    TournamentFactor F;
    F.s = s;
    if (n == 0) return F;
    const int k = n / s;
    if (opts.strict) {
        // 2(1 - 1/s)n - 1 is the integer 2n - 2k - 1 since n = sk.
        const int need = 2 * n - 2 * k - 1;
        DegreeStats ds = degree_stats(D);
        if (ds.min_total < need) {
            throw precondition_error("min total degree " + std::to_string(ds.min_total) +
                                     " is below " + std::to_string(need));
        }
    }

    // An acyclic class in the complement orders into a transitive tournament
    // here, and the complement's max degree 2(n-1) - min_deg is within the
    // coloring engine's 2k-1 bound exactly when the degree condition holds.
    Digraph H = complement(D);
    ColoringOptions copts;
    copts.strict = opts.strict;
    copts.seed = opts.seed;
    Coloring col = equitable_acyclic_coloring(H, k, copts);

    for (const auto& cls : col.classes) {
        auto order = certify_transitive(D, cls);
        if (!order) {
            throw invariant_violation("complement-acyclic class is not transitively orderable");
        }
        F.tiles.push_back(std::move(*order));
    }
    std::sort(F.tiles.begin(), F.tiles.end(), [](const auto& l, const auto& r) {
        return *std::min_element(l.begin(), l.end()) < *std::min_element(r.begin(), r.end());
    });
    return F;
}

bool certify_factor(const Digraph& D, const TournamentFactor& F) {
    if (F.s <= 0) return false;
    const int n = D.size();
    if (static_cast<long long>(F.tiles.size()) * F.s != n) return false;
    std::vector<char> seen(n, 0);
    for (const auto& tile : F.tiles) {
        if (static_cast<int>(tile.size()) != F.s) return false;
        for (int v : tile) {
            if (v < 0 || v >= n || seen[v]) return false;
            seen[v] = 1;
        }
        for (std::size_t i = 0; i < tile.size(); ++i) {
            for (std::size_t j = i + 1; j < tile.size(); ++j) {
                if (!D.has_edge(tile[i], tile[j])) return false;
            }
        }
    }
    return true;
}

}  // namespace equitile
