// Python bindings for the main operations.  Vertex sets cross the boundary
// as plain lists of ints; colorings, factors and tilings as dicts of lists.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "equitile/color_engine.hpp"
#include "equitile/coloring.hpp"
#include "equitile/digraph.hpp"
#include "equitile/errors.hpp"
#include "equitile/extremal.hpp"
#include "equitile/factor.hpp"
#include "equitile/graph_io.hpp"
#include "equitile/multigraph.hpp"
#include "equitile/oracle.hpp"
#include "equitile/tiling.hpp"

namespace py = pybind11;
using namespace equitile;

namespace {

std::vector<std::vector<int>> lists_of(const std::vector<VertexSet>& sets) {
    std::vector<std::vector<int>> out;
    out.reserve(sets.size());
    for (const VertexSet& s : sets) out.emplace_back(s.begin(), s.end());
    return out;
}

std::vector<VertexSet> sets_of(const std::vector<std::vector<int>>& lists) {
    std::vector<VertexSet> out;
    out.reserve(lists.size());
    for (const auto& l : lists) out.emplace_back(l);
    return out;
}

void check_vertex(int v, int n) {
    if (v < 0 || v >= n) throw py::index_error("vertex " + std::to_string(v) + " out of range");
}

py::dict coloring_dict(const Coloring& C) {
    py::dict d;
    d["status"] = to_string(C.status);
    d["classes"] = lists_of(C.classes);
    if (C.status == ColoringStatus::useful) {
        d["small_index"] = C.small_index;
        d["large_index"] = C.large_index;
    }
    return d;
}

py::dict tiling_dict(const CliqueTiling& T) {
    py::dict d;
    d["s"] = T.s;
    d["tiles"] = lists_of(T.tiles);
    d["leftover"] = std::vector<int>(T.leftover.begin(), T.leftover.end());
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "equitable acyclic colorings, transitive tournament factors and clique tilings";

    py::register_exception<parse_error>(m, "ParseError");
    py::register_exception<precondition_error>(m, "PreconditionError");
    py::register_exception<budget_exceeded>(m, "BudgetExceeded");
    py::register_exception<probabilistic_failure>(m, "ProbabilisticFailure");
    py::register_exception<no_solution_found>(m, "NoSolutionFound");
    py::register_exception<invariant_violation>(m, "InvariantViolation");

    py::class_<Digraph>(m, "Digraph")
        .def(py::init<int>(), py::arg("n"))
        .def_property_readonly("n", &Digraph::size)
        .def("edge_count", &Digraph::edge_count)
        .def("add_edge", &Digraph::add_edge, py::arg("u"), py::arg("v"))
        .def("remove_edge", &Digraph::remove_edge, py::arg("u"), py::arg("v"))
        .def("has_edge",
             [](const Digraph& D, int u, int v) {
                 check_vertex(u, D.size());
                 check_vertex(v, D.size());
                 return D.has_edge(u, v);
             })
        .def("degree", &Digraph::degree)
        .def("out_degree", &Digraph::out_degree)
        .def("in_degree", &Digraph::in_degree)
        .def("edges", &Digraph::edges)
        .def("__repr__", [](const Digraph& D) {
            return "Digraph(n=" + std::to_string(D.size()) +
                   ", m=" + std::to_string(D.edge_count()) + ")";
        });

    py::class_<StandardMultigraph>(m, "Multigraph")
        .def(py::init<int>(), py::arg("n"))
        .def_static("complete", &StandardMultigraph::complete, py::arg("n"))
        .def_property_readonly("n", &StandardMultigraph::size)
        .def("multiplicity", &StandardMultigraph::multiplicity)
        .def("set_multiplicity", &StandardMultigraph::set_multiplicity, py::arg("u"), py::arg("v"),
             py::arg("m"))
        .def("degree", &StandardMultigraph::degree)
        .def("min_degree", &StandardMultigraph::min_degree)
        .def("edges", &StandardMultigraph::edges)
        .def("__repr__", [](const StandardMultigraph& M) {
            return "Multigraph(n=" + std::to_string(M.size()) + ")";
        });

    m.def("is_acyclic",
          [](const Digraph& D, std::optional<std::vector<int>> S) {
              return S ? is_acyclic(D, VertexSet(*S)) : is_acyclic(D);
          },
          py::arg("D"), py::arg("S") = std::nullopt,
          "no directed cycle (2-cycles included) inside S, or in all of D");
    m.def("complement", &complement, "arc-set complement within the loopless complete digraph");
    m.def("degree_stats", [](const Digraph& D) {
        DegreeStats st = degree_stats(D);
        py::dict d;
        d["min_total"] = st.min_total;
        d["max_total"] = st.max_total;
        d["min_out"] = st.min_out;
        d["max_out"] = st.max_out;
        d["min_in"] = st.min_in;
        d["max_in"] = st.max_in;
        return d;
    });
    m.def("is_strongly_connected", &is_strongly_connected);
    m.def("underlying_multigraph", &underlying_multigraph);
    m.def("complement_multi", &complement_multi);
    m.def("is_acyclic_multi",
          [](const StandardMultigraph& M, const std::vector<int>& S) {
              return is_acyclic_multi(M, VertexSet(S));
          },
          "no heavy pair and the light edges form a forest inside S");

    m.def("equitable_acyclic_coloring",
          [](const Digraph& D, int k, bool strict, std::uint64_t seed) {
              ColoringOptions opts;
              opts.strict = strict;
              opts.seed = seed;
              return coloring_dict(equitable_acyclic_coloring(D, k, opts));
          },
          py::arg("D"), py::arg("k"), py::arg("strict") = true, py::arg("seed") = 0,
          "good k-coloring of any digraph with max total degree <= 2k-1");
    m.def("validate_coloring",
          [](const Digraph& D, const std::vector<std::vector<int>>& classes) {
              return coloring_dict(validate_coloring(D, sets_of(classes)));
          },
          "recompute the status of a claimed partition from scratch");
    m.def("oracle_equitable_acyclic",
          [](const Digraph& D, int k) -> std::optional<std::vector<std::vector<int>>> {
              auto r = oracle_equitable_acyclic(D, k);
              if (!r) return std::nullopt;
              return lists_of(*r);
          },
          "exhaustive search; None when no good k-coloring exists");

    m.def("transitive_factor",
          [](const Digraph& D, int s, bool strict) {
              FactorOptions opts;
              opts.strict = strict;
              TournamentFactor F = transitive_factor(D, s, opts);
              return F.tiles;
          },
          py::arg("D"), py::arg("s"), py::arg("strict") = true,
          "tiles partitioning V(D), each listed in transitive order");
    m.def("certify_factor", [](const Digraph& D, int s, const std::vector<std::vector<int>>& tiles) {
        TournamentFactor F;
        F.s = s;
        F.tiles = tiles;
        return certify_factor(D, F);
    });
    m.def("oracle_factor",
          [](const Digraph& D, int s, const std::string& pred, int cyclic,
             int transitive) -> std::optional<std::vector<std::vector<int>>> {
              auto r = oracle_factor(D, s, tile_predicate_from_string(pred),
                                     MixedCounts{cyclic, transitive});
              if (!r) return std::nullopt;
              return lists_of(*r);
          },
          py::arg("D"), py::arg("s"), py::arg("pred") = "transitive", py::arg("cyclic") = 0,
          py::arg("transitive") = 0);

    m.def("clique_status",
          [](const StandardMultigraph& M, const std::vector<int>& K, int s) {
              CliqueStatus st = clique_status(M, VertexSet(K), s);
              py::dict d;
              d["complete"] = st.complete;
              d["full"] = st.full;
              d["light_edges"] = st.light_edges;
              d["fit"] = st.fit;
              d["near_matching"] = st.near_matching;
              d["acceptable"] = st.acceptable;
              return d;
          });
    m.def("is_universal_clique", [](const StandardMultigraph& M, const std::vector<int>& K) {
        return is_universal_clique(M, VertexSet(K));
    });
    m.def("improve",
          [](const StandardMultigraph& M, const std::vector<int>& X1, const std::vector<int>& X2,
             const std::vector<int>& Y, int s) {
              ImproveResult r = improve(M, VertexSet(X1), VertexSet(X2), VertexSet(Y), s);
              return py::make_tuple(std::vector<int>(r.grown.begin(), r.grown.end()),
                                    std::vector<int>(r.rebuilt.begin(), r.rebuilt.end()));
          });
    m.def("almost_tiling",
          [](const StandardMultigraph& M, int s, bool strict, std::uint64_t seed) {
              AlmostTilingOptions opts;
              opts.strict = strict;
              opts.seed = seed;
              return tiling_dict(almost_tiling(M, s, opts));
          },
          py::arg("M"), py::arg("s"), py::arg("strict") = true, py::arg("seed") = 0,
          "fit s-clique tiling with leftover at most s(s-1)(2s-1)/3");
    m.def("full_tiling",
          [](const StandardMultigraph& M, int s, double epsilon, double beta, double gamma,
             int max_retries, std::uint64_t seed) {
              TilerParams p;
              p.epsilon = epsilon;
              p.beta = beta;
              p.gamma = gamma;
              p.max_retries = max_retries;
              p.seed = seed;
              FullTilingReport rep;
              CliqueTiling T = full_tiling(M, s, p, &rep);
              py::dict d = tiling_dict(T);
              d["attempts"] = rep.attempts;
              d["family_size"] = rep.family_size;
              return d;
          },
          py::arg("M"), py::arg("s"), py::arg("epsilon") = 0.2, py::arg("beta") = 0.0,
          py::arg("gamma") = 0.0, py::arg("max_retries") = 20, py::arg("seed") = 0,
          "perfect acceptable tiling via absorption; probabilistic, retries internally");
    m.def("certify_tiling",
          [](const StandardMultigraph& M, int s, const std::vector<std::vector<int>>& tiles,
             const std::vector<int>& leftover) {
              CliqueTiling T;
              T.s = s;
              T.tiles = sets_of(tiles);
              T.leftover = VertexSet(leftover);
              return certify_tiling(M, T);
          },
          py::arg("M"), py::arg("s"), py::arg("tiles"),
          py::arg("leftover") = std::vector<int>{});
    m.def("oracle_multigraph_tiling",
          [](const StandardMultigraph& M, int s,
             const std::string& pred) -> std::optional<std::vector<std::vector<int>>> {
              auto r = oracle_multigraph_tiling(M, s, clique_predicate_from_string(pred));
              if (!r) return std::nullopt;
              return lists_of(*r);
          },
          py::arg("M"), py::arg("s"), py::arg("pred") = "acceptable");

    m.def("gen_hs_extremal", &gen_hs_extremal, py::arg("s"), py::arg("k"));
    m.def("gen_wang_extremal", &gen_wang_extremal, py::arg("k"));
    m.def("gen_strong2_extremal", &gen_strong2_extremal, py::arg("p"));

    m.def("read_digraph_file", &read_digraph_file);
    m.def("write_digraph_file", &write_digraph_file, py::arg("path"), py::arg("D"),
          py::arg("header") = "");
    m.def("read_multigraph_file", &read_multigraph_file);
    m.def("write_multigraph_file", &write_multigraph_file, py::arg("path"), py::arg("M"),
          py::arg("header") = "");
}
