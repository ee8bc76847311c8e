#include "equitile/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "equitile/errors.hpp"
#include "equitile/tiling.hpp"

namespace equitile {

namespace {

// Line-oriented reader that skips comments/blank-only-comment lines and
// tracks line numbers for error messages.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next content line (comments skipped).  Empty lines are content: class
    // lines in coloring files may be empty.
    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++lineno_;
            if (!line.empty() && line[0] == '#') continue;
            return true;
        }
        return false;
    }

    // Next line that has at least one token.
    bool next_nonempty(std::string& line) {
        while (next(line)) {
            std::istringstream ss(line);
            std::string tok;
            if (ss >> tok) return true;
        }
        return false;
    }

    int lineno() const { return lineno_; }

private:
    std::istream& in_;
    int lineno_ = 0;
};

[[noreturn]] void fail(const LineReader& r, const std::string& msg) {
    throw parse_error("line " + std::to_string(r.lineno()) + ": " + msg);
}

int parse_int(LineReader& r, std::istringstream& ss, const char* what) {
    long long x;
    if (!(ss >> x)) fail(r, std::string("expected ") + what);
    if (x < -1'000'000'000LL || x > 1'000'000'000LL)
        fail(r, std::string(what) + " out of range");
    return static_cast<int>(x);
}

void expect_end(LineReader& r, std::istringstream& ss) {
    std::string extra;
    if (ss >> extra) fail(r, "unexpected trailing token '" + extra + "'");
}

std::pair<int, int> read_counts(LineReader& r, const char* what_n, const char* what_m) {
    std::string line;
    if (!r.next_nonempty(line)) throw parse_error(std::string("missing header line (") +
                                                  what_n + " " + what_m + ")");
    std::istringstream ss(line);
    int n = parse_int(r, ss, what_n);
    int m = parse_int(r, ss, what_m);
    expect_end(r, ss);
    return {n, m};
}

std::ifstream open_input(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open '" + path + "' for reading");
    return f;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw parse_error("cannot open '" + path + "' for writing");
    return f;
}

void write_header(std::ostream& out, const std::string& header) {
    if (header.empty()) return;
    std::istringstream ss(header);
    std::string line;
    while (std::getline(ss, line)) out << "# " << line << "\n";
}

}  // namespace

Digraph read_digraph(std::istream& in) {
    LineReader r(in);
    auto [n, m] = read_counts(r, "vertex count", "arc count");
    if (n < 0 || m < 0) throw parse_error("negative counts in digraph header");
    Digraph D(n);
    std::string line;
    for (int i = 0; i < m; ++i) {
        if (!r.next_nonempty(line)) throw parse_error("expected " + std::to_string(m) +
                                                      " arcs, found " + std::to_string(i));
        std::istringstream ss(line);
        int u = parse_int(r, ss, "arc tail");
        int v = parse_int(r, ss, "arc head");
        expect_end(r, ss);
        if (u < 0 || u >= n || v < 0 || v >= n) fail(r, "arc endpoint out of range");
        if (u == v) fail(r, "loop arc not allowed");
        if (D.has_edge(u, v)) fail(r, "duplicate arc " + std::to_string(u) + " " +
                                          std::to_string(v));
        D.add_edge(u, v);
    }
    if (r.next_nonempty(line)) fail(r, "trailing content after arc list");
    return D;
}

void write_digraph(std::ostream& out, const Digraph& D, const std::string& header) {
    write_header(out, header);
    out << D.size() << ' ' << D.edge_count() << "\n";
    for (auto [u, v] : D.edges()) out << u << ' ' << v << "\n";
}

StandardMultigraph read_multigraph(std::istream& in) {
    LineReader r(in);
    auto [n, m] = read_counts(r, "vertex count", "edge count");
    if (n < 0 || m < 0) throw parse_error("negative counts in multigraph header");
    StandardMultigraph M(n);
    std::string line;
    for (int i = 0; i < m; ++i) {
        if (!r.next_nonempty(line)) throw parse_error("expected " + std::to_string(m) +
                                                      " edges, found " + std::to_string(i));
        std::istringstream ss(line);
        int u = parse_int(r, ss, "edge endpoint");
        int v = parse_int(r, ss, "edge endpoint");
        int c = parse_int(r, ss, "multiplicity");
        expect_end(r, ss);
        if (u < 0 || u >= n || v < 0 || v >= n) fail(r, "edge endpoint out of range");
        if (u == v) fail(r, "loop edge not allowed");
        if (c != 1 && c != 2) fail(r, "multiplicity must be 1 or 2");
        if (M.multiplicity(u, v) != 0) fail(r, "duplicate pair " + std::to_string(u) + " " +
                                                   std::to_string(v));
        M.set_multiplicity(u, v, c);
    }
    if (r.next_nonempty(line)) fail(r, "trailing content after edge list");
    return M;
}

void write_multigraph(std::ostream& out, const StandardMultigraph& M, const std::string& header) {
    write_header(out, header);
    auto es = M.edges();
    out << M.size() << ' ' << es.size() << "\n";
    for (auto [u, v, c] : es) out << u << ' ' << v << ' ' << c << "\n";
}

Coloring read_coloring(std::istream& in) {
    LineReader r(in);
    std::string line;
    if (!r.next_nonempty(line)) throw parse_error("missing coloring header line");
    std::istringstream ss(line);
    int k = parse_int(r, ss, "class count");
    std::string status;
    if (!(ss >> status)) fail(r, "expected coloring status token");
    expect_end(r, ss);
    if (k < 0) fail(r, "negative class count");

    Coloring C;
    C.status = coloring_status_from_string(status);
    for (int i = 0; i < k; ++i) {
        if (!r.next(line)) throw parse_error("expected " + std::to_string(k) +
                                             " class lines, found " + std::to_string(i));
        std::istringstream cs(line);
        std::vector<int> vs;
        long long x;
        while (cs >> x) {
            if (x < 0 || x > 1'000'000'000LL) fail(r, "vertex index out of range");
            vs.push_back(static_cast<int>(x));
        }
        if (!cs.eof()) fail(r, "non-integer token in class line");
        try {
            C.classes.emplace_back(std::move(vs));
        } catch (const precondition_error& e) {
            fail(r, e.what());
        }
    }
    // Recover the small/large indices for useful colorings.
    if (C.status == ColoringStatus::useful) {
        int mn = C.classes.empty() ? 0 : C.classes[0].size(), mx = mn;
        for (const auto& c : C.classes) {
            mn = std::min(mn, c.size());
            mx = std::max(mx, c.size());
        }
        for (int i = 0; i < k; ++i) {
            if (C.classes[i].size() == mn) { C.small_index = i; break; }
        }
        for (int i = 0; i < k; ++i) {
            if (C.classes[i].size() == mx) { C.large_index = i; break; }
        }
    }
    return C;
}

void write_coloring(std::ostream& out, const Coloring& C) {
    out << C.k() << ' ' << to_string(C.status) << "\n";
    for (const auto& c : C.classes) {
        bool first = true;
        for (int v : c) {
            if (!first) out << ' ';
            out << v;
            first = false;
        }
        out << "\n";
    }
}

TournamentFactor read_factor(std::istream& in) {
    LineReader r(in);
    auto [k, s] = read_counts(r, "tile count", "tile order");
    if (k < 0 || s <= 0) throw parse_error("bad factor header");
    TournamentFactor F;
    F.s = s;
    std::string line;
    for (int i = 0; i < k; ++i) {
        if (!r.next_nonempty(line)) throw parse_error("expected " + std::to_string(k) +
                                                      " tile lines, found " + std::to_string(i));
        std::istringstream ss(line);
        std::vector<int> tile;
        for (int j = 0; j < s; ++j) tile.push_back(parse_int(r, ss, "tile vertex"));
        expect_end(r, ss);
        F.tiles.push_back(std::move(tile));
    }
    if (r.next_nonempty(line)) fail(r, "trailing content after tile list");
    return F;
}

void write_factor(std::ostream& out, const TournamentFactor& F) {
    out << F.tiles.size() << ' ' << F.s << "\n";
    for (const auto& tile : F.tiles) {
        for (std::size_t j = 0; j < tile.size(); ++j) {
            if (j) out << ' ';
            out << tile[j];
        }
        out << "\n";
    }
}

TilingFile read_tiling(std::istream& in) {
    LineReader r(in);
    auto [count, s] = read_counts(r, "tile count", "tile order");
    if (count < 0 || s <= 0) throw parse_error("bad tiling header");
    TilingFile T;
    T.s = s;
    std::string line;
    for (int i = 0; i < count; ++i) {
        if (!r.next_nonempty(line)) throw parse_error("expected " + std::to_string(count) +
                                                      " tile lines, found " + std::to_string(i));
        std::istringstream ss(line);
        std::vector<int> tile;
        for (int j = 0; j < s; ++j) tile.push_back(parse_int(r, ss, "tile vertex"));
        std::string flag;
        if (!(ss >> flag)) fail(r, "expected tile flag fit|near|both");
        if (flag != "fit" && flag != "near" && flag != "both")
            fail(r, "unknown tile flag '" + flag + "'");
        expect_end(r, ss);
        try {
            T.tiles.emplace_back(std::move(tile));
        } catch (const precondition_error& e) {
            fail(r, e.what());
        }
        T.flags.push_back(flag);
    }
    if (r.next_nonempty(line)) fail(r, "trailing content after tile list");
    return T;
}

void write_tiling(std::ostream& out, const StandardMultigraph& M, const CliqueTiling& T) {
    out << T.tiles.size() << ' ' << T.s << "\n";
    for (const auto& tile : T.tiles) {
        CliqueStatus st = clique_status(M, tile, T.s);
        const char* flag = st.fit ? (st.near_matching ? "both" : "fit") : "near";
        for (int v : tile) out << v << ' ';
        out << flag << "\n";
    }
}

ArtifactKind sniff_artifact_kind(const std::string& path) {
    auto f = open_input(path);
    LineReader r(f);
    std::string line;
    if (!r.next_nonempty(line)) throw parse_error("empty artifact file '" + path + "'");
    std::istringstream ss(line);
    std::string first, second, extra;
    ss >> first >> second;
    if (ss >> extra) throw parse_error("unrecognized artifact header in '" + path + "'");
    bool second_numeric = !second.empty() &&
                          second.find_first_not_of("0123456789") == std::string::npos;
    if (!second_numeric) return ArtifactKind::coloring;
    // Both factor and tiling have numeric headers; tile lines of a tiling
    // end with a flag token.
    while (r.next_nonempty(line)) {
        std::istringstream ts(line);
        std::string tok, last;
        while (ts >> tok) last = tok;
        if (last == "fit" || last == "near" || last == "both") return ArtifactKind::tiling;
        return ArtifactKind::factor;
    }
    return ArtifactKind::factor;  // headers only, zero tiles: treat as factor
}

Digraph read_digraph_file(const std::string& path) {
    auto f = open_input(path);
    return read_digraph(f);
}
void write_digraph_file(const std::string& path, const Digraph& D, const std::string& header) {
    auto f = open_output(path);
    write_digraph(f, D, header);
}
StandardMultigraph read_multigraph_file(const std::string& path) {
    auto f = open_input(path);
    return read_multigraph(f);
}
void write_multigraph_file(const std::string& path, const StandardMultigraph& M,
                           const std::string& header) {
    auto f = open_output(path);
    write_multigraph(f, M, header);
}
Coloring read_coloring_file(const std::string& path) {
    auto f = open_input(path);
    return read_coloring(f);
}
void write_coloring_file(const std::string& path, const Coloring& C) {
    auto f = open_output(path);
    write_coloring(f, C);
}
TournamentFactor read_factor_file(const std::string& path) {
    auto f = open_input(path);
    return read_factor(f);
}
void write_factor_file(const std::string& path, const TournamentFactor& F) {
    auto f = open_output(path);
    write_factor(f, F);
}
TilingFile read_tiling_file(const std::string& path) {
    auto f = open_input(path);
    return read_tiling(f);
}
void write_tiling_file(const std::string& path, const StandardMultigraph& M,
                       const CliqueTiling& T) {
    auto f = open_output(path);
    write_tiling(f, M, T);
}

}  // namespace equitile
