#include "uppertail/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "uppertail/host.hpp"

namespace uppertail {

std::string format_vertex_set(VertexSet s, int host_order) {
    std::string out;
    bool compact = host_order <= 9;
    for (int i = 0; i < 32; ++i) {
        if (!((s >> i) & 1u)) continue;
        if (!out.empty() && !compact) out += ',';
        out += std::to_string(i + 1);
    }
    return out;
}

VertexSet parse_vertex_set(const std::string& text, int host_order) {
    VertexSet s = 0;
    std::string token;
    std::stringstream in(text);
    while (std::getline(in, token, ',')) {
        size_t a = token.find_first_not_of(" \t");
        if (a == std::string::npos) throw ParseError(0, "empty vertex label in '" + text + "'");
        size_t b = token.find_last_not_of(" \t");
        int label = 0;
        auto res = std::from_chars(token.data() + a, token.data() + b + 1, label);
        if (res.ec != std::errc() || res.ptr != token.data() + b + 1)
            throw ParseError(0, "bad vertex label '" + token + "'");
        if (label < 1 || label > host_order)
            throw ParseError(0, "vertex label " + std::to_string(label) + " out of range");
        s |= 1u << (label - 1);
    }
    if (s == 0) throw ParseError(0, "empty vertex set");
    return s;
}

Graph::Graph(int order, const std::vector<std::pair<int, int>>& edges) : order_(order) {
    if (order < 0 || order > kMaxOrder)
        throw FeasibilityError("graph order " + std::to_string(order) + " exceeds the cap of 32");
    for (auto [u, v] : edges) {
        if (u == v) throw ParseError(0, "loop edge at vertex " + std::to_string(u + 1));
        if (u < 0 || v < 0 || u >= order || v >= order)
            throw ParseError(0, "edge endpoint out of range");
        adj_[u] |= 1u << v;
        adj_[v] |= 1u << u;
    }
    int total = 0;
    for (int v = 0; v < order_; ++v) total += __builtin_popcount(adj_[v]);
    edge_count_ = total / 2;
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < order_; ++v) d = std::max(d, degree(v));
    return d;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < order_; ++u) {
        std::uint32_t higher = adj_[u] >> (u + 1);
        while (higher) {
            int v = u + 1 + __builtin_ctz(higher);
            out.emplace_back(u, v);
            higher &= higher - 1;
        }
    }
    return out;
}

int Graph::edges_inside(VertexSet s) const {
    int twice = 0;
    std::uint32_t rest = s;
    while (rest) {
        int v = __builtin_ctz(rest);
        rest &= rest - 1;
        twice += __builtin_popcount(adj_[v] & s);
    }
    return twice / 2;
}

Graph graph_from_edge_list(const std::string& text) {
    std::vector<std::pair<int, int>> edges;
    int max_label = 0;
    int line_no = 0;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::stringstream ls(line);
        std::string ta, tb, extra;
        if (!(ls >> ta)) continue; // blank
        if (!(ls >> tb)) throw ParseError(line_no, "expected two vertex labels");
        if (ls >> extra) throw ParseError(line_no, "more than two tokens on edge line");
        int a = 0, b = 0;
        auto parse_one = [&](const std::string& tok) {
            int value = 0;
            auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
                throw ParseError(line_no, "malformed token '" + tok + "'");
            if (value < 1) throw ParseError(line_no, "labels must be positive");
            if (value > Graph::kMaxOrder)
                throw ParseError(line_no, "label " + std::to_string(value) + " exceeds the cap of 32");
            return value;
        };
        a = parse_one(ta);
        b = parse_one(tb);
        if (a == b) throw ParseError(line_no, "loop edge " + ta + " " + tb);
        edges.emplace_back(a - 1, b - 1);
        max_label = std::max({max_label, a, b});
    }
    if (edges.empty()) throw ParseError(0, "edge list contains no edges");
    return Graph(max_label, edges);
}

std::string graph_to_edge_list(const Graph& g) {
    std::string out;
    for (auto [u, v] : g.edges())
        out += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return out;
}

Graph induced_subgraph(const Graph& g, VertexSet s) {
    if (s == 0) throw std::invalid_argument("induced subgraph of the empty set");
    if (g.order() < 32 && (s >> g.order()) != 0)
        throw std::invalid_argument("vertex set not inside the host graph");
    int map[Graph::kMaxOrder];
    int k = 0;
    for (int v = 0; v < g.order(); ++v)
        if ((s >> v) & 1u) map[v] = k++;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (((s >> u) & 1u) && ((s >> v) & 1u)) edges.emplace_back(map[u], map[v]);
    return Graph(k, edges);
}

bool connected(const Graph& g) {
    if (g.order() == 0) return false;
    std::uint32_t seen = 1u, frontier = 1u;
    while (frontier) {
        std::uint32_t next = 0;
        std::uint32_t rest = frontier;
        while (rest) {
            int v = __builtin_ctz(rest);
            rest &= rest - 1;
            next |= g.adjacency(v);
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == g.full_set();
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    return Graph(g.order(), edges);
}

std::uint64_t automorphism_count(const Graph& g) {
    if (g.order() == 0) return 1;
    return injective_homomorphism_count(HostGraph(g), g);
}

std::uint64_t automorphism_count_exhaustive(const Graph& g) {
    if (g.order() > 12)
        throw FeasibilityError("exhaustive automorphism path is capped at 12 vertices");
    if (g.order() == 0) return 1;
    std::vector<int> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (auto [u, v] : g.edges()) {
            if (!g.has_edge(perm[u], perm[v])) { ok = false; break; }
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

std::uint64_t injective_homomorphism_count(const Graph& host, const Graph& pattern) {
    return injective_homomorphism_count(HostGraph(host), pattern);
}

std::uint64_t count_copies(const Graph& host, const Graph& pattern) {
    if (pattern.order() > host.order()) return 0;
    std::uint64_t maps = injective_homomorphism_count(HostGraph(host), pattern);
    std::uint64_t aut = automorphism_count(pattern);
    if (maps % aut != 0)
        throw InvariantViolation("injective map count not divisible by |Aut(pattern)|");
    return maps / aut;
}

} // namespace uppertail
