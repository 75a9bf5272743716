#ifndef UPPERTAIL_TESTS_ORACLES_HPP
#define UPPERTAIL_TESTS_ORACLES_HPP

// Brute-force reference implementations. Everything here favours obviousness
// over speed and stays independent of the library's search/pruning paths.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "uppertail/exponents.hpp"
#include "uppertail/graph.hpp"
#include "uppertail/host.hpp"
#include "uppertail/rational.hpp"

namespace oracles {

using uppertail::Graph;
using uppertail::Rational;
using uppertail::VertexSet;

// Injective edge-preserving maps by plain recursion over all assignments.
inline std::uint64_t injective_maps_brute(const Graph& host, const Graph& pattern) {
    const int pv = pattern.order(), hv = host.order();
    if (pv > hv) return 0;
    std::vector<int> image(pv, -1);
    std::vector<char> used(hv, 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int k) -> void {
        if (k == pv) {
            ++count;
            return;
        }
        for (int v = 0; v < hv; ++v) {
            if (used[v]) continue;
            bool ok = true;
            for (int j = 0; j < k && ok; ++j)
                if (pattern.has_edge(k, j) && !host.has_edge(v, image[j])) ok = false;
            if (!ok) continue;
            used[v] = 1;
            image[k] = v;
            self(self, k + 1);
            used[v] = 0;
        }
    };
    rec(rec, 0);
    return count;
}

inline std::uint64_t copies_brute(const Graph& host, const Graph& pattern) {
    std::uint64_t aut = uppertail::automorphism_count_exhaustive(pattern);
    return injective_maps_brute(host, pattern) / aut;
}

// alpha* by exhausting all half-integral assignments f in {0, 1/2, 1}^V.
inline Rational alpha_star_brute(const Graph& g) {
    const int v = g.order();
    std::vector<int> f(v, 0); // doubled values 0,1,2
    int best = 0;
    auto rec = [&](auto&& self, int k) -> void {
        if (k == v) {
            for (auto [a, b] : g.edges())
                if (f[a] + f[b] > 2) return;
            best = std::max(best, std::accumulate(f.begin(), f.end(), 0));
            return;
        }
        for (int val : {0, 1, 2}) {
            f[k] = val;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    return Rational(best, 2);
}

// Exhaustive edge-subset minimization of mu, the independent check of the
// pruned phi path; no candidate ordering, no bounds.
inline double phi_brute(const Graph& h, double n, double p) {
    auto edges = h.edges();
    const int ne = static_cast<int>(edges.size());
    double best = 1e308;
    for (std::uint32_t subset = 1; subset < (1u << ne); ++subset) {
        VertexSet support = 0;
        for (int i = 0; i < ne; ++i)
            if ((subset >> i) & 1u)
                support |= (1u << edges[i].first) | (1u << edges[i].second);
        std::vector<int> map(h.order(), -1);
        int k = 0;
        for (int vtx = 0; vtx < h.order(); ++vtx)
            if ((support >> vtx) & 1u) map[vtx] = k++;
        std::vector<std::pair<int, int>> sub_edges;
        for (int i = 0; i < ne; ++i)
            if ((subset >> i) & 1u)
                sub_edges.emplace_back(map[edges[i].first], map[edges[i].second]);
        Graph sub(k, sub_edges);
        best = std::min(best, uppertail::mu(sub, n, p).log_value);
    }
    return best;
}

// Same enumeration for the small-p branch of M: min over subsets of
// (log mu)/alpha*.
inline double m_small_p_brute(const Graph& h, double n, double p) {
    auto edges = h.edges();
    const int ne = static_cast<int>(edges.size());
    double best = 1e308;
    for (std::uint32_t subset = 1; subset < (1u << ne); ++subset) {
        VertexSet support = 0;
        for (int i = 0; i < ne; ++i)
            if ((subset >> i) & 1u)
                support |= (1u << edges[i].first) | (1u << edges[i].second);
        std::vector<int> map(h.order(), -1);
        int k = 0;
        for (int vtx = 0; vtx < h.order(); ++vtx)
            if ((support >> vtx) & 1u) map[vtx] = k++;
        std::vector<std::pair<int, int>> sub_edges;
        for (int i = 0; i < ne; ++i)
            if ((subset >> i) & 1u)
                sub_edges.emplace_back(map[edges[i].first], map[edges[i].second]);
        Graph sub(k, sub_edges);
        double value = uppertail::mu(sub, n, p).log_value /
                       uppertail::fractional_independence(sub).value();
        best = std::min(best, value);
    }
    return best;
}

// Minimum of v_{K_S}/|S| over ALL non-empty subsets S of G's covers; the
// prefix rule must reproduce it.
inline Rational zeta_subsets_brute(VertexSet g, const std::vector<VertexSet>& covers) {
    const int s = static_cast<int>(covers.size());
    bool any = false;
    Rational best{0, 1};
    for (std::uint32_t subset = 1; subset < (1u << s); ++subset) {
        VertexSet k = g;
        for (int i = 0; i < s; ++i)
            if ((subset >> i) & 1u) k |= covers[i];
        Rational value(uppertail::set_size(k), __builtin_popcount(subset));
        if (!any || value < best) {
            best = value;
            any = true;
        }
    }
    return best;
}

// All connected labeled graphs on exactly `order` vertices.
inline std::vector<Graph> connected_graphs(int order) {
    std::vector<Graph> out;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < order; ++u)
        for (int v = u + 1; v < order; ++v) pairs.emplace_back(u, v);
    const int np = static_cast<int>(pairs.size());
    for (std::uint32_t subset = 0; subset < (1u << np); ++subset) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < np; ++i)
            if ((subset >> i) & 1u) edges.push_back(pairs[i]);
        Graph g(order, edges);
        if (uppertail::connected(g)) out.push_back(g);
    }
    return out;
}

// Deterministic pseudo-random connected graph, for property tests.
inline Graph random_connected_graph(int max_order, std::uint64_t seed) {
    std::uint64_t state = seed;
    auto next = [&]() { return state = uppertail::splitmix64(state); };
    int order = 2 + static_cast<int>(next() % (max_order - 1));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < order; ++u)
            for (int v = u + 1; v < order; ++v)
                if (next() % 100 < 45) edges.emplace_back(u, v);
        Graph g(order, edges);
        if (g.edge_count() >= 1 && uppertail::connected(g)) return g;
    }
    return Graph(2, {{0, 1}});
}

inline Graph complete_graph(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
    return Graph(k, edges);
}

inline Graph path_graph(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u + 1 < k; ++u) edges.emplace_back(u, u + 1);
    return Graph(k, edges);
}

inline Graph cycle_graph(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < k; ++u) edges.emplace_back(u, (u + 1) % k);
    return Graph(k, edges);
}

inline Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 1; u <= leaves; ++u) edges.emplace_back(0, u);
    return Graph(leaves + 1, edges);
}

inline Graph petersen() {
    return Graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                      {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
                      {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
}

} // namespace oracles

#endif
