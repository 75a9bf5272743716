#ifndef UPPERTAIL_GRAPH_HPP
#define UPPERTAIL_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "uppertail/errors.hpp"

namespace uppertail {

// Vertex subset of a <=32-vertex graph. Bit i stands for external label i+1.
using VertexSet = std::uint32_t;

inline int set_size(VertexSet s) { return __builtin_popcount(s); }

// "123" for sets whose host has at most 9 vertices (matching the figures),
// comma separated labels otherwise.
std::string format_vertex_set(VertexSet s, int host_order);
VertexSet parse_vertex_set(const std::string& text, int host_order);

// Small labeled simple graph. External labels are 1-based, internal indices
// 0-based; adjacency rows are one machine word each, so subset work is
// popcount loops. Immutable after construction.
class Graph {
public:
    static constexpr int kMaxOrder = 32;

    Graph() = default;
    // Edges as 0-based index pairs; duplicates collapse, loops are rejected.
    Graph(int order, const std::vector<std::pair<int, int>>& edges);

    int order() const { return order_; }
    int edge_count() const { return edge_count_; }
    std::uint32_t adjacency(int v) const { return adj_[v]; }
    int degree(int v) const { return __builtin_popcount(adj_[v]); }
    int max_degree() const;
    bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1u; }
    VertexSet full_set() const {
        return order_ == 32 ? ~0u : ((1u << order_) - 1u);
    }

    // Edges as 0-based pairs (u < v), ascending.
    std::vector<std::pair<int, int>> edges() const;

    // Number of edges of this graph inside the subset s.
    int edges_inside(VertexSet s) const;

private:
    int order_ = 0;
    int edge_count_ = 0;
    std::uint32_t adj_[kMaxOrder] = {};
};

// Parses the edge-list format: one edge per line as two whitespace-separated
// positive integers <= 32, '#' comments, blank lines ignored. Vertices are
// 1..max-label; duplicate edges collapse; the result does not depend on line
// order. Throws ParseError with a line number on bad input.
Graph graph_from_edge_list(const std::string& text);

// Renders a graph back into edge-list text (1-based labels, ascending).
std::string graph_to_edge_list(const Graph& g);

// Induced subgraph on a non-empty subset; vertices relabeled to 0..|s|-1
// preserving ascending order of the original labels.
Graph induced_subgraph(const Graph& g, VertexSet s);

bool connected(const Graph& g);

// Relabels g by a permutation (perm[old] = new). Test helper for
// isomorphism-invariance properties.
Graph relabel(const Graph& g, const std::vector<int>& perm);

// |Aut(g)|, exact, via the copy-counting engine run against itself with
// degree pruning. Valid for any order <= 32.
std::uint64_t automorphism_count(const Graph& g);

// |Aut(g)| by plain enumeration of all order! permutations. Order <= 12
// enforced (and only sensible well below that); exists as the independent
// anchor for the pruned path.
std::uint64_t automorphism_count_exhaustive(const Graph& g);

// Number of injective edge-preserving maps pattern -> host.
std::uint64_t injective_homomorphism_count(const Graph& host, const Graph& pattern);

// Number of unlabeled copies of pattern in host
// = injective_homomorphism_count / |Aut(pattern)| (division exact).
// A pattern larger than the host yields 0.
std::uint64_t count_copies(const Graph& host, const Graph& pattern);

} // namespace uppertail

#endif
