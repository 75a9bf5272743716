#include "uppertail/families.hpp"

#include <string>

#include "uppertail/errors.hpp"
#include "uppertail/exponents.hpp"
#include "uppertail/primal.hpp"

namespace uppertail {

Graph cycle_pendant(int l, int r) {
    if (l < 3) throw std::invalid_argument("cycle_pendant needs l >= 3");
    if (r < 1) throw std::invalid_argument("cycle_pendant needs r >= 1");
    if (l + r > Graph::kMaxOrder)
        throw FeasibilityError("cycle_pendant(" + std::to_string(l) + "," + std::to_string(r) +
                               ") exceeds 32 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < l; ++i) edges.emplace_back(i, (i + 1) % l);
    for (int k = 0; k < r; ++k) edges.emplace_back(0, l + k);
    return Graph(l + r, edges);
}

Graph snail() {
    return Graph(7, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {3, 5}, {1, 6}});
}

Graph badnews(int r) {
    if (r < 2) throw std::invalid_argument("badnews needs r >= 2");
    if (3 * r + 6 > Graph::kMaxOrder)
        throw FeasibilityError("badnews(" + std::to_string(r) + ") exceeds 32 vertices");
    std::vector<std::pair<int, int>> edges;
    // hexagon 1..6 with chords 1-4 and 2-5
    for (int i = 0; i < 6; ++i) edges.emplace_back(i, (i + 1) % 6);
    edges.emplace_back(0, 3);
    edges.emplace_back(1, 4);
    // r-1 dangling-triangle units on vertex 1: apex + two leaves
    for (int a = 0; a < r - 1; ++a) {
        int apex = 6 + 3 * a, leaf1 = apex + 1, leaf2 = apex + 2;
        edges.emplace_back(0, apex);
        edges.emplace_back(apex, leaf1);
        edges.emplace_back(apex, leaf2);
        edges.emplace_back(leaf1, leaf2);
    }
    // 5-vertex path with endpoints 3 and 4
    int base = 6 + 3 * (r - 1);
    edges.emplace_back(2, base);
    edges.emplace_back(base, base + 1);
    edges.emplace_back(base + 1, base + 2);
    edges.emplace_back(base + 2, 3);
    return Graph(3 * r + 6, edges);
}

Graph fig2_example() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
    for (int apex = 5; apex <= 7; ++apex) {
        edges.emplace_back(0, apex);
        edges.emplace_back(1, apex);
    }
    edges.emplace_back(5, 8); // x6 - x9
    edges.emplace_back(8, 9); // x9 - x10
    edges.emplace_back(9, 2); // x10 - x3
    return Graph(10, edges);
}

Graph glue(const GlueSpec& spec) {
    const Graph& j = spec.j;
    if (spec.copies < 1) throw std::invalid_argument("glue needs copies >= 1");
    if (spec.g_vertices == 0 || (j.order() < 32 && (spec.g_vertices >> j.order()) != 0))
        throw std::invalid_argument("glue: G is not a vertex set of J");
    const int vg = set_size(spec.g_vertices);
    const int extra = j.order() - vg;
    if (extra <= 0) throw std::invalid_argument("glue: G must be a proper subset of J");
    const int vk = vg + spec.copies * extra;
    if (vk > Graph::kMaxOrder)
        throw FeasibilityError("glue output exceeds 32 vertices");

    // The spec's own invariants: G primal for J and covered by the whole of
    // J, which requires J balanced.
    PrimalFamily fam = primal_family(j);
    if (!fam.is_member(spec.g_vertices))
        throw std::invalid_argument("glue: G is not primal for J");
    if (!fam.is_member(j.full_set()))
        throw std::invalid_argument("glue: J is not balanced");
    if (!covers(fam, spec.g_vertices, j.full_set()))
        throw std::invalid_argument("glue: J does not cover G");

    // K's labels: G first (ascending), then one block per copy.
    int g_index[Graph::kMaxOrder], w_index[Graph::kMaxOrder];
    int gi = 0, wi = 0;
    for (int v = 0; v < j.order(); ++v) {
        if ((spec.g_vertices >> v) & 1u)
            g_index[v] = gi++;
        else
            w_index[v] = wi++;
    }
    std::vector<std::pair<int, int>> edges;
    auto in_g = [&](int v) { return ((spec.g_vertices >> v) & 1u) != 0; };
    for (auto [u, v] : j.edges()) {
        if (in_g(u) && in_g(v)) {
            edges.emplace_back(g_index[u], g_index[v]);
        } else {
            for (int k = 0; k < spec.copies; ++k) {
                int base = vg + k * extra;
                int a = in_g(u) ? g_index[u] : base + w_index[u];
                int b = in_g(v) ? g_index[v] : base + w_index[v];
                edges.emplace_back(a, b);
            }
        }
    }
    Graph k(vk, edges);

    // Footnote-4 postconditions, verified rather than trusted.
    Rational m_j = fam.m;
    if (Rational(k.edge_count(), k.order()) != m_j)
        throw InvariantViolation("glue output density differs from m_J");
    DensityResult mk = m_density(k);
    if (mk.density.value != m_j)
        throw InvariantViolation("glue output is not balanced at density m_J");
    if (vk <= kPrimalOrderCap) {
        PrimalFamily famk = primal_family(k);
        if (famk.min_vertex_count != fam.min_vertex_count)
            throw InvariantViolation("glue output has a smaller primal than J");
    }
    return k;
}

} // namespace uppertail
