#ifndef UPPERTAIL_FAMILIES_HPP
#define UPPERTAIL_FAMILIES_HPP

#include "uppertail/graph.hpp"

namespace uppertail {

// C_l^{+r}: vertices 1..l form the cycle, vertices l+1..l+r hang off
// vertex 1. v = e = l + r.
Graph cycle_pendant(int l, int r);

// The 7-vertex graph with edges {12, 23, 13, 14, 45, 46, 27}; its primal
// lattice is the standard worked example.
Graph snail();

// H_r, r >= 2: hexagon 1..6 with chords 1-4 and 2-5; r-1 dangling-triangle
// units on vertex 1 (apex adjacent to 1, apex in a triangle with two leaves);
// one 5-vertex path with endpoints 3 and 4. v = 3r+6, e = 4r+8, m = 4/3.
// Labels: hexagon first, then unit a occupies 3a+4..3a+6 (apex first),
// then the three path internals.
Graph badnews(int r);

// The 10-vertex example: K5 on x1..x5; x6, x7, x8 each adjacent to x1 and
// x2; then the tail x6-x9, x9-x10, x10-x3. e/v = 19/10, m = 2.
Graph fig2_example();

// Gluing construction: r consistent copies of J overlapped on a primal G
// that J covers.
struct GlueSpec {
    Graph j;
    VertexSet g_vertices = 0; // the primal G inside J
    int copies = 1;           // r >= 1
};

// K with v_K = v_G + r(v_J - v_G). Labels: G first (ascending original
// order), then one block of v_J - v_G vertices per copy. The construction
// verifies its own postconditions (K balanced with density m_J; for
// v_K <= 28 also that K's minimum-vertex primal count equals J's) and
// raises InvariantViolation when they fail.
Graph glue(const GlueSpec& spec);

} // namespace uppertail

#endif
