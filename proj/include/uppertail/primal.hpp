#ifndef UPPERTAIL_PRIMAL_HPP
#define UPPERTAIL_PRIMAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uppertail/exponents.hpp"
#include "uppertail/graph.hpp"
#include "uppertail/rational.hpp"

namespace uppertail {

// The lattice L_H of primal vertex sets (induced density exactly m_H) with
// its Hasse covering relation.
struct PrimalFamily {
    Graph host;
    Rational m;                                   // m_H
    std::vector<VertexSet> members;               // sorted by (size, mask)
    std::vector<std::pair<int, int>> cover_edges; // (lower idx, upper idx)
    int min_vertex_count = 0;                     // v_0

    bool is_member(VertexSet s) const;
    int member_index(VertexSet s) const;          // -1 when absent
};

// Subset scan; order <= 28 enforced (2^28 popcount loop).
PrimalFamily primal_family(const Graph& h);

inline constexpr int kPrimalOrderCap = 28;

// True when upper covers lower in the Hasse diagram. Both must be members.
bool covers(const PrimalFamily& family, VertexSet lower, VertexSet upper);

// All members covering g, ordered by increasing vertex count, ties by mask.
std::vector<VertexSet> covering_primals(const PrimalFamily& family, VertexSet g);

// Finite verification of the three structural facts about L_H: unions of
// members are members, cover complements induce connected graphs, and the
// complements of distinct covers of a common member are pairwise disjoint.
// A failure is an implementation bug, never a property of the input.
struct ClaimSuiteReport {
    bool union_closed = true;
    bool cover_complements_connected = true;
    bool cover_complements_disjoint = true;
    std::string counterwitness;
    bool pass() const {
        return union_closed && cover_complements_connected && cover_complements_disjoint;
    }
};

ClaimSuiteReport claim_suite(const Graph& h);
ClaimSuiteReport claim_suite(const PrimalFamily& family);

// Grading chain G_0 c G_1 c ... c G_s = V(H): G_0 is the union of the
// inclusion-minimal members, each next element the union of all members
// covering the previous. Defined for balanced hosts only.
struct GradingChain {
    std::vector<VertexSet> chain;
};

GradingChain grading(const Graph& h);
GradingChain grading(const PrimalFamily& family);

struct ZetaResult {
    Rational zeta{0, 1};
    VertexSet witness_G = 0;
    std::vector<VertexSet> witness_covers;   // optimal prefix J_1..J_r
    // zeta_H(G) for every member with at least one cover, in member order.
    std::vector<std::pair<VertexSet, Rational>> per_G_values;
};

// zeta_H(G) = min over prefixes r of (v_G + sum_{i<=r}(v_{J_i} - v_G))/r with
// the covers of G ordered by vertex count; zeta_H is the minimum over members.
// Requires a member with a cover, i.e. a host that is not strictly balanced.
ZetaResult zeta(const Graph& h);
ZetaResult zeta(const PrimalFamily& family);

struct CounterexampleVerdict {
    bool is_counterexample = false;
    // Present when true: the minimizing (G, [J_1..J_r]) and K = union.
    VertexSet witness_G = 0;
    std::vector<VertexSet> witness_covers;
    VertexSet witness_K = 0;
    std::optional<Rational> zeta_value;
    int min_vertex_count = 0;
};

// Theorem-3.1 style hypothesis test: some member G has r distinct covers
// whose union K satisfies v_K / r < min_{F in L_H} v_F; equivalent (via
// cover-complement disjointness and prefix optimality) to zeta_H < v_0.
CounterexampleVerdict counterexample_check(const Graph& h);
CounterexampleVerdict counterexample_check(const PrimalFamily& family);

} // namespace uppertail

#endif
