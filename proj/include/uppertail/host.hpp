#ifndef UPPERTAIL_HOST_HPP
#define UPPERTAIL_HOST_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "uppertail/graph.hpp"

namespace uppertail {

// Fixed-width 512-bit vertex set for sampled/planted hosts.
struct Bits512 {
    std::array<std::uint64_t, 8> w{};

    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1ULL; }
    int count() const {
        int c = 0;
        for (auto x : w) c += __builtin_popcountll(x);
        return c;
    }
};

// Host graph for Monte Carlo work, up to 512 vertices. Same copy-counting
// routine as the small Graph, generalized rows.
class HostGraph {
public:
    static constexpr int kMaxOrder = 512;

    explicit HostGraph(int order);
    explicit HostGraph(const Graph& g);

    int order() const { return order_; }
    int edge_count() const { return edge_count_; }
    bool has_edge(int u, int v) const { return rows_[u].test(v); }
    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    const Bits512& row(int v) const { return rows_[v]; }
    int degree(int v) const { return rows_[v].count(); }

    // In-place union with another host of the same order.
    void merge(const HostGraph& other);

private:
    int order_ = 0;
    int edge_count_ = 0;
    std::vector<Bits512> rows_;
};

// SplitMix64, the fixed mixing function behind all seeded sampling.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for trial t derived from a master seed; every trial's edge stream is
// independent of scheduling.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

// G(n,p): each of the C(n,2) pairs present independently with probability p.
// Counter-based: pair {i<j} uses the word splitmix64(seed ^ splitmix64(idx))
// with idx = j(j-1)/2 + i, and is present iff its top 53 bits are below
// floor(p * 2^53). Identical (n, p, seed) gives identical graphs on any
// IEEE-754 platform.
HostGraph sample_gnp(int n, double p, std::uint64_t seed);

// Exact number of unlabeled pattern copies in host. The search volume is
// estimated up front; a FeasibilityError asks for smaller n or p when the
// estimate is out of range. Pattern order <= 10.
std::uint64_t count_in_host(const HostGraph& host, const Graph& pattern);

// First embedding of pattern into host in the engine's deterministic order,
// as images of pattern vertices 0..v-1; nullopt when none exists.
std::optional<std::vector<int>> find_embedding(const HostGraph& host, const Graph& pattern);

std::uint64_t injective_homomorphism_count(const HostGraph& host, const Graph& pattern);

} // namespace uppertail

#endif
