#include "uppertail/host.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uppertail/errors.hpp"

namespace uppertail {

HostGraph::HostGraph(int order) : order_(order), rows_(order) {
    if (order < 0 || order > kMaxOrder)
        throw FeasibilityError("host order " + std::to_string(order) + " exceeds the cap of 512");
}

HostGraph::HostGraph(const Graph& g) : HostGraph(g.order()) {
    for (auto [u, v] : g.edges()) add_edge(u, v);
}

void HostGraph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("loop edge");
    if (!rows_[u].test(v)) {
        rows_[u].set(v);
        rows_[v].set(u);
        ++edge_count_;
    }
}

void HostGraph::remove_edge(int u, int v) {
    if (rows_[u].test(v)) {
        rows_[u].reset(v);
        rows_[v].reset(u);
        --edge_count_;
    }
}

void HostGraph::merge(const HostGraph& other) {
    if (other.order_ != order_) throw std::invalid_argument("merging hosts of different order");
    int total = 0;
    for (int v = 0; v < order_; ++v) {
        for (int k = 0; k < 8; ++k) rows_[v].w[k] |= other.rows_[v].w[k];
        total += rows_[v].count();
    }
    edge_count_ = total / 2;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
    return splitmix64(master_seed ^ splitmix64(trial + 0x517CC1B727220A95ULL));
}

HostGraph sample_gnp(int n, double p, std::uint64_t seed) {
    if (n < 0 || n > HostGraph::kMaxOrder)
        throw FeasibilityError("sample_gnp is capped at 512 vertices");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p outside [0,1]");
    HostGraph g(n);
    if (p <= 0.0) return g;
    // 53-bit threshold: an edge is present iff the top 53 bits of its word
    // fall below floor(p * 2^53); p = 1 keeps every edge.
    const std::uint64_t threshold =
        p >= 1.0 ? (1ULL << 53) : static_cast<std::uint64_t>(p * 9007199254740992.0);
    for (int j = 1; j < n; ++j) {
        std::uint64_t base = static_cast<std::uint64_t>(j) * (j - 1) / 2;
        for (int i = 0; i < j; ++i) {
            std::uint64_t word = splitmix64(seed ^ splitmix64(base + i));
            if ((word >> 11) < threshold) g.add_edge(i, j);
        }
    }
    return g;
}

namespace {

struct PatternPlan {
    int size = 0;
    int order[Graph::kMaxOrder];      // pattern vertex placed at each position
    int pattern_degree[Graph::kMaxOrder];
    // earlier[k] = positions (< k) whose pattern vertices neighbour order[k]
    int earlier[Graph::kMaxOrder][Graph::kMaxOrder];
    int earlier_count[Graph::kMaxOrder];
};

PatternPlan make_plan(const Graph& pattern) {
    PatternPlan plan;
    int pv = pattern.order();
    plan.size = pv;
    std::uint32_t placed = 0;
    for (int k = 0; k < pv; ++k) {
        int best = -1, best_links = -1, best_deg = -1;
        for (int v = 0; v < pv; ++v) {
            if ((placed >> v) & 1u) continue;
            int links = __builtin_popcount(pattern.adjacency(v) & placed);
            int deg = pattern.degree(v);
            if (links > best_links || (links == best_links && deg > best_deg)) {
                best = v;
                best_links = links;
                best_deg = deg;
            }
        }
        plan.order[k] = best;
        plan.pattern_degree[k] = pattern.degree(best);
        plan.earlier_count[k] = 0;
        for (int j = 0; j < k; ++j)
            if (pattern.has_edge(best, plan.order[j]))
                plan.earlier[k][plan.earlier_count[k]++] = j;
        placed |= 1u << best;
    }
    return plan;
}

struct SearchState {
    const HostGraph* host;
    const PatternPlan* plan;
    int n;
    int host_degree[HostGraph::kMaxOrder];
    Bits512 used;
    int image[Graph::kMaxOrder];
    std::uint64_t count = 0;
    bool find_first = false;
    bool found = false;
};

void search(SearchState& st, int k) {
    const PatternPlan& plan = *st.plan;
    if (k == plan.size) {
        ++st.count;
        if (st.find_first) st.found = true;
        return;
    }
    Bits512 cand;
    if (plan.earlier_count[k] == 0) {
        for (int w = 0; w < 8; ++w) cand.w[w] = ~st.used.w[w];
        int tail = st.n & 63;
        int full = st.n >> 6;
        for (int w = full + 1; w < 8; ++w) cand.w[w] = 0;
        if (full < 8) cand.w[full] &= tail ? ((1ULL << tail) - 1) : 0;
    } else {
        cand = st.host->row(st.image[plan.earlier[k][0]]);
        for (int e = 1; e < plan.earlier_count[k]; ++e) {
            const Bits512& row = st.host->row(st.image[plan.earlier[k][e]]);
            for (int w = 0; w < 8; ++w) cand.w[w] &= row.w[w];
        }
        for (int w = 0; w < 8; ++w) cand.w[w] &= ~st.used.w[w];
    }
    int need = plan.pattern_degree[k];
    for (int w = 0; w < 8; ++w) {
        std::uint64_t bits = cand.w[w];
        while (bits) {
            int v = (w << 6) + __builtin_ctzll(bits);
            bits &= bits - 1;
            if (st.host_degree[v] < need) continue;
            st.used.set(v);
            st.image[k] = v;
            search(st, k + 1);
            st.used.reset(v);
            if (st.found) return;
        }
    }
}

std::uint64_t run_engine(const HostGraph& host, const Graph& pattern, bool find_first,
                         std::vector<int>* images_out) {
    if (pattern.order() == 0) return 1;
    if (pattern.order() > host.order()) return 0;
    PatternPlan plan = make_plan(pattern);
    SearchState st;
    st.host = &host;
    st.plan = &plan;
    st.n = host.order();
    st.find_first = find_first;
    for (int v = 0; v < host.order(); ++v) st.host_degree[v] = host.degree(v);
    search(st, 0);
    if (find_first && st.found && images_out) {
        images_out->assign(pattern.order(), 0);
        for (int k = 0; k < plan.size; ++k) (*images_out)[plan.order[k]] = st.image[k];
    }
    return st.count;
}

// Rough node-count estimate used by the feasibility guard.
double search_volume_estimate(const HostGraph& host, const Graph& pattern) {
    double n = host.order();
    if (n == 0 || pattern.order() == 0) return 1;
    double avg_degree = 2.0 * host.edge_count() / n;
    PatternPlan plan = make_plan(pattern);
    double est = n;
    for (int k = 1; k < plan.size; ++k)
        est *= plan.earlier_count[k] > 0 ? std::max(1.0, avg_degree) : std::max(1.0, n - k);
    return est;
}

constexpr double kVolumeGuard = 8e9;

} // namespace

std::uint64_t injective_homomorphism_count(const HostGraph& host, const Graph& pattern) {
    return run_engine(host, pattern, false, nullptr);
}

std::optional<std::vector<int>> find_embedding(const HostGraph& host, const Graph& pattern) {
    std::vector<int> images;
    std::uint64_t hits = run_engine(host, pattern, true, &images);
    if (hits == 0) return std::nullopt;
    return images;
}

std::uint64_t count_in_host(const HostGraph& host, const Graph& pattern) {
    if (pattern.order() > 10)
        throw FeasibilityError("pattern order " + std::to_string(pattern.order()) +
                               " exceeds the counting cap of 10");
    if (pattern.order() > host.order()) return 0;
    double est = search_volume_estimate(host, pattern);
    if (est > kVolumeGuard)
        throw FeasibilityError(
            "estimated search volume " + std::to_string(est) +
            " exceeds the exact-counting guard; use smaller n or p");
    std::uint64_t maps = run_engine(host, pattern, false, nullptr);
    std::uint64_t aut = automorphism_count(pattern);
    if (maps % aut != 0)
        throw InvariantViolation("injective map count not divisible by |Aut(pattern)|");
    return maps / aut;
}

} // namespace uppertail
