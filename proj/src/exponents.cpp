#include "uppertail/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_map>
#include <vector>

#include "uppertail/errors.hpp"

namespace uppertail {

namespace {

double log_factorial(int k) {
    static const std::vector<double> table = [] {
        std::vector<double> t(64, 0.0);
        for (int i = 2; i < 64; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    return table[k];
}

struct DensityScanResult {
    int best_e = 0, best_v = 1;
    VertexSet best_mask = 0;
    int proper_e = 0, proper_v = 1; // best over proper non-empty subsets
    bool has_proper = false;
};

// Better density first; ties prefer fewer vertices, then smaller mask.
bool density_better(int e1, int v1, VertexSet m1, int e2, int v2, VertexSet m2) {
    std::int64_t lhs = static_cast<std::int64_t>(e1) * v2;
    std::int64_t rhs = static_cast<std::int64_t>(e2) * v1;
    if (lhs != rhs) return lhs > rhs;
    if (v1 != v2) return v1 < v2;
    return m1 < m2;
}

// Gray-code walk over all non-empty vertex subsets with incremental edge
// counts. Order 32 means 2^32 steps; fine for the paper's graphs (<= 30).
DensityScanResult density_scan(const Graph& h) {
    DensityScanResult r;
    const int v = h.order();
    if (v == 0) throw std::invalid_argument("density of the empty graph");
    const VertexSet full = h.full_set();
    std::uint64_t limit = (v == 32) ? 0 : (1ULL << v); // 0 wraps: loop runs 2^32 times
    VertexSet mask = 0;
    int e = 0, vc = 0;
    bool first = true;
    std::uint64_t i = 0;
    do {
        ++i;
        int b = __builtin_ctzll(i);
        VertexSet bit = 1u << b;
        if (mask & bit) {
            mask ^= bit;
            e -= __builtin_popcount(h.adjacency(b) & mask);
            --vc;
        } else {
            e += __builtin_popcount(h.adjacency(b) & mask);
            mask ^= bit;
            ++vc;
        }
        if (first || density_better(e, vc, mask, r.best_e, r.best_v, r.best_mask)) {
            r.best_e = e;
            r.best_v = vc;
            r.best_mask = mask;
            first = false;
        }
        if (mask != full &&
            (!r.has_proper || density_better(e, vc, mask, r.proper_e, r.proper_v, 0))) {
            r.proper_e = e;
            r.proper_v = vc;
            r.has_proper = true;
        }
    } while (i + 1 != limit);
    return r;
}

} // namespace

DensityResult m_density(const Graph& h) {
    DensityScanResult scan = density_scan(h);
    DensityResult out;
    out.density.edges = scan.best_e;
    out.density.vertices = scan.best_v;
    out.density.value = Rational(scan.best_e, scan.best_v);
    out.witness = scan.best_mask;
    return out;
}

bool is_balanced(const Graph& h) {
    if (h.edge_count() < 1) throw std::invalid_argument("balance of an edgeless graph");
    DensityScanResult scan = density_scan(h);
    return Rational(h.edge_count(), h.order()) == Rational(scan.best_e, scan.best_v);
}

bool is_strictly_balanced(const Graph& h) {
    if (h.edge_count() < 1) throw std::invalid_argument("balance of an edgeless graph");
    if (h.order() == 1) return true;
    DensityScanResult scan = density_scan(h);
    return Rational(scan.proper_e, scan.proper_v) < Rational(h.edge_count(), h.order());
}

Rational fractional_independence(const Graph& g) {
    const int v = g.order();
    if (v == 0) throw std::invalid_argument("alpha* of the empty graph");
    // Kuhn's algorithm on the bipartite double cover: left i -- right j for
    // every edge {i,j} (both orientations).
    std::vector<int> match_right(v, -1);
    std::vector<char> visited(v);
    auto augment = [&](auto&& self, int left) -> bool {
        std::uint32_t nbrs = g.adjacency(left);
        while (nbrs) {
            int right = __builtin_ctz(nbrs);
            nbrs &= nbrs - 1;
            if (visited[right]) continue;
            visited[right] = 1;
            if (match_right[right] < 0 || self(self, match_right[right])) {
                match_right[right] = left;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int i = 0; i < v; ++i) {
        std::fill(visited.begin(), visited.end(), 0);
        if (augment(augment, i)) ++matched;
    }
    return Rational(2 * v - matched, 2);
}

double log_falling_factorial(double n, int k) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += std::log(n - i);
    return s;
}

MuResult mu(const Graph& g, double n, double p) {
    if (g.order() < 1) throw std::invalid_argument("mu of the empty graph");
    if (n < g.order()) throw std::invalid_argument("mu with n < v");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p outside [0,1]");
    MuResult out;
    if (p == 0.0 && g.edge_count() >= 1) {
        out.log_value = kLogZero;
        out.linear = 0.0;
        return out;
    }
    double log_aut = std::log(static_cast<double>(automorphism_count(g)));
    double logp_term = g.edge_count() == 0 ? 0.0 : g.edge_count() * std::log(p);
    out.log_value = log_falling_factorial(n, g.order()) - log_aut + logp_term;
    if (out.log_value < 700.0) out.linear = std::exp(out.log_value);
    return out;
}

// ---------------------------------------------------------------------------
// Subgraph minimizations (phi and the small-p branch of M).
//
// Subsets are bucketed by their (vertex count, edge count) profile once per
// graph; evaluation at an (n,p) walks the buckets in optimistic order and
// resolves exact |Aut| / alpha* only for candidates that could still win.
// ---------------------------------------------------------------------------

struct ExponentEvaluator::Impl {
    Graph h;
    bool exact = true; // edge-subset path (e <= kExactEdgeCap)

    struct Cls {
        int v = 0, e = 0;
        std::uint64_t count = 0;
        std::uint32_t rep = 0;
        std::vector<std::uint32_t> members; // exact path only
    };
    std::vector<Cls> classes;

    std::vector<std::pair<int, int>> edge_list; // of h, fixed order

    struct Stats {
        double log_aut = 0;
        double alpha_star = 0;
        double deg_ub_log = 0; // log of the degree-histogram bound on |Aut|
    };
    mutable std::unordered_map<std::uint32_t, Stats> stats_cache;

    Graph subset_graph(std::uint32_t key) const {
        if (exact) {
            VertexSet support = 0;
            for (int i = 0; i < static_cast<int>(edge_list.size()); ++i)
                if ((key >> i) & 1u)
                    support |= (1u << edge_list[i].first) | (1u << edge_list[i].second);
            int map[Graph::kMaxOrder];
            int k = 0;
            for (int vtx = 0; vtx < h.order(); ++vtx)
                if ((support >> vtx) & 1u) map[vtx] = k++;
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < static_cast<int>(edge_list.size()); ++i)
                if ((key >> i) & 1u)
                    edges.emplace_back(map[edge_list[i].first], map[edge_list[i].second]);
            return Graph(k, edges);
        }
        return induced_subgraph(h, key);
    }

    const Stats& stats(std::uint32_t key) const {
        auto it = stats_cache.find(key);
        if (it != stats_cache.end()) return it->second;
        Graph sub = subset_graph(key);
        Stats s;
        s.log_aut = std::log(static_cast<double>(automorphism_count(sub)));
        s.alpha_star = fractional_independence(sub).value();
        int hist[Graph::kMaxOrder + 1] = {};
        for (int vtx = 0; vtx < sub.order(); ++vtx) ++hist[sub.degree(vtx)];
        double ub = 0;
        for (int d = 0; d <= sub.order(); ++d) ub += log_factorial(hist[d]);
        s.deg_ub_log = ub;
        return stats_cache.emplace(key, s).first->second;
    }

    // Degree-histogram |Aut| bound of an edge subset, without building the
    // subgraph. Cheap pre-filter before exact stats.
    double member_deg_ub(std::uint32_t key) const {
        int deg[Graph::kMaxOrder] = {};
        VertexSet support = 0;
        for (int i = 0; i < static_cast<int>(edge_list.size()); ++i) {
            if (!((key >> i) & 1u)) continue;
            ++deg[edge_list[i].first];
            ++deg[edge_list[i].second];
            support |= (1u << edge_list[i].first) | (1u << edge_list[i].second);
        }
        int hist[Graph::kMaxOrder + 1] = {};
        VertexSet rest = support;
        while (rest) {
            int vtx = __builtin_ctz(rest);
            rest &= rest - 1;
            ++hist[deg[vtx]];
        }
        double ub = 0;
        for (int d = 0; d <= h.order(); ++d) ub += log_factorial(hist[d]);
        return ub;
    }

    void build() {
        edge_list = h.edges();
        const int ne = static_cast<int>(edge_list.size());
        exact = ne <= kExactEdgeCap;
        const int emax = ne;
        std::vector<int> index((h.order() + 1) * (emax + 1), -1);
        auto cls_at = [&](int v, int e) -> Cls& {
            int& idx = index[v * (emax + 1) + e];
            if (idx < 0) {
                idx = static_cast<int>(classes.size());
                classes.push_back(Cls{v, e, 0, 0, {}});
            }
            return classes[idx];
        };
        if (exact) {
            std::vector<std::uint32_t> edge_bits(ne);
            for (int i = 0; i < ne; ++i)
                edge_bits[i] = (1u << edge_list[i].first) | (1u << edge_list[i].second);
            int deg_in[Graph::kMaxOrder] = {};
            VertexSet support = 0;
            std::uint32_t subset = 0;
            int vcount = 0;
            const std::uint64_t limit = 1ULL << ne;
            for (std::uint64_t i = 1; i < limit; ++i) {
                int b = __builtin_ctzll(i);
                auto [x, y] = edge_list[b];
                if ((subset >> b) & 1u) {
                    subset ^= 1u << b;
                    if (--deg_in[x] == 0) { support &= ~(1u << x); --vcount; }
                    if (--deg_in[y] == 0) { support &= ~(1u << y); --vcount; }
                } else {
                    subset ^= 1u << b;
                    if (deg_in[x]++ == 0) { support |= 1u << x; ++vcount; }
                    if (deg_in[y]++ == 0) { support |= 1u << y; ++vcount; }
                }
                Cls& c = cls_at(vcount, __builtin_popcount(subset));
                if (c.count == 0) c.rep = subset;
                ++c.count;
                c.members.push_back(subset);
            }
        } else {
            if (h.order() > 28)
                throw FeasibilityError("subgraph minimization capped at 28 vertices");
            VertexSet mask = 0;
            int e = 0, vcount = 0;
            const std::uint64_t limit = 1ULL << h.order();
            for (std::uint64_t i = 1; i < limit; ++i) {
                int b = __builtin_ctzll(i);
                VertexSet bit = 1u << b;
                if (mask & bit) {
                    mask ^= bit;
                    e -= __builtin_popcount(h.adjacency(b) & mask);
                    --vcount;
                } else {
                    e += __builtin_popcount(h.adjacency(b) & mask);
                    mask ^= bit;
                    ++vcount;
                }
                if (e == 0) continue; // only subgraphs with an edge compete
                Cls& c = cls_at(vcount, e);
                if (c.count == 0) c.rep = mask;
                ++c.count;
            }
        }
    }

    VertexSet support_of(std::uint32_t key) const {
        if (!exact) return key;
        VertexSet support = 0;
        for (int i = 0; i < static_cast<int>(edge_list.size()); ++i)
            if ((key >> i) & 1u)
                support |= (1u << edge_list[i].first) | (1u << edge_list[i].second);
        return support;
    }

    struct MinResult {
        double value = std::numeric_limits<double>::infinity();
        std::uint32_t arg = 0;
        int arg_v = 0, arg_e = 0;
    };

    // kind 0: minimize log mu. kind 1: minimize (log mu)/alpha*.
    // kind 2: minimize (log mu)*v/alpha* (the appendix variant of M).
    MinResult minimize(double n, double p, int kind) const {
        const double lnp = std::log(p);
        std::vector<double> logfall(h.order() + 1, 0.0);
        for (int v = 1; v <= h.order(); ++v)
            logfall[v] = logfall[v - 1] + std::log(n - (v - 1));

        auto value_of = [&](int v, int e, double log_aut, double alpha) {
            double numer = logfall[v] + e * lnp - log_aut;
            if (kind == 0) return numer;
            if (kind == 1) return numer / alpha;
            return numer * v / alpha;
        };
        auto optimistic = [&](int v, int e) {
            double numer_min = logfall[v] + e * lnp - log_factorial(v);
            double numer_max = logfall[v] + e * lnp;
            if (kind == 0) return numer_min;
            double lo = std::numeric_limits<double>::infinity();
            for (double numer : {numer_min, numer_max})
                for (double alpha : {v / 2.0, static_cast<double>(v)}) {
                    double val = kind == 1 ? numer / alpha : numer * v / alpha;
                    lo = std::min(lo, val);
                }
            return lo;
        };

        std::vector<int> order(classes.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::vector<double> opt(classes.size());
        for (size_t i = 0; i < classes.size(); ++i) opt[i] = optimistic(classes[i].v, classes[i].e);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return opt[a] < opt[b]; });

        MinResult best;
        for (int ci : order) {
            if (opt[ci] >= best.value) break;
            const Cls& c = classes[ci];
            auto consider = [&](std::uint32_t key) {
                if (exact && c.count > 1) {
                    double ub = member_deg_ub(key);
                    double numer_lo = logfall[c.v] + c.e * lnp - ub;
                    double numer_hi = logfall[c.v] + c.e * lnp;
                    double bound;
                    if (kind == 0) {
                        bound = numer_lo;
                    } else {
                        bound = std::numeric_limits<double>::infinity();
                        for (double numer : {numer_lo, numer_hi})
                            for (double alpha : {c.v / 2.0, static_cast<double>(c.v)}) {
                                double val = kind == 1 ? numer / alpha : numer * c.v / alpha;
                                bound = std::min(bound, val);
                            }
                    }
                    if (bound >= best.value) return;
                }
                const Stats& s = stats(key);
                double val = value_of(c.v, c.e, s.log_aut, s.alpha_star);
                if (val < best.value) {
                    best.value = val;
                    best.arg = key;
                    best.arg_v = c.v;
                    best.arg_e = c.e;
                }
            };
            if (exact) {
                for (std::uint32_t m : c.members) consider(m);
            } else {
                consider(c.rep);
            }
        }
        return best;
    }
};

ExponentEvaluator::ExponentEvaluator(const Graph& h) : impl_(std::make_unique<Impl>()) {
    if (h.edge_count() < 1) throw std::invalid_argument("subgraph minimization needs an edge");
    impl_->h = h;
    impl_->build();
}

ExponentEvaluator::~ExponentEvaluator() = default;
ExponentEvaluator::ExponentEvaluator(ExponentEvaluator&&) noexcept = default;

const Graph& ExponentEvaluator::graph() const { return impl_->h; }

PhiResult ExponentEvaluator::phi(double n, double p) const {
    if (n < impl_->h.order()) throw std::invalid_argument("phi with n < v");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("phi needs p in (0,1]");
    Impl::MinResult best = impl_->minimize(n, p, 0);
    PhiResult out;
    out.log_value = best.value;
    out.approximate = !impl_->exact;
    out.witness.subgraph = impl_->subset_graph(best.arg);
    out.witness.support = impl_->support_of(best.arg);
    out.witness.edge_count = best.arg_e;
    out.witness.log_mu = best.value;
    return out;
}

MResult ExponentEvaluator::M_parameter(double n, double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("M needs p in (0,1)");
    MResult out;
    const int max_deg = impl_->h.max_degree();
    out.small_p_branch = std::log(p) < -std::log(n) / max_deg;
    Impl::MinResult variant = impl_->minimize(n, p, 2);
    out.log_value_appendix_variant = variant.value;
    if (out.small_p_branch) {
        Impl::MinResult best = impl_->minimize(n, p, 1);
        out.log_value = best.value;
        SubgraphWitness w;
        w.subgraph = impl_->subset_graph(best.arg);
        w.support = impl_->support_of(best.arg);
        w.edge_count = best.arg_e;
        w.log_mu = best.value;
        out.witness = w;
        out.approximate = !impl_->exact;
    } else {
        out.log_value = 2 * std::log(n) + max_deg * std::log(p);
    }
    return out;
}

PhiResult phi(const Graph& h, double n, double p) {
    return ExponentEvaluator(h).phi(n, p);
}

MResult M_parameter(const Graph& h, double n, double p) {
    return ExponentEvaluator(h).M_parameter(n, p);
}

std::string mechanism_name(Mechanism m) {
    switch (m) {
        case Mechanism::disjoint: return "disjoint";
        case Mechanism::clustered: return "clustered";
        case Mechanism::locally_disjoint: return "locally_disjoint";
    }
    return "?";
}

} // namespace uppertail
