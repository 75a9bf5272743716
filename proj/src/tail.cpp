#include "uppertail/tail.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "uppertail/errors.hpp"
#include "uppertail/families.hpp"

namespace uppertail {

namespace {

constexpr std::uint64_t kRound1Salt = 0xC2B2AE3D27D4EB4FULL;
constexpr std::uint64_t kRound2Salt = 0x165667B19E3779F9ULL;
constexpr std::uint64_t kRound3Salt = 0x27D4EB2F165667C5ULL;

std::uint64_t round_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ salt);
}

double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// C(z, r) >= target, decided exactly while the numbers are exact and in
// log space beyond that.
bool binomial_at_least(std::int64_t z, int r, long double target) {
    if (r < 0 || z < r) return target <= 0;
    long double acc = 1.0L;
    for (int i = 1; i <= r; ++i) {
        acc *= static_cast<long double>(z - i + 1) / i;
        if (acc > 1e30L && acc >= target) return true;
    }
    return acc >= target;
}

std::int64_t minimal_z_for_binomial(int r, long double target, std::int64_t hi_hint) {
    std::int64_t lo = r, hi = std::max<std::int64_t>(hi_hint, r + 1);
    while (!binomial_at_least(hi, r, target)) {
        if (hi > (std::int64_t{1} << 40)) throw FeasibilityError("certificate size out of range");
        hi *= 2;
    }
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (binomial_at_least(mid, r, target))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

std::optional<std::uint64_t> exact_binomial(std::int64_t z, int r) {
    if (r < 0 || z < r) return 0;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<unsigned __int128>(z - i + 1) / static_cast<unsigned>(i);
        if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max()))
            return std::nullopt;
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace

int worker_count() {
    const char* env = std::getenv("UPPERTAIL_THREADS");
    int w = 0;
    if (env && *env) w = std::atoi(env);
    if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, std::min(w, 64));
}

std::string plant_kind_name(PlantKind k) {
    switch (k) {
        case PlantKind::pendant: return "pendant";
        case PlantKind::general: return "general";
        case PlantKind::mixed: return "mixed";
    }
    return "?";
}

TailEstimate tail_estimate(const Graph& h, int n, double p, double eps,
                           std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("tail_estimate needs trials >= 1");
    if (h.order() < 1 || h.order() > n) throw std::invalid_argument("pattern does not fit host");
    TailEstimate est;
    est.n = n;
    est.p = p;
    est.eps = eps;
    est.trials = trials;
    est.seed = seed;

    MuResult m = mu(h, n, p);
    est.mu_ln = m.log_value;
    est.mu = m.linear.value_or(std::numeric_limits<double>::infinity());
    const long double threshold = (1.0L + static_cast<long double>(eps)) *
                                  (m.linear ? static_cast<long double>(*m.linear)
                                            : std::numeric_limits<long double>::infinity());
    est.threshold = static_cast<double>(threshold);
    est.phi_ln = p > 0.0 ? ExponentEvaluator(h).phi(n, p).log_value : kLogZero;

    std::vector<std::uint64_t> counts(trials);
    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            HostGraph g = sample_gnp(n, p, trial_seed(seed, t));
            counts[t] = count_in_host(g, h);
        }
    };
    int workers = worker_count();
    if (workers <= 1 || trials < 2) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::uint64_t begin = w * chunk;
            if (begin >= trials) break;
            pool.emplace_back(run_range, begin, std::min(trials, begin + chunk));
        }
        for (auto& th : pool) th.join();
    }

    double sum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (static_cast<long double>(counts[t]) >= threshold) ++est.hit_count;
        sum += static_cast<double>(counts[t]);
    }
    est.mean_X = sum / static_cast<double>(trials);
    double ss = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double d = static_cast<double>(counts[t]) - est.mean_X;
        ss += d * d;
    }
    est.var_X = trials > 1 ? ss / static_cast<double>(trials - 1) : 0.0;

    est.p_hat = static_cast<double>(est.hit_count) / static_cast<double>(trials);
    const double zq = 1.959963984540054; // 97.5% normal quantile
    const double T = static_cast<double>(trials);
    double denom = 1.0 + zq * zq / T;
    double center = (est.p_hat + zq * zq / (2 * T)) / denom;
    double half = zq * std::sqrt(est.p_hat * (1 - est.p_hat) / T + zq * zq / (4 * T * T)) / denom;
    est.ci_lower = std::max(0.0, center - half);
    est.ci_upper = std::min(1.0, center + half);

    if (m.linear && *m.linear > 0.0) {
        est.variance_ratio = est.var_X * std::exp(est.phi_ln - 2.0 * m.log_value);
    } else {
        est.variance_ratio = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

PlantPlan plan_pendant(int l, int r, double n, double p, double eps) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("plan needs p in (0,1)");
    if (eps <= 0.0) throw std::invalid_argument("plan needs eps > 0");
    PlantPlan plan;
    plan.kind = PlantKind::pendant;
    plan.h = cycle_pendant(l, r);
    plan.l = l;
    plan.r = r;
    plan.n = n;
    plan.p = p;
    plan.eps = eps;

    MuResult m = mu(plan.h, n, p);
    plan.mu_target_ln = m.log_value;
    if (!m.linear || !std::isfinite(*m.linear))
        throw FeasibilityError("mu_H too large for a concrete pendant plan");
    const long double threshold = (1.0L + static_cast<long double>(eps)) *
                                  static_cast<long double>(*m.linear);
    plan.threshold = static_cast<double>(threshold);
    const long double target = ceill(threshold);

    // Minimal z with C(z, r) >= ceil((1+eps) mu_H); the paper's ceiling
    // formula reported alongside.
    long double z_paper_real =
        ceill(r * expl((logl(1.0L + static_cast<long double>(eps)) +
                        static_cast<long double>(m.log_value)) /
                       r));
    plan.z_paper = static_cast<std::int64_t>(z_paper_real);
    plan.z = minimal_z_for_binomial(r, target, *plan.z_paper);
    if (plan.z < 1) plan.z = 1;
    if (plan.z + l > n)
        throw FeasibilityError("pendant plan infeasible: z + l exceeds n");

    plan.p2 = p / 2.0;
    plan.p1 = 1.0 - (1.0 - p) / (1.0 - plan.p2);
    if (std::abs((1.0 - plan.p1) * (1.0 - plan.p2) - (1.0 - p)) > 1e-12)
        throw InvariantViolation("round-splitting identity violated");

    plan.certificate_copies = exact_binomial(plan.z, r);
    plan.certificate_copies_ln = log_binomial(static_cast<double>(plan.z), r);
    double lc = log_binomial(n - l, static_cast<double>(plan.z));
    plan.cost_ln = -(lc + plan.z * std::log(plan.p2) +
                     (n - l - plan.z) * std::log1p(-plan.p2));
    return plan;
}

PlantOutcome execute_pendant(const PlantPlan& plan, std::uint64_t seed) {
    if (plan.kind != PlantKind::pendant) throw std::invalid_argument("not a pendant plan");
    const int n = static_cast<int>(plan.n);
    PlantOutcome out;
    out.seed = seed;

    HostGraph round1 = sample_gnp(n, plan.p1, round_seed(seed, kRound1Salt));
    HostGraph round2 = sample_gnp(n, plan.p2, round_seed(seed, kRound2Salt));

    // pendant-free cycle: the first l vertices of the family graph
    Graph cycle = induced_subgraph(plan.h, (1u << plan.l) - 1u);
    auto embedding = find_embedding(round1, cycle);
    out.round1_found = embedding.has_value();

    if (embedding) {
        // The planted vertex: smallest host label on the found cycle.
        int v = *std::min_element(embedding->begin(), embedding->end());
        Bits512 on_cycle;
        for (int img : *embedding) on_cycle.set(img);
        // Realize { Z = z }: exactly z round-2 neighbours outside the cycle.
        for (int u = 0; u < n; ++u)
            if (u != v && !on_cycle.test(u) && round2.has_edge(v, u)) round2.remove_edge(v, u);
        std::int64_t planted = 0;
        for (int u = 0; u < n && planted < plan.z; ++u) {
            if (u == v || on_cycle.test(u)) continue;
            round2.add_edge(v, u);
            ++planted;
        }
        if (planted != plan.z)
            throw FeasibilityError("not enough outside vertices for the pendant star");
        out.planted = true;
    }

    round1.merge(round2);
    out.copies = count_in_host(round1, plan.h);
    out.hit = static_cast<long double>(out.copies) >=
              static_cast<long double>(plan.threshold);
    if (out.planted) {
        if (plan.certificate_copies && out.copies < *plan.certificate_copies)
            throw InvariantViolation("planted run produced fewer copies than the certificate");
        if (!out.hit)
            throw InvariantViolation("planted pendant run missed the threshold");
    }
    return out;
}

PlantPlan plan_general(const Graph& h, VertexSet witness_g,
                       const std::vector<VertexSet>& witness_covers, double n, double p,
                       double eps, double C_H, double c_H) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("plan needs p in (0,1)");
    if (eps <= 0.0) throw std::invalid_argument("plan needs eps > 0");
    if (witness_covers.empty()) throw std::invalid_argument("witness needs at least one cover");
    PrimalFamily fam = primal_family(h);
    if (!fam.is_member(witness_g)) throw std::invalid_argument("witness G is not primal");
    for (VertexSet j : witness_covers)
        if (!covers(fam, witness_g, j))
            throw std::invalid_argument("witness cover does not cover G");
    for (size_t i = 0; i < witness_covers.size(); ++i)
        for (size_t j = i + 1; j < witness_covers.size(); ++j)
            if (witness_covers[i] == witness_covers[j])
                throw std::invalid_argument("witness covers must be distinct");

    PlantPlan plan;
    plan.kind = PlantKind::general;
    plan.h = h;
    plan.n = n;
    plan.p = p;
    plan.eps = eps;
    plan.C_H = C_H;
    plan.c_H = c_H;
    plan.witness_G = witness_g;

    const double log_mu_G = mu(induced_subgraph(h, witness_g), n, p).log_value;
    std::vector<VertexSet> active = witness_covers;
    std::sort(active.begin(), active.end(), [](VertexSet a, VertexSet b) {
        int pa = set_size(a), pb = set_size(b);
        return pa != pb ? pa < pb : a < b;
    });

    double log_mu_K = 0;
    while (true) {
        VertexSet k = witness_g;
        for (VertexSet j : active) k |= j;
        log_mu_K = mu(induced_subgraph(h, k), n, p).log_value;
        if (active.size() == 1) break; // the last cover is never dropped
        const double bound = (std::log(eps) + log_mu_K) / static_cast<double>(active.size());
        int worst = -1;
        double worst_mu = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < active.size(); ++i) {
            double log_mu_J = mu(induced_subgraph(h, active[i]), n, p).log_value;
            if (log_mu_J - log_mu_G > bound && log_mu_J > worst_mu) {
                worst = static_cast<int>(i);
                worst_mu = log_mu_J;
            }
        }
        if (worst < 0) break;
        active.erase(active.begin() + worst);
    }
    plan.witness_covers = active;
    const int r = static_cast<int>(active.size());
    plan.r = r;

    long double z_real = ceill(expl((logl(static_cast<long double>(C_H)) +
                                     logl(static_cast<long double>(eps)) +
                                     static_cast<long double>(log_mu_K)) /
                                    r));
    plan.z = std::max<std::int64_t>(1, static_cast<std::int64_t>(z_real));

    plan.delta = c_H * std::min(eps, 1.0);
    plan.p1 = *plan.delta * p;
    plan.p2 = plan.p1;
    plan.p3 = 1.0 - (1.0 - p) / ((1.0 - plan.p1) * (1.0 - plan.p2));

    const int vg = set_size(witness_g);
    int max_extra = 0;
    for (VertexSet j : active) max_extra = std::max(max_extra, set_size(j) - vg);
    if (static_cast<double>(plan.z) * max_extra >= static_cast<double>(n) / r)
        throw FeasibilityError("general plan infeasible: z extensions do not fit the parts");

    plan.certificate_copies_ln = r * std::log(static_cast<double>(plan.z));
    if (r * std::log2(static_cast<double>(plan.z)) < 63) {
        std::uint64_t c = 1;
        for (int i = 0; i < r; ++i) c *= static_cast<std::uint64_t>(plan.z);
        plan.certificate_copies = c;
    }

    // Step-(ii) probability bound: prod_i C(C(|V_i|, a_i), z) p2^{(e_Ji - e_G) z}.
    const int e_g = h.edges_inside(witness_g);
    const double remaining = n - vg;
    const std::int64_t whole_parts = static_cast<std::int64_t>(remaining) / r;
    const std::int64_t leftover_parts = static_cast<std::int64_t>(remaining) % r;
    double cost = 0;
    for (int i = 0; i < r; ++i) {
        double part = static_cast<double>(whole_parts + (i < leftover_parts ? 1 : 0));
        int a = set_size(active[i]) - vg;
        int de = h.edges_inside(active[i]) - e_g;
        double log_slots = log_binomial(part, a);
        double log_choices;
        if (log_slots > 50) {
            // C(M, z) with astronomically large M: z terms of log M suffice.
            log_choices = plan.z * log_slots - std::lgamma(static_cast<double>(plan.z) + 1);
        } else {
            log_choices = log_binomial(std::exp(log_slots), static_cast<double>(plan.z));
        }
        cost -= log_choices + static_cast<double>(plan.z) * de * std::log(plan.p2);
    }
    plan.cost_ln = cost;

    MuResult mh = mu(h, n, p);
    plan.mu_target_ln = mh.log_value;
    plan.threshold = mh.linear ? (1.0 + eps) * *mh.linear
                               : std::numeric_limits<double>::infinity();
    return plan;
}

PlantOutcome execute_general(const PlantPlan& plan, std::uint64_t seed) {
    if (plan.kind != PlantKind::general) throw std::invalid_argument("not a general plan");
    const int n = static_cast<int>(plan.n);
    const Graph& h = plan.h;
    PlantOutcome out;
    out.seed = seed;

    HostGraph round1 = sample_gnp(n, plan.p1, round_seed(seed, kRound1Salt));
    HostGraph round3 = sample_gnp(n, *plan.p3, round_seed(seed, kRound3Salt));

    Graph g_graph = induced_subgraph(h, plan.witness_G);
    auto embedding = find_embedding(round1, g_graph);
    out.round1_found = embedding.has_value();

    HostGraph together(n);
    together.merge(round1);

    std::vector<int> g_prime; // images of G's vertices, h-label ascending order
    if (embedding) {
        g_prime = *embedding;
        Bits512 in_g;
        for (int v : g_prime) in_g.set(v);
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (!in_g.test(v)) rest.push_back(v);

        const int r = plan.r;
        const int vg = set_size(plan.witness_G);
        // h-vertex -> position among G's vertices (ascending)
        int g_pos[Graph::kMaxOrder];
        {
            int k = 0;
            for (int v = 0; v < h.order(); ++v)
                if ((plan.witness_G >> v) & 1u) g_pos[v] = k++;
        }
        std::size_t offset = 0;
        const std::size_t base = rest.size() / r, leftover = rest.size() % r;
        for (int i = 0; i < r; ++i) {
            std::size_t part_size = base + (static_cast<std::size_t>(i) < leftover ? 1 : 0);
            VertexSet jset = plan.witness_covers[i];
            std::vector<int> outside; // J_i's vertices outside G, ascending
            for (int v = 0; v < h.order(); ++v)
                if (((jset >> v) & 1u) && !((plan.witness_G >> v) & 1u)) outside.push_back(v);
            const std::size_t a = outside.size();
            if (static_cast<std::size_t>(plan.z) * a > part_size)
                throw FeasibilityError("partition too small for the planned extensions");
            int w_pos[Graph::kMaxOrder];
            for (std::size_t k = 0; k < a; ++k) w_pos[outside[k]] = static_cast<int>(k);
            for (std::int64_t copy = 0; copy < plan.z; ++copy) {
                const int* block = rest.data() + offset + copy * a;
                for (auto [u, v] : h.edges()) {
                    bool iu = ((jset >> u) & 1u) != 0, iv = ((jset >> v) & 1u) != 0;
                    if (!iu || !iv) continue;
                    bool gu = ((plan.witness_G >> u) & 1u) != 0;
                    bool gv = ((plan.witness_G >> v) & 1u) != 0;
                    if (gu && gv) continue; // G' came from round 1
                    int hu = gu ? g_prime[g_pos[u]] : block[w_pos[u]];
                    int hv = gv ? g_prime[g_pos[v]] : block[w_pos[v]];
                    together.add_edge(hu, hv);
                }
            }
            offset += part_size;
        }
        out.planted = true;
        if (r * std::log2(static_cast<double>(plan.z)) < 63) {
            std::uint64_t c = 1;
            for (int i = 0; i < r; ++i) c *= static_cast<std::uint64_t>(plan.z);
            out.structured_copies = c;
        } else {
            out.structured_copies = std::numeric_limits<std::uint64_t>::max();
        }
    }

    // Round-3 copies that avoid V(G') entirely, before merging.
    {
        HostGraph clean(n);
        Bits512 in_g;
        for (int v : g_prime) in_g.set(v);
        for (int u = 0; u < n; ++u) {
            if (in_g.test(u)) continue;
            for (int v = u + 1; v < n; ++v)
                if (!in_g.test(v) && round3.has_edge(u, v)) clean.add_edge(u, v);
        }
        out.round3_copies = count_in_host(clean, h);
    }

    together.merge(round3);
    out.copies = count_in_host(together, h);
    out.hit = static_cast<long double>(out.copies) >=
              static_cast<long double>(plan.threshold);
    return out;
}

PlantPlan plan_mixed(int r, double n, double p, double eps) {
    if (r < 7) throw std::invalid_argument("mixed plan needs r >= 7");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("plan needs p in (0,1)");
    if (eps <= 0.0) throw std::invalid_argument("plan needs eps > 0");
    PlantPlan plan;
    plan.kind = PlantKind::mixed;
    plan.h = badnews(r);
    plan.r = r;
    plan.n = n;
    plan.p = p;
    plan.eps = eps;

    const int v_h = plan.h.order(); // 3r + 6
    const double m_h = 4.0 / 3.0;   // generator postcondition
    const double omega_ln = std::log(n) + m_h * std::log(p);
    if (omega_ln <= 0)
        throw FeasibilityError("mixed plan needs np^{m_H} > 1");

    plan.gamma = 1.0 / (static_cast<double>(r) * r * r);
    plan.c_H = 2.0 / (static_cast<double>(v_h) / r - (r - 1) * *plan.gamma);
    plan.d_H = 1.0 / (static_cast<double>(v_h) / r - 2.0 + *plan.gamma / 2.0);
    if (!(plan.c_H < *plan.d_H))
        throw InvariantViolation("mixed plan constants out of order");

    MuResult mh = mu(plan.h, n, p);
    plan.mu_target_ln = mh.log_value;
    plan.threshold = mh.linear ? (1.0 + eps) * *mh.linear
                               : std::numeric_limits<double>::infinity();

    const long double mu_scaled_ln =
        logl(1.0L + static_cast<long double>(eps)) + static_cast<long double>(mh.log_value);
    plan.z = static_cast<std::int64_t>(
        ceill(expl(logl(static_cast<long double>(r)) + mu_scaled_ln / r -
                   static_cast<long double>(*plan.gamma * omega_ln))));
    plan.z_star = static_cast<std::int64_t>(
        ceill(expl(mu_scaled_ln / r +
                   static_cast<long double>((r - 1) * *plan.gamma * omega_ln))));
    plan.u_size = static_cast<std::int64_t>(
        ceill(2.0L * sqrtl(static_cast<long double>(*plan.z_star))));

    plan.p2 = p / 2.0;
    plan.p1 = 1.0 - (1.0 - p) / (1.0 - plan.p2);

    plan.certificate_copies_ln =
        log_binomial(static_cast<double>(plan.z), r - 1) +
        log_binomial(static_cast<double>(*plan.u_size), 2);
    {
        auto c1 = exact_binomial(plan.z, r - 1);
        auto c2 = exact_binomial(*plan.u_size, 2);
        if (c1 && c2 && *c2 != 0 &&
            *c1 <= std::numeric_limits<std::uint64_t>::max() / *c2)
            plan.certificate_copies = *c1 * *c2;
    }
    const long double target = ceill((1.0L + static_cast<long double>(eps)) *
                                     expl(static_cast<long double>(mh.log_value)));
    if (static_cast<long double>(plan.certificate_copies_ln) < logl(target))
        throw InvariantViolation("mixed certificate below the threshold");

    plan.cost_disjoint_ln = static_cast<double>(plan.z) * omega_ln;
    plan.cost_clustered_ln = 3.0 * static_cast<double>(*plan.u_size) * std::log(1.0 / plan.p2);
    plan.cost_ln = *plan.cost_disjoint_ln + *plan.cost_clustered_ln;
    return plan;
}

} // namespace uppertail
