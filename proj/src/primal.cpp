#include "uppertail/primal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "uppertail/errors.hpp"

namespace uppertail {

bool PrimalFamily::is_member(VertexSet s) const { return member_index(s) >= 0; }

int PrimalFamily::member_index(VertexSet s) const {
    for (size_t i = 0; i < members.size(); ++i)
        if (members[i] == s) return static_cast<int>(i);
    return -1;
}

PrimalFamily primal_family(const Graph& h) {
    if (h.edge_count() < 1) throw std::invalid_argument("primal family needs an edge");
    if (h.order() > kPrimalOrderCap)
        throw FeasibilityError("primal family scan capped at " +
                               std::to_string(kPrimalOrderCap) + " vertices");
    PrimalFamily fam;
    fam.host = h;
    fam.m = m_density(h).density.value;

    // Second pass: collect subsets whose induced density equals m exactly.
    const std::int64_t m_num = fam.m.num, m_den = fam.m.den;
    VertexSet mask = 0;
    int e = 0;
    const std::uint64_t limit = 1ULL << h.order();
    for (std::uint64_t i = 1; i < limit; ++i) {
        int b = __builtin_ctzll(i);
        VertexSet bit = 1u << b;
        if (mask & bit) {
            mask ^= bit;
            e -= __builtin_popcount(h.adjacency(b) & mask);
        } else {
            e += __builtin_popcount(h.adjacency(b) & mask);
            mask ^= bit;
        }
        if (static_cast<std::int64_t>(e) * m_den ==
            m_num * static_cast<std::int64_t>(__builtin_popcount(mask)))
            fam.members.push_back(mask);
    }
    std::sort(fam.members.begin(), fam.members.end(), [](VertexSet a, VertexSet b) {
        int pa = set_size(a), pb = set_size(b);
        return pa != pb ? pa < pb : a < b;
    });
    fam.min_vertex_count = set_size(fam.members.front());

    // Hasse covers: A covered by B iff A strictly inside B with no member
    // strictly between. Members are size-sorted, so between-candidates sit
    // in a contiguous index range.
    const int count = static_cast<int>(fam.members.size());
    for (int a = 0; a < count; ++a) {
        for (int b = a + 1; b < count; ++b) {
            VertexSet lo = fam.members[a], hi = fam.members[b];
            if (lo == hi || (lo & ~hi) != 0) continue;
            bool direct = true;
            for (int c = a + 1; c < b && direct; ++c) {
                VertexSet mid = fam.members[c];
                if (mid != lo && mid != hi && (lo & ~mid) == 0 && (mid & ~hi) == 0)
                    direct = false;
            }
            if (direct) fam.cover_edges.emplace_back(a, b);
        }
    }
    return fam;
}

bool covers(const PrimalFamily& family, VertexSet lower, VertexSet upper) {
    int a = family.member_index(lower);
    int b = family.member_index(upper);
    if (a < 0 || b < 0) throw std::invalid_argument("covers: argument is not a member");
    for (auto [lo, hi] : family.cover_edges)
        if (lo == a && hi == b) return true;
    return false;
}

std::vector<VertexSet> covering_primals(const PrimalFamily& family, VertexSet g) {
    int idx = family.member_index(g);
    if (idx < 0) throw std::invalid_argument("covering_primals: argument is not a member");
    std::vector<VertexSet> out;
    for (auto [lo, hi] : family.cover_edges)
        if (lo == idx) out.push_back(family.members[hi]);
    // members are (size, mask)-sorted, and cover_edges preserve that order
    return out;
}

ClaimSuiteReport claim_suite(const PrimalFamily& family) {
    ClaimSuiteReport report;
    std::unordered_set<VertexSet> member_set(family.members.begin(), family.members.end());
    const Graph& h = family.host;

    for (size_t i = 0; i < family.members.size() && report.union_closed; ++i)
        for (size_t j = i + 1; j < family.members.size(); ++j) {
            VertexSet u = family.members[i] | family.members[j];
            if (!member_set.count(u)) {
                report.union_closed = false;
                report.counterwitness = "union of " + format_vertex_set(family.members[i], h.order()) +
                                        " and " + format_vertex_set(family.members[j], h.order()) +
                                        " is not primal";
                break;
            }
        }

    for (auto [lo, hi] : family.cover_edges) {
        VertexSet diff = family.members[hi] & ~family.members[lo];
        if (diff == 0 || !connected(induced_subgraph(h, diff))) {
            report.cover_complements_connected = false;
            report.counterwitness = "complement of cover pair (" +
                                    format_vertex_set(family.members[lo], h.order()) + ", " +
                                    format_vertex_set(family.members[hi], h.order()) +
                                    ") is not connected";
            break;
        }
    }

    for (size_t g = 0; g < family.members.size() && report.cover_complements_disjoint; ++g) {
        std::vector<VertexSet> ups = covering_primals(family, family.members[g]);
        for (size_t i = 0; i < ups.size() && report.cover_complements_disjoint; ++i)
            for (size_t j = i + 1; j < ups.size(); ++j) {
                VertexSet di = ups[i] & ~family.members[g];
                VertexSet dj = ups[j] & ~family.members[g];
                if (di & dj) {
                    report.cover_complements_disjoint = false;
                    report.counterwitness =
                        "covers of " + format_vertex_set(family.members[g], h.order()) +
                        " overlap outside it";
                    break;
                }
            }
    }
    return report;
}

ClaimSuiteReport claim_suite(const Graph& h) { return claim_suite(primal_family(h)); }

GradingChain grading(const PrimalFamily& family) {
    const Graph& h = family.host;
    if (Rational(h.edge_count(), h.order()) != family.m)
        throw std::invalid_argument("grading is defined for balanced hosts only");
    GradingChain chain;
    // Union of inclusion-minimal members.
    VertexSet g0 = 0;
    for (VertexSet s : family.members) {
        bool minimal = true;
        for (VertexSet t : family.members)
            if (t != s && (t & ~s) == 0) { minimal = false; break; }
        if (minimal) g0 |= s;
    }
    chain.chain.push_back(g0);
    const VertexSet full = h.full_set();
    while (chain.chain.back() != full) {
        VertexSet cur = chain.chain.back();
        if (!family.is_member(cur))
            throw InvariantViolation("grading element is not primal");
        VertexSet next = 0;
        for (VertexSet s : covering_primals(family, cur)) next |= s;
        if (next == 0 || next == cur)
            throw InvariantViolation("grading chain stalled below V(H)");
        chain.chain.push_back(next);
    }
    if (!family.is_member(chain.chain.back()))
        throw InvariantViolation("grading top element is not primal");
    return chain;
}

GradingChain grading(const Graph& h) { return grading(primal_family(h)); }

ZetaResult zeta(const PrimalFamily& family) {
    ZetaResult out;
    bool any = false;
    for (VertexSet g : family.members) {
        std::vector<VertexSet> ups = covering_primals(family, g);
        if (ups.empty()) continue;
        const int vg = set_size(g);
        std::int64_t vertex_sum = vg;
        Rational best{0, 1};
        int best_r = 0;
        VertexSet union_so_far = g;
        for (size_t r = 1; r <= ups.size(); ++r) {
            vertex_sum += set_size(ups[r - 1]) - vg;
            union_so_far |= ups[r - 1];
            if (set_size(union_so_far) != vertex_sum)
                throw InvariantViolation("cover complements not disjoint in zeta");
            Rational value(vertex_sum, static_cast<std::int64_t>(r));
            if (best_r == 0 || value < best) {
                best = value;
                best_r = static_cast<int>(r);
            }
        }
        out.per_G_values.emplace_back(g, best);
        if (!any || best < out.zeta) {
            any = true;
            out.zeta = best;
            out.witness_G = g;
            out.witness_covers.assign(ups.begin(), ups.begin() + best_r);
        }
    }
    if (!any)
        throw std::invalid_argument("zeta is undefined for strictly balanced graphs");
    return out;
}

ZetaResult zeta(const Graph& h) { return zeta(primal_family(h)); }

CounterexampleVerdict counterexample_check(const PrimalFamily& family) {
    CounterexampleVerdict verdict;
    verdict.min_vertex_count = family.min_vertex_count;
    bool has_cover = !family.cover_edges.empty();
    if (!has_cover) return verdict; // strictly balanced or cover-free: false
    ZetaResult z = zeta(family);
    verdict.zeta_value = z.zeta;
    if (z.zeta < Rational(family.min_vertex_count)) {
        verdict.is_counterexample = true;
        verdict.witness_G = z.witness_G;
        verdict.witness_covers = z.witness_covers;
        VertexSet k = z.witness_G;
        for (VertexSet j : z.witness_covers) k |= j;
        verdict.witness_K = k;
    }
    return verdict;
}

CounterexampleVerdict counterexample_check(const Graph& h) {
    return counterexample_check(primal_family(h));
}

ExponentReport conjecture_report(const Graph& h, double n, double p, double eps) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("report needs p in (0,1)");
    if (!(eps > 0.0)) throw std::invalid_argument("report needs eps > 0");
    ExponentReport rep;
    rep.n = n;
    rep.p = p;
    rep.eps = eps;
    rep.log_mu_H = mu(h, n, p).log_value;

    ExponentEvaluator eval(h);
    PhiResult ph = eval.phi(n, p);
    rep.phi_ln = ph.log_value;
    rep.phi_approximate = ph.approximate;
    MResult m = eval.M_parameter(n, p);
    rep.M_ln = m.log_value;
    rep.M_log_term_ln = m.log_value + std::log(std::log(1.0 / p));
    rep.variance_estimate_ln = 2 * rep.log_mu_H - rep.phi_ln;

    if (h.order() <= kPrimalOrderCap && !is_strictly_balanced(h)) {
        ZetaResult z = zeta(h);
        rep.zeta = z.zeta;
        DensityResult md = m_density(h);
        double omega_ln = std::log(n) + md.density.value.value() * std::log(p);
        if (omega_ln > 0) // the term only makes sense above the appearance threshold
            rep.zeta_term_ln = z.zeta.value() * omega_ln + std::log(omega_ln);
    }

    rep.conjectured_min_ln = std::min(rep.phi_ln, rep.M_log_term_ln);
    rep.mechanism =
        rep.phi_ln <= rep.M_log_term_ln ? Mechanism::disjoint : Mechanism::clustered;
    if (rep.zeta_term_ln && *rep.zeta_term_ln < rep.conjectured_min_ln) {
        rep.conjectured_min_ln = *rep.zeta_term_ln;
        rep.mechanism = Mechanism::locally_disjoint;
    }
    return rep;
}

} // namespace uppertail
