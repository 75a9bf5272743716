#include "uppertail/report.hpp"

#include <cmath>
#include <sstream>

#include "uppertail/errors.hpp"
#include "uppertail/families.hpp"
#include "uppertail/primal.hpp"

namespace uppertail {

namespace {

Json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

Json vertex_sets(const std::vector<VertexSet>& sets, int order) {
    Json arr = Json::array();
    for (VertexSet s : sets) arr.push_back(format_vertex_set(s, order));
    return arr;
}

} // namespace

Json analysis_report(const Graph& h, std::optional<double> n,
                     std::optional<double> p, std::optional<double> eps) {
    Json j;
    j["schema"] = kSchemaVersion;

    DensityResult md = m_density(h);
    bool balanced = Rational(h.edge_count(), h.order()) == md.density.value;
    bool strictly = is_strictly_balanced(h);
    j["graph"] = {
        {"order", h.order()},
        {"edges", h.edge_count()},
        {"max_degree", h.max_degree()},
        {"m", md.density.value.str()},
        {"m_witness", format_vertex_set(md.witness, h.order())},
        {"balanced", balanced},
        {"strictly_balanced", strictly},
    };
    j["alpha_star"] = fractional_independence(h).str();

    if (h.order() <= kPrimalOrderCap) {
        PrimalFamily fam = primal_family(h);
        Json members = vertex_sets(fam.members, h.order());
        Json edges = Json::array();
        for (auto [lo, hi] : fam.cover_edges)
            edges.push_back(Json::array({format_vertex_set(fam.members[lo], h.order()),
                                         format_vertex_set(fam.members[hi], h.order())}));
        j["primal_family"] = {
            {"members", members},
            {"cover_edges", edges},
            {"v0", fam.min_vertex_count},
        };

        ClaimSuiteReport suite = claim_suite(fam);
        j["claim_suite"] = {
            {"union_closed", suite.union_closed},
            {"cover_complements_connected", suite.cover_complements_connected},
            {"cover_complements_disjoint", suite.cover_complements_disjoint},
            {"pass", suite.pass()},
        };

        if (balanced) {
            GradingChain chain = grading(fam);
            j["grading"] = vertex_sets(chain.chain, h.order());
        } else {
            j["grading"] = nullptr;
        }

        if (!strictly && !fam.cover_edges.empty()) {
            ZetaResult z = zeta(fam);
            Json per_g = Json::object();
            for (auto& [g, value] : z.per_G_values)
                per_g[format_vertex_set(g, h.order())] = value.str();
            j["zeta"] = {
                {"value", z.zeta.str()},
                {"witness_G", format_vertex_set(z.witness_G, h.order())},
                {"witness_covers", vertex_sets(z.witness_covers, h.order())},
                {"per_G", per_g},
            };
        } else {
            j["zeta"] = nullptr;
        }

        CounterexampleVerdict verdict = counterexample_check(fam);
        Json v;
        v["is_counterexample"] = verdict.is_counterexample;
        if (verdict.is_counterexample) {
            v["witness_G"] = format_vertex_set(verdict.witness_G, h.order());
            v["witness_covers"] = vertex_sets(verdict.witness_covers, h.order());
            v["witness_K"] = format_vertex_set(verdict.witness_K, h.order());
            v["v_K_over_r"] = Rational(set_size(verdict.witness_K),
                                       static_cast<std::int64_t>(verdict.witness_covers.size()))
                                  .str();
            v["v0"] = verdict.min_vertex_count;
        }
        j["counterexample"] = v;
    } else {
        j["primal_family"] = nullptr;
        j["note"] = "order above the primal-lattice scan cap of 28; lattice sections omitted";
    }

    if (n && p) {
        double e = eps.value_or(1.0);
        ExponentReport rep = conjecture_report(h, *n, *p, e);
        Json ex;
        ex["n"] = rep.n;
        ex["p"] = rep.p;
        ex["eps"] = rep.eps;
        ex["mu_ln"] = json_number(rep.log_mu_H);
        ex["phi_ln"] = json_number(rep.phi_ln);
        ex["phi_approximate"] = rep.phi_approximate;
        ex["M_ln"] = json_number(rep.M_ln);
        ex["M_log_term_ln"] = json_number(rep.M_log_term_ln);
        ex["zeta"] = rep.zeta ? Json(rep.zeta->str()) : Json(nullptr);
        ex["zeta_term_ln"] = rep.zeta_term_ln ? Json(*rep.zeta_term_ln) : Json(nullptr);
        ex["conjectured_min_ln"] = json_number(rep.conjectured_min_ln);
        ex["mechanism"] = mechanism_name(rep.mechanism);
        ex["variance_estimate_ln"] = json_number(rep.variance_estimate_ln);
        j["exponents"] = ex;
    } else {
        j["exponents"] = nullptr;
    }
    return j;
}

Json to_json(const TailEstimate& est) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = est.n;
    j["p"] = est.p;
    j["eps"] = est.eps;
    j["trials"] = est.trials;
    j["seed"] = est.seed;
    j["hit_count"] = est.hit_count;
    j["p_hat"] = est.p_hat;
    j["ci95"] = Json::array({est.ci_lower, est.ci_upper});
    j["mean_X"] = est.mean_X;
    j["var_X"] = est.var_X;
    j["mu"] = json_number(est.mu);
    j["mu_ln"] = json_number(est.mu_ln);
    j["threshold"] = json_number(est.threshold);
    j["phi_ln"] = json_number(est.phi_ln);
    j["variance_ratio"] = json_number(est.variance_ratio);
    return j;
}

Json to_json(const PlantPlan& plan, int host_order) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = plant_kind_name(plan.kind);
    j["n"] = plan.n;
    j["p"] = plan.p;
    j["eps"] = plan.eps;
    j["p1"] = plan.p1;
    j["p2"] = plan.p2;
    if (plan.p3) j["p3"] = *plan.p3;
    j["z"] = plan.z;
    if (plan.z_paper) j["z_paper"] = *plan.z_paper;
    if (plan.delta) j["delta"] = *plan.delta;
    if (plan.z_star) j["z_star"] = *plan.z_star;
    if (plan.u_size) j["U_size"] = *plan.u_size;
    if (plan.gamma) j["gamma"] = *plan.gamma;
    j["C_H"] = plan.C_H;
    j["c_H"] = plan.c_H;
    if (plan.d_H) j["d_H"] = *plan.d_H;
    if (plan.certificate_copies) j["certificate_copies"] = *plan.certificate_copies;
    j["certificate_copies_ln"] = plan.certificate_copies_ln;
    j["plant_cost_ln"] = plan.cost_ln;              // -ln of the probability bound
    j["plant_log_prob_ln"] = -plan.cost_ln;
    if (plan.cost_disjoint_ln) j["cost_disjoint_ln"] = *plan.cost_disjoint_ln;
    if (plan.cost_clustered_ln) j["cost_clustered_ln"] = *plan.cost_clustered_ln;
    j["mu_target_ln"] = plan.mu_target_ln;
    j["threshold"] = json_number(plan.threshold);
    if (plan.kind == PlantKind::pendant) {
        j["l"] = plan.l;
        j["r"] = plan.r;
    } else if (plan.kind == PlantKind::mixed) {
        j["r"] = plan.r;
    } else {
        j["witness_G"] = format_vertex_set(plan.witness_G, host_order);
        Json covers = Json::array();
        for (VertexSet s : plan.witness_covers)
            covers.push_back(format_vertex_set(s, host_order));
        j["witness_covers"] = covers;
    }
    return j;
}

Json to_json(const PlantOutcome& outcome) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["seed"] = outcome.seed;
    j["round1_found"] = outcome.round1_found;
    j["planted"] = outcome.planted;
    j["X_H"] = outcome.copies;
    j["hit"] = outcome.hit;
    j["structured_copies"] = outcome.structured_copies;
    j["round3_copies"] = outcome.round3_copies;
    return j;
}

std::string sweep_csv_header() {
    return "n,p,np,phi_ln,M_log_term_ln,zeta_term_ln,pendant_cost_ln,mixed_cost_ln,mechanism";
}

std::string sweep_csv(const Graph& h, double n, const std::vector<double>& np_values,
                      const SweepOptions& opts) {
    if (np_values.empty()) throw std::invalid_argument("sweep needs a non-degenerate grid");
    std::ostringstream out;
    out.precision(12);
    out << sweep_csv_header() << "\n";

    ExponentEvaluator eval(h);
    DensityResult md = m_density(h);
    std::optional<Rational> zeta_value;
    if (h.order() <= kPrimalOrderCap) {
        PrimalFamily fam = primal_family(h);
        if (!fam.cover_edges.empty()) zeta_value = zeta(fam).zeta;
    }

    for (double np : np_values) {
        double p = np / n;
        if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("grid leaves p outside (0,1)");
        PhiResult ph = eval.phi(n, p);
        MResult mm = eval.M_parameter(n, p);
        double m_log_term_ln = mm.log_value + std::log(std::log(1.0 / p));

        std::optional<double> zeta_term_ln;
        double omega_ln = std::log(n) + md.density.value.value() * std::log(p);
        if (zeta_value && omega_ln > 0)
            zeta_term_ln = zeta_value->value() * omega_ln + std::log(omega_ln);

        double best = std::min(ph.log_value, m_log_term_ln);
        Mechanism mech =
            ph.log_value <= m_log_term_ln ? Mechanism::disjoint : Mechanism::clustered;
        if (zeta_term_ln && *zeta_term_ln < best) {
            best = *zeta_term_ln;
            mech = Mechanism::locally_disjoint;
        }

        std::optional<double> pendant_cost, mixed_cost;
        if (opts.pendant_lr) {
            auto [l, r] = *opts.pendant_lr;
            pendant_cost = plan_pendant(l, r, n, p, opts.eps).cost_ln;
        }
        if (opts.mixed_r) mixed_cost = plan_mixed(*opts.mixed_r, n, p, opts.eps).cost_ln;

        out << n << "," << p << "," << np << "," << ph.log_value << "," << m_log_term_ln
            << ",";
        if (zeta_term_ln) out << *zeta_term_ln;
        out << ",";
        if (pendant_cost) out << *pendant_cost;
        out << ",";
        if (mixed_cost) out << *mixed_cost;
        out << "," << mechanism_name(mech) << "\n";
    }
    return out.str();
}

} // namespace uppertail
