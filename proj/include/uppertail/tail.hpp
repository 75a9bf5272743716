#ifndef UPPERTAIL_TAIL_HPP
#define UPPERTAIL_TAIL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uppertail/graph.hpp"
#include "uppertail/host.hpp"
#include "uppertail/primal.hpp"

namespace uppertail {

// Worker count for trial loops: value of UPPERTAIL_THREADS, 0/unset = auto.
// Results are bitwise independent of this.
int worker_count();

struct TailEstimate {
    double n = 0, p = 0, eps = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t hit_count = 0;
    double p_hat = 0;
    double ci_lower = 0, ci_upper = 0; // 95% score interval
    double mean_X = 0;
    double var_X = 0;                  // sample variance (n-1 denominator)
    double mu = 0;                     // exact E X_H, linear scale
    double mu_ln = 0;
    double threshold = 0;              // (1+eps) * mu, never rounded
    double phi_ln = 0;
    double variance_ratio = 0;         // var_X * Phi / mu^2
};

// Independent G(n,p) trials; a hit is X_h >= (1+eps) mu with mu exact.
TailEstimate tail_estimate(const Graph& h, int n, double p, double eps,
                           std::uint64_t trials, std::uint64_t seed);

enum class PlantKind { pendant, general, mixed };
std::string plant_kind_name(PlantKind k);

struct PlantPlan {
    PlantKind kind = PlantKind::pendant;
    double n = 0, p = 0, eps = 0;

    double p1 = 0, p2 = 0;                 // round probabilities
    std::optional<double> p3;              // general plan only

    std::int64_t z = 0;                    // planted multiplicity
    std::optional<std::int64_t> z_paper;   // pendant: the paper's ceiling formula
    std::optional<double> delta;           // general only
    std::optional<std::int64_t> z_star;    // mixed only
    std::optional<std::int64_t> u_size;    // mixed only: |U|

    double certificate_copies_ln = 0;      // ln of the guaranteed copy count
    std::optional<std::uint64_t> certificate_copies; // exact when it fits
    double cost_ln = 0;                    // -ln of the plant-probability bound
    // mixed: the two mechanism parts of cost_ln
    std::optional<double> cost_disjoint_ln;
    std::optional<double> cost_clustered_ln;

    double mu_target_ln = 0;               // ln mu of the graph being planted
    double threshold = 0;                  // (1+eps) mu

    // constants in play
    double C_H = 0, c_H = 0;
    std::optional<double> gamma, d_H;      // mixed only

    // pendant: l, r; general: witness; mixed: r
    int l = 0, r = 0;
    VertexSet witness_G = 0;
    std::vector<VertexSet> witness_covers; // post-reduction list, general plan
    Graph h;                               // the pattern the plan is about
};

// Lemma-2.1 plan: two rounds, p2 = p/2, (1-p1)(1-p2) = 1-p; z is the minimal
// value with C(z,r) >= ceil((1+eps) mu_H) (the paper's ceiling formula is
// reported alongside); cost is the exact binomial log of Pr(Z = z).
// Planning is analytic and works at any n; execution needs n <= 512.
PlantPlan plan_pendant(int l, int r, double n, double p, double eps);

struct PlantOutcome {
    bool round1_found = false;
    bool planted = false;
    std::uint64_t copies = 0;       // exact X_H of the final union
    bool hit = false;               // X_H >= (1+eps) mu_H
    std::uint64_t structured_copies = 0; // general: z^r K-copies from bookkeeping
    std::uint64_t round3_copies = 0;     // general: H-copies entirely inside round 3
    std::uint64_t seed = 0;
};

// Samples round 1 at p1; when a cycle exists, re-exposes round 2 conditioned
// on the chosen cycle vertex having exactly z outside neighbours (its other
// outside edges are dropped, the z lexicographically first outside vertices
// get the pendant edges). When planted, the certificate makes the hit
// deterministic; a miss raises InvariantViolation.
PlantOutcome execute_pendant(const PlantPlan& plan, std::uint64_t seed);

// Lemma-3.3 / three-round plan for an arbitrary cover witness
// (G, [J_1..J_r]). Covers violating mu_Ji/mu_G <= (eps mu_K)^{1/r} are
// dropped (largest mu first) and the plan recomputed until stable; the last
// cover is never dropped. Certificate: z^r copies of K = union of covers.
PlantPlan plan_general(const Graph& h, VertexSet witness_g,
                       const std::vector<VertexSet>& witness_covers, double n,
                       double p, double eps, double C_H = 4.0, double c_H = 0.25);

// Round 1 at p1 finds an ordered copy of G; round 2 contributes exactly the
// planted edge-extensions (z per cover, disjoint blocks of the parts V_i);
// round 3 is sampled at p3. The certificate guarantees K-copies, not
// H-copies, so the hit flag is empirical.
PlantOutcome execute_general(const PlantPlan& plan, std::uint64_t seed);

// Theorem-4.1 plan for H_r, r >= 7. Analytic only - never executed; the
// pattern is past every counting cap.
PlantPlan plan_mixed(int r, double n, double p, double eps);

} // namespace uppertail

#endif
