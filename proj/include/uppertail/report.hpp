#ifndef UPPERTAIL_REPORT_HPP
#define UPPERTAIL_REPORT_HPP

#include <optional>
#include <string>

#include "json.hpp"
#include "uppertail/exponents.hpp"
#include "uppertail/graph.hpp"
#include "uppertail/tail.hpp"

namespace uppertail {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Full analysis of a graph: summary, alpha*, primal lattice, grading, zeta,
// counterexample verdict, and optionally the exponent report at (n, p, eps).
// Rationals are "num/den" strings; log-scale fields carry the _ln suffix;
// field order is fixed.
Json analysis_report(const Graph& h, std::optional<double> n,
                     std::optional<double> p, std::optional<double> eps);

Json to_json(const TailEstimate& est);
Json to_json(const PlantPlan& plan, int host_order);
Json to_json(const PlantOutcome& outcome);

// One sweep row: n, p, np, phi_ln, M_log_term_ln, zeta_term_ln,
// pendant_cost_ln, mixed_cost_ln, mechanism. Cost columns are empty unless
// the graph came from the matching family.
struct SweepOptions {
    std::optional<std::pair<int, int>> pendant_lr; // (l, r) when cycle-pendant
    std::optional<int> mixed_r;                    // r when badnews
    double eps = 1.0;
};

std::string sweep_csv_header();
std::string sweep_csv(const Graph& h, double n, const std::vector<double>& np_values,
                      const SweepOptions& opts);

} // namespace uppertail

#endif
