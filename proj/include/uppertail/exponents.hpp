#ifndef UPPERTAIL_EXPONENTS_HPP
#define UPPERTAIL_EXPONENTS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "uppertail/graph.hpp"
#include "uppertail/rational.hpp"

namespace uppertail {

// Exact subgraph density e/v with its parts.
struct Density {
    int edges = 0;
    int vertices = 1;
    Rational value{0, 1};
};

struct DensityResult {
    Density density;      // m_h = max over non-empty subsets of induced density
    VertexSet witness = 0;
};

// Maximum induced-subgraph density (equals the max over all subgraphs).
// Witness prefers higher density, then fewer vertices, then smaller mask.
DensityResult m_density(const Graph& h);

bool is_balanced(const Graph& h);
bool is_strictly_balanced(const Graph& h);

// Fractional independence number; half-integral. Computed as
// v - (max matching of the bipartite double cover)/2.
Rational fractional_independence(const Graph& g);

inline constexpr double kLogZero = -1e300; // log-scale sentinel for mu = 0

struct MuResult {
    double log_value = kLogZero;          // natural log of mu
    std::optional<double> linear;         // mu itself when representable
};

// mu_g(n,p) = (n)_v / |Aut(g)| * p^e : expected number of unlabeled copies
// of g in G(n,p).
MuResult mu(const Graph& g, double n, double p);

// One minimizer found by a subgraph minimization (phi or the small-p branch
// of M). The subgraph is given by its vertex support plus edge count; for
// the exact edge-subset path `witness` is the minimizing subgraph itself.
struct SubgraphWitness {
    Graph subgraph;
    VertexSet support = 0;
    int edge_count = 0;
    double log_mu = 0.0;
};

struct PhiResult {
    double log_value = 0.0;   // ln Phi_H(n,p)
    SubgraphWitness witness;
    bool approximate = false; // true when e_h > 22 forced the induced-only scan
};

struct MResult {
    double log_value = 0.0;   // ln M_H(n,p)
    bool small_p_branch = false;
    std::optional<SubgraphWitness> witness; // present on the small-p branch
    bool approximate = false;
    // Appendix-style variant min mu_G^{v_G/alpha*_G}, reported for comparison.
    double log_value_appendix_variant = 0.0;
};

enum class Mechanism { disjoint, clustered, locally_disjoint };
std::string mechanism_name(Mechanism m);

struct ExponentReport {
    double n = 0;
    double p = 0;
    double eps = 0;
    double log_mu_H = 0;
    double phi_ln = 0;
    double M_ln = 0;
    double M_log_term_ln = 0;                   // ln(M * log(1/p))
    std::optional<double> zeta_term_ln;         // ln((np^m)^zeta * log(np^m)); absent
                                                // when strictly balanced or np^m <= 1
    std::optional<Rational> zeta;
    double conjectured_min_ln = 0;
    Mechanism mechanism = Mechanism::disjoint;
    double variance_estimate_ln = 0;            // ln(mu^2 / Phi)
    bool phi_approximate = false;
};

// Reusable evaluator: the subgraph profile scan is done once per graph, then
// any number of (n,p) points are cheap. phi/M share it.
class ExponentEvaluator {
public:
    explicit ExponentEvaluator(const Graph& h);
    ~ExponentEvaluator();
    ExponentEvaluator(ExponentEvaluator&&) noexcept;

    PhiResult phi(double n, double p) const;
    MResult M_parameter(double n, double p) const;
    const Graph& graph() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Edge subsets are enumerated exactly up to this many edges; beyond it the
// minimizations fall back to induced subgraphs and flag the result.
inline constexpr int kExactEdgeCap = 22;

PhiResult phi(const Graph& h, double n, double p);
MResult M_parameter(const Graph& h, double n, double p);

// Assembles every Eq.-style exponent at (n, p, eps). Needs the primal
// machinery for the zeta term, hence declared here and defined with it.
ExponentReport conjecture_report(const Graph& h, double n, double p, double eps);

// ln (n)_k, exact summation.
double log_falling_factorial(double n, int k);

} // namespace uppertail

#endif
