#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hyperis/hypergraph.hpp"
#include "hyperis/local.hpp"
#include "hyperis/rng.hpp"

namespace hyperis {

// Multilinear per-vertex polynomials in the edge indicators.
struct Monomial {
  double coeff = 0.0;
  std::vector<std::uint64_t> coords;  // product of these edge indicators
};

struct VertexPolynomial {
  std::vector<Monomial> terms;
};

struct VertexPolynomialSet {
  std::uint64_t coordinate_space = 0;
  std::vector<VertexPolynomial> polys;  // one per (global) vertex
  Seed omega;                           // randomness handle, recorded for reproducibility

  long vertex_count() const { return static_cast<long>(polys.size()); }
  int degree() const;  // max monomial support size

  double eval_vertex(long v, const std::function<bool(std::uint64_t)>& coord_value) const;
  std::vector<double> evaluate(const std::vector<std::uint8_t>& state) const;
  std::vector<double> evaluate(const PartiteHypergraph& instance) const;
};

// Per-vertex polynomial value; `overflow` marks vertices whose neighborhood
// exceeded the compiler's edge guard and is scored against the eta budget.
struct VertexValue {
  double value = 0.0;
  bool overflow = false;
};

// Outcome of the rounding procedure: take I = {v : f_v >= 1}, prune members
// contained in an edge fully inside I, and accept the pruned set if the
// number of pruned vertices plus the ambiguous set J = {v : f_v in (1/2,1)}
// (plus overflowed vertices) stays within eta * #vertices.
struct RoundingOutcome {
  VertexSet I;
  VertexSet I_tilde;
  VertexSet J;
  long overflow_count = 0;
  long error_count = 0;  // |I \ I~| + |J| + overflow
  bool accepted = false;

  VertexSet accepted_set() const { return accepted ? I_tilde : VertexSet(); }
};

RoundingOutcome round_to_independent_set(std::span<const double> values, const Hypergraph& h,
                                         double eta);
RoundingOutcome round_to_independent_set(std::span<const double> values,
                                         const PartiteHypergraph& h, double eta);
RoundingOutcome round_to_independent_set(std::span<const VertexValue> values, const Hypergraph& h,
                                         double eta);
RoundingOutcome round_to_independent_set(std::span<const VertexValue> values,
                                         const PartiteHypergraph& h, double eta);

// Evaluation-oriented compilation of an s-local rule into the per-vertex
// polynomial whose monomials range over the rooted sub-hypergraphs of the
// realized radius-s neighborhood with at most q edges.  Coefficients follow
// the inclusion-exclusion recursion
//     alpha(H) = g(H) - sum_{H' subsetneq H} alpha(H'),
// so whenever the neighborhood is a hypertree with at most q edges the
// evaluation reproduces g exactly.
class CompiledLocalPolynomial {
 public:
  CompiledLocalPolynomial(LocalFunction g, int q, int q_max = 16);

  VertexValue evaluate(const Hypergraph& instance, int v, const VertexLabels& labels) const;
  std::vector<VertexValue> evaluate_all(const Hypergraph& instance,
                                        const VertexLabels& labels) const;

  // Coefficient alpha(H, root, labels) for a supplied small rooted view.
  double alpha(const RootedView& view, std::span<const double> labels) const;

  int radius() const { return g_.radius; }
  int monomial_cap() const { return q_; }
  int edge_guard() const { return q_max_; }
  const LocalFunction& rule() const { return g_; }

 private:
  LocalFunction g_;
  int q_;
  int q_max_;
};

// Fixed degree-1 polynomial family: parts i != i_star hold the indicator of
// their first k_i vertices, part i_star holds 1 minus the count of edges
// into the fixed prefix blocks.
VertexPolynomialSet degree1_polynomial(int r, int n, const std::vector<long>& k, int i_star,
                                       Seed omega);

// Runs the degree-1 polynomial on an instance and rounds with eta = 0.
// i_star < 0 selects the part with the largest target (ties toward the last
// part).  Requires k_i <= n.
std::pair<VertexPolynomialSet, RoundingOutcome> degree1_balanced(const PartiteHypergraph& instance,
                                                                 const std::vector<long>& k,
                                                                 Seed seed, int i_star = -1);

// Largest gamma-balanced subset of an independent set, obtained by trimming
// each part to the best admissible size.
VertexSet largest_balanced_subset(const PartiteHypergraph& h, const VertexSet& s,
                                  const GammaVector& gamma);

// Monte Carlo check of the optimization contract: mean squared norm against
// xi * sum(k), and the success frequency of per-part counts (or total size)
// reaching the targets against 1 - delta.
struct OptimizationReport {
  long trials = 0;
  double mean_norm = 0.0;
  double norm_se = 0.0;
  double success_rate = 0.0;
  double success_se = 0.0;
  double xi = 1.0;
  double delta = 0.0;
  double eta = 0.0;
  double k_total = 0.0;
  bool norm_ok = false;
  bool success_ok = false;
  double empirical_xi = 0.0;  // mean_norm / k_total
};

OptimizationReport check_optimization_partite(
    const std::function<std::vector<double>(const PartiteHypergraph&, Seed)>& values_builder,
    int r, int n, double p, const std::vector<long>& k, double delta, double xi, double eta,
    long trials, Seed seed);

OptimizationReport check_optimization_uniform(
    const std::function<std::vector<double>(const Hypergraph&, Seed)>& values_builder, int n, int r,
    double p, long k, double delta, double xi, double eta, long trials, Seed seed);

}  // namespace hyperis
