#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hyperis/hypergraph.hpp"
#include "hyperis/models.hpp"
#include "hyperis/rng.hpp"
#include "hyperis/stats.hpp"

namespace hyperis {

// One Unif[0,1] label per vertex.
struct VertexLabels {
  std::vector<double> values;
  static VertexLabels sample(long n, Seed seed);
};

// Radius-s decision rule evaluated on a rooted view and the labels restricted
// to it (indexed by local ids).  The evaluator must be invariant under
// labeled isomorphism, and the selected set {v : eval = 1} must be
// independent for every input (the built-in rules below guarantee this by a
// per-edge certificate argument).
struct LocalFunction {
  int radius = 1;
  std::string name;
  std::function<int(const RootedView&, std::span<const double>)> eval;
};

// Built-in rules.
// min_blocking: v is selected iff it is never the minimum-label vertex of an
// incident edge.  1-local.
LocalFunction min_blocking_rule();
// min_blocking_parity: min_blocking and additionally the number of edges in
// the radius-2 view is even.  2-local.
LocalFunction min_blocking_parity_rule();
// isolated: v is selected iff its radius-s view has no edges.
LocalFunction isolated_rule(int radius);

// Sequential greedy: repeatedly take the largest-label remaining vertex, then
// drop every remaining vertex u that would complete an edge (some e with
// e \ {u} already selected).  Label ties break toward the smaller index.
VertexSet random_greedy(const Hypergraph& h, const VertexLabels& labels);
VertexSet random_greedy(const RootedHypertree& t, const VertexLabels& labels);

// Greedy adapted from the Delta-regular tree to a Galton-Watson tree:
//   1. at every vertex of degree > delta, drop the excess edges ranked by the
//      largest label among the edge's other vertices;
//   2. raise all degrees back to delta by attaching (delta-1)-ary hypertrees,
//      truncated at the tree's depth cap, and relabel everything freshly;
//   3. run the greedy on the regularized forest and keep the original
//      vertices none of whose incident edges were dropped in step 1.
// The result is independent in the input tree.
VertexSet adapt_greedy_to_gw(const RootedHypertree& t, long delta, Seed seed);

// Fraction of fresh Galton-Watson trees whose root lands in the adapted
// greedy output, with binomial standard error.
Estimate estimate_root_density(double d, int r, long delta, int depth, long trials, Seed seed);

// Applies g to every vertex of h: evaluates g on (neighborhood(h, v, s),
// restricted labels) and returns {v : g = 1}.
VertexSet run_local_on_hypergraph(const Hypergraph& h, const LocalFunction& g,
                                  const VertexLabels& labels);

// Canonical-type census of the radius-2s neighborhoods.  Vertices whose view
// is a hypertree with at most q edges are tallied by a canonical form of the
// rooted tree; everything else lands in `other`.
struct NeighborhoodTypeCounts {
  std::map<std::string, long> counts;
  long other = 0;
  long total() const;
};

NeighborhoodTypeCounts count_neighborhood_types(const Hypergraph& h, int s, int q);

// Canonical form of a rooted hypertree view: bottom-up, a vertex signature is
// the sorted multiset of its child-edge signatures, an edge signature the
// sorted multiset of its r-1 child-vertex signatures.
std::string canonical_hypertree_form(const RootedView& view);

}  // namespace hyperis
