#pragma once

#include "hyperis/hypergraph.hpp"

namespace hyperis {

struct OracleResult {
  long optimum = 0;
  VertexSet witness;
  long nodes = 0;  // search nodes explored
};

// Exact maximum independent set via branch and bound: branch on a vertex of
// maximum residual degree, include (pruning vertices that would complete an
// edge) or exclude; the upper bound is the residual vertex count.  Refuses
// instances above the cap.
OracleResult max_independent_set(const Hypergraph& h, int cap = 40);

// Exhaustive 2^n enumeration, cross-validation oracle for small n.
OracleResult max_independent_set_exhaustive(const Hypergraph& h, int cap = 22);

// Exact maximum gamma-balanced independent set.  Candidate sizes t with all
// gamma_i * t integral are tried in descending order; the per-size
// feasibility is solved by branch and bound over per-part selections.
OracleResult max_gamma_balanced(const PartiteHypergraph& h, const GammaVector& gamma, int cap = 36);

OracleResult max_gamma_balanced_exhaustive(const PartiteHypergraph& h, const GammaVector& gamma,
                                           int cap = 22);

// Gamma-balanced maximum with the extra constraint of at most one vertex per
// block, where the blocks are the consecutive index ranges of length `block`
// within each part.  `block` must divide the part size.
OracleResult max_p_independent(const PartiteHypergraph& h, const GammaVector& gamma, int block,
                               int cap = 36);

OracleResult max_p_independent_exhaustive(const PartiteHypergraph& h, const GammaVector& gamma,
                                          int block, int cap = 22);

}  // namespace hyperis
