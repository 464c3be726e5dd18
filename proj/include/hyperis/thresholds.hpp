#pragma once

#include <vector>

#include "hyperis/hypergraph.hpp"

namespace hyperis {

// Reference densities for independent sets in the sparse r-uniform model at
// average degree d.
struct ThresholdSet {
  double stat = 0.0;        // maximum independent set density
  double lowdeg = 0.0;      // density reachable by low-degree polynomials
  double gap_factor = 0.0;  // lowdeg / stat = r^{-1/(r-1)}
};

// stat   = (r/(r-1) * log d / d)^{1/(r-1)}
// lowdeg = (1/(r-1) * log d / d)^{1/(r-1)}
// Requires r >= 2 and d > 1 (log d must be positive).
ThresholdSet uniform_thresholds(int r, double d);

// Parameters of the balanced (partite) problem for proportions gamma.
struct BalancedParams {
  double c_gamma = 0.0;         // 1 / (r^{r-1} (r-1) prod_i gamma_i)
  double f = 0.0;               // (c_gamma log d / d)^{1/(r-1)}, statistical density of rn
  double stat_density = 0.0;    // == f
  double lowdeg_density = 0.0;  // inner argument additionally scaled by gamma_{i*}
  int i_star = 0;               // argmax gamma, ties to smallest index
};

BalancedParams balanced_params(const GammaVector& gamma, int r, double d);

// Per-part targets k_j = gamma_j * r * n * (1 -/+ eps) * lowdeg_density.
// achievability uses (1-eps), impossibility uses (1+eps).
enum class TargetSide { achievability, impossibility };

struct TargetSizes {
  std::vector<double> exact;    // real-valued k_j
  std::vector<long> rounded;    // nearest integers
};

TargetSizes target_sizes(const GammaVector& gamma, int r, long n, double d, double epsilon,
                         TargetSide side);

}  // namespace hyperis
