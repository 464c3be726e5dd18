#include "hyperis/thresholds.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperis {

ThresholdSet uniform_thresholds(int r, double d) {
  if (r < 2) throw std::invalid_argument("uniform_thresholds: r must be >= 2");
  if (d <= 1.0) throw std::domain_error("uniform_thresholds: d must exceed 1");
  const double e = 1.0 / static_cast<double>(r - 1);
  ThresholdSet t;
  t.stat = std::pow(static_cast<double>(r) * e * std::log(d) / d, e);
  t.lowdeg = std::pow(e * std::log(d) / d, e);
  t.gap_factor = t.lowdeg / t.stat;
  return t;
}

BalancedParams balanced_params(const GammaVector& gamma, int r, double d) {
  if (gamma.size() != r) throw std::invalid_argument("balanced_params: gamma size mismatch");
  if (d <= 1.0) throw std::domain_error("balanced_params: d must exceed 1");
  BalancedParams p;
  const double e = 1.0 / static_cast<double>(r - 1);
  p.c_gamma = 1.0 / (std::pow(static_cast<double>(r), static_cast<double>(r - 1)) *
                     static_cast<double>(r - 1) * gamma.product());
  p.f = std::pow(p.c_gamma * std::log(d) / d, e);
  p.stat_density = p.f;
  p.i_star = gamma.argmax();
  p.lowdeg_density = std::pow(gamma[p.i_star] * p.c_gamma * std::log(d) / d, e);
  return p;
}

TargetSizes target_sizes(const GammaVector& gamma, int r, long n, double d, double epsilon,
                         TargetSide side) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("target_sizes: epsilon in (0,1)");
  const BalancedParams p = balanced_params(gamma, r, d);
  const double scale = (side == TargetSide::achievability) ? (1.0 - epsilon) : (1.0 + epsilon);
  TargetSizes out;
  out.exact.resize(static_cast<size_t>(r));
  out.rounded.resize(static_cast<size_t>(r));
  for (int j = 0; j < r; ++j) {
    double k = gamma[j] * static_cast<double>(r) * static_cast<double>(n) * scale * p.lowdeg_density;
    out.exact[static_cast<size_t>(j)] = k;
    out.rounded[static_cast<size_t>(j)] = std::llround(k);
  }
  return out;
}

}  // namespace hyperis
