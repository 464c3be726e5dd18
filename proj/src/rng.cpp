#include "hyperis/rng.hpp"

#include <cmath>

namespace hyperis {

namespace {

// Sequential search on the CDF.  Exact and fast for small means; at
// mean = 30 the leading term exp(-30) ~ 9.4e-14 is still comfortably
// representable.
long poisson_inversion(double mean, Rng& rng) {
  double u = rng.next_unit();
  double p = std::exp(-mean);
  double cdf = p;
  long k = 0;
  while (u > cdf && k < 3000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// Hormann's PTRS transformed rejection sampler, valid for mean >= 10.
long poisson_ptrs(double mean, Rng& rng) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = rng.next_unit() - 0.5;
    double v = rng.next_unit();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    double k = kf;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<long>(kf);
    }
  }
}

}  // namespace

long Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean <= 30.0) return poisson_inversion(mean, *this);
  return poisson_ptrs(mean, *this);
}

}  // namespace hyperis
