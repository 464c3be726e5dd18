#pragma once

#include <cstdint>
#include <vector>

namespace hyperis {

// A Monte Carlo point estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
  long trials = 0;
};

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);

// Mean with standard error of the mean.
Estimate mean_estimate(const std::vector<double>& xs);

// Proportion estimate for `successes` out of `trials`.  The standard error
// uses the Agresti-Coull adjustment (x+2)/(n+4) so it stays informative at
// observed proportions of exactly 0 or 1.
Estimate proportion_estimate(long successes, long trials);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of freedom.
double chi_square_sf(double stat, int df);

// Pearson chi-square independence test for a 2x2 contingency table.
// Returns the p-value (df = 1).
double chi_square_independence_2x2(std::uint64_t n00, std::uint64_t n01,
                                   std::uint64_t n10, std::uint64_t n11);

// Two-sample chi-square homogeneity test over histograms with identical
// support; bins with small combined expected count are pooled.  Returns the
// p-value.
double chi_square_two_sample(const std::vector<std::uint64_t>& a,
                             const std::vector<std::uint64_t>& b);

}  // namespace hyperis
