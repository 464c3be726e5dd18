#include "hyperis/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperis {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

Estimate mean_estimate(const std::vector<double>& xs) {
  Estimate e;
  e.trials = static_cast<long>(xs.size());
  e.value = mean(xs);
  e.se = xs.size() > 1 ? std::sqrt(sample_variance(xs) / static_cast<double>(xs.size())) : 0.0;
  return e;
}

Estimate proportion_estimate(long successes, long trials) {
  if (trials <= 0) throw std::invalid_argument("proportion_estimate: trials must be >= 1");
  Estimate e;
  e.trials = trials;
  e.value = static_cast<double>(successes) / static_cast<double>(trials);
  double pt = (static_cast<double>(successes) + 2.0) / (static_cast<double>(trials) + 4.0);
  e.se = std::sqrt(pt * (1.0 - pt) / (static_cast<double>(trials) + 4.0));
  return e;
}

namespace {

// Series expansion for P(a,x), valid for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), valid for x >= a+1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double stat, int df) {
  if (df <= 0) throw std::invalid_argument("chi_square_sf: df must be positive");
  if (stat <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * stat);
}

double chi_square_independence_2x2(std::uint64_t n00, std::uint64_t n01,
                                   std::uint64_t n10, std::uint64_t n11) {
  double total = static_cast<double>(n00 + n01 + n10 + n11);
  if (total == 0.0) return 1.0;
  double r0 = static_cast<double>(n00 + n01);
  double r1 = static_cast<double>(n10 + n11);
  double c0 = static_cast<double>(n00 + n10);
  double c1 = static_cast<double>(n01 + n11);
  if (r0 == 0 || r1 == 0 || c0 == 0 || c1 == 0) return 1.0;
  double stat = 0.0;
  const double obs[4] = {static_cast<double>(n00), static_cast<double>(n01),
                         static_cast<double>(n10), static_cast<double>(n11)};
  const double exp[4] = {r0 * c0 / total, r0 * c1 / total, r1 * c0 / total, r1 * c1 / total};
  for (int i = 0; i < 4; ++i) stat += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  return chi_square_sf(stat, 1);
}

double chi_square_two_sample(const std::vector<std::uint64_t>& a,
                             const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("chi_square_two_sample: size mismatch");
  // pool adjacent bins until each pooled bin has a combined count of >= 10
  std::vector<double> pa, pb;
  double ca = 0.0, cb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ca += static_cast<double>(a[i]);
    cb += static_cast<double>(b[i]);
    if (ca + cb >= 10.0) {
      pa.push_back(ca);
      pb.push_back(cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (pa.empty()) {
      pa.push_back(ca);
      pb.push_back(cb);
    } else {
      pa.back() += ca;
      pb.back() += cb;
    }
  }
  if (pa.size() < 2) return 1.0;
  double na = 0.0, nb = 0.0;
  for (double x : pa) na += x;
  for (double x : pb) nb += x;
  if (na == 0.0 || nb == 0.0) return 1.0;
  double stat = 0.0;
  for (size_t i = 0; i < pa.size(); ++i) {
    double tot = pa[i] + pb[i];
    if (tot == 0.0) continue;
    double ea = tot * na / (na + nb);
    double eb = tot * nb / (na + nb);
    stat += (pa[i] - ea) * (pa[i] - ea) / ea;
    stat += (pb[i] - eb) * (pb[i] - eb) / eb;
  }
  return chi_square_sf(stat, static_cast<int>(pa.size()) - 1);
}

}  // namespace hyperis
