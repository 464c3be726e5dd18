// Acceptance suite: end-to-end checks with pinned tolerances, one line per
// criterion.  Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hyperis/local.hpp"
#include "hyperis/lowdeg.hpp"
#include "hyperis/models.hpp"
#include "hyperis/ogp.hpp"
#include "hyperis/oracle.hpp"
#include "hyperis/stats.hpp"
#include "hyperis/thresholds.hpp"

using namespace hyperis;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] %2d %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename F>
void criterion(int id, const std::string& name, F&& body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, name, pass, detail, seconds);
}

double uniform_p(int n, int r, double d) {
  return d / static_cast<double>(*binom_checked(n - 1, r - 1));
}

double partite_p(int n, int r, double d) {
  return d / std::pow(static_cast<double>(n), static_cast<double>(r - 1));
}

// --- 1: every algorithm returns independent sets; balanced outputs balance ---
bool independence_soundness(std::string& detail) {
  long runs = 0, violations = 0;
  Seed master{20240901};

  // random greedy, 400 runs
  for (int i = 0; i < 400; ++i) {
    Seed seed = master.stream("greedy").stream(i);
    int r = 2 + i % 3;
    Hypergraph h = sample_uniform_hypergraph(150, r, uniform_p(150, r, 5.0), seed.stream("g"));
    VertexLabels labels = VertexLabels::sample(150, seed.stream("l"));
    if (!is_independent(h, random_greedy(h, labels))) ++violations;
    ++runs;
  }
  // adapted greedy on GW trees, 200 runs
  for (int i = 0; i < 200; ++i) {
    Seed seed = master.stream("adapted").stream(i);
    int r = 2 + i % 3;
    RootedHypertree t = sample_gw_hypertree(4.0, r, 2, seed.stream("tree"));
    VertexSet out = adapt_greedy_to_gw(t, default_degree_cap(4.0), seed.stream("greedy"));
    if (!is_independent(t.to_hypergraph(), out)) ++violations;
    ++runs;
  }
  // compiled local rule with rounding, 200 runs
  CompiledLocalPolynomial compiled(min_blocking_rule(), 12, 16);
  for (int i = 0; i < 200; ++i) {
    Seed seed = master.stream("compiled").stream(i);
    int r = 2 + i % 2;
    Hypergraph h = sample_uniform_hypergraph(60, r, uniform_p(60, r, 2.5), seed.stream("g"));
    VertexLabels labels = VertexLabels::sample(60, seed.stream("l"));
    auto values = compiled.evaluate_all(h, labels);
    RoundingOutcome out = round_to_independent_set(std::span<const VertexValue>(values), h, 0.1);
    if (!is_independent(h, out.accepted_set())) ++violations;
    if (!is_independent(h, run_local_on_hypergraph(h, compiled.rule(), labels))) ++violations;
    ++runs;
  }
  // degree-1 balanced with trimming, 200 runs
  for (int i = 0; i < 200; ++i) {
    Seed seed = master.stream("degree1").stream(i);
    int r = 2 + i % 3;
    GammaVector gamma = (i % 5 == 0 && r == 3) ? GammaVector({0.5, 0.25, 0.25})
                                               : GammaVector::uniform(r);
    PartiteHypergraph h = sample_partite_hypergraph(r, 30, partite_p(30, r, 3.0),
                                                    seed.stream("inst"));
    TargetSizes ts = target_sizes(gamma, r, 30, 3.0, 0.3, TargetSide::achievability);
    auto [poly, outcome] = degree1_balanced(h, ts.rounded, seed.stream("omega"));
    if (!is_independent(h, outcome.accepted_set())) ++violations;
    VertexSet balanced = largest_balanced_subset(h, outcome.accepted_set(), gamma);
    if (!is_gamma_balanced(h, balanced, gamma)) ++violations;
    ++runs;
  }
  detail = std::to_string(runs) + " runs, " + std::to_string(violations) + " violations";
  return runs == 1000 && violations == 0;
}

// --- 2: branch and bound equals exhaustive enumeration ---
bool oracle_equivalence(std::string& detail) {
  long matches = 0;
  for (int i = 0; i < 100; ++i) {
    Hypergraph h = sample_uniform_hypergraph(15, 3, 0.2, Seed{777}.stream(i));
    if (max_independent_set(h).optimum == max_independent_set_exhaustive(h).optimum) ++matches;
  }
  long balanced_matches = 0;
  GammaVector half({0.5, 0.5});
  for (int i = 0; i < 50; ++i) {
    PartiteHypergraph h = sample_partite_hypergraph(2, 8, 0.25, Seed{778}.stream(i));
    if (max_gamma_balanced(h, half).optimum == max_gamma_balanced_exhaustive(h, half).optimum) {
      ++balanced_matches;
    }
  }
  detail = std::to_string(matches) + "/100 uniform, " + std::to_string(balanced_matches) +
           "/50 balanced";
  return matches == 100 && balanced_matches == 50;
}

// --- 3: compiled polynomial equals the local rule on tree neighborhoods ---
bool compiler_identity(std::string& detail) {
  const int q = 12;
  long checked = 0, exact = 0;
  for (int r : {2, 3}) {
    for (int s : {1, 2}) {
      LocalFunction g = (s == 1) ? min_blocking_rule() : min_blocking_parity_rule();
      CompiledLocalPolynomial compiled(g, q, 16);
      const double d = (s == 1) ? 3.0 : (r == 2 ? 2.0 : 1.5);
      long accepted = 0;
      long attempt = 0;
      while (accepted < 500 && attempt < 100000) {
        Seed seed = Seed{30000 + 100 * r + s}.stream(attempt++);
        RootedHypertree t = sample_gw_hypertree(d, r, s, seed.stream("tree"));
        if (t.edge_count() > q) continue;
        ++accepted;
        Hypergraph h = t.to_hypergraph();
        VertexLabels labels = VertexLabels::sample(t.vertex_count(), seed.stream("labels"));
        RootedView view = neighborhood(h, 0, s);
        std::vector<double> local(view.to_host.size());
        for (size_t i = 0; i < view.to_host.size(); ++i) {
          local[i] = labels.values[static_cast<size_t>(view.to_host[i])];
        }
        double want = static_cast<double>(g.eval(view, local));
        VertexValue got = compiled.evaluate(h, 0, labels);
        ++checked;
        if (!got.overflow && std::fabs(got.value - want) <= 1e-9) ++exact;
      }
    }
  }
  detail = std::to_string(exact) + "/" + std::to_string(checked) + " exact";
  return checked == 2000 && exact == checked;
}

// --- 4: degree-1 mean of the designated part matches the closed form ---
bool degree1_analytic_mean(std::string& detail) {
  const int r = 3, n = 200;
  const double d = 8.0;
  const double p = partite_p(n, r, d);
  TargetSizes ts = target_sizes(GammaVector::uniform(r), r, n, d, 0.2, TargetSide::achievability);
  const std::vector<long>& k = ts.rounded;
  const long trials = 200;
  double sum = 0.0;
  for (long t = 0; t < trials; ++t) {
    Seed seed = Seed{888}.stream(t);
    PartiteHypergraph h = sample_partite_hypergraph(r, n, p, seed.stream("inst"));
    auto [poly, outcome] = degree1_balanced(h, k, seed.stream("omega"));
    for (std::int32_t v : outcome.accepted_set()) {
      if (h.part_of(v) == 2) sum += 1.0;
    }
  }
  const double mean_star = sum / trials;
  const double q = std::pow(1.0 - p, static_cast<double>(k[0]) * static_cast<double>(k[1]));
  const double want = n * q;
  const double se = std::sqrt(n * q * (1.0 - q) / trials);
  detail = "mean=" + std::to_string(mean_star) + " want=" + std::to_string(want) +
           " band=4x" + std::to_string(se);
  return std::fabs(mean_star - want) <= 4.0 * se;
}

// --- 5: closed-form thresholds at r=2 ---
bool threshold_cross_checks(std::string& detail) {
  bool ok = true;
  for (double d : {10.0, 100.0, 1000.0}) {
    ThresholdSet t = uniform_thresholds(2, d);
    ok = ok && std::fabs(t.stat - 2.0 * std::log(d) / d) <= 1e-12;
    ok = ok && std::fabs(t.lowdeg - std::log(d) / d) <= 1e-12;
    BalancedParams bp = balanced_params(GammaVector({0.5, 0.5}), 2, d);
    ok = ok && std::fabs(bp.lowdeg_density / bp.stat_density - 0.5) <= 1e-12;
    ok = ok && std::fabs(bp.c_gamma - 2.0) <= 1e-12;
  }
  detail = "r=2 stat/lowdeg and balanced gap ratio at 1e-12";
  return ok;
}

// --- 6: greedy density inside the threshold band at scale ---
bool greedy_density_band(std::string& detail) {
  const int n = 20000, r = 3;
  const double d = 50.0;
  const double p = uniform_p(n, r, d);
  ThresholdSet th = uniform_thresholds(r, d);
  const double lo = 0.6 * th.lowdeg, hi = 1.1 * th.stat;
  bool ok = true;
  double min_density = 1.0, max_density = 0.0;
  for (int t = 0; t < 10; ++t) {
    Seed seed = Seed{999}.stream(t);
    Hypergraph h = sample_uniform_hypergraph(n, r, p, seed.stream("g"));
    VertexLabels labels = VertexLabels::sample(n, seed.stream("l"));
    double density = static_cast<double>(random_greedy(h, labels).size()) / n;
    min_density = std::min(min_density, density);
    max_density = std::max(max_density, density);
    ok = ok && density > 0.0 && density >= lo && density <= hi;
  }
  detail = "density in [" + std::to_string(min_density) + "," + std::to_string(max_density) +
           "], band [" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  return ok;
}

// --- 7: degree-1 single-coordinate stability along a full sweep ---
bool single_coordinate_stability(std::string& detail) {
  const int r = 3, n = 100;
  const double d = 8.0;
  const double p = partite_p(n, r, d);
  TargetSizes ts = target_sizes(GammaVector::uniform(r), r, n, d, 0.2, TargetSide::achievability);
  VertexPolynomialSet poly = degree1_polynomial(r, n, ts.rounded, 2, Seed{1234});
  std::uint64_t m = 1;
  for (int j = 0; j < r; ++j) m *= static_cast<std::uint64_t>(n);
  InterpolationPath path(m, p, m, Seed{4321});
  PolynomialPathTracker tracker(poly, path.state());
  long max_hamming = 0, violations = 0;
  std::vector<char> member(static_cast<size_t>(3 * n), 0);
  for (size_t v = 0; v < member.size(); ++v) member[v] = tracker.values()[v] >= 1.0 ? 1 : 0;
  while (path.step() < path.total_steps()) {
    auto delta = path.advance();
    tracker.apply(delta);
    long hamming = 0;
    for (auto [v, old] : tracker.last_changes()) {
      bool was = old >= 1.0;
      bool now = tracker.values()[static_cast<size_t>(v)] >= 1.0;
      if (was != now) {
        ++hamming;
        member[static_cast<size_t>(v)] = now ? 1 : 0;
      }
    }
    max_hamming = std::max(max_hamming, hamming);
    if (hamming > 1) ++violations;
    // periodic audit against a full evaluation
    if (path.step() % 200000 == 0) {
      auto full = poly.evaluate(path.state());
      for (size_t v = 0; v < full.size(); ++v) {
        if ((full[v] >= 1.0) != (member[v] != 0)) ++violations;
      }
    }
  }
  detail = "max |V_t \\ V_{t-1}| symmetric difference = " + std::to_string(max_hamming) + " over " +
           std::to_string(path.total_steps()) + " steps";
  return violations == 0 && max_hamming <= 1;
}

// --- 8: path marginals and decorrelation after a full sweep ---
bool path_marginals(std::string& detail) {
  const int n = 30, r = 3;
  const double p = 0.1;
  const std::uint64_t m = *binom_checked(n, r);  // 4060
  const long paths = 2000;
  const int groups = 10;
  std::vector<long> group_hits(groups, 0);
  std::vector<long> group_sizes(groups, 0);
  std::uint64_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;
  for (long i = 0; i < paths; ++i) {
    InterpolationPath path = InterpolationPath::for_uniform(n, r, p, m, Seed{555}.stream(i));
    std::vector<std::uint8_t> base = path.state();
    for (std::uint64_t t = 0; t < m; ++t) path.advance();
    for (std::uint64_t c = 0; c < m; ++c) {
      int g = static_cast<int>(c * groups / m);
      ++group_sizes[static_cast<size_t>(g)];
      bool after = path.value(c);
      if (after) ++group_hits[static_cast<size_t>(g)];
      bool before = base[c] != 0;
      if (!before && !after) ++n00;
      if (!before && after) ++n01;
      if (before && !after) ++n10;
      if (before && after) ++n11;
    }
  }
  bool ok = true;
  double worst = 0.0;
  for (int g = 0; g < groups; ++g) {
    double freq = static_cast<double>(group_hits[static_cast<size_t>(g)]) /
                  static_cast<double>(group_sizes[static_cast<size_t>(g)]);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(group_sizes[static_cast<size_t>(g)]));
    worst = std::max(worst, std::fabs(freq - p) / se);
    if (std::fabs(freq - p) > 5.0 * se) ok = false;
  }
  double pvalue = chi_square_independence_2x2(n00, n01, n10, n11);
  detail = "worst group deviation " + std::to_string(worst) + " se, chi-square p=" +
           std::to_string(pvalue);
  return ok && pvalue >= 0.001;
}

// --- 9: Galton-Watson first-two-level moments ---
bool gw_moments(std::string& detail) {
  const double d = 10.0;
  const int r = 3;
  const long trials = 10000;
  double edges = 0.0, children = 0.0;
  for (long t = 0; t < trials; ++t) {
    RootedHypertree tree = sample_gw_hypertree(d, r, 1, Seed{666}.stream(t));
    edges += static_cast<double>(tree.edge_count());
    children += static_cast<double>(tree.vertex_count() - 1);
  }
  const double mean_edges = edges / trials;
  const double mean_children = children / trials;
  const double se_edges = std::sqrt(d / trials);
  const double se_children = std::sqrt((r - 1.0) * (r - 1.0) * d / trials);
  detail = "root degree " + std::to_string(mean_edges) + " (want 10), children " +
           std::to_string(mean_children) + " (want 20)";
  return std::fabs(mean_edges - d) <= 4.0 * se_edges &&
         std::fabs(mean_children - (r - 1.0) * d) <= 4.0 * se_children;
}

// --- 10: stability estimate beats the p^{4 Gamma D / c} lower bound ---
bool stability_lower_bound(std::string& detail) {
  const int r = 2, n = 30;
  const double d = 4.0;
  const double p = partite_p(n, r, d);
  TargetSizes ts = target_sizes(GammaVector::uniform(r), r, n, d, 0.2, TargetSide::achievability);
  VertexPolynomialSet poly = degree1_polynomial(r, n, ts.rounded, 1, Seed{112});
  const std::uint64_t m = static_cast<std::uint64_t>(n) * n;
  // pick c so the bad threshold c * E||f||^2 sits strictly inside (0, 1)
  double norm_probe = estimate_mean_square_norm(poly, m, p, 500, Seed{113});
  double c = 0.5 / norm_probe;
  StabilityReport rep = estimate_stability(poly, m, p, 1, c, 500, Seed{114});
  bool threshold_ok = rep.threshold > 0.0 && rep.threshold < 1.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "estimate+4se=%.4g bound=%.3g threshold=%.3f",
                rep.probability.value + 4 * rep.probability.se, rep.bound, rep.threshold);
  detail = buf;
  return threshold_ok && rep.degree == 1 && rep.pass;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion(1, "independence-soundness", independence_soundness);
  criterion(2, "oracle-equivalence", oracle_equivalence);
  criterion(3, "compiler-identity", compiler_identity);
  criterion(4, "degree1-analytic-mean", degree1_analytic_mean);
  criterion(5, "threshold-cross-checks", threshold_cross_checks);
  criterion(6, "greedy-density-band", greedy_density_band);
  criterion(7, "single-coordinate-stability", single_coordinate_stability);
  criterion(8, "path-marginals", path_marginals);
  criterion(9, "gw-moments", gw_moments);
  criterion(10, "stability-lower-bound", stability_lower_bound);
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", failures);
  }
  return failures;
}
