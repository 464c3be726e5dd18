#include "hyperis/ogp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperis/thresholds.hpp"

namespace hyperis {

PolynomialPathTracker::PolynomialPathTracker(const VertexPolynomialSet& f,
                                             const std::vector<std::uint8_t>& state)
    : f_(f) {
  const long n = f.vertex_count();
  values_.assign(static_cast<size_t>(n), 0.0);
  missing_.resize(static_cast<size_t>(n));
  for (long v = 0; v < n; ++v) {
    const auto& terms = f.polys[static_cast<size_t>(v)].terms;
    missing_[static_cast<size_t>(v)].assign(terms.size(), 0);
    for (size_t ti = 0; ti < terms.size(); ++ti) {
      int absent = 0;
      for (std::uint64_t c : terms[ti].coords) {
        if (!state[c]) ++absent;
        index_[c].emplace_back(static_cast<std::int32_t>(v), static_cast<std::int32_t>(ti));
      }
      missing_[static_cast<size_t>(v)][ti] = absent;
      if (absent == 0) values_[static_cast<size_t>(v)] += terms[ti].coeff;
    }
  }
}

double PolynomialPathTracker::apply(const InterpolationPath::StepDelta& delta) {
  last_changes_.clear();
  if (!delta.changed()) return 0.0;
  auto it = index_.find(delta.coord);
  if (it == index_.end()) return 0.0;
  double norm = 0.0;
  for (auto [v, ti] : it->second) {
    const double before = values_[static_cast<size_t>(v)];
    int& absent = missing_[static_cast<size_t>(v)][static_cast<size_t>(ti)];
    const double coeff = f_.polys[static_cast<size_t>(v)].terms[static_cast<size_t>(ti)].coeff;
    if (delta.new_value) {
      if (--absent == 0) values_[static_cast<size_t>(v)] += coeff;
    } else {
      if (absent++ == 0) values_[static_cast<size_t>(v)] -= coeff;
    }
    if (values_[static_cast<size_t>(v)] != before) {
      bool seen = false;
      for (auto& [u, old] : last_changes_) {
        if (u == v) seen = true;
      }
      if (!seen) last_changes_.emplace_back(v, before);
    }
  }
  for (auto& [v, old] : last_changes_) {
    const double diff = values_[static_cast<size_t>(v)] - old;
    norm += diff * diff;
  }
  return norm;
}

double estimate_mean_square_norm(const VertexPolynomialSet& f, std::uint64_t m, double p,
                                 long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("estimate_mean_square_norm: trials must be >= 1");
  std::vector<double> norms;
  norms.reserve(static_cast<size_t>(trials));
  for (long t = 0; t < trials; ++t) {
    InterpolationPath path(m, p, 0, seed.stream(static_cast<std::uint64_t>(t)));
    const auto values = f.evaluate(path.state());
    double norm = 0.0;
    for (double x : values) norm += x * x;
    norms.push_back(norm);
  }
  return mean(norms);
}

CBadReport detect_c_bad(const VertexPolynomialSet& f, InterpolationPath& path, double c,
                        double norm_ref) {
  if (norm_ref <= 0.0) {
    bool zero = true;
    for (const auto& p : f.polys) {
      if (!p.terms.empty()) zero = false;
    }
    if (!zero) throw std::invalid_argument("detect_c_bad: norm_ref must be positive");
  }
  CBadReport report;
  report.threshold = c * norm_ref;
  PolynomialPathTracker tracker(f, path.state());
  while (path.step() < path.total_steps()) {
    auto delta = path.advance();
    double change = tracker.apply(delta);
    report.max_step_change = std::max(report.max_step_change, change);
    ++report.steps;
    if (change > 0.0 && change >= report.threshold) report.bad_steps.push_back(path.step());
  }
  return report;
}

StabilityReport estimate_stability(const VertexPolynomialSet& f, std::uint64_t m, double p,
                                   int gamma_sweeps, double c, long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("estimate_stability: trials must be >= 1");
  if (gamma_sweeps < 1) throw std::invalid_argument("estimate_stability: Gamma must be >= 1");
  StabilityReport rep;
  rep.c = c;
  rep.gamma_sweeps = gamma_sweeps;
  rep.degree = f.degree();
  rep.norm_ref = estimate_mean_square_norm(f, m, p, std::max<long>(200, trials), seed.stream("norm"));
  rep.threshold = c * rep.norm_ref;
  long stable = 0;
  const std::uint64_t total = static_cast<std::uint64_t>(gamma_sweeps) * m;
  for (long t = 0; t < trials; ++t) {
    InterpolationPath path(m, p, total, seed.stream("path").stream(static_cast<std::uint64_t>(t)));
    PolynomialPathTracker tracker(f, path.state());
    bool bad = false;
    while (path.step() < path.total_steps()) {
      double change = tracker.apply(path.advance());
      if (change > 0.0 && change >= rep.threshold) {
        bad = true;
        break;
      }
    }
    if (!bad) ++stable;
  }
  rep.probability = proportion_estimate(stable, trials);
  rep.bound = std::pow(p, 4.0 * static_cast<double>(gamma_sweeps) * rep.degree / c);
  rep.pass = rep.probability.value + 4.0 * rep.probability.se >= rep.bound;
  return rep;
}

double PathExperiment::derived_p() const {
  if (p > 0.0) return p;
  if (model == Model::uniform) {
    auto denom = binom_checked(static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(r - 1));
    if (!denom) throw std::invalid_argument("PathExperiment: C(n-1,r-1) too large");
    return d / static_cast<double>(*denom);
  }
  return d / std::pow(static_cast<double>(n), static_cast<double>(r - 1));
}

std::uint64_t PathExperiment::coordinate_space() const {
  if (model == Model::uniform) {
    auto m = binom_checked(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
    if (!m) throw std::invalid_argument("PathExperiment: C(n,r) too large");
    return *m;
  }
  std::uint64_t m = 1;
  for (int j = 0; j < r; ++j) m *= static_cast<std::uint64_t>(n);
  return m;
}

namespace {

// Window and size thresholds for the forbidden-structure conditions.
struct ProbeThresholds {
  double window_lower = 0.0;
  double window_upper = 0.0;
  std::vector<double> per_part_size;  // partite: required |S ∩ V_i|; uniform: single entry
};

ProbeThresholds probe_thresholds(const PathExperiment& exp) {
  ProbeThresholds th;
  if (exp.model == PathExperiment::Model::uniform) {
    const double phi = uniform_thresholds(exp.r, exp.d).lowdeg;
    th.window_lower = exp.epsilon / 4.0 * phi * static_cast<double>(exp.n);
    th.window_upper = exp.epsilon / 2.0 * phi * static_cast<double>(exp.n);
    th.per_part_size.push_back((1.0 + exp.epsilon) * phi * static_cast<double>(exp.n));
  } else {
    GammaVector gamma = exp.gamma.empty() ? GammaVector::uniform(exp.r) : GammaVector(exp.gamma);
    const BalancedParams bp = balanced_params(gamma, exp.r, exp.d);
    double min_gamma = 1.0;
    for (int i = 0; i < exp.r; ++i) min_gamma = std::min(min_gamma, gamma[i]);
    const double eps_tilde = exp.epsilon * min_gamma;
    th.window_lower = eps_tilde / 4.0 * bp.lowdeg_density * static_cast<double>(exp.n);
    th.window_upper = eps_tilde / 2.0 * bp.lowdeg_density * static_cast<double>(exp.n);
    for (int i = 0; i < exp.r; ++i) {
      th.per_part_size.push_back((1.0 + exp.epsilon) * gamma[i] * exp.r * bp.lowdeg_density *
                                 static_cast<double>(exp.n));
    }
  }
  return th;
}

Hypergraph materialize_uniform(const PathExperiment& exp, const std::vector<std::uint8_t>& state) {
  std::vector<std::int32_t> flat;
  std::int32_t combo[32];
  for (std::uint64_t rank = 0; rank < state.size(); ++rank) {
    if (!state[rank]) continue;
    unrank_combination(exp.n, exp.r, rank, combo);
    flat.insert(flat.end(), combo, combo + exp.r);
  }
  return Hypergraph::from_flat(exp.n, exp.r, std::move(flat));
}

PartiteHypergraph materialize_partite(const PathExperiment& exp,
                                      const std::vector<std::uint8_t>& state) {
  std::vector<std::int32_t> flat;
  for (std::uint64_t rank = 0; rank < state.size(); ++rank) {
    if (!state[rank]) continue;
    std::uint64_t x = rank;
    std::int32_t tuple[32];
    for (int j = exp.r - 1; j >= 0; --j) {
      tuple[j] = static_cast<std::int32_t>(x % static_cast<std::uint64_t>(exp.n));
      x /= static_cast<std::uint64_t>(exp.n);
    }
    flat.insert(flat.end(), tuple, tuple + exp.r);
  }
  return PartiteHypergraph::from_flat(exp.r, exp.n, std::move(flat));
}

bool snapshot_conditions(const PathExperiment& exp, const ProbeThresholds& th,
                         const VertexSet& set, OverlapRecord::Snapshot& snap,
                         const std::vector<std::uint8_t>& state) {
  if (exp.model == PathExperiment::Model::uniform) {
    snap.size_ok = static_cast<double>(set.size()) >= th.per_part_size[0];
    snap.independent_ok = is_independent(materialize_uniform(exp, state), set);
  } else {
    std::vector<long> counts(static_cast<size_t>(exp.r), 0);
    for (std::int32_t v : set) ++counts[static_cast<size_t>(v / exp.n)];
    snap.size_ok = true;
    for (int i = 0; i < exp.r; ++i) {
      if (static_cast<double>(counts[static_cast<size_t>(i)]) < th.per_part_size[static_cast<size_t>(i)]) {
        snap.size_ok = false;
      }
    }
    snap.independent_ok = is_independent(materialize_partite(exp, state), set);
  }
  return snap.size_ok && snap.independent_ok;
}

OverlapRecord overlap_with_polynomial(const PathExperiment& exp, const PathRowSink& sink) {
  const std::uint64_t m = exp.coordinate_space();
  const double p = exp.derived_p();
  const std::uint64_t total = static_cast<std::uint64_t>(exp.Gamma) * m;
  const ProbeThresholds th = probe_thresholds(exp);
  const long n_total = exp.model == PathExperiment::Model::uniform
                           ? exp.n
                           : static_cast<long>(exp.r) * exp.n;
  const std::uint64_t audit = exp.check_every > 0 ? exp.check_every : std::max<std::uint64_t>(1, total / 100);

  InterpolationPath path(m, p, total, exp.seed);
  PolynomialPathTracker tracker(*exp.poly, path.state());

  auto full_round = [&](const std::vector<std::uint8_t>& state) -> RoundingOutcome {
    const auto values = exp.poly->evaluate(state);
    if (exp.model == PathExperiment::Model::uniform) {
      return round_to_independent_set(values, materialize_uniform(exp, state), exp.eta);
    }
    return round_to_independent_set(values, materialize_partite(exp, state), exp.eta);
  };

  // membership = value >= 1; audited against the full rounding periodically
  std::vector<char> member(static_cast<size_t>(n_total), 0);
  std::vector<char> covered(static_cast<size_t>(n_total), 0);
  long set_size = 0;
  {
    RoundingOutcome base = full_round(path.state());
    if (!base.accepted || base.error_count != 0) {
      throw std::runtime_error(
          "build_overlap_sequence: polynomial flavor requires a clean rounding (no pruned or "
          "ambiguous vertices); use the callback flavor instead");
    }
    for (std::int32_t v : base.I_tilde) member[static_cast<size_t>(v)] = 1;
    set_size = base.I_tilde.size();
  }

  OverlapRecord rec;
  rec.window_lower = th.window_lower;
  rec.window_upper = th.window_upper;

  long new_mass = 0;  // |V_t \ covered|
  auto accept_snapshot = [&](int k, std::uint64_t t) {
    OverlapRecord::Snapshot snap;
    snap.k = k;
    snap.t = t;
    snap.set_size = set_size;
    snap.new_mass = new_mass;
    snap.window_ok = k == 1 || (static_cast<double>(new_mass) >= th.window_lower &&
                                static_cast<double>(new_mass) <= th.window_upper);
    std::vector<std::int32_t> members;
    for (long v = 0; v < n_total; ++v) {
      if (member[static_cast<size_t>(v)]) members.push_back(static_cast<std::int32_t>(v));
    }
    VertexSet set(std::move(members));
    snapshot_conditions(exp, th, set, snap, path.state());
    rec.sets.push_back(snap);
    for (std::int32_t v : set) covered[static_cast<size_t>(v)] = 1;
    new_mass = 0;
  };

  accept_snapshot(1, 0);
  int k = 2;

  const double bad_threshold = exp.c > 0.0 && exp.norm_ref > 0.0 ? exp.c * exp.norm_ref : -1.0;
  while (path.step() < total && k <= exp.K) {
    auto delta = path.advance();
    double change = tracker.apply(delta);
    long hamming = 0;
    for (auto [v, old] : tracker.last_changes()) {
      bool was = old >= 1.0;
      bool now = tracker.values()[static_cast<size_t>(v)] >= 1.0;
      if (was == now) continue;
      ++hamming;
      if (now) {
        member[static_cast<size_t>(v)] = 1;
        ++set_size;
        if (!covered[static_cast<size_t>(v)]) ++new_mass;
      } else {
        member[static_cast<size_t>(v)] = 0;
        --set_size;
        if (!covered[static_cast<size_t>(v)]) --new_mass;
      }
    }
    rec.max_step_hamming = std::max(rec.max_step_hamming, hamming);
    ++rec.steps;
    bool bad = bad_threshold >= 0.0 && change > 0.0 && change >= bad_threshold;
    if (bad) ++rec.bad_steps;
    if (sink) sink(path.step(), hamming, set_size, new_mass, k - 1, bad);
    if (path.step() % audit == 0) {
      RoundingOutcome check = full_round(path.state());
      if (!check.accepted || check.error_count != 0 || check.I_tilde.size() != set_size) {
        throw std::runtime_error("build_overlap_sequence: incremental state diverged from rounding");
      }
    }
    if (static_cast<double>(new_mass) >= th.window_lower) {
      accept_snapshot(k, path.step());
      ++k;
    }
  }
  rec.reached_k = static_cast<int>(rec.sets.size());
  rec.process_failed = rec.reached_k < exp.K;
  return rec;
}

OverlapRecord overlap_with_callback(const PathExperiment& exp, const PathRowSink& sink) {
  const std::uint64_t m = exp.coordinate_space();
  const double p = exp.derived_p();
  const std::uint64_t total = static_cast<std::uint64_t>(exp.Gamma) * m;
  const ProbeThresholds th = probe_thresholds(exp);
  const long n_total = exp.model == PathExperiment::Model::uniform
                           ? exp.n
                           : static_cast<long>(exp.r) * exp.n;
  std::uint64_t stride = exp.stride;
  if (stride == 0) stride = n_total <= 500 ? 1 : std::max<std::uint64_t>(1, m / 100);

  InterpolationPath path(m, p, total, exp.seed);
  std::vector<char> covered(static_cast<size_t>(n_total), 0);

  OverlapRecord rec;
  rec.window_lower = th.window_lower;
  rec.window_upper = th.window_upper;

  VertexSet current = exp.algorithm(path.state());
  VertexSet previous = current;
  auto new_mass_of = [&](const VertexSet& s) {
    long nm = 0;
    for (std::int32_t v : s) {
      if (!covered[static_cast<size_t>(v)]) ++nm;
    }
    return nm;
  };
  auto accept_snapshot = [&](int k, std::uint64_t t, const VertexSet& s) {
    OverlapRecord::Snapshot snap;
    snap.k = k;
    snap.t = t;
    snap.set_size = s.size();
    snap.new_mass = new_mass_of(s);
    snap.window_ok = k == 1 || (static_cast<double>(snap.new_mass) >= th.window_lower &&
                                static_cast<double>(snap.new_mass) <= th.window_upper);
    snapshot_conditions(exp, th, s, snap, path.state());
    rec.sets.push_back(snap);
    for (std::int32_t v : s) covered[static_cast<size_t>(v)] = 1;
  };

  accept_snapshot(1, 0, current);
  int k = 2;
  while (path.step() < total && k <= exp.K) {
    path.advance();
    ++rec.steps;
    if (path.step() % stride != 0 && path.step() != total) continue;
    current = exp.algorithm(path.state());
    long hamming = symmetric_difference_size(current, previous);
    rec.max_step_hamming = std::max(rec.max_step_hamming, hamming);
    long nm = new_mass_of(current);
    if (sink) sink(path.step(), hamming, current.size(), nm, k - 1, false);
    previous = current;
    if (static_cast<double>(nm) >= th.window_lower) {
      accept_snapshot(k, path.step(), current);
      ++k;
    }
  }
  rec.reached_k = static_cast<int>(rec.sets.size());
  rec.process_failed = rec.reached_k < exp.K;
  return rec;
}

}  // namespace

OverlapRecord build_overlap_sequence(const PathExperiment& exp, const PathRowSink& sink) {
  if (exp.K < 1) throw std::invalid_argument("build_overlap_sequence: K must be >= 1");
  if (exp.poly != nullptr) return overlap_with_polynomial(exp, sink);
  if (exp.algorithm) return overlap_with_callback(exp, sink);
  throw std::invalid_argument("build_overlap_sequence: no algorithm supplied");
}

FixedSetOverlap measure_fixed_set_overlap_uniform(
    const std::function<VertexSet(const Hypergraph&, Seed)>& alg, const VertexSet& fixed, int n,
    int r, double d, double epsilon, long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("measure_fixed_set_overlap: trials must be >= 1");
  auto denom = binom_checked(static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(r - 1));
  if (!denom) throw std::invalid_argument("measure_fixed_set_overlap: C(n-1,r-1) too large");
  const double p = d / static_cast<double>(*denom);
  const double unit = std::pow(std::log(d) / d, 1.0 / static_cast<double>(r - 1)) * n;
  FixedSetOverlap out;
  out.trials = trials;
  out.max_overlap.assign(1, 0);
  out.mean_overlap.assign(1, 0.0);
  out.threshold.assign(1, epsilon * unit);
  out.fixed_scale.assign(1, static_cast<double>(fixed.size()) / unit);
  for (long t = 0; t < trials; ++t) {
    Seed trial = seed.stream(static_cast<std::uint64_t>(t));
    Hypergraph inst = sample_uniform_hypergraph(n, r, p, trial.stream("instance"));
    VertexSet got = alg(inst, trial.stream("alg"));
    long overlap = 0;
    for (std::int32_t v : got) {
      if (fixed.contains(v)) ++overlap;
    }
    out.max_overlap[0] = std::max(out.max_overlap[0], overlap);
    out.mean_overlap[0] += static_cast<double>(overlap);
    if (static_cast<double>(overlap) < out.threshold[0]) ++out.trials_below_threshold;
  }
  out.mean_overlap[0] /= static_cast<double>(trials);
  return out;
}

FixedSetOverlap measure_fixed_set_overlap_partite(
    const std::function<VertexSet(const PartiteHypergraph&, Seed)>& alg, const VertexSet& fixed,
    int r, int n, double d, const GammaVector& gamma, double epsilon, long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("measure_fixed_set_overlap: trials must be >= 1");
  const double p = d / std::pow(static_cast<double>(n), static_cast<double>(r - 1));
  const BalancedParams bp = balanced_params(gamma, r, d);
  FixedSetOverlap out;
  out.trials = trials;
  out.max_overlap.assign(static_cast<size_t>(r), 0);
  out.mean_overlap.assign(static_cast<size_t>(r), 0.0);
  out.threshold.resize(static_cast<size_t>(r));
  out.fixed_scale.resize(static_cast<size_t>(r));
  std::vector<long> fixed_counts(static_cast<size_t>(r), 0);
  for (std::int32_t v : fixed) ++fixed_counts[static_cast<size_t>(v / n)];
  for (int i = 0; i < r; ++i) {
    const double unit = gamma[i] * r * bp.lowdeg_density * static_cast<double>(n);
    out.threshold[static_cast<size_t>(i)] = epsilon * unit;
    out.fixed_scale[static_cast<size_t>(i)] = static_cast<double>(fixed_counts[static_cast<size_t>(i)]) / unit;
  }
  std::vector<long> overlap(static_cast<size_t>(r), 0);
  for (long t = 0; t < trials; ++t) {
    Seed trial = seed.stream(static_cast<std::uint64_t>(t));
    PartiteHypergraph inst = sample_partite_hypergraph(r, n, p, trial.stream("instance"));
    VertexSet got = alg(inst, trial.stream("alg"));
    std::fill(overlap.begin(), overlap.end(), 0);
    for (std::int32_t v : got) {
      if (fixed.contains(v)) ++overlap[static_cast<size_t>(v / n)];
    }
    bool below = true;
    for (int i = 0; i < r; ++i) {
      out.max_overlap[static_cast<size_t>(i)] = std::max(out.max_overlap[static_cast<size_t>(i)], overlap[static_cast<size_t>(i)]);
      out.mean_overlap[static_cast<size_t>(i)] += static_cast<double>(overlap[static_cast<size_t>(i)]);
      if (static_cast<double>(overlap[static_cast<size_t>(i)]) >= out.threshold[static_cast<size_t>(i)]) below = false;
    }
    if (below) ++out.trials_below_threshold;
  }
  for (int i = 0; i < r; ++i) out.mean_overlap[static_cast<size_t>(i)] /= static_cast<double>(trials);
  return out;
}

}  // namespace hyperis
