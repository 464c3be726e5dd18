#include "hyperis/lowdeg.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "hyperis/models.hpp"

namespace hyperis {

int VertexPolynomialSet::degree() const {
  size_t deg = 0;
  for (const auto& p : polys) {
    for (const auto& t : p.terms) deg = std::max(deg, t.coords.size());
  }
  return static_cast<int>(deg);
}

double VertexPolynomialSet::eval_vertex(long v,
                                        const std::function<bool(std::uint64_t)>& coord_value) const {
  double sum = 0.0;
  for (const auto& t : polys[static_cast<size_t>(v)].terms) {
    bool alive = true;
    for (std::uint64_t c : t.coords) {
      if (!coord_value(c)) {
        alive = false;
        break;
      }
    }
    if (alive) sum += t.coeff;
  }
  return sum;
}

std::vector<double> VertexPolynomialSet::evaluate(const std::vector<std::uint8_t>& state) const {
  std::vector<double> out(polys.size(), 0.0);
  for (size_t v = 0; v < polys.size(); ++v) {
    out[v] = eval_vertex(static_cast<long>(v), [&](std::uint64_t c) { return state[c] != 0; });
  }
  return out;
}

std::vector<double> VertexPolynomialSet::evaluate(const PartiteHypergraph& instance) const {
  std::vector<std::uint8_t> state(instance.coordinate_space(), 0);
  const long m = instance.edge_count();
  for (long i = 0; i < m; ++i) state[instance.coordinate_rank(instance.edge(i))] = 1;
  return evaluate(state);
}

namespace {

template <typename EdgeContained>
RoundingOutcome round_impl(std::span<const VertexValue> values, long n_total, long edge_total,
                           const EdgeContained& edge_in_set, double eta) {
  RoundingOutcome out;
  std::vector<char> in_i(static_cast<size_t>(n_total), 0);
  std::vector<std::int32_t> i_members, j_members;
  for (long v = 0; v < n_total; ++v) {
    const auto& val = values[static_cast<size_t>(v)];
    if (val.overflow) {
      ++out.overflow_count;
      continue;
    }
    if (val.value >= 1.0) {
      in_i[static_cast<size_t>(v)] = 1;
      i_members.push_back(static_cast<std::int32_t>(v));
    } else if (val.value > 0.5 && val.value < 1.0) {
      j_members.push_back(static_cast<std::int32_t>(v));
    }
  }
  std::vector<char> violator(static_cast<size_t>(n_total), 0);
  for (long e = 0; e < edge_total; ++e) edge_in_set(e, in_i, violator);
  std::vector<std::int32_t> tilde;
  long pruned = 0;
  for (std::int32_t v : i_members) {
    if (violator[static_cast<size_t>(v)]) {
      ++pruned;
    } else {
      tilde.push_back(v);
    }
  }
  out.I = VertexSet(std::move(i_members));
  out.I_tilde = VertexSet(std::move(tilde));
  out.J = VertexSet(std::move(j_members));
  out.error_count = pruned + out.J.size() + out.overflow_count;
  out.accepted = static_cast<double>(out.error_count) <= eta * static_cast<double>(n_total) + 1e-9;
  return out;
}

std::vector<VertexValue> wrap_values(std::span<const double> values) {
  std::vector<VertexValue> out(values.size());
  for (size_t i = 0; i < values.size(); ++i) out[i].value = values[i];
  return out;
}

}  // namespace

RoundingOutcome round_to_independent_set(std::span<const VertexValue> values, const Hypergraph& h,
                                         double eta) {
  if (eta < 0.0) throw std::invalid_argument("round_to_independent_set: eta must be >= 0");
  if (static_cast<long>(values.size()) != h.vertex_count()) {
    throw std::invalid_argument("round_to_independent_set: value count mismatch");
  }
  auto edge_in_set = [&](long e, const std::vector<char>& in_i, std::vector<char>& violator) {
    auto ed = h.edge(e);
    for (std::int32_t v : ed) {
      if (!in_i[static_cast<size_t>(v)]) return;
    }
    for (std::int32_t v : ed) violator[static_cast<size_t>(v)] = 1;
  };
  return round_impl(values, h.vertex_count(), h.edge_count(), edge_in_set, eta);
}

RoundingOutcome round_to_independent_set(std::span<const VertexValue> values,
                                         const PartiteHypergraph& h, double eta) {
  if (eta < 0.0) throw std::invalid_argument("round_to_independent_set: eta must be >= 0");
  if (static_cast<long>(values.size()) != h.vertex_count()) {
    throw std::invalid_argument("round_to_independent_set: value count mismatch");
  }
  auto edge_in_set = [&](long e, const std::vector<char>& in_i, std::vector<char>& violator) {
    auto ed = h.edge(e);
    for (int j = 0; j < h.parts(); ++j) {
      if (!in_i[static_cast<size_t>(h.global_id(j, ed[static_cast<size_t>(j)]))]) return;
    }
    for (int j = 0; j < h.parts(); ++j) {
      violator[static_cast<size_t>(h.global_id(j, ed[static_cast<size_t>(j)]))] = 1;
    }
  };
  return round_impl(values, h.vertex_count(), h.edge_count(), edge_in_set, eta);
}

RoundingOutcome round_to_independent_set(std::span<const double> values, const Hypergraph& h,
                                         double eta) {
  auto wrapped = wrap_values(values);
  return round_to_independent_set(std::span<const VertexValue>(wrapped), h, eta);
}

RoundingOutcome round_to_independent_set(std::span<const double> values,
                                         const PartiteHypergraph& h, double eta) {
  auto wrapped = wrap_values(values);
  return round_to_independent_set(std::span<const VertexValue>(wrapped), h, eta);
}

namespace {

// BFS over the edges selected by `mask`, rooted at local vertex 0, depth
// capped at `radius`.  Returns true iff every selected edge was expanded,
// i.e. the sub-hypergraph is a legal radius-s neighborhood of the root.
// Visit order and depths are recorded for building the sub-view.
bool mask_reachable(const RootedView& view, std::uint32_t mask, int radius,
                    std::vector<int>& depth, std::vector<std::int32_t>& visit_order) {
  const auto& g = view.graph;
  depth.assign(static_cast<size_t>(g.vertex_count()), -1);
  visit_order.clear();
  depth[0] = 0;
  visit_order.push_back(0);
  std::uint32_t expanded = 0;
  for (size_t qi = 0; qi < visit_order.size(); ++qi) {
    std::int32_t u = visit_order[qi];
    int du = depth[static_cast<size_t>(u)];
    if (du >= radius) continue;
    for (std::int32_t eid : g.incident(u)) {
      std::uint32_t bit = std::uint32_t{1} << eid;
      if (!(mask & bit) || (expanded & bit)) continue;
      expanded |= bit;
      for (std::int32_t w : g.edge(eid)) {
        if (depth[static_cast<size_t>(w)] < 0) {
          depth[static_cast<size_t>(w)] = du + 1;
          visit_order.push_back(w);
        }
      }
    }
  }
  return expanded == mask;
}

RootedView build_subview(const RootedView& view, std::uint32_t mask, const std::vector<int>& depth,
                         const std::vector<std::int32_t>& visit_order) {
  RootedView sub;
  std::vector<std::int32_t> local(static_cast<size_t>(view.graph.vertex_count()), -1);
  for (std::int32_t u : visit_order) {
    local[static_cast<size_t>(u)] = static_cast<std::int32_t>(sub.to_host.size());
    sub.to_host.push_back(u);
    sub.depth.push_back(depth[static_cast<size_t>(u)]);
  }
  std::vector<std::int32_t> flat;
  const int r = view.graph.uniformity();
  for (long e = 0; e < view.graph.edge_count(); ++e) {
    if (!(mask & (std::uint32_t{1} << e))) continue;
    for (std::int32_t w : view.graph.edge(e)) flat.push_back(local[static_cast<size_t>(w)]);
  }
  sub.graph = Hypergraph::from_flat(static_cast<int>(sub.to_host.size()), r, std::move(flat));
  return sub;
}

}  // namespace

CompiledLocalPolynomial::CompiledLocalPolynomial(LocalFunction g, int q, int q_max)
    : g_(std::move(g)), q_(q), q_max_(q_max) {
  if (q_ < 0) throw std::invalid_argument("CompiledLocalPolynomial: q must be >= 0");
  if (q_max_ < q_ || q_max_ > 20) {
    throw std::invalid_argument("CompiledLocalPolynomial: edge guard must lie in [q, 20]");
  }
}

VertexValue CompiledLocalPolynomial::evaluate(const Hypergraph& instance, int v,
                                              const VertexLabels& labels) const {
  RootedView view = neighborhood(instance, v, g_.radius);
  const long e_count = view.edge_count();
  if (e_count > q_max_) return VertexValue{0.0, true};

  std::vector<double> local_labels(view.to_host.size());
  for (size_t i = 0; i < view.to_host.size(); ++i) {
    local_labels[i] = labels.values[static_cast<size_t>(view.to_host[i])];
  }

  const std::uint32_t mask_count = std::uint32_t{1} << e_count;
  std::vector<double> alpha(mask_count, 0.0);
  std::vector<char> valid(mask_count, 0);
  std::vector<int> depth;
  std::vector<std::int32_t> visit_order;
  std::vector<double> sub_labels;
  double f = 0.0;
  for (std::uint32_t mask = 0; mask < mask_count; ++mask) {
    if (std::popcount(mask) > q_) continue;
    if (!mask_reachable(view, mask, g_.radius, depth, visit_order)) continue;
    RootedView sub = build_subview(view, mask, depth, visit_order);
    sub_labels.resize(sub.to_host.size());
    for (size_t i = 0; i < sub.to_host.size(); ++i) {
      sub_labels[i] = local_labels[static_cast<size_t>(sub.to_host[i])];
    }
    double gval = static_cast<double>(g_.eval(sub, sub_labels));
    double lower = 0.0;
    if (mask != 0) {
      for (std::uint32_t s = (mask - 1) & mask;; s = (s - 1) & mask) {
        if (valid[s]) lower += alpha[s];
        if (s == 0) break;
      }
    }
    alpha[mask] = gval - lower;
    valid[mask] = 1;
    f += alpha[mask];
  }
  return VertexValue{f, false};
}

std::vector<VertexValue> CompiledLocalPolynomial::evaluate_all(const Hypergraph& instance,
                                                               const VertexLabels& labels) const {
  std::vector<VertexValue> out(static_cast<size_t>(instance.vertex_count()));
  for (int v = 0; v < instance.vertex_count(); ++v) out[static_cast<size_t>(v)] = evaluate(instance, v, labels);
  return out;
}

double CompiledLocalPolynomial::alpha(const RootedView& view, std::span<const double> labels) const {
  const long e_count = view.edge_count();
  if (e_count > q_) throw std::invalid_argument("alpha: view exceeds the monomial cap");
  const std::uint32_t full = (std::uint32_t{1} << e_count) - 1;
  std::vector<int> depth;
  std::vector<std::int32_t> visit_order;
  if (!mask_reachable(view, full, g_.radius, depth, visit_order)) {
    throw std::invalid_argument("alpha: view is not a radius-s neighborhood of its root");
  }
  std::vector<double> coeff(full + 1, 0.0);
  std::vector<char> valid(full + 1, 0);
  std::vector<double> sub_labels;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (!mask_reachable(view, mask, g_.radius, depth, visit_order)) continue;
    RootedView sub = build_subview(view, mask, depth, visit_order);
    sub_labels.resize(sub.to_host.size());
    for (size_t i = 0; i < sub.to_host.size(); ++i) {
      sub_labels[i] = labels[static_cast<size_t>(sub.to_host[i])];
    }
    double gval = static_cast<double>(g_.eval(sub, sub_labels));
    double lower = 0.0;
    if (mask != 0) {
      for (std::uint32_t s = (mask - 1) & mask;; s = (s - 1) & mask) {
        if (valid[s]) lower += coeff[s];
        if (s == 0) break;
      }
    }
    coeff[mask] = gval - lower;
    valid[mask] = 1;
  }
  return coeff[full];
}

VertexPolynomialSet degree1_polynomial(int r, int n, const std::vector<long>& k, int i_star,
                                       Seed omega) {
  if (static_cast<int>(k.size()) != r) throw std::invalid_argument("degree1_polynomial: k size mismatch");
  if (i_star < 0 || i_star >= r) throw std::invalid_argument("degree1_polynomial: bad i_star");
  for (long ki : k) {
    if (ki < 0 || ki > n) throw std::invalid_argument("degree1_polynomial: target exceeds part size");
  }
  VertexPolynomialSet f;
  f.omega = omega;
  std::uint64_t m = 1;
  for (int j = 0; j < r; ++j) m *= static_cast<std::uint64_t>(n);
  f.coordinate_space = m;
  f.polys.resize(static_cast<size_t>(r) * static_cast<size_t>(n));
  for (int part = 0; part < r; ++part) {
    if (part == i_star) continue;
    for (long idx = 0; idx < k[static_cast<size_t>(part)]; ++idx) {
      f.polys[static_cast<size_t>(part) * n + static_cast<size_t>(idx)].terms.push_back(
          Monomial{1.0, {}});
    }
  }
  // part i_star: 1 - sum of indicators of edges into the fixed prefix blocks
  std::vector<long> tuple(static_cast<size_t>(r), 0);
  for (long v = 0; v < n; ++v) {
    VertexPolynomial& poly = f.polys[static_cast<size_t>(i_star) * n + static_cast<size_t>(v)];
    poly.terms.push_back(Monomial{1.0, {}});
    // iterate the product of prefixes over parts != i_star
    std::fill(tuple.begin(), tuple.end(), 0);
    tuple[static_cast<size_t>(i_star)] = v;
    bool empty = false;
    for (int j = 0; j < r; ++j) {
      if (j != i_star && k[static_cast<size_t>(j)] == 0) empty = true;
    }
    if (empty) continue;
    for (;;) {
      std::uint64_t rank = 0;
      for (int j = 0; j < r; ++j) {
        rank = rank * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(tuple[static_cast<size_t>(j)]);
      }
      poly.terms.push_back(Monomial{-1.0, {rank}});
      int j = r - 1;
      for (; j >= 0; --j) {
        if (j == i_star) continue;
        if (++tuple[static_cast<size_t>(j)] < k[static_cast<size_t>(j)]) break;
        tuple[static_cast<size_t>(j)] = 0;
      }
      if (j < 0) break;
    }
  }
  return f;
}

std::pair<VertexPolynomialSet, RoundingOutcome> degree1_balanced(const PartiteHypergraph& instance,
                                                                 const std::vector<long>& k,
                                                                 Seed seed, int i_star) {
  const int r = instance.parts();
  const int n = instance.part_size();
  if (static_cast<int>(k.size()) != r) throw std::invalid_argument("degree1_balanced: k size mismatch");
  for (long ki : k) {
    if (ki < 0 || ki > n) throw std::invalid_argument("degree1_balanced: target exceeds part size");
  }
  if (i_star < 0) {
    i_star = 0;
    for (int j = 1; j < r; ++j) {
      if (k[static_cast<size_t>(j)] >= k[static_cast<size_t>(i_star)]) i_star = j;
    }
  }
  VertexPolynomialSet f = degree1_polynomial(r, n, k, i_star, seed);

  // direct evaluation: scan instance edges once
  std::vector<double> values(static_cast<size_t>(r) * static_cast<size_t>(n), 0.0);
  for (int part = 0; part < r; ++part) {
    if (part == i_star) continue;
    for (long idx = 0; idx < k[static_cast<size_t>(part)]; ++idx) {
      values[static_cast<size_t>(instance.global_id(part, static_cast<int>(idx)))] = 1.0;
    }
  }
  for (long v = 0; v < n; ++v) values[static_cast<size_t>(instance.global_id(i_star, static_cast<int>(v)))] = 1.0;
  const long m = instance.edge_count();
  for (long e = 0; e < m; ++e) {
    auto ed = instance.edge(e);
    bool critical = true;
    for (int j = 0; j < r && critical; ++j) {
      if (j != i_star && ed[static_cast<size_t>(j)] >= k[static_cast<size_t>(j)]) critical = false;
    }
    if (critical) {
      values[static_cast<size_t>(instance.global_id(i_star, ed[static_cast<size_t>(i_star)]))] -= 1.0;
    }
  }
  RoundingOutcome outcome = round_to_independent_set(values, instance, 0.0);
  return {std::move(f), std::move(outcome)};
}

VertexSet largest_balanced_subset(const PartiteHypergraph& h, const VertexSet& s,
                                  const GammaVector& gamma) {
  if (gamma.size() != h.parts()) throw std::invalid_argument("largest_balanced_subset: gamma mismatch");
  std::vector<std::vector<std::int32_t>> per_part(static_cast<size_t>(h.parts()));
  for (std::int32_t v : s) per_part[static_cast<size_t>(h.part_of(v))].push_back(v);
  for (long t = s.size(); t >= 0; --t) {
    bool ok = true;
    std::vector<long> want(static_cast<size_t>(h.parts()), 0);
    for (int i = 0; i < h.parts() && ok; ++i) {
      double w = gamma[i] * static_cast<double>(t);
      long nearest = std::llround(w);
      if (std::fabs(w - static_cast<double>(nearest)) > 1e-9) ok = false;
      if (nearest > static_cast<long>(per_part[static_cast<size_t>(i)].size())) ok = false;
      want[static_cast<size_t>(i)] = nearest;
    }
    if (!ok) continue;
    std::vector<std::int32_t> members;
    for (int i = 0; i < h.parts(); ++i) {
      members.insert(members.end(), per_part[static_cast<size_t>(i)].begin(),
                     per_part[static_cast<size_t>(i)].begin() + want[static_cast<size_t>(i)]);
    }
    return VertexSet(std::move(members));
  }
  return VertexSet();
}

OptimizationReport check_optimization_partite(
    const std::function<std::vector<double>(const PartiteHypergraph&, Seed)>& values_builder,
    int r, int n, double p, const std::vector<long>& k, double delta, double xi, double eta,
    long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("check_optimization_partite: trials must be >= 1");
  std::vector<double> norms;
  long successes = 0;
  for (long t = 0; t < trials; ++t) {
    Seed trial = seed.stream(static_cast<std::uint64_t>(t));
    PartiteHypergraph inst = sample_partite_hypergraph(r, n, p, trial.stream("instance"));
    std::vector<double> values = values_builder(inst, trial.stream("omega"));
    double norm = 0.0;
    for (double x : values) norm += x * x;
    norms.push_back(norm);
    RoundingOutcome outcome = round_to_independent_set(values, inst, eta);
    if (outcome.accepted) {
      std::vector<long> counts(static_cast<size_t>(r), 0);
      for (std::int32_t v : outcome.I_tilde) ++counts[static_cast<size_t>(inst.part_of(v))];
      bool ok = true;
      for (int j = 0; j < r; ++j) {
        if (counts[static_cast<size_t>(j)] < k[static_cast<size_t>(j)]) ok = false;
      }
      if (ok) ++successes;
    }
  }
  OptimizationReport rep;
  rep.trials = trials;
  Estimate nm = mean_estimate(norms);
  rep.mean_norm = nm.value;
  rep.norm_se = nm.se;
  Estimate sc = proportion_estimate(successes, trials);
  rep.success_rate = sc.value;
  rep.success_se = sc.se;
  rep.xi = xi;
  rep.delta = delta;
  rep.eta = eta;
  rep.k_total = 0.0;
  for (long ki : k) rep.k_total += static_cast<double>(ki);
  rep.norm_ok = rep.mean_norm <= xi * rep.k_total;
  rep.success_ok = rep.success_rate >= 1.0 - delta;
  rep.empirical_xi = rep.k_total > 0.0 ? rep.mean_norm / rep.k_total : 0.0;
  return rep;
}

OptimizationReport check_optimization_uniform(
    const std::function<std::vector<double>(const Hypergraph&, Seed)>& values_builder, int n, int r,
    double p, long k, double delta, double xi, double eta, long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("check_optimization_uniform: trials must be >= 1");
  std::vector<double> norms;
  long successes = 0;
  for (long t = 0; t < trials; ++t) {
    Seed trial = seed.stream(static_cast<std::uint64_t>(t));
    Hypergraph inst = sample_uniform_hypergraph(n, r, p, trial.stream("instance"));
    std::vector<double> values = values_builder(inst, trial.stream("omega"));
    double norm = 0.0;
    for (double x : values) norm += x * x;
    norms.push_back(norm);
    RoundingOutcome outcome = round_to_independent_set(values, inst, eta);
    if (outcome.accepted && outcome.I_tilde.size() >= k) ++successes;
  }
  OptimizationReport rep;
  rep.trials = trials;
  Estimate nm = mean_estimate(norms);
  rep.mean_norm = nm.value;
  rep.norm_se = nm.se;
  Estimate sc = proportion_estimate(successes, trials);
  rep.success_rate = sc.value;
  rep.success_se = sc.se;
  rep.xi = xi;
  rep.delta = delta;
  rep.eta = eta;
  rep.k_total = static_cast<double>(k);
  rep.norm_ok = rep.mean_norm <= xi * rep.k_total;
  rep.success_ok = rep.success_rate >= 1.0 - delta;
  rep.empirical_xi = rep.k_total > 0.0 ? rep.mean_norm / rep.k_total : 0.0;
  return rep;
}

}  // namespace hyperis
