#include "hyperis/local.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hyperis {

VertexLabels VertexLabels::sample(long n, Seed seed) {
  VertexLabels l;
  l.values.resize(static_cast<size_t>(n));
  Rng rng(seed);
  for (auto& x : l.values) x = rng.next_unit();
  return l;
}

LocalFunction min_blocking_rule() {
  LocalFunction g;
  g.radius = 1;
  g.name = "min-blocking";
  g.eval = [](const RootedView& view, std::span<const double> labels) -> int {
    const auto& h = view.graph;
    for (std::int32_t eid : h.incident(view.root())) {
      double other_min = 2.0;
      for (std::int32_t u : h.edge(eid)) {
        if (u == view.root()) continue;
        other_min = std::min(other_min, labels[static_cast<size_t>(u)]);
      }
      if (!(labels[static_cast<size_t>(view.root())] > other_min)) return 0;
    }
    return 1;
  };
  return g;
}

LocalFunction min_blocking_parity_rule() {
  LocalFunction base = min_blocking_rule();
  LocalFunction g;
  g.radius = 2;
  g.name = "min-blocking-parity";
  g.eval = [base](const RootedView& view, std::span<const double> labels) -> int {
    if (view.graph.edge_count() % 2 != 0) return 0;
    return base.eval(view, labels);
  };
  return g;
}

LocalFunction isolated_rule(int radius) {
  LocalFunction g;
  g.radius = radius;
  g.name = "isolated";
  g.eval = [](const RootedView& view, std::span<const double>) -> int {
    return view.graph.edge_count() == 0 ? 1 : 0;
  };
  return g;
}

namespace {

// Greedy core over a flat edge list.  Returns selected vertex ids, sorted.
std::vector<std::int32_t> greedy_core(long n, int r, const std::vector<std::int32_t>& flat,
                                      const double* labels) {
  const long m = static_cast<long>(flat.size()) / r;
  // incidence CSR
  std::vector<std::int64_t> off(static_cast<size_t>(n) + 1, 0);
  for (std::int32_t v : flat) ++off[static_cast<size_t>(v) + 1];
  for (size_t v = 0; v < static_cast<size_t>(n); ++v) off[v + 1] += off[v];
  std::vector<std::int32_t> inc(flat.size());
  {
    std::vector<std::int64_t> cur(off.begin(), off.end() - 1);
    for (long e = 0; e < m; ++e) {
      for (int j = 0; j < r; ++j) {
        std::int32_t v = flat[static_cast<size_t>(e * r + j)];
        inc[static_cast<size_t>(cur[static_cast<size_t>(v)]++)] = static_cast<std::int32_t>(e);
      }
    }
  }

  std::vector<std::int32_t> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    if (labels[a] != labels[b]) return labels[a] > labels[b];
    return a < b;  // deterministic tie-break
  });

  std::vector<char> removed(static_cast<size_t>(n), 0);
  std::vector<char> selected(static_cast<size_t>(n), 0);
  std::vector<std::int32_t> in_count(static_cast<size_t>(m), 0);
  std::vector<std::int32_t> out;
  for (std::int32_t v : order) {
    if (removed[static_cast<size_t>(v)]) continue;
    selected[static_cast<size_t>(v)] = 1;
    out.push_back(v);
    for (std::int64_t ii = off[static_cast<size_t>(v)]; ii < off[static_cast<size_t>(v) + 1]; ++ii) {
      std::int32_t e = inc[static_cast<size_t>(ii)];
      if (++in_count[static_cast<size_t>(e)] == r - 1) {
        // the single vertex of e not yet selected would complete the edge
        for (int j = 0; j < r; ++j) {
          std::int32_t u = flat[static_cast<size_t>(static_cast<long>(e) * r + j)];
          if (!selected[static_cast<size_t>(u)]) removed[static_cast<size_t>(u)] = 1;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

VertexSet random_greedy(const Hypergraph& h, const VertexLabels& labels) {
  if (static_cast<long>(labels.values.size()) != h.vertex_count()) {
    throw std::invalid_argument("random_greedy: labels must cover all vertices");
  }
  return VertexSet(greedy_core(h.vertex_count(), h.uniformity(), h.flat_edges(), labels.values.data()));
}

VertexSet random_greedy(const RootedHypertree& t, const VertexLabels& labels) {
  if (static_cast<long>(labels.values.size()) != t.vertex_count()) {
    throw std::invalid_argument("random_greedy: labels must cover all vertices");
  }
  return VertexSet(greedy_core(t.vertex_count(), t.r, t.edges, labels.values.data()));
}

VertexSet adapt_greedy_to_gw(const RootedHypertree& t, long delta, Seed seed) {
  if (delta < 1) throw std::invalid_argument("adapt_greedy_to_gw: delta must be >= 1");
  const int r = t.r;
  const long n0 = t.vertex_count();
  const long m0 = t.edge_count();

  // ranking labels for the edge-removal step
  Rng rank_rng(seed.stream("rank"));
  std::vector<double> x(static_cast<size_t>(n0));
  for (auto& v : x) v = rank_rng.next_unit();

  // incidence
  std::vector<std::vector<std::int32_t>> inc(static_cast<size_t>(n0));
  for (long e = 0; e < m0; ++e) {
    for (std::int32_t v : t.edge(e)) inc[static_cast<size_t>(v)].push_back(static_cast<std::int32_t>(e));
  }

  // Step 1: per vertex of degree > delta, drop the excess edges with the
  // largest max-label over the edge's other vertices; ties break by the
  // lexicographic order of the edge's sorted vertex tuple.
  std::vector<char> removed_edge(static_cast<size_t>(m0), 0);
  std::vector<std::int32_t> sorted_tuple_a, sorted_tuple_b;
  auto edge_lex_less = [&](std::int32_t ea, std::int32_t eb) {
    sorted_tuple_a.assign(t.edge(ea).begin(), t.edge(ea).end());
    sorted_tuple_b.assign(t.edge(eb).begin(), t.edge(eb).end());
    std::sort(sorted_tuple_a.begin(), sorted_tuple_a.end());
    std::sort(sorted_tuple_b.begin(), sorted_tuple_b.end());
    return sorted_tuple_a < sorted_tuple_b;
  };
  for (long v = 0; v < n0; ++v) {
    const auto& edges_v = inc[static_cast<size_t>(v)];
    const long deg = static_cast<long>(edges_v.size());
    if (deg <= delta) continue;
    std::vector<std::pair<double, std::int32_t>> ranked;
    ranked.reserve(edges_v.size());
    for (std::int32_t e : edges_v) {
      double xe = -1.0;
      for (std::int32_t u : t.edge(e)) {
        if (u != v) xe = std::max(xe, x[static_cast<size_t>(u)]);
      }
      ranked.emplace_back(xe, e);
    }
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return edge_lex_less(a.second, b.second);
    });
    for (long i = 0; i < deg - delta; ++i) removed_edge[static_cast<size_t>(ranked[static_cast<size_t>(i)].second)] = 1;
  }

  // vertices that lost an incident edge are ineligible for the final set
  std::vector<char> touched(static_cast<size_t>(n0), 0);
  for (long e = 0; e < m0; ++e) {
    if (!removed_edge[static_cast<size_t>(e)]) continue;
    for (std::int32_t v : t.edge(e)) touched[static_cast<size_t>(v)] = 1;
  }

  // Step 2: regularize to degree delta; attachments truncate at the tree's
  // realized depth.
  const int depth_limit = t.depth();
  std::vector<std::int32_t> aug_edges;
  std::vector<std::int32_t> deg_s(static_cast<size_t>(n0), 0);
  for (long e = 0; e < m0; ++e) {
    if (removed_edge[static_cast<size_t>(e)]) continue;
    auto ed = t.edge(e);
    aug_edges.insert(aug_edges.end(), ed.begin(), ed.end());
    for (std::int32_t v : ed) ++deg_s[static_cast<size_t>(v)];
  }
  long aug_n = n0;
  // queue of fresh vertices that still owe offspring edges: (vertex, level)
  std::vector<std::pair<std::int64_t, std::int32_t>> grow;
  auto attach = [&](std::int64_t v, int level, long count) {
    for (long i = 0; i < count; ++i) {
      aug_edges.push_back(static_cast<std::int32_t>(v));
      for (int j = 0; j < r - 1; ++j) {
        aug_edges.push_back(static_cast<std::int32_t>(aug_n));
        grow.emplace_back(aug_n, level + 1);
        ++aug_n;
      }
    }
  };
  for (long v = 0; v < n0; ++v) {
    const int level = t.level[static_cast<size_t>(v)];
    if (level + 1 > depth_limit) continue;  // truncated away
    attach(v, level, delta - deg_s[static_cast<size_t>(v)]);
  }
  for (size_t qi = 0; qi < grow.size(); ++qi) {
    auto [v, level] = grow[qi];
    if (level + 1 > depth_limit) continue;
    attach(v, level, delta - 1);  // fresh vertices already hold their parent edge
    if (aug_n > 500'000'000LL) {
      throw std::runtime_error("adapt_greedy_to_gw: regularized forest too large; reduce depth");
    }
  }

  // Step 3: fresh labels, global greedy, keep untouched originals.
  Rng label_rng(seed.stream("labels"));
  std::vector<double> fresh(static_cast<size_t>(aug_n));
  for (auto& v : fresh) v = label_rng.next_unit();
  std::vector<std::int32_t> selected = greedy_core(aug_n, r, aug_edges, fresh.data());

  std::vector<std::int32_t> keep;
  for (std::int32_t v : selected) {
    if (v < n0 && !touched[static_cast<size_t>(v)]) keep.push_back(v);
  }
  return VertexSet(std::move(keep));
}

Estimate estimate_root_density(double d, int r, long delta, int depth, long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("estimate_root_density: trials must be >= 1");
  long hits = 0;
  for (long i = 0; i < trials; ++i) {
    Seed trial = seed.stream(static_cast<std::uint64_t>(i));
    RootedHypertree t = sample_gw_hypertree(d, r, depth, trial.stream("tree"));
    VertexSet out = adapt_greedy_to_gw(t, delta, trial.stream("greedy"));
    if (out.contains(0)) ++hits;
  }
  return proportion_estimate(hits, trials);
}

VertexSet run_local_on_hypergraph(const Hypergraph& h, const LocalFunction& g,
                                  const VertexLabels& labels) {
  if (static_cast<long>(labels.values.size()) != h.vertex_count()) {
    throw std::invalid_argument("run_local_on_hypergraph: labels must cover all vertices");
  }
  std::vector<std::int32_t> chosen;
  std::vector<double> local_labels;
  for (int v = 0; v < h.vertex_count(); ++v) {
    RootedView view = neighborhood(h, v, g.radius);
    local_labels.resize(view.to_host.size());
    for (size_t i = 0; i < view.to_host.size(); ++i) {
      local_labels[i] = labels.values[static_cast<size_t>(view.to_host[i])];
    }
    if (g.eval(view, local_labels)) chosen.push_back(v);
  }
  return VertexSet(std::move(chosen));
}

long NeighborhoodTypeCounts::total() const {
  long t = other;
  for (const auto& [k, c] : counts) t += c;
  return t;
}

std::string canonical_hypertree_form(const RootedView& view) {
  const auto& h = view.graph;
  const int r = h.uniformity();
  const long m = h.edge_count();
  // parent of an edge = its unique minimum-depth vertex
  std::vector<std::int32_t> parent(static_cast<size_t>(m));
  for (long e = 0; e < m; ++e) {
    std::int32_t best = h.edge(e)[0];
    for (std::int32_t u : h.edge(e)) {
      if (view.depth[static_cast<size_t>(u)] < view.depth[static_cast<size_t>(best)]) best = u;
    }
    parent[static_cast<size_t>(e)] = best;
  }
  std::vector<std::vector<std::int32_t>> child_edges(static_cast<size_t>(h.vertex_count()));
  for (long e = 0; e < m; ++e) child_edges[static_cast<size_t>(parent[static_cast<size_t>(e)])].push_back(static_cast<std::int32_t>(e));

  // vertices in order of decreasing depth so children are finished first
  std::vector<std::int32_t> order(static_cast<size_t>(h.vertex_count()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return view.depth[static_cast<size_t>(a)] > view.depth[static_cast<size_t>(b)];
  });

  std::vector<std::string> vsig(static_cast<size_t>(h.vertex_count()));
  for (std::int32_t v : order) {
    std::vector<std::string> esigs;
    for (std::int32_t e : child_edges[static_cast<size_t>(v)]) {
      std::vector<std::string> children;
      for (std::int32_t u : h.edge(e)) {
        if (u != v) children.push_back(vsig[static_cast<size_t>(u)]);
      }
      std::sort(children.begin(), children.end());
      std::string es = "[";
      for (const auto& c : children) es += c;
      es += "]";
      esigs.push_back(std::move(es));
    }
    std::sort(esigs.begin(), esigs.end());
    std::string s = "(";
    for (const auto& e : esigs) s += e;
    s += ")";
    vsig[static_cast<size_t>(v)] = std::move(s);
  }
  (void)r;
  return vsig[0];
}

NeighborhoodTypeCounts count_neighborhood_types(const Hypergraph& h, int s, int q) {
  if (s < 0 || q < 0) throw std::invalid_argument("count_neighborhood_types: bad parameters");
  NeighborhoodTypeCounts out;
  for (int v = 0; v < h.vertex_count(); ++v) {
    RootedView view = neighborhood(h, v, 2 * s);
    if (!view.is_hypertree() || view.edge_count() > q) {
      ++out.other;
      continue;
    }
    ++out.counts[canonical_hypertree_form(view)];
  }
  return out;
}

}  // namespace hyperis
