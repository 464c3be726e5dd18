#include "hyperis/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace hyperis {

VertexSet::VertexSet(std::vector<std::int32_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::all(int n) {
  std::vector<std::int32_t> m(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)] = i;
  return VertexSet(std::move(m));
}

bool VertexSet::contains(std::int32_t v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

long symmetric_difference_size(const VertexSet& a, const VertexSet& b) {
  size_t i = 0, j = 0;
  long count = 0;
  const auto& x = a.members();
  const auto& y = b.members();
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) {
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++count;
      ++i;
    } else {
      ++count;
      ++j;
    }
  }
  count += static_cast<long>((x.size() - i) + (y.size() - j));
  return count;
}

GammaVector::GammaVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2) throw std::invalid_argument("GammaVector: need at least 2 entries");
  double sum = 0.0;
  for (double g : entries_) {
    if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("GammaVector: entries must lie in (0,1)");
    sum += g;
  }
  if (std::fabs(sum - 1.0) > 1e-12) throw std::invalid_argument("GammaVector: entries must sum to 1");
}

GammaVector GammaVector::uniform(int r) {
  return GammaVector(std::vector<double>(static_cast<size_t>(r), 1.0 / static_cast<double>(r)));
}

int GammaVector::argmax() const {
  int best = 0;
  for (int i = 1; i < size(); ++i) {
    if (entries_[static_cast<size_t>(i)] > entries_[static_cast<size_t>(best)]) best = i;
  }
  return best;
}

double GammaVector::product() const {
  double p = 1.0;
  for (double g : entries_) p *= g;
  return p;
}

namespace {

// Sort each edge, sort the edge list lexicographically, drop duplicates.
void canonicalize(std::vector<std::int32_t>& flat, int r) {
  const long m = static_cast<long>(flat.size()) / r;
  for (long i = 0; i < m; ++i) std::sort(flat.begin() + i * r, flat.begin() + (i + 1) * r);
  std::vector<long> order(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) order[static_cast<size_t>(i)] = i;
  auto less = [&](long a, long b) {
    return std::lexicographical_compare(flat.begin() + a * r, flat.begin() + (a + 1) * r,
                                        flat.begin() + b * r, flat.begin() + (b + 1) * r);
  };
  auto equal = [&](long a, long b) {
    return std::equal(flat.begin() + a * r, flat.begin() + (a + 1) * r, flat.begin() + b * r);
  };
  std::sort(order.begin(), order.end(), less);
  order.erase(std::unique(order.begin(), order.end(), equal), order.end());
  std::vector<std::int32_t> out;
  out.reserve(order.size() * static_cast<size_t>(r));
  for (long idx : order) {
    out.insert(out.end(), flat.begin() + idx * r, flat.begin() + (idx + 1) * r);
  }
  flat = std::move(out);
}

}  // namespace

Hypergraph::Hypergraph(int n, int r, const std::vector<std::vector<int>>& edges) {
  if (r < 2) throw std::invalid_argument("Hypergraph: uniformity must be >= 2");
  if (n < 0) throw std::invalid_argument("Hypergraph: negative vertex count");
  std::vector<std::int32_t> flat;
  flat.reserve(edges.size() * static_cast<size_t>(r));
  for (const auto& e : edges) {
    if (static_cast<int>(e.size()) != r) throw std::invalid_argument("Hypergraph: edge of wrong size");
    for (int v : e) {
      if (v < 0 || v >= n) throw std::invalid_argument("Hypergraph: vertex index out of range");
      flat.push_back(v);
    }
    // distinctness within the edge
    std::vector<int> tmp = e;
    std::sort(tmp.begin(), tmp.end());
    if (std::adjacent_find(tmp.begin(), tmp.end()) != tmp.end()) {
      throw std::invalid_argument("Hypergraph: edge with repeated vertex");
    }
  }
  n_ = n;
  r_ = r;
  canonicalize(flat, r);
  flat_ = std::move(flat);
  build_incidence();
}

Hypergraph Hypergraph::from_flat(int n, int r, std::vector<std::int32_t> flat) {
  if (r < 2) throw std::invalid_argument("Hypergraph: uniformity must be >= 2");
  if (flat.size() % static_cast<size_t>(r) != 0) throw std::invalid_argument("Hypergraph: ragged edge data");
  for (std::int32_t v : flat) {
    if (v < 0 || v >= n) throw std::invalid_argument("Hypergraph: vertex index out of range");
  }
  Hypergraph h;
  h.n_ = n;
  h.r_ = r;
  canonicalize(flat, r);
  const long m = static_cast<long>(flat.size()) / r;
  for (long i = 0; i < m; ++i) {
    for (int j = 1; j < r; ++j) {
      if (flat[static_cast<size_t>(i * r + j)] == flat[static_cast<size_t>(i * r + j - 1)]) {
        throw std::invalid_argument("Hypergraph: edge with repeated vertex");
      }
    }
  }
  h.flat_ = std::move(flat);
  h.build_incidence();
  return h;
}

void Hypergraph::build_incidence() {
  inc_off_.assign(static_cast<size_t>(n_) + 1, 0);
  const long m = edge_count();
  for (long i = 0; i < m * r_; ++i) ++inc_off_[static_cast<size_t>(flat_[static_cast<size_t>(i)]) + 1];
  for (size_t v = 0; v < static_cast<size_t>(n_); ++v) inc_off_[v + 1] += inc_off_[v];
  inc_.resize(static_cast<size_t>(m) * static_cast<size_t>(r_));
  std::vector<std::int64_t> cursor(inc_off_.begin(), inc_off_.end() - 1);
  for (long i = 0; i < m; ++i) {
    for (int j = 0; j < r_; ++j) {
      std::int32_t v = flat_[static_cast<size_t>(i * r_ + j)];
      inc_[static_cast<size_t>(cursor[static_cast<size_t>(v)]++)] = static_cast<std::int32_t>(i);
    }
  }
}

PartiteHypergraph::PartiteHypergraph(int r, int n, const std::vector<std::vector<int>>& edges) {
  if (r < 2) throw std::invalid_argument("PartiteHypergraph: uniformity must be >= 2");
  if (n < 0) throw std::invalid_argument("PartiteHypergraph: negative part size");
  std::vector<std::int32_t> flat;
  flat.reserve(edges.size() * static_cast<size_t>(r));
  for (const auto& e : edges) {
    if (static_cast<int>(e.size()) != r) throw std::invalid_argument("PartiteHypergraph: edge of wrong size");
    for (int v : e) {
      if (v < 0 || v >= n) throw std::invalid_argument("PartiteHypergraph: index out of range");
      flat.push_back(v);
    }
  }
  r_ = r;
  n_ = n;
  // tuples: lexicographic sort + dedup (entries are positional, no inner sort)
  const long m = static_cast<long>(flat.size()) / r;
  std::vector<long> order(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) order[static_cast<size_t>(i)] = i;
  auto less = [&](long a, long b) {
    return std::lexicographical_compare(flat.begin() + a * r, flat.begin() + (a + 1) * r,
                                        flat.begin() + b * r, flat.begin() + (b + 1) * r);
  };
  auto equal = [&](long a, long b) {
    return std::equal(flat.begin() + a * r, flat.begin() + (a + 1) * r, flat.begin() + b * r);
  };
  std::sort(order.begin(), order.end(), less);
  order.erase(std::unique(order.begin(), order.end(), equal), order.end());
  flat_.reserve(order.size() * static_cast<size_t>(r));
  for (long idx : order) {
    flat_.insert(flat_.end(), flat.begin() + idx * r, flat.begin() + (idx + 1) * r);
  }
  build_incidence();
}

PartiteHypergraph PartiteHypergraph::from_flat(int r, int n, std::vector<std::int32_t> flat) {
  if (flat.size() % static_cast<size_t>(r) != 0) {
    throw std::invalid_argument("PartiteHypergraph: ragged edge data");
  }
  std::vector<std::vector<int>> edges(flat.size() / static_cast<size_t>(r));
  for (size_t i = 0; i < edges.size(); ++i) {
    edges[i].assign(flat.begin() + static_cast<long>(i) * r, flat.begin() + static_cast<long>(i + 1) * r);
  }
  return PartiteHypergraph(r, n, edges);
}

void PartiteHypergraph::build_incidence() {
  const int total = vertex_count();
  inc_off_.assign(static_cast<size_t>(total) + 1, 0);
  const long m = edge_count();
  for (long i = 0; i < m; ++i) {
    for (int j = 0; j < r_; ++j) {
      int g = global_id(j, flat_[static_cast<size_t>(i * r_ + j)]);
      ++inc_off_[static_cast<size_t>(g) + 1];
    }
  }
  for (size_t v = 0; v < static_cast<size_t>(total); ++v) inc_off_[v + 1] += inc_off_[v];
  inc_.resize(static_cast<size_t>(m) * static_cast<size_t>(r_));
  std::vector<std::int64_t> cursor(inc_off_.begin(), inc_off_.end() - 1);
  for (long i = 0; i < m; ++i) {
    for (int j = 0; j < r_; ++j) {
      int g = global_id(j, flat_[static_cast<size_t>(i * r_ + j)]);
      inc_[static_cast<size_t>(cursor[static_cast<size_t>(g)]++)] = static_cast<std::int32_t>(i);
    }
  }
}

std::uint64_t PartiteHypergraph::coordinate_rank(std::span<const std::int32_t> tuple) const {
  std::uint64_t rank = 0;
  for (int j = 0; j < r_; ++j) {
    rank = rank * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(tuple[static_cast<size_t>(j)]);
  }
  return rank;
}

void PartiteHypergraph::decode_coordinate(std::uint64_t rank, std::int32_t* out) const {
  for (int j = r_ - 1; j >= 0; --j) {
    out[j] = static_cast<std::int32_t>(rank % static_cast<std::uint64_t>(n_));
    rank /= static_cast<std::uint64_t>(n_);
  }
}

std::uint64_t PartiteHypergraph::coordinate_space() const {
  std::uint64_t m = 1;
  for (int j = 0; j < r_; ++j) m *= static_cast<std::uint64_t>(n_);
  return m;
}

bool is_independent(const Hypergraph& h, const VertexSet& s) {
  for (std::int32_t v : s) {
    if (v < 0 || v >= h.vertex_count()) throw std::invalid_argument("is_independent: invalid vertex in set");
  }
  const long m = h.edge_count();
  for (long i = 0; i < m; ++i) {
    auto e = h.edge(i);
    bool inside = true;
    for (std::int32_t v : e) {
      if (!s.contains(v)) {
        inside = false;
        break;
      }
    }
    if (inside) return false;
  }
  return true;
}

bool is_independent(const PartiteHypergraph& h, const VertexSet& s) {
  for (std::int32_t v : s) {
    if (v < 0 || v >= h.vertex_count()) throw std::invalid_argument("is_independent: invalid vertex in set");
  }
  const long m = h.edge_count();
  for (long i = 0; i < m; ++i) {
    auto e = h.edge(i);
    bool inside = true;
    for (int j = 0; j < h.parts(); ++j) {
      if (!s.contains(static_cast<std::int32_t>(h.global_id(j, e[static_cast<size_t>(j)])))) {
        inside = false;
        break;
      }
    }
    if (inside) return false;
  }
  return true;
}

bool is_gamma_balanced(const PartiteHypergraph& h, const VertexSet& s, const GammaVector& gamma) {
  if (gamma.size() != h.parts()) throw std::invalid_argument("is_gamma_balanced: gamma size mismatch");
  std::vector<long> counts(static_cast<size_t>(h.parts()), 0);
  for (std::int32_t v : s) {
    if (v < 0 || v >= h.vertex_count()) throw std::invalid_argument("is_gamma_balanced: invalid vertex in set");
    ++counts[static_cast<size_t>(h.part_of(v))];
  }
  const double t = static_cast<double>(s.size());
  for (int i = 0; i < h.parts(); ++i) {
    double want = gamma[i] * t;
    double nearest = std::llround(want);
    if (std::fabs(want - nearest) > 1e-9) return false;  // gamma_i * |S| not integral
    if (counts[static_cast<size_t>(i)] != static_cast<long>(nearest)) return false;
  }
  return true;
}

RootedView neighborhood(const Hypergraph& h, int v, int s) {
  if (v < 0 || v >= h.vertex_count()) throw std::invalid_argument("neighborhood: root out of range");
  if (s < 0) throw std::invalid_argument("neighborhood: negative radius");
  RootedView view;
  std::vector<std::int32_t> local_of(static_cast<size_t>(h.vertex_count()), -1);
  std::vector<char> edge_taken;
  edge_taken.assign(static_cast<size_t>(h.edge_count()), 0);

  view.to_host.push_back(v);
  view.depth.push_back(0);
  local_of[static_cast<size_t>(v)] = 0;

  std::vector<std::int32_t> local_edges;
  std::queue<std::int32_t> frontier;
  frontier.push(v);
  while (!frontier.empty()) {
    std::int32_t u = frontier.front();
    frontier.pop();
    int du = view.depth[static_cast<size_t>(local_of[static_cast<size_t>(u)])];
    if (du >= s) continue;  // edges through u would exceed the radius
    for (std::int32_t eid : h.incident(u)) {
      if (edge_taken[static_cast<size_t>(eid)]) continue;
      edge_taken[static_cast<size_t>(eid)] = 1;
      for (std::int32_t w : h.edge(eid)) {
        if (local_of[static_cast<size_t>(w)] < 0) {
          local_of[static_cast<size_t>(w)] = static_cast<std::int32_t>(view.to_host.size());
          view.to_host.push_back(w);
          view.depth.push_back(du + 1);
          frontier.push(w);
        }
        local_edges.push_back(local_of[static_cast<size_t>(w)]);
      }
    }
  }
  view.graph = Hypergraph::from_flat(static_cast<int>(view.to_host.size()), h.uniformity(),
                                     std::move(local_edges));
  return view;
}

void save_text(const Hypergraph& h, std::ostream& os) {
  os << h.vertex_count() << ' ' << h.uniformity() << ' ' << h.edge_count() << '\n';
  const long m = h.edge_count();
  for (long i = 0; i < m; ++i) {
    auto e = h.edge(i);
    for (int j = 0; j < h.uniformity(); ++j) {
      if (j) os << ' ';
      os << e[static_cast<size_t>(j)];
    }
    os << '\n';
  }
}

void save_text(const PartiteHypergraph& h, std::ostream& os) {
  os << "PARTITE " << h.parts() << ' ' << h.part_size() << ' ' << h.edge_count() << '\n';
  const long m = h.edge_count();
  for (long i = 0; i < m; ++i) {
    auto e = h.edge(i);
    for (int j = 0; j < h.parts(); ++j) {
      if (j) os << ' ';
      os << e[static_cast<size_t>(j)];
    }
    os << '\n';
  }
}

std::variant<Hypergraph, PartiteHypergraph> load_text(std::istream& is) {
  std::string first;
  if (!(is >> first)) throw std::invalid_argument("load_text: empty input");
  if (first == "PARTITE") {
    int r = 0, n = 0;
    long m = 0;
    if (!(is >> r >> n >> m)) throw std::invalid_argument("load_text: bad partite header");
    std::vector<std::int32_t> flat(static_cast<size_t>(m) * static_cast<size_t>(r));
    for (auto& x : flat) {
      if (!(is >> x)) throw std::invalid_argument("load_text: truncated edge data");
    }
    return PartiteHypergraph::from_flat(r, n, std::move(flat));
  }
  int n = 0, r = 0;
  long m = 0;
  try {
    n = std::stoi(first);
  } catch (...) {
    throw std::invalid_argument("load_text: bad header");
  }
  if (!(is >> r >> m)) throw std::invalid_argument("load_text: bad header");
  std::vector<std::int32_t> flat(static_cast<size_t>(m) * static_cast<size_t>(r));
  for (auto& x : flat) {
    if (!(is >> x)) throw std::invalid_argument("load_text: truncated edge data");
  }
  return Hypergraph::from_flat(n, r, std::move(flat));
}

}  // namespace hyperis
