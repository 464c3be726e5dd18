#include "hyperis/models.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperis {

std::optional<std::uint64_t> binom_checked(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr std::uint64_t limit = std::uint64_t{1} << 62;
  std::uint64_t res = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // res = res * (n - k + i) / i stays integral at every step
    unsigned __int128 t = static_cast<unsigned __int128>(res) * (n - k + i);
    t /= i;
    if (t > limit) return std::nullopt;
    res = static_cast<std::uint64_t>(t);
  }
  return res;
}

std::uint64_t rank_combination(int n, std::span<const std::int32_t> combo) {
  const int r = static_cast<int>(combo.size());
  std::uint64_t rank = 0;
  int lo = 0;
  for (int i = 0; i < r; ++i) {
    const int k = r - i;
    const int a = combo[static_cast<size_t>(i)];
    // combinations whose element i lies in [lo, a)
    rank += *binom_checked(static_cast<std::uint64_t>(n - lo), static_cast<std::uint64_t>(k)) -
            *binom_checked(static_cast<std::uint64_t>(n - a), static_cast<std::uint64_t>(k));
    lo = a + 1;
  }
  return rank;
}

void unrank_combination(int n, int r, std::uint64_t rank, std::int32_t* out) {
  int lo = 0;
  for (int i = 0; i < r; ++i) {
    const int k = r - i;
    const std::uint64_t all = *binom_checked(static_cast<std::uint64_t>(n - lo),
                                             static_cast<std::uint64_t>(k));
    // largest a with (#combos whose first element < a) <= rank
    int a_lo = lo, a_hi = n - k;
    while (a_lo < a_hi) {
      int mid = a_lo + (a_hi - a_lo + 1) / 2;
      std::uint64_t before =
          all - *binom_checked(static_cast<std::uint64_t>(n - mid), static_cast<std::uint64_t>(k));
      if (before <= rank) {
        a_lo = mid;
      } else {
        a_hi = mid - 1;
      }
    }
    const int a = a_lo;
    rank -= all - *binom_checked(static_cast<std::uint64_t>(n - a), static_cast<std::uint64_t>(k));
    out[i] = a;
    lo = a + 1;
  }
}

namespace {

// Ranks of the kept coordinates under iid Bernoulli(p), via geometric gaps.
std::vector<std::uint64_t> skip_sample_ranks(std::uint64_t m, double p, Rng& rng) {
  std::vector<std::uint64_t> ranks;
  if (m == 0 || p <= 0.0) return ranks;
  if (p >= 1.0) {
    ranks.resize(m);
    for (std::uint64_t i = 0; i < m; ++i) ranks[i] = i;
    return ranks;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t pos = 0;
  for (;;) {
    double u = 1.0 - rng.next_unit();  // in (0, 1]
    double gap = std::floor(std::log(u) / log_q);
    if (gap >= static_cast<double>(m)) break;  // guards inf and overflow
    pos += static_cast<std::uint64_t>(gap);
    if (pos >= m) break;
    ranks.push_back(pos);
    ++pos;
    if (pos >= m) break;
  }
  return ranks;
}

}  // namespace

Hypergraph sample_uniform_hypergraph(int n, int r, double p, Seed seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_uniform_hypergraph: p outside [0,1]");
  if (n < r) throw std::invalid_argument("sample_uniform_hypergraph: need n >= r");
  auto m = binom_checked(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
  if (!m) throw std::invalid_argument("sample_uniform_hypergraph: C(n,r) too large");
  Rng rng(seed);
  auto ranks = skip_sample_ranks(*m, p, rng);
  std::vector<std::int32_t> flat(ranks.size() * static_cast<size_t>(r));
  for (size_t i = 0; i < ranks.size(); ++i) {
    unrank_combination(n, r, ranks[i], flat.data() + i * static_cast<size_t>(r));
  }
  return Hypergraph::from_flat(n, r, std::move(flat));
}

PartiteHypergraph sample_partite_hypergraph(int r, int n, double p, Seed seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_partite_hypergraph: p outside [0,1]");
  if (n < 1 || r < 2) throw std::invalid_argument("sample_partite_hypergraph: bad dimensions");
  std::uint64_t m = 1;
  for (int j = 0; j < r; ++j) {
    if (m > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(n)) {
      throw std::invalid_argument("sample_partite_hypergraph: n^r too large");
    }
    m *= static_cast<std::uint64_t>(n);
  }
  Rng rng(seed);
  auto ranks = skip_sample_ranks(m, p, rng);
  std::vector<std::int32_t> flat(ranks.size() * static_cast<size_t>(r));
  for (size_t i = 0; i < ranks.size(); ++i) {
    std::uint64_t rank = ranks[i];
    for (int j = r - 1; j >= 0; --j) {
      flat[i * static_cast<size_t>(r) + static_cast<size_t>(j)] =
          static_cast<std::int32_t>(rank % static_cast<std::uint64_t>(n));
      rank /= static_cast<std::uint64_t>(n);
    }
  }
  return PartiteHypergraph::from_flat(r, n, std::move(flat));
}

Hypergraph sample_uniform_hypergraph_naive(int n, int r, double p, Seed seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_uniform_hypergraph_naive: p outside [0,1]");
  auto m = binom_checked(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
  if (!m || *m > 100'000'000ULL) throw std::invalid_argument("sample_uniform_hypergraph_naive: space too large");
  Rng rng(seed);
  std::vector<std::int32_t> flat;
  std::int32_t combo[32];
  for (std::uint64_t rank = 0; rank < *m; ++rank) {
    if (rng.bernoulli(p)) {
      unrank_combination(n, r, rank, combo);
      flat.insert(flat.end(), combo, combo + r);
    }
  }
  return Hypergraph::from_flat(n, r, std::move(flat));
}

PartiteHypergraph sample_partite_hypergraph_naive(int r, int n, double p, Seed seed) {
  std::uint64_t m = 1;
  for (int j = 0; j < r; ++j) m *= static_cast<std::uint64_t>(n);
  if (m > 100'000'000ULL) throw std::invalid_argument("sample_partite_hypergraph_naive: space too large");
  Rng rng(seed);
  std::vector<std::int32_t> flat;
  for (std::uint64_t rank = 0; rank < m; ++rank) {
    if (rng.bernoulli(p)) {
      std::uint64_t x = rank;
      std::int32_t tuple[32];
      for (int j = r - 1; j >= 0; --j) {
        tuple[j] = static_cast<std::int32_t>(x % static_cast<std::uint64_t>(n));
        x /= static_cast<std::uint64_t>(n);
      }
      flat.insert(flat.end(), tuple, tuple + r);
    }
  }
  return PartiteHypergraph::from_flat(r, n, std::move(flat));
}

Hypergraph RootedHypertree::to_hypergraph() const {
  return Hypergraph::from_flat(static_cast<int>(vertex_count()), r, edges);
}

RootedHypertree sample_gw_hypertree(double d, int r, int depth, Seed seed) {
  if (d < 0.0) throw std::invalid_argument("sample_gw_hypertree: d must be >= 0");
  if (depth < 0) throw std::invalid_argument("sample_gw_hypertree: negative depth");
  if (r < 2) throw std::invalid_argument("sample_gw_hypertree: r must be >= 2");
  RootedHypertree t;
  t.r = r;
  t.depth_cap = depth;
  t.level.push_back(0);
  Rng rng(seed);
  std::size_t level_begin = 0, level_end = 1;
  for (int k = 0; k < depth; ++k) {
    for (std::size_t v = level_begin; v < level_end; ++v) {
      long offspring = rng.poisson(d);
      for (long e = 0; e < offspring; ++e) {
        t.edges.push_back(static_cast<std::int32_t>(v));
        for (int j = 0; j < r - 1; ++j) {
          t.edges.push_back(static_cast<std::int32_t>(t.level.size()));
          t.level.push_back(static_cast<std::int32_t>(k + 1));
        }
      }
      if (t.level.size() > 300'000'000ULL) {
        throw std::runtime_error("sample_gw_hypertree: tree too large; reduce depth or d");
      }
    }
    level_begin = level_end;
    level_end = t.level.size();
    if (level_begin == level_end) break;  // extinct
  }
  return t;
}

RootedHypertree build_regular_hypertree(int delta, int r, int depth) {
  if (delta < 1) throw std::invalid_argument("build_regular_hypertree: delta must be >= 1");
  if (r < 2 || depth < 0) throw std::invalid_argument("build_regular_hypertree: bad dimensions");
  RootedHypertree t;
  t.r = r;
  t.depth_cap = depth;
  t.level.push_back(0);
  std::size_t level_begin = 0, level_end = 1;
  for (int k = 0; k < depth; ++k) {
    for (std::size_t v = level_begin; v < level_end; ++v) {
      const int offspring = (k == 0) ? delta : delta - 1;
      for (int e = 0; e < offspring; ++e) {
        t.edges.push_back(static_cast<std::int32_t>(v));
        for (int j = 0; j < r - 1; ++j) {
          t.edges.push_back(static_cast<std::int32_t>(t.level.size()));
          t.level.push_back(static_cast<std::int32_t>(k + 1));
        }
      }
      if (t.level.size() > 300'000'000ULL) {
        throw std::runtime_error("build_regular_hypertree: tree too large; reduce depth or delta");
      }
    }
    level_begin = level_end;
    level_end = t.level.size();
  }
  return t;
}

long default_degree_cap(double d) {
  return static_cast<long>(std::ceil(d + std::pow(d, 0.75)));
}

InterpolationPath::InterpolationPath(std::uint64_t m, double p, std::uint64_t total_steps, Seed seed)
    : m_(m), p_(p), total_steps_(total_steps), step_rng_(seed.stream("steps")) {
  if (m == 0) throw std::invalid_argument("InterpolationPath: empty coordinate space");
  if (m > 200'000'000ULL) throw std::invalid_argument("InterpolationPath: coordinate space too large");
  state_.assign(m, 0);
  Rng base_rng(seed.stream("base"));
  for (std::uint64_t rank : skip_sample_ranks(m, p, base_rng)) state_[rank] = 1;
}

InterpolationPath InterpolationPath::for_uniform(int n, int r, double p, std::uint64_t total_steps,
                                                 Seed seed) {
  auto m = binom_checked(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
  if (!m) throw std::invalid_argument("InterpolationPath: C(n,r) too large");
  return InterpolationPath(*m, p, total_steps, seed);
}

InterpolationPath InterpolationPath::for_partite(int r, int n, double p, std::uint64_t total_steps,
                                                 Seed seed) {
  std::uint64_t m = 1;
  for (int j = 0; j < r; ++j) m *= static_cast<std::uint64_t>(n);
  return InterpolationPath(m, p, total_steps, seed);
}

InterpolationPath::StepDelta InterpolationPath::advance() {
  if (t_ >= total_steps_) throw std::out_of_range("InterpolationPath: stepped past total_steps");
  ++t_;
  StepDelta delta;
  delta.coord = coordinate_at(t_);
  delta.old_value = state_[delta.coord] != 0;
  delta.new_value = step_rng_.bernoulli(p_);
  state_[delta.coord] = delta.new_value ? 1 : 0;
  return delta;
}

Estimate estimate_event_root_low_degree(double d, long delta, int r, long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("estimate_event_root_low_degree: trials must be >= 1");
  long hits = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng(seed.stream(static_cast<std::uint64_t>(t)));
    long root_edges = rng.poisson(d);
    bool ok = root_edges <= delta;
    if (ok) {
      const long children = root_edges * (r - 1);
      for (long c = 0; c < children && ok; ++c) {
        // level-1 degree = parent edge + own offspring edges
        ok = 1 + rng.poisson(d) <= delta;
      }
    }
    if (ok) ++hits;
  }
  return proportion_estimate(hits, trials);
}

}  // namespace hyperis
