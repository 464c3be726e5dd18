#include "hyperis/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hyperis {

namespace {

std::vector<std::uint64_t> edge_masks(const Hypergraph& h) {
  std::vector<std::uint64_t> masks(static_cast<size_t>(h.edge_count()), 0);
  for (long e = 0; e < h.edge_count(); ++e) {
    for (std::int32_t v : h.edge(e)) masks[static_cast<size_t>(e)] |= std::uint64_t{1} << v;
  }
  return masks;
}

std::vector<std::uint64_t> edge_masks(const PartiteHypergraph& h) {
  std::vector<std::uint64_t> masks(static_cast<size_t>(h.edge_count()), 0);
  for (long e = 0; e < h.edge_count(); ++e) {
    auto ed = h.edge(e);
    for (int j = 0; j < h.parts(); ++j) {
      masks[static_cast<size_t>(e)] |= std::uint64_t{1} << h.global_id(j, ed[static_cast<size_t>(j)]);
    }
  }
  return masks;
}

VertexSet mask_to_set(std::uint64_t mask) {
  std::vector<std::int32_t> members;
  while (mask) {
    int v = std::countr_zero(mask);
    members.push_back(v);
    mask &= mask - 1;
  }
  return VertexSet(std::move(members));
}

struct MisSearch {
  const std::vector<std::uint64_t>& edges;
  long nodes = 0;
  int best = -1;
  std::uint64_t best_set = 0;

  void run(std::uint64_t alive, std::uint64_t chosen) {
    ++nodes;
    const int chosen_count = std::popcount(chosen);
    const int alive_count = std::popcount(alive);
    if (chosen_count + alive_count <= best) return;

    // threatening edges: all free vertices still alive, the rest chosen
    std::uint64_t candidate = 0;  // vertices on some threatening edge
    std::uint64_t forced_dead = 0;
    int max_deg = -1;
    int branch_v = -1;
    std::vector<int> degree(64, 0);
    bool any = false;
    for (std::uint64_t e : edges) {
      std::uint64_t free = e & ~chosen;
      if (free & ~alive) continue;  // an excluded vertex keeps this edge safe
      if (free == 0) return;        // violated edge; unreachable by construction
      if (std::popcount(free) == 1) {
        forced_dead |= free;  // taking it would complete the edge
        continue;
      }
      any = true;
      candidate |= free;
      std::uint64_t f = free;
      while (f) {
        int v = std::countr_zero(f);
        if (++degree[static_cast<size_t>(v)] > max_deg) {
          max_deg = degree[static_cast<size_t>(v)];
          branch_v = v;
        }
        f &= f - 1;
      }
    }
    alive &= ~forced_dead;
    if (!any || branch_v < 0 || !(alive >> branch_v & 1)) {
      // no contested edge: every remaining alive vertex can be taken
      std::uint64_t final_set = chosen | alive;
      if (any) {
        // branch vertex died through forced_dead; recurse to re-derive state
        run(alive, chosen);
        return;
      }
      int size = std::popcount(final_set);
      if (size > best) {
        best = size;
        best_set = final_set;
      }
      return;
    }

    const std::uint64_t vbit = std::uint64_t{1} << branch_v;
    // include branch_v
    {
      std::uint64_t chosen2 = chosen | vbit;
      std::uint64_t alive2 = alive & ~vbit;
      for (std::uint64_t e : edges) {
        if (!(e & vbit)) continue;
        std::uint64_t free = e & ~chosen2;
        if (free & ~alive2) continue;
        if (std::popcount(free) == 1) alive2 &= ~free;
      }
      run(alive2, chosen2);
    }
    // exclude branch_v
    run(alive & ~vbit, chosen);
  }
};

}  // namespace

OracleResult max_independent_set(const Hypergraph& h, int cap) {
  if (h.vertex_count() > cap || h.vertex_count() > 63) {
    throw std::invalid_argument("max_independent_set: instance exceeds the size cap");
  }
  auto masks = edge_masks(h);
  MisSearch search{masks};
  std::uint64_t alive = h.vertex_count() == 64 ? ~std::uint64_t{0}
                                               : (std::uint64_t{1} << h.vertex_count()) - 1;
  search.run(alive, 0);
  OracleResult res;
  res.optimum = search.best;
  res.witness = mask_to_set(search.best_set);
  res.nodes = search.nodes;
  return res;
}

OracleResult max_independent_set_exhaustive(const Hypergraph& h, int cap) {
  if (h.vertex_count() > cap) {
    throw std::invalid_argument("max_independent_set_exhaustive: instance exceeds the size cap");
  }
  auto masks = edge_masks(h);
  const std::uint64_t total = std::uint64_t{1} << h.vertex_count();
  long best = -1;
  std::uint64_t best_set = 0;
  long nodes = 0;
  for (std::uint64_t s = 0; s < total; ++s) {
    ++nodes;
    if (std::popcount(s) <= best) continue;
    bool ok = true;
    for (std::uint64_t e : masks) {
      if ((s & e) == e) {
        ok = false;
        break;
      }
    }
    if (ok) {
      best = std::popcount(s);
      best_set = s;
    }
  }
  return OracleResult{best, mask_to_set(best_set), nodes};
}

namespace {

// Feasibility search for an independent set hitting exact per-part counts,
// with an optional at-most-one-per-block constraint.
struct BalancedSearch {
  const PartiteHypergraph& h;
  const std::vector<std::uint64_t>& edges;
  std::vector<long> target;  // per part
  int block = 0;             // 0 = no block constraint
  long nodes = 0;
  bool found = false;
  std::uint64_t witness = 0;

  std::vector<long> count;
  std::vector<char> block_used;

  bool completes_edge(std::uint64_t chosen, int gv) const {
    const std::uint64_t bit = std::uint64_t{1} << gv;
    for (std::int32_t eid : h.incident(gv)) {
      std::uint64_t e = edges[static_cast<size_t>(eid)];
      if ((e & ~(chosen | bit)) == 0) return true;
    }
    return false;
  }

  void run(int pos, std::uint64_t chosen) {
    if (found) return;
    ++nodes;
    const int r = h.parts();
    const int n = h.part_size();
    bool done = true;
    for (int i = 0; i < r; ++i) {
      if (count[static_cast<size_t>(i)] != target[static_cast<size_t>(i)]) done = false;
    }
    if (done) {
      found = true;
      witness = chosen;
      return;
    }
    if (pos >= r * n) return;
    const int part = pos / n;
    const int idx = pos % n;
    // earlier parts can no longer change
    for (int i = 0; i < part; ++i) {
      if (count[static_cast<size_t>(i)] != target[static_cast<size_t>(i)]) return;
    }
    // remaining capacity in this part must cover the deficit
    if (target[static_cast<size_t>(part)] - count[static_cast<size_t>(part)] > n - idx) return;

    // take pos
    if (count[static_cast<size_t>(part)] < target[static_cast<size_t>(part)]) {
      bool can = !completes_edge(chosen, pos);
      int bidx = -1;
      if (can && block > 0) {
        bidx = part * (n / block) + idx / block;
        if (block_used[static_cast<size_t>(bidx)]) can = false;
      }
      if (can) {
        ++count[static_cast<size_t>(part)];
        if (bidx >= 0) block_used[static_cast<size_t>(bidx)] = 1;
        run(pos + 1, chosen | (std::uint64_t{1} << pos));
        if (found) return;
        --count[static_cast<size_t>(part)];
        if (bidx >= 0) block_used[static_cast<size_t>(bidx)] = 0;
      }
    }
    // skip pos
    run(pos + 1, chosen);
  }
};

// Candidate sizes t (descending) for which every gamma_i * t is integral and
// fits the per-part capacity.
std::vector<long> admissible_sizes(const GammaVector& gamma, int r, int n, long capacity_cap) {
  std::vector<long> sizes;
  for (long t = std::min<long>(static_cast<long>(r) * n, capacity_cap); t >= 0; --t) {
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      double w = gamma[i] * static_cast<double>(t);
      long nearest = std::llround(w);
      if (std::fabs(w - static_cast<double>(nearest)) > 1e-9 || nearest > n) ok = false;
    }
    if (ok) sizes.push_back(t);
  }
  return sizes;
}

OracleResult balanced_search(const PartiteHypergraph& h, const GammaVector& gamma, int block,
                             int cap) {
  if (gamma.size() != h.parts()) throw std::invalid_argument("balanced oracle: gamma size mismatch");
  if (h.vertex_count() > cap || h.vertex_count() > 63) {
    throw std::invalid_argument("balanced oracle: instance exceeds the size cap");
  }
  if (block > 0 && h.part_size() % block != 0) {
    throw std::invalid_argument("balanced oracle: block must divide the part size");
  }
  auto masks = edge_masks(h);
  long capacity_cap = static_cast<long>(h.parts()) * h.part_size();
  if (block > 0) {
    // at most one vertex per block in the best-filled part
    capacity_cap = static_cast<long>(h.parts()) * (h.part_size() / block);
  }
  OracleResult res;
  for (long t : admissible_sizes(gamma, h.parts(), h.part_size(), capacity_cap)) {
    BalancedSearch search{h, masks};
    search.block = block;
    search.target.resize(static_cast<size_t>(h.parts()));
    for (int i = 0; i < h.parts(); ++i) {
      search.target[static_cast<size_t>(i)] = std::llround(gamma[i] * static_cast<double>(t));
    }
    if (block > 0) {
      bool fits = true;
      for (int i = 0; i < h.parts(); ++i) {
        if (search.target[static_cast<size_t>(i)] > h.part_size() / block) fits = false;
      }
      if (!fits) continue;
    }
    search.count.assign(static_cast<size_t>(h.parts()), 0);
    search.block_used.assign(
        block > 0 ? static_cast<size_t>(h.parts()) * (static_cast<size_t>(h.part_size()) / block) : 0, 0);
    search.run(0, 0);
    res.nodes += search.nodes;
    if (search.found) {
      res.optimum = t;
      res.witness = mask_to_set(search.witness);
      return res;
    }
  }
  res.optimum = 0;
  return res;
}

bool mask_balanced(const PartiteHypergraph& h, std::uint64_t mask, const GammaVector& gamma) {
  std::vector<long> counts(static_cast<size_t>(h.parts()), 0);
  std::uint64_t m = mask;
  while (m) {
    int v = std::countr_zero(m);
    ++counts[static_cast<size_t>(h.part_of(v))];
    m &= m - 1;
  }
  long t = std::popcount(mask);
  for (int i = 0; i < h.parts(); ++i) {
    double w = gamma[i] * static_cast<double>(t);
    long nearest = std::llround(w);
    if (std::fabs(w - static_cast<double>(nearest)) > 1e-9) return false;
    if (counts[static_cast<size_t>(i)] != nearest) return false;
  }
  return true;
}

bool mask_block_ok(const PartiteHypergraph& h, std::uint64_t mask, int block) {
  if (block <= 0) return true;
  std::vector<int> used(static_cast<size_t>(h.parts()) * (static_cast<size_t>(h.part_size()) / block), 0);
  std::uint64_t m = mask;
  while (m) {
    int v = std::countr_zero(m);
    int part = h.part_of(v);
    int idx = h.index_of(v);
    if (++used[static_cast<size_t>(part) * (static_cast<size_t>(h.part_size()) / block) +
               static_cast<size_t>(idx / block)] > 1) {
      return false;
    }
    m &= m - 1;
  }
  return true;
}

OracleResult balanced_exhaustive(const PartiteHypergraph& h, const GammaVector& gamma, int block,
                                 int cap) {
  if (h.vertex_count() > cap) {
    throw std::invalid_argument("balanced exhaustive oracle: instance exceeds the size cap");
  }
  if (block > 0 && h.part_size() % block != 0) {
    throw std::invalid_argument("balanced exhaustive oracle: block must divide the part size");
  }
  auto masks = edge_masks(h);
  const std::uint64_t total = std::uint64_t{1} << h.vertex_count();
  long best = 0;
  std::uint64_t best_set = 0;
  long nodes = 0;
  for (std::uint64_t s = 0; s < total; ++s) {
    ++nodes;
    if (std::popcount(s) <= best && s != 0) continue;
    bool ok = true;
    for (std::uint64_t e : masks) {
      if ((s & e) == e) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (!mask_balanced(h, s, gamma)) continue;
    if (!mask_block_ok(h, s, block)) continue;
    if (std::popcount(s) > best) {
      best = std::popcount(s);
      best_set = s;
    }
  }
  return OracleResult{best, mask_to_set(best_set), nodes};
}

}  // namespace

OracleResult max_gamma_balanced(const PartiteHypergraph& h, const GammaVector& gamma, int cap) {
  return balanced_search(h, gamma, 0, cap);
}

OracleResult max_gamma_balanced_exhaustive(const PartiteHypergraph& h, const GammaVector& gamma,
                                           int cap) {
  return balanced_exhaustive(h, gamma, 0, cap);
}

OracleResult max_p_independent(const PartiteHypergraph& h, const GammaVector& gamma, int block,
                               int cap) {
  if (block < 1) throw std::invalid_argument("max_p_independent: block must be >= 1");
  return balanced_search(h, gamma, block, cap);
}

OracleResult max_p_independent_exhaustive(const PartiteHypergraph& h, const GammaVector& gamma,
                                          int block, int cap) {
  if (block < 1) throw std::invalid_argument("max_p_independent_exhaustive: block must be >= 1");
  return balanced_exhaustive(h, gamma, block, cap);
}

}  // namespace hyperis
