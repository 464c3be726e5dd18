#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperis/hypergraph.hpp"
#include "hyperis/rng.hpp"
#include "hyperis/stats.hpp"

namespace hyperis {

// Exact C(n, k); nullopt if the value exceeds 2^62 (desk-scale guard).
std::optional<std::uint64_t> binom_checked(std::uint64_t n, std::uint64_t k);

// Lexicographic rank of a sorted r-subset of [0, n) and its inverse.
std::uint64_t rank_combination(int n, std::span<const std::int32_t> combo);
void unrank_combination(int n, int r, std::uint64_t rank, std::int32_t* out);

// Erdos-Renyi r-uniform hypergraph: each of the C(n,r) potential edges kept
// independently with probability p.  Sparse instances are produced by
// geometric skip-sampling over the lexicographic edge ranks, which matches
// the one-Bernoulli-per-edge distribution exactly.
Hypergraph sample_uniform_hypergraph(int n, int r, double p, Seed seed);

// Balanced r-partite analogue over the n^r mixed-radix edge ranks.
PartiteHypergraph sample_partite_hypergraph(int r, int n, double p, Seed seed);

// Naive one-draw-per-coordinate samplers, kept as distribution oracles for
// the skip-samplers on small coordinate spaces.
Hypergraph sample_uniform_hypergraph_naive(int n, int r, double p, Seed seed);
PartiteHypergraph sample_partite_hypergraph_naive(int r, int n, double p, Seed seed);

// Level-structured rooted r-uniform tree.  Each edge joins a parent vertex at
// level k to r-1 fresh children at level k+1; edge(0) is the parent.
struct RootedHypertree {
  int r = 2;
  int depth_cap = 0;                         // generation level cap
  std::vector<std::int32_t> level;           // per vertex; root = vertex 0 at level 0
  std::vector<std::int32_t> edges;           // flat, r entries per edge, parent first
  long vertex_count() const { return static_cast<long>(level.size()); }
  long edge_count() const { return static_cast<long>(edges.size()) / r; }
  std::span<const std::int32_t> edge(long i) const {
    return {edges.data() + i * r, static_cast<size_t>(r)};
  }
  // maximum level actually generated (0 for an extinct or depth-0 tree)
  int depth() const { return level.empty() ? 0 : *std::max_element(level.begin(), level.end()); }
  Hypergraph to_hypergraph() const;
};

// Poisson(d) Galton-Watson hypertree truncated at `depth` levels: every
// vertex at level k < depth spawns Pois(d) offspring edges.
RootedHypertree sample_gw_hypertree(double d, int r, int depth, Seed seed);

// Deterministic Delta-regular hypertree: the root has Delta offspring edges,
// every deeper vertex (above the cap) has Delta-1 offspring edges plus its
// parent edge.
RootedHypertree build_regular_hypertree(int delta, int r, int depth);

// Edge cap used when adapting the regular-tree greedy to Galton-Watson trees.
long default_degree_cap(double d);

// Sequence of correlated instances produced by cyclically resampling one
// edge coordinate per step; the state is exposed incrementally as
// (coordinate, old value, new value) deltas.
class InterpolationPath {
 public:
  struct StepDelta {
    std::uint64_t coord = 0;
    bool old_value = false;
    bool new_value = false;
    bool changed() const { return old_value != new_value; }
  };

  // Base state sampled from Bernoulli(p)^m using seed stream "base"; the
  // resampling draws come from stream "steps".
  InterpolationPath(std::uint64_t m, double p, std::uint64_t total_steps, Seed seed);

  static InterpolationPath for_uniform(int n, int r, double p, std::uint64_t total_steps, Seed seed);
  static InterpolationPath for_partite(int r, int n, double p, std::uint64_t total_steps, Seed seed);

  std::uint64_t coordinate_space() const { return m_; }
  std::uint64_t total_steps() const { return total_steps_; }
  std::uint64_t step() const { return t_; }
  double probability() const { return p_; }

  bool value(std::uint64_t coord) const { return state_[coord] != 0; }
  const std::vector<std::uint8_t>& state() const { return state_; }

  // Coordinate resampled at step t (1-based), i.e. (t-1) mod m.
  std::uint64_t coordinate_at(std::uint64_t t) const { return (t - 1) % m_; }

  StepDelta advance();  // step t_ -> t_+1; throws std::out_of_range past total_steps

 private:
  std::uint64_t m_ = 0;
  double p_ = 0.0;
  std::uint64_t total_steps_ = 0;
  std::uint64_t t_ = 0;
  std::vector<std::uint8_t> state_;
  Rng step_rng_;
};

// Monte Carlo estimate of the probability that the root of a Poisson(d)
// Galton-Watson hypertree and all its level-1 vertices have degree <= delta.
Estimate estimate_event_root_low_degree(double d, long delta, int r, long trials, Seed seed);

}  // namespace hyperis
