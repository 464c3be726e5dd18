#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "hyperis/hypergraph.hpp"
#include "hyperis/lowdeg.hpp"
#include "hyperis/models.hpp"
#include "hyperis/stats.hpp"

namespace hyperis {

// Incremental evaluation of a polynomial set along an interpolation path.
// Each monomial keeps a count of its absent coordinates, so a coordinate
// flip touches only the monomials containing it.
class PolynomialPathTracker {
 public:
  PolynomialPathTracker(const VertexPolynomialSet& f, const std::vector<std::uint8_t>& state);

  // Applies one step delta and returns the squared norm of the change of f.
  double apply(const InterpolationPath::StepDelta& delta);

  const std::vector<double>& values() const { return values_; }
  // Vertices whose value changed in the last apply(), with their old values.
  const std::vector<std::pair<std::int32_t, double>>& last_changes() const { return last_changes_; }

 private:
  const VertexPolynomialSet& f_;
  std::vector<double> values_;
  std::vector<std::vector<int>> missing_;  // per vertex, per term: absent coordinate count
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::int32_t, std::int32_t>>> index_;
  std::vector<std::pair<std::int32_t, double>> last_changes_;
};

// Fresh-instance Monte Carlo estimate of E ||f(A)||^2.
double estimate_mean_square_norm(const VertexPolynomialSet& f, std::uint64_t m, double p,
                                 long trials, Seed seed);

// Steps of the path whose squared change in f reaches c * norm_ref.  Steps
// where the state (and hence f) did not change are not hypercube edges and
// are never flagged.
struct CBadReport {
  std::vector<std::uint64_t> bad_steps;
  double max_step_change = 0.0;
  double threshold = 0.0;
  std::uint64_t steps = 0;
};

CBadReport detect_c_bad(const VertexPolynomialSet& f, InterpolationPath& path, double c,
                        double norm_ref);

// Monte Carlo estimate of P[no step of a full Gamma-sweep path is c-bad],
// reported against the lower bound p^{4 Gamma D / c}.
struct StabilityReport {
  Estimate probability;
  double bound = 0.0;
  bool pass = false;  // probability + 4 se >= bound
  double norm_ref = 0.0;
  double threshold = 0.0;
  int degree = 0;
  double c = 0.0;
  long gamma_sweeps = 0;
};

StabilityReport estimate_stability(const VertexPolynomialSet& f, std::uint64_t m, double p,
                                   int gamma_sweeps, double c, long trials, Seed seed);

// Path experiment: an algorithm producing a vertex set per instance is run
// along an interpolation path; the first-crossing sets S_1..S_K are recorded
// together with the empirical window/size/independence conditions.
struct PathExperiment {
  enum class Model { uniform, partite };
  Model model = Model::partite;
  int r = 2;
  int n = 0;
  double d = 0.0;  // average degree; p is derived when left at 0
  double p = 0.0;
  std::vector<double> gamma;  // partite proportions; empty = uniform 1/r
  double epsilon = 0.2;
  int K = 2;
  int Gamma = 1;
  double c = 0.0;         // c-bad flagging constant (0 disables)
  double norm_ref = 0.0;  // E||f||^2 reference for flagging
  double eta = 0.0;
  std::uint64_t stride = 0;      // callback flavor: 0 = auto (1 if rn <= 500 else m/100)
  std::uint64_t check_every = 0; // polynomial flavor: full-rounding audit period (0 = auto)
  Seed seed;

  // algorithm under test: a polynomial (tracked incrementally) ...
  const VertexPolynomialSet* poly = nullptr;
  // ... or a generic callback evaluated at the stride
  std::function<VertexSet(const std::vector<std::uint8_t>& state)> algorithm;

  double derived_p() const;
  std::uint64_t coordinate_space() const;
};

struct OverlapRecord {
  struct Snapshot {
    int k = 0;
    std::uint64_t t = 0;
    long set_size = 0;
    long new_mass = 0;
    bool window_ok = false;
    bool size_ok = false;
    bool independent_ok = false;
  };
  std::vector<Snapshot> sets;
  bool process_failed = false;
  int reached_k = 0;
  long max_step_hamming = 0;
  double window_lower = 0.0;
  double window_upper = 0.0;
  std::uint64_t steps = 0;
  long bad_steps = 0;
};

// Optional per-step row sink (t, step_hamming, set_size, new_mass, k_index, bad_step).
using PathRowSink =
    std::function<void(std::uint64_t, long, long, long, int, bool)>;

OverlapRecord build_overlap_sequence(const PathExperiment& exp, const PathRowSink& sink = {});

// Runs the algorithm on fresh instances and reports the overlap profile with
// a fixed vertex set, against the epsilon-scaled intersection thresholds.
struct FixedSetOverlap {
  long trials = 0;
  std::vector<long> max_overlap;     // per part; single entry for the uniform model
  std::vector<double> mean_overlap;
  std::vector<double> threshold;
  std::vector<double> fixed_scale;   // |S_i| in the lemma's density unit
  long trials_below_threshold = 0;   // trials with every part's overlap below threshold
};

FixedSetOverlap measure_fixed_set_overlap_uniform(
    const std::function<VertexSet(const Hypergraph&, Seed)>& alg, const VertexSet& fixed, int n,
    int r, double d, double epsilon, long trials, Seed seed);

FixedSetOverlap measure_fixed_set_overlap_partite(
    const std::function<VertexSet(const PartiteHypergraph&, Seed)>& alg, const VertexSet& fixed,
    int r, int n, double d, const GammaVector& gamma, double epsilon, long trials, Seed seed);

}  // namespace hyperis
