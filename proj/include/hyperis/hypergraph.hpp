#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hyperis {

// Sorted set of vertex indices.  For partite hypergraphs the members are
// global indices part * n + index_within_part.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<std::int32_t> members);
  static VertexSet all(int n);

  bool contains(std::int32_t v) const;
  long size() const { return static_cast<long>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<std::int32_t>& members() const { return members_; }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool operator==(const VertexSet&) const = default;

 private:
  std::vector<std::int32_t> members_;  // sorted, unique
};

long symmetric_difference_size(const VertexSet& a, const VertexSet& b);

// Per-part proportions of a balanced independent set.  Entries lie strictly
// in (0,1) and sum to 1 within 1e-12.
class GammaVector {
 public:
  explicit GammaVector(std::vector<double> entries);
  static GammaVector uniform(int r);

  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }

  // Index of the largest entry, ties broken by smallest index.
  int argmax() const;
  double product() const;

 private:
  std::vector<double> entries_;
};

// r-uniform hypergraph on vertices [0, n).  Edges are canonical: each edge
// internally sorted ascending, the edge list sorted lexicographically, and
// duplicates removed.  Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;  // empty graph
  Hypergraph(int n, int r, const std::vector<std::vector<int>>& edges);
  static Hypergraph from_flat(int n, int r, std::vector<std::int32_t> flat);

  int vertex_count() const { return n_; }
  int uniformity() const { return r_; }
  long edge_count() const { return static_cast<long>(flat_.size()) / r_; }

  std::span<const std::int32_t> edge(long i) const {
    return {flat_.data() + i * r_, static_cast<size_t>(r_)};
  }
  const std::vector<std::int32_t>& flat_edges() const { return flat_; }

  // Ids of edges containing v.
  std::span<const std::int32_t> incident(int v) const {
    return {inc_.data() + inc_off_[static_cast<size_t>(v)],
            static_cast<size_t>(inc_off_[static_cast<size_t>(v) + 1] -
                                inc_off_[static_cast<size_t>(v)])};
  }
  long degree(int v) const { return inc_off_[static_cast<size_t>(v) + 1] - inc_off_[static_cast<size_t>(v)]; }

  bool operator==(const Hypergraph& o) const {
    return n_ == o.n_ && r_ == o.r_ && flat_ == o.flat_;
  }

 private:
  void build_incidence();

  int n_ = 0, r_ = 2;
  std::vector<std::int32_t> flat_;     // m * r, canonical order
  std::vector<std::int64_t> inc_off_;  // CSR offsets, size n+1
  std::vector<std::int32_t> inc_;      // edge ids
};

// r-uniform r-partite hypergraph with n vertices per part.  An edge is an
// r-tuple whose i-th entry is an index in [0, n) within part i.  Canonical
// lexicographic tuple order, duplicates removed.  Immutable.
class PartiteHypergraph {
 public:
  PartiteHypergraph(int r, int n, const std::vector<std::vector<int>>& edges);
  static PartiteHypergraph from_flat(int r, int n, std::vector<std::int32_t> flat);

  int parts() const { return r_; }
  int part_size() const { return n_; }
  int vertex_count() const { return r_ * n_; }
  long edge_count() const { return static_cast<long>(flat_.size()) / r_; }

  std::span<const std::int32_t> edge(long i) const {
    return {flat_.data() + i * r_, static_cast<size_t>(r_)};
  }
  const std::vector<std::int32_t>& flat_edges() const { return flat_; }

  int global_id(int part, int index) const { return part * n_ + index; }
  int part_of(int global) const { return global / n_; }
  int index_of(int global) const { return global % n_; }

  // Ids of edges containing the global vertex v.
  std::span<const std::int32_t> incident(int global_v) const {
    return {inc_.data() + inc_off_[static_cast<size_t>(global_v)],
            static_cast<size_t>(inc_off_[static_cast<size_t>(global_v) + 1] -
                                inc_off_[static_cast<size_t>(global_v)])};
  }

  // Mixed-radix rank of an edge tuple in [0, n^r); inverse of decode.
  std::uint64_t coordinate_rank(std::span<const std::int32_t> tuple) const;
  void decode_coordinate(std::uint64_t rank, std::int32_t* out) const;
  std::uint64_t coordinate_space() const;

  bool operator==(const PartiteHypergraph& o) const {
    return n_ == o.n_ && r_ == o.r_ && flat_ == o.flat_;
  }

 private:
  PartiteHypergraph() = default;
  void build_incidence();

  int r_ = 2, n_ = 0;
  std::vector<std::int32_t> flat_;
  std::vector<std::int64_t> inc_off_;
  std::vector<std::int32_t> inc_;
};

// Rooted sub-hypergraph returned by neighborhood().  Local vertex ids are
// assigned in BFS order, so the root is always local id 0.
struct RootedView {
  Hypergraph graph;                    // over local ids
  std::vector<std::int32_t> to_host;   // local id -> host vertex id
  std::vector<int> depth;              // local id -> edge-distance from root

  int root() const { return 0; }
  long edge_count() const { return graph.edge_count(); }
  // A connected r-uniform hypergraph is acyclic iff #vertices = 1 + #edges*(r-1).
  bool is_hypertree() const {
    return graph.vertex_count() ==
           1 + static_cast<int>(graph.edge_count()) * (graph.uniformity() - 1);
  }
};

bool is_independent(const Hypergraph& h, const VertexSet& s);
bool is_independent(const PartiteHypergraph& h, const VertexSet& s);

// Exact balance: |S ∩ V_i| must equal gamma_i * |S| for every part, where
// gamma_i * |S| is required to be integral (tolerance 1e-9); otherwise false.
bool is_gamma_balanced(const PartiteHypergraph& h, const VertexSet& s, const GammaVector& gamma);

// All edges on a path of length <= s from v, with root v.
RootedView neighborhood(const Hypergraph& h, int v, int s);

// Plain-text hypergraph format.
//   uniform:  "n r m"          then m lines of r sorted vertex indices
//   partite:  "PARTITE r n m"  then m lines of r per-part indices
// Canonical edge order makes the round trip bit-exact.
void save_text(const Hypergraph& h, std::ostream& os);
void save_text(const PartiteHypergraph& h, std::ostream& os);
std::variant<Hypergraph, PartiteHypergraph> load_text(std::istream& is);

}  // namespace hyperis
