#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "digraphon/matrix.hpp"

namespace digraphon {

class StepDigraphon;
class BidirectedStepPair;

using Edge = std::pair<std::size_t, std::size_t>;

/// Finite loopless digraph stored as a dense 0/1 adjacency matrix.
///
/// Unless `allow_bidirected` is set, a pair of vertices carries at most one
/// edge (no antiparallel pairs). Immutable once constructed; out- and
/// in-neighbourhoods are also kept as bitsets for the enumeration routines.
class Digraph {
 public:
  /// Edgeless digraph on n vertices.
  explicit Digraph(std::size_t n, bool allow_bidirected = false);

  /// Throws kInvalidArgument on loops, out-of-range endpoints, or an
  /// antiparallel pair when allow_bidirected is false. Duplicate edges are
  /// collapsed.
  Digraph(std::size_t n, const std::vector<Edge>& edges, bool allow_bidirected);

  /// Validates the adjacency matrix (square, 0/1, zero diagonal, and the
  /// antiparallel rule).
  Digraph(const Matrix<std::uint8_t>& adjacency, bool allow_bidirected);

  std::size_t size() const noexcept { return n_; }
  bool allow_bidirected() const noexcept { return allow_bidirected_; }
  bool has_edge(std::size_t u, std::size_t v) const { return adj_(u, v) != 0; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Edges in row-major order.
  std::vector<Edge> edges() const;
  const Matrix<std::uint8_t>& adjacency() const noexcept { return adj_; }
  RealMatrix adjacency_real() const;

  /// True if some pair carries both u->v and v->u.
  bool has_antiparallel_pair() const;

  std::size_t words_per_row() const noexcept { return words_; }
  /// Bitset of out-neighbours of u (bit v set iff u->v).
  const std::uint64_t* out_bits(std::size_t u) const {
    return out_.data() + u * words_;
  }
  /// Bitset of in-neighbours of v (bit u set iff u->v).
  const std::uint64_t* in_bits(std::size_t v) const {
    return in_.data() + v * words_;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.allow_bidirected_ == b.allow_bidirected_ && a.adj_ == b.adj_;
  }

 private:
  void finish();

  std::size_t n_ = 0;
  bool allow_bidirected_ = false;
  Matrix<std::uint8_t> adj_;
  std::size_t edge_count_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
};

/// Cyclically oriented cycle 0->1->...->(l-1)->0. For l = 2 the result is the
/// bidirected two-vertex digraph. Throws for l < 2.
Digraph cycle_digraph(std::size_t length);

/// Every ordered pair of distinct vertices is an edge (bidirected).
Digraph complete_bidirected_digraph(std::size_t n);

/// Tr(A^l): the number of closed walks of length l, computed exactly.
/// Throws kOverflow instead of wrapping.
std::int64_t trace_power(const Digraph& g, std::size_t length);

/// Number of homomorphisms H -> G, by backtracking over vertex maps.
/// Budget: |H| <= 6 and |G|^(|H|-1) <= 1e9, otherwise kBudget.
std::uint64_t hom_count(const Digraph& h, const Digraph& g);

/// t(H, G) = hom_count / |G|^|H|.
double hom_density(const Digraph& h, const Digraph& g);

struct DensityEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of t(H, G) from `samples` uniform vertex maps.
DensityEstimate hom_density_sampled(const Digraph& h, const Digraph& g,
                                    std::size_t samples, std::uint64_t seed);

/// Induced subgraph density d(H, G): the fraction of |H|-subsets of V(G)
/// inducing a copy of H. Zero when |H| > |G|. |H| <= 5 and at most 1e8
/// subsets, otherwise kBudget.
double subgraph_density(const Digraph& h, const Digraph& g);

/// Number of automorphisms of H (permutation enumeration, |H| <= 8).
std::size_t automorphism_count(const Digraph& h);

/// n-vertex W-random digraph (never contains an antiparallel pair).
Digraph sample_w_random(const StepDigraphon& w, std::size_t n, std::uint64_t seed);

/// n-vertex random digraph from a bidirected pair (W1, W2): per unordered
/// pair, both edges with prob W1, one direction each with prob W2.
Digraph sample_bidirected_random(const BidirectedStepPair& pair, std::size_t n,
                                 std::uint64_t seed);

/// Simple undirected `degree`-regular graph on n2 vertices.
class UndirectedRegularGraph {
 public:
  /// Validates symmetry, zero diagonal and constant row sums.
  UndirectedRegularGraph(Matrix<std::uint8_t> adjacency, std::size_t degree);

  std::size_t size() const noexcept { return adj_.rows(); }
  std::size_t degree() const noexcept { return degree_; }
  const Matrix<std::uint8_t>& adjacency() const noexcept { return adj_; }
  RealMatrix adjacency_real() const;

 private:
  Matrix<std::uint8_t> adj_;
  std::size_t degree_;
};

/// Pairing model with switch repair and switch-chain mixing; deterministic in
/// the seed. Requires 1 <= degree < n2 and n2 * degree even. Throws
/// kGeneration after 10^4 restarts.
UndirectedRegularGraph random_regular_graph(std::size_t n2, std::size_t degree,
                                            std::uint64_t seed);

/// Adjacency [[0, A], [A, 0]]; every edge is part of an antiparallel pair.
Digraph build_h1(const UndirectedRegularGraph& a);

/// Adjacency [[0, A], [J - A, 0]]; no antiparallel pairs.
Digraph build_h2(const UndirectedRegularGraph& a);

}  // namespace digraphon
