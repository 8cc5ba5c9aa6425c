#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "digraphon/digraph.hpp"
#include "digraphon/matrix.hpp"

namespace digraphon {

/// Bounded kernel on [0,1]^2 that is constant on J_i x J_j, where the blocks
/// J_1..J_k have the given measures.
class StepKernel {
 public:
  /// Throws kInvalidArgument unless measures are positive and sum to 1
  /// (within 1e-12), values is k x k and finite, and |values| <= bound.
  StepKernel(std::vector<double> measures, RealMatrix values, double bound);

  /// Bound defaults to max |value|.
  StepKernel(std::vector<double> measures, RealMatrix values);

  /// k equal blocks of measure 1/k.
  static StepKernel uniform_blocks(RealMatrix values);
  static StepKernel constant(double c);

  std::size_t k() const noexcept { return measures_.size(); }
  const std::vector<double>& measures() const noexcept { return measures_; }
  double measure(std::size_t i) const { return measures_[i]; }
  const RealMatrix& values() const noexcept { return values_; }
  double value(std::size_t i, std::size_t j) const { return values_(i, j); }
  double bound() const noexcept { return bound_; }

  /// B[i][j] = values[i][j] * measures[j]; its nonzero spectrum is the
  /// nonzero spectrum of the integral operator.
  RealMatrix transfer_matrix() const;

  /// True if both kernels use the same measures (exact comparison).
  bool same_structure(const StepKernel& other) const;

 private:
  std::vector<double> measures_;
  RealMatrix values_;
  double bound_;
};

/// Step kernel with W >= 0 and W(x,y) + W(y,x) <= 1.
class StepDigraphon : public StepKernel {
 public:
  StepDigraphon(std::vector<double> measures, RealMatrix values);
  /// Re-validates an existing kernel as a digraphon.
  explicit StepDigraphon(const StepKernel& kernel);

  static StepDigraphon uniform_blocks(RealMatrix values);
};

/// Limit object for digraphs that may contain antiparallel pairs: W1 is the
/// (symmetric) density of bidirected pairs, W2 of single directed edges.
class BidirectedStepPair {
 public:
  /// Requires equal measures, W1 symmetric in [0,1], W2 in [0,1], and
  /// W1 + W2 + W2^T <= 1 entrywise.
  BidirectedStepPair(std::vector<double> measures, RealMatrix w1, RealMatrix w2);

  std::size_t k() const noexcept { return w1_.k(); }
  const std::vector<double>& measures() const noexcept { return w1_.measures(); }
  const StepKernel& w1() const noexcept { return w1_; }
  const StepKernel& w2() const noexcept { return w2_; }

 private:
  StepKernel w1_;
  StepKernel w2_;
};

/// Step digraphon of a digraph: |G| blocks of measure 1/|G|, values = A_G.
/// Bidirected digraphs throw kType (use step_pair_from_digraph).
StepDigraphon step_from_digraph(const Digraph& g);

/// W1[i][j] = 1 iff i->j and j->i; W2[i][j] = 1 iff only i->j.
BidirectedStepPair step_pair_from_digraph(const Digraph& g);

/// t(H, W) as an exact weighted sum over block maps V(H) -> [k].
/// Budget: |H| <= 8 or k^|H| <= 1e8.
double hom_density_step(const Digraph& h, const StepKernel& w);

/// d(H, W) = |H|!/|Aut H| * integral of edge factors W(x_u,x_v) and, for every
/// unordered non-adjacent pair, (1 - W(x_u,x_v) - W(x_v,x_u)). |H| <= 5.
double subgraph_density_step(const Digraph& h, const StepDigraphon& w);

/// Homomorphism density for a bidirected pair: a bidirected pair of H takes
/// factor W1, a single edge takes W1 + W2. |H| <= 8.
double hom_density_pair(const Digraph& h, const BidirectedStepPair& pair);

struct CutNormResult {
  double value = 0.0;
  std::uint32_t rows = 0;     // optimal S as a bitmask over blocks
  std::uint32_t columns = 0;  // optimal T
};

/// Exact cut norm of a step kernel with k <= 24 blocks. The optimum over
/// [0,1]-valued g, h is attained at block indicator functions, so enumerating
/// S and picking the best T for each S is exact.
CutNormResult cut_norm_detail(const StepKernel& v);
double cut_norm(const StepKernel& v);

/// Entrywise difference a - b; structures must match (kStructure).
StepKernel difference(const StepKernel& a, const StepKernel& b);

/// d_cut(W1, W2) = ||W1 - W2||_cut on a shared block structure.
double cut_metric(const StepKernel& a, const StepKernel& b);

/// Minimum of d_cut(W1, W2 o pi) over block permutations pi after common
/// refinement. An upper bound for the cut distance, not the distance itself.
/// Requires equal-measure blocks after refinement (kStructure) and k <= 9.
double cut_distance_perm(const StepDigraphon& a, const StepDigraphon& b);

/// Refines both kernels onto the interval-overlap partition of their
/// cumulative measures. Each output represents the same function as its input.
std::pair<StepKernel, StepKernel> common_refinement(const StepKernel& a,
                                                    const StepKernel& b);

/// ||T_V||_{2->2}: the largest singular value of D^{1/2} M D^{1/2}.
double op_norm_2to2(const StepKernel& v);

/// Kernel of T_V T_U: values M_V D M_U, bound bound_V * bound_U.
StepKernel compose_step(const StepKernel& v, const StepKernel& u);

/// (||(Wn - W) W||, ||(Wn - W) Wn||) in the 2->2 operator norm.
std::pair<double, double> nu_convergence_gaps(const StepKernel& wn,
                                              const StepKernel& w);

/// W' = W1 + W2. Bounded by 1 but in general not a digraphon.
StepKernel collapse(const BidirectedStepPair& pair);

}  // namespace digraphon
