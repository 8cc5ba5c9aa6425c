#include "digraphon/stepkernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "digraphon/eigen.hpp"
#include "digraphon/error.hpp"

namespace digraphon {

namespace {

constexpr double kMeasureTolerance = 1e-12;
constexpr double kValueTolerance = 1e-12;
constexpr double kStepMapBudget = 1e8;
constexpr std::size_t kMaxCutNormBlocks = 24;
constexpr std::size_t kMaxPermutationBlocks = 9;
constexpr std::size_t kMaxRefinementBlocks = 10000;

void require_structure(const StepKernel& a, const StepKernel& b, const char* op) {
  if (!a.same_structure(b))
    fail(ErrorKind::kStructure,
         std::string(op) + ": kernels must share block structure (use common_refinement)");
}

double step_map_count(std::size_t k, std::size_t vertices) {
  return std::pow(static_cast<double>(k), static_cast<double>(vertices));
}

// Sum over all maps V(H) -> [k] of (product of block measures) times the
// product of factor(u, a, v, b) over pattern pairs u < v mapped to blocks
// (a, b). Branches whose partial weight is zero are pruned.
template <typename PairFactor>
double weighted_block_sum(std::size_t vertices, const StepKernel& w,
                          const PairFactor& factor) {
  const std::size_t k = w.k();
  std::vector<std::size_t> blocks(vertices, 0);
  double total = 0.0;
  auto place = [&](auto& self, std::size_t v, double weight) -> void {
    if (v == vertices) {
      total += weight;
      return;
    }
    for (std::size_t b = 0; b < k; ++b) {
      double next = weight * w.measure(b);
      for (std::size_t u = 0; u < v && next != 0.0; ++u)
        next *= factor(u, blocks[u], v, b);
      if (next == 0.0) continue;
      blocks[v] = b;
      self(self, v + 1, next);
    }
  };
  place(place, 0, 1.0);
  return total;
}

}  // namespace

// --- types -----------------------------------------------------------------

StepKernel::StepKernel(std::vector<double> measures, RealMatrix values, double bound)
    : measures_(std::move(measures)), values_(std::move(values)), bound_(bound) {
  const std::size_t k = measures_.size();
  require(k >= 1, "step kernel needs at least one block");
  require(values_.rows() == k && values_.cols() == k,
          "step kernel values must be a k x k matrix");
  double sum = 0.0;
  for (double m : measures_) {
    require(std::isfinite(m) && m > 0.0, "block measures must be positive");
    sum += m;
  }
  require(std::abs(sum - 1.0) <= kMeasureTolerance,
          "block measures must sum to 1 (got " + std::to_string(sum) + ")");
  require(std::isfinite(bound_) && bound_ >= 0.0, "kernel bound must be finite");
  for (double v : values_.data()) {
    require(std::isfinite(v), "kernel values must be finite");
    require(std::abs(v) <= bound_ * (1.0 + kValueTolerance) + kValueTolerance,
            "kernel value exceeds its bound");
  }
}

StepKernel::StepKernel(std::vector<double> measures, RealMatrix values)
    : StepKernel(std::move(measures), values, [&values] {
        double b = 0.0;
        for (double v : values.data()) b = std::max(b, std::abs(v));
        return b;
      }()) {}

StepKernel StepKernel::uniform_blocks(RealMatrix values) {
  const std::size_t k = values.rows();
  require(k >= 1, "step kernel needs at least one block");
  return StepKernel(std::vector<double>(k, 1.0 / static_cast<double>(k)), std::move(values));
}

StepKernel StepKernel::constant(double c) {
  return StepKernel({1.0}, RealMatrix(1, 1, c));
}

RealMatrix StepKernel::transfer_matrix() const {
  RealMatrix b = values_;
  for (std::size_t i = 0; i < k(); ++i)
    for (std::size_t j = 0; j < k(); ++j) b(i, j) *= measures_[j];
  return b;
}

bool StepKernel::same_structure(const StepKernel& other) const {
  return measures_ == other.measures_;
}

namespace {

const StepKernel& check_digraphon(const StepKernel& w) {
  for (std::size_t i = 0; i < w.k(); ++i) {
    for (std::size_t j = 0; j < w.k(); ++j) {
      require(w.value(i, j) >= 0.0, "digraphon values must be non-negative");
      require(w.value(i, j) + w.value(j, i) <= 1.0 + kValueTolerance,
              "digraphon requires W(x,y) + W(y,x) <= 1 (blocks " + std::to_string(i) +
                  ", " + std::to_string(j) + ")");
    }
  }
  return w;
}

}  // namespace

StepDigraphon::StepDigraphon(std::vector<double> measures, RealMatrix values)
    : StepKernel(std::move(measures), std::move(values)) {
  check_digraphon(*this);
}

StepDigraphon::StepDigraphon(const StepKernel& kernel)
    : StepKernel(check_digraphon(kernel)) {}

StepDigraphon StepDigraphon::uniform_blocks(RealMatrix values) {
  return StepDigraphon(StepKernel::uniform_blocks(std::move(values)));
}

BidirectedStepPair::BidirectedStepPair(std::vector<double> measures, RealMatrix w1,
                                       RealMatrix w2)
    : w1_(measures, std::move(w1), 1.0), w2_(std::move(measures), std::move(w2), 1.0) {
  const std::size_t k = w1_.k();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double a = w1_.value(i, j);
      const double b = w2_.value(i, j);
      require(a >= 0.0 && b >= 0.0, "bidirected pair values must be non-negative");
      require(std::abs(a - w1_.value(j, i)) <= kValueTolerance, "W1 must be symmetric");
      require(a + b + w2_.value(j, i) <= 1.0 + kValueTolerance,
              "bidirected pair requires W1 + W2 + W2^T <= 1");
    }
  }
}

// --- conversions ---------------------------------------------------------------

StepDigraphon step_from_digraph(const Digraph& g) {
  if (g.allow_bidirected())
    fail(ErrorKind::kType,
         "step_from_digraph: bidirected digraphs map to a pair; use step_pair_from_digraph");
  return StepDigraphon::uniform_blocks(g.adjacency_real());
}

BidirectedStepPair step_pair_from_digraph(const Digraph& g) {
  const std::size_t n = g.size();
  RealMatrix w1(n, n);
  RealMatrix w2(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.has_edge(i, j)) continue;
      (g.has_edge(j, i) ? w1 : w2)(i, j) = 1.0;
    }
  }
  return BidirectedStepPair(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                            std::move(w1), std::move(w2));
}

// --- densities -----------------------------------------------------------------

double hom_density_step(const Digraph& h, const StepKernel& w) {
  if (step_map_count(w.k(), h.size()) > kStepMapBudget)
    fail(ErrorKind::kBudget, "hom_density_step: k^|H| exceeds 1e8 block maps");
  return weighted_block_sum(h.size(), w, [&](std::size_t u, std::size_t a, std::size_t v,
                                             std::size_t b) {
    double f = 1.0;
    if (h.has_edge(u, v)) f *= w.value(a, b);
    if (h.has_edge(v, u)) f *= w.value(b, a);
    return f;
  });
}

double subgraph_density_step(const Digraph& h, const StepDigraphon& w) {
  if (h.size() > 5)
    fail(ErrorKind::kBudget, "subgraph_density_step supports patterns of at most 5 vertices");
  // A W-random digraph never contains an antiparallel pair.
  if (h.has_antiparallel_pair()) return 0.0;
  const double integral = weighted_block_sum(
      h.size(), w, [&](std::size_t u, std::size_t a, std::size_t v, std::size_t b) {
        if (h.has_edge(u, v)) return w.value(a, b);
        if (h.has_edge(v, u)) return w.value(b, a);
        return 1.0 - w.value(a, b) - w.value(b, a);
      });
  double labelings = 1.0;
  for (std::size_t i = 2; i <= h.size(); ++i) labelings *= static_cast<double>(i);
  return labelings / static_cast<double>(automorphism_count(h)) * integral;
}

double hom_density_pair(const Digraph& h, const BidirectedStepPair& pair) {
  if (h.size() > 8)
    fail(ErrorKind::kBudget, "hom_density_pair supports patterns of at most 8 vertices");
  if (step_map_count(pair.k(), h.size()) > kStepMapBudget)
    fail(ErrorKind::kBudget, "hom_density_pair: k^|H| exceeds 1e8 block maps");
  const StepKernel& w1 = pair.w1();
  const StepKernel& w2 = pair.w2();
  return weighted_block_sum(
      h.size(), w1, [&](std::size_t u, std::size_t a, std::size_t v, std::size_t b) {
        const bool forward = h.has_edge(u, v);
        const bool backward = h.has_edge(v, u);
        if (forward && backward) return w1.value(a, b);
        if (forward) return w1.value(a, b) + w2.value(a, b);
        if (backward) return w1.value(b, a) + w2.value(b, a);
        return 1.0;
      });
}

// --- cut norm and metrics -----------------------------------------------------

CutNormResult cut_norm_detail(const StepKernel& v) {
  const std::size_t k = v.k();
  if (k > kMaxCutNormBlocks)
    fail(ErrorKind::kBudget, "cut_norm: exact enumeration limited to 24 blocks");

  // Weighted cells m_i m_j V_ij.
  RealMatrix cell(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) cell(i, j) = v.measure(i) * v.measure(j) * v.value(i, j);

  const double tie = 1e-13 * std::max(1.0, v.bound());
  CutNormResult best;
  std::vector<double> column(k, 0.0);
  std::uint32_t rows = 0;
  const std::uint64_t total = std::uint64_t{1} << k;

  auto consider = [&](std::uint32_t s) {
    double pos = 0.0;
    double neg = 0.0;
    std::uint32_t pos_mask = 0;
    std::uint32_t neg_mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (column[j] > 0) {
        pos += column[j];
        pos_mask |= std::uint32_t{1} << j;
      } else if (column[j] < 0) {
        neg -= column[j];
        neg_mask |= std::uint32_t{1} << j;
      }
    }
    auto offer = [&](double value, std::uint32_t t) {
      if (value > best.value + tie ||
          (value >= best.value - tie && std::pair(s, t) < std::pair(best.rows, best.columns))) {
        best = {value, s, t};
      }
    };
    offer(pos, pos_mask);
    offer(neg, neg_mask);
  };

  for (std::uint64_t g = 1; g < total; ++g) {
    const int bit = std::countr_zero(g);
    rows ^= std::uint32_t{1} << bit;
    if ((g & 4095) == 0) {
      std::fill(column.begin(), column.end(), 0.0);
      for (std::size_t i = 0; i < k; ++i)
        if (rows & (std::uint32_t{1} << i))
          for (std::size_t j = 0; j < k; ++j) column[j] += cell(i, j);
    } else {
      const double sign = (rows >> bit) & 1 ? 1.0 : -1.0;
      for (std::size_t j = 0; j < k; ++j) column[j] += sign * cell(bit, j);
    }
    consider(rows);
  }
  return best;
}

double cut_norm(const StepKernel& v) { return cut_norm_detail(v).value; }

StepKernel difference(const StepKernel& a, const StepKernel& b) {
  require_structure(a, b, "difference");
  RealMatrix d = a.values();
  for (std::size_t i = 0; i < a.k(); ++i)
    for (std::size_t j = 0; j < a.k(); ++j) d(i, j) -= b.value(i, j);
  return StepKernel(a.measures(), std::move(d), a.bound() + b.bound());
}

double cut_metric(const StepKernel& a, const StepKernel& b) {
  require_structure(a, b, "cut_metric");
  return cut_norm(difference(a, b));
}

std::pair<StepKernel, StepKernel> common_refinement(const StepKernel& a,
                                                    const StepKernel& b) {
  if (a.same_structure(b)) return {a, b};

  // Merge the two cumulative boundary sequences; boundaries closer than the
  // measure tolerance are treated as one.
  std::vector<double> cut_a(a.k() + 1, 0.0);
  std::vector<double> cut_b(b.k() + 1, 0.0);
  for (std::size_t i = 0; i < a.k(); ++i) cut_a[i + 1] = cut_a[i] + a.measure(i);
  for (std::size_t j = 0; j < b.k(); ++j) cut_b[j + 1] = cut_b[j] + b.measure(j);
  cut_a.back() = cut_b.back() = 1.0;

  std::vector<double> measures;
  std::vector<std::size_t> block_a;
  std::vector<std::size_t> block_b;
  std::size_t i = 0;
  std::size_t j = 0;
  double start = 0.0;
  constexpr double kMerge = 1e-13;
  while (i < a.k() && j < b.k()) {
    const double end_a = cut_a[i + 1];
    const double end_b = cut_b[j + 1];
    const double end = std::min(end_a, end_b);
    if (end - start > kMerge) {
      measures.push_back(end - start);
      block_a.push_back(i);
      block_b.push_back(j);
      if (measures.size() > kMaxRefinementBlocks)
        fail(ErrorKind::kBudget, "common_refinement exceeds 10^4 blocks");
      start = end;
    }
    if (end_a - end <= kMerge) ++i;
    if (end_b - end <= kMerge) ++j;
  }
  // Renormalise away accumulated rounding so the measures sum to 1.
  const double sum = std::accumulate(measures.begin(), measures.end(), 0.0);
  for (double& m : measures) m /= sum;

  const std::size_t k = measures.size();
  RealMatrix va(k, k);
  RealMatrix vb(k, k);
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < k; ++q) {
      va(p, q) = a.value(block_a[p], block_a[q]);
      vb(p, q) = b.value(block_b[p], block_b[q]);
    }
  }
  return {StepKernel(measures, std::move(va), a.bound()),
          StepKernel(measures, std::move(vb), b.bound())};
}

double cut_distance_perm(const StepDigraphon& a, const StepDigraphon& b) {
  auto [ra, rb] = common_refinement(a, b);
  const std::size_t k = ra.k();
  const double equal = 1.0 / static_cast<double>(k);
  for (double m : ra.measures())
    if (std::abs(m - equal) > kMeasureTolerance)
      fail(ErrorKind::kStructure,
           "cut_distance_perm needs equal-measure blocks after refinement");
  if (k > kMaxPermutationBlocks)
    fail(ErrorKind::kBudget, "cut_distance_perm: permutation search limited to 9 blocks");

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  RealMatrix diff(k, k);
  do {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        diff(i, j) = ra.value(i, j) - rb.value(perm[i], perm[j]);
    best = std::min(best, cut_norm(StepKernel(ra.measures(), diff, ra.bound() + rb.bound())));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// --- operators -------------------------------------------------------------------

double op_norm_2to2(const StepKernel& v) {
  const std::size_t k = v.k();
  RealMatrix n(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      n(i, j) = std::sqrt(v.measure(i)) * v.value(i, j) * std::sqrt(v.measure(j));
  const RealMatrix gram = multiply(n.transposed(), n);
  const double top = symmetric_eigenvalues(gram).back();
  return std::sqrt(std::max(0.0, top));
}

StepKernel compose_step(const StepKernel& v, const StepKernel& u) {
  require_structure(v, u, "compose_step");
  const std::size_t k = v.k();
  RealMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t m = 0; m < k; ++m) {
      const double left = v.value(i, m) * v.measure(m);
      if (left == 0.0) continue;
      for (std::size_t j = 0; j < k; ++j) out(i, j) += left * u.value(m, j);
    }
  return StepKernel(v.measures(), std::move(out), v.bound() * u.bound());
}

std::pair<double, double> nu_convergence_gaps(const StepKernel& wn, const StepKernel& w) {
  require_structure(wn, w, "nu_convergence_gaps");
  const StepKernel gap = difference(wn, w);
  return {op_norm_2to2(compose_step(gap, w)), op_norm_2to2(compose_step(gap, wn))};
}

StepKernel collapse(const BidirectedStepPair& pair) {
  RealMatrix sum = pair.w1().values();
  for (std::size_t i = 0; i < pair.k(); ++i)
    for (std::size_t j = 0; j < pair.k(); ++j) sum(i, j) += pair.w2().value(i, j);
  return StepKernel(pair.measures(), std::move(sum), 1.0);
}

}  // namespace digraphon
