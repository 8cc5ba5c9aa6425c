#include "digraphon/digraph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "digraphon/error.hpp"
#include "digraphon/rng.hpp"
#include "digraphon/stepkernel.hpp"

namespace digraphon {

namespace {

constexpr std::size_t kMaxHomPattern = 6;
constexpr double kHomLeafBudget = 1e9;
constexpr std::size_t kMaxInducedPattern = 5;
constexpr double kSubsetBudget = 1e8;
constexpr std::size_t kMaxRegularRestarts = 10000;

std::string edge_str(std::size_t u, std::size_t v) {
  return std::to_string(u) + "->" + std::to_string(v);
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kType: return "type";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kIsolation: return "isolation-violated";
    case ErrorKind::kBudget: return "budget";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kNumerical: return "numerical-failure";
    case ErrorKind::kGeneration: return "generation-failure";
  }
  return "unknown";
}

// --- Digraph ---------------------------------------------------------------

Digraph::Digraph(std::size_t n, bool allow_bidirected)
    : n_(n), allow_bidirected_(allow_bidirected), adj_(n, n, 0) {
  require(n >= 1, "digraph needs at least one vertex");
  finish();
}

Digraph::Digraph(std::size_t n, const std::vector<Edge>& edges,
                 bool allow_bidirected)
    : n_(n), allow_bidirected_(allow_bidirected), adj_(n, n, 0) {
  require(n >= 1, "digraph needs at least one vertex");
  for (const auto& [u, v] : edges) {
    require(u < n && v < n, "edge " + edge_str(u, v) + " out of range");
    require(u != v, "loop at vertex " + std::to_string(u));
    adj_(u, v) = 1;
  }
  finish();
}

Digraph::Digraph(const Matrix<std::uint8_t>& adjacency, bool allow_bidirected)
    : n_(adjacency.rows()), allow_bidirected_(allow_bidirected), adj_(adjacency) {
  require(n_ >= 1 && adjacency.square(), "adjacency must be square and nonempty");
  for (std::size_t i = 0; i < n_; ++i) {
    require(adj_(i, i) == 0, "loop at vertex " + std::to_string(i));
    for (std::size_t j = 0; j < n_; ++j)
      require(adj_(i, j) <= 1, "adjacency entries must be 0 or 1");
  }
  finish();
}

void Digraph::finish() {
  if (!allow_bidirected_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        require(!(adj_(i, j) && adj_(j, i)),
                "antiparallel pair " + edge_str(i, j) +
                    " in a digraph without bidirected pairs");
  }
  words_ = (n_ + 63) / 64;
  out_.assign(n_ * words_, 0);
  in_.assign(n_ * words_, 0);
  edge_count_ = 0;
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (!adj_(u, v)) continue;
      ++edge_count_;
      out_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
      in_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
    }
  }
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = 0; v < n_; ++v)
      if (adj_(u, v)) out.emplace_back(u, v);
  return out;
}

RealMatrix Digraph::adjacency_real() const {
  RealMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = adj_(i, j);
  return m;
}

bool Digraph::has_antiparallel_pair() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (adj_(i, j) && adj_(j, i)) return true;
  return false;
}

// --- constructions -----------------------------------------------------------

Digraph cycle_digraph(std::size_t length) {
  require(length >= 2, "cycle length must be at least 2");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < length; ++i) edges.emplace_back(i, (i + 1) % length);
  return Digraph(length, edges, length == 2);
}

Digraph complete_bidirected_digraph(std::size_t n) {
  Matrix<std::uint8_t> adj(n, n, 1);
  for (std::size_t i = 0; i < n; ++i) adj(i, i) = 0;
  return Digraph(adj, true);
}

// --- exact counting ----------------------------------------------------------

std::int64_t trace_power(const Digraph& g, std::size_t length) {
  require(length >= 1, "trace_power needs length >= 1");
  const std::size_t n = g.size();
  if (length == 1) return 0;

  // power = A^(length-1), then Tr(power * A).
  Matrix<std::int64_t> power(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) power(i, j) = g.has_edge(i, j);

  const auto overflow = [] {
    fail(ErrorKind::kOverflow, "trace_power exceeds the 64-bit integer range");
  };
  std::vector<std::vector<std::size_t>> out_lists(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (g.has_edge(k, j)) out_lists[k].push_back(j);

  for (std::size_t step = 2; step < length; ++step) {
    Matrix<std::int64_t> next(n, n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::int64_t p = power(i, k);
        if (p == 0) continue;
        for (std::size_t j : out_lists[k]) {
          if (__builtin_add_overflow(next(i, j), p, &next(i, j))) overflow();
        }
      }
    }
    power = std::move(next);
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (g.has_edge(k, i) && __builtin_add_overflow(total, power(i, k), &total))
        overflow();
  return total;
}

namespace {

// Backtracking homomorphism counter. Pattern vertices are placed so that
// each one after the first is adjacent to an earlier one whenever possible;
// each placement intersects the neighbourhood bitsets of its placed
// neighbours, and the final vertex is counted with a popcount.
class HomCounter {
 public:
  HomCounter(const Digraph& h, const Digraph& g) : h_(h), g_(g) {
    const std::size_t k = h.size();
    std::vector<bool> placed(k, false);
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t best = k;
      int best_links = -1;
      int best_degree = -1;
      for (std::size_t v = 0; v < k; ++v) {
        if (placed[v]) continue;
        int links = 0;
        int degree = 0;
        for (std::size_t u = 0; u < k; ++u) {
          const int e = h.has_edge(u, v) + h.has_edge(v, u);
          degree += e;
          if (placed[u]) links += e;
        }
        if (links > best_links || (links == best_links && degree > best_degree)) {
          best = v;
          best_links = links;
          best_degree = degree;
        }
      }
      placed[best] = true;
      order_.push_back(best);
    }
    images_.assign(k, 0);
    scratch_.assign(k, std::vector<std::uint64_t>(g.words_per_row()));
  }

  std::uint64_t count() { return extend(0); }

 private:
  // Candidate set for the pattern vertex at position p into scratch_[p].
  // Returns false if the vertex is unconstrained (candidate = all of V(G)).
  bool candidates(std::size_t p) {
    const std::size_t v = order_[p];
    auto& cand = scratch_[p];
    bool constrained = false;
    for (std::size_t q = 0; q < p; ++q) {
      const std::size_t u = order_[q];
      const std::size_t image = images_[q];
      if (h_.has_edge(u, v)) {
        intersect(cand, g_.out_bits(image), constrained);
        constrained = true;
      }
      if (h_.has_edge(v, u)) {
        intersect(cand, g_.in_bits(image), constrained);
        constrained = true;
      }
    }
    return constrained;
  }

  void intersect(std::vector<std::uint64_t>& cand, const std::uint64_t* bits,
                 bool already) const {
    if (!already) {
      std::copy(bits, bits + cand.size(), cand.begin());
    } else {
      for (std::size_t w = 0; w < cand.size(); ++w) cand[w] &= bits[w];
    }
  }

  std::uint64_t extend(std::size_t p) {
    const std::size_t k = order_.size();
    const bool constrained = candidates(p);
    const auto& cand = scratch_[p];
    if (p + 1 == k) {
      if (!constrained) return g_.size();
      std::uint64_t c = 0;
      for (std::uint64_t w : cand) c += static_cast<std::uint64_t>(std::popcount(w));
      return c;
    }
    std::uint64_t total = 0;
    if (!constrained) {
      for (std::size_t x = 0; x < g_.size(); ++x) {
        images_[p] = x;
        total += extend(p + 1);
      }
      return total;
    }
    for (std::size_t w = 0; w < cand.size(); ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        images_[p] = w * 64 + static_cast<std::size_t>(b);
        total += extend(p + 1);
      }
    }
    return total;
  }

  const Digraph& h_;
  const Digraph& g_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> images_;
  std::vector<std::vector<std::uint64_t>> scratch_;
};

}  // namespace

std::uint64_t hom_count(const Digraph& h, const Digraph& g) {
  if (h.size() > kMaxHomPattern)
    fail(ErrorKind::kBudget, "hom_density enumerates patterns of at most 6 vertices; "
                             "use hom_density_sampled");
  const double leaves =
      std::pow(static_cast<double>(g.size()), static_cast<double>(h.size() - 1));
  if (leaves > kHomLeafBudget)
    fail(ErrorKind::kBudget, "hom_density enumeration budget exceeded (|G|^(|H|-1) = " +
                                 std::to_string(leaves) + "); use hom_density_sampled");
  return HomCounter(h, g).count();
}

double hom_density(const Digraph& h, const Digraph& g) {
  // Both operands are integers below 2^53 within the enumeration budget, so a
  // single division is correctly rounded.
  const auto count = static_cast<double>(hom_count(h, g));
  double total = 1.0;
  for (std::size_t v = 0; v < h.size(); ++v) total *= static_cast<double>(g.size());
  return count / total;
}

DensityEstimate hom_density_sampled(const Digraph& h, const Digraph& g,
                                    std::size_t samples, std::uint64_t seed) {
  require(samples >= 1, "hom_density_sampled needs at least one sample");
  const auto edges = h.edges();
  if (edges.empty()) return {1.0, 0.0};
  Rng rng(seed);
  std::vector<std::size_t> image(h.size());
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& x : image) x = rng.below(g.size());
    bool ok = true;
    for (const auto& [u, v] : edges) {
      if (!g.has_edge(image[u], image[v])) {
        ok = false;
        break;
      }
    }
    hits += ok;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

std::size_t automorphism_count(const Digraph& h) {
  require(h.size() <= 8, "automorphism enumeration is limited to 8 vertices");
  std::vector<std::size_t> perm(h.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t u = 0; u < h.size() && ok; ++u)
      for (std::size_t v = 0; v < h.size() && ok; ++v)
        ok = h.has_edge(u, v) == h.has_edge(perm[u], perm[v]);
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

double subgraph_density(const Digraph& h, const Digraph& g) {
  const std::size_t k = h.size();
  const std::size_t n = g.size();
  if (k > kMaxInducedPattern)
    fail(ErrorKind::kBudget, "subgraph_density supports patterns of at most 5 vertices");
  if (k > n) return 0.0;

  double subsets = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    subsets = subsets * static_cast<double>(n - i) / static_cast<double>(i + 1);
  if (subsets > kSubsetBudget)
    fail(ErrorKind::kBudget, "subgraph_density enumeration budget exceeded (" +
                                 std::to_string(subsets) + " subsets)");

  // Adjacency codes of every relabelling of H; bit a*k+b encodes a->b.
  std::vector<bool> accepted(std::size_t{1} << (k * k), false);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::size_t code = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (h.has_edge(perm[a], perm[b])) code |= std::size_t{1} << (a * k + b);
    accepted[code] = true;
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  while (true) {
    std::size_t code = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (g.has_edge(pick[a], pick[b])) code |= std::size_t{1} << (a * k + b);
    hits += accepted[code];
    ++total;
    // next k-combination of [n] in lexicographic order
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

// --- random models -----------------------------------------------------------

Digraph sample_w_random(const StepDigraphon& w, std::size_t n, std::uint64_t seed) {
  require(n >= 1, "sample size must be positive");
  Rng rng(seed);
  std::vector<std::size_t> block(n);
  for (auto& b : block) b = rng.categorical(w.measures());
  Matrix<std::uint8_t> adj(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double forward = w.value(block[i], block[j]);
      const double backward = w.value(block[j], block[i]);
      const double u = rng.uniform();
      if (u < forward) {
        adj(i, j) = 1;
      } else if (u < forward + backward) {
        adj(j, i) = 1;
      }
    }
  }
  return Digraph(adj, false);
}

Digraph sample_bidirected_random(const BidirectedStepPair& pair, std::size_t n,
                                 std::uint64_t seed) {
  require(n >= 1, "sample size must be positive");
  Rng rng(seed);
  std::vector<std::size_t> block(n);
  for (auto& b : block) b = rng.categorical(pair.measures());
  Matrix<std::uint8_t> adj(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t a = block[i];
      const std::size_t b = block[j];
      const double both = pair.w1().value(a, b);
      const double forward = pair.w2().value(a, b);
      const double backward = pair.w2().value(b, a);
      const double u = rng.uniform();
      if (u < both) {
        adj(i, j) = adj(j, i) = 1;
      } else if (u < both + forward) {
        adj(i, j) = 1;
      } else if (u < both + forward + backward) {
        adj(j, i) = 1;
      }
    }
  }
  return Digraph(adj, true);
}

UndirectedRegularGraph::UndirectedRegularGraph(Matrix<std::uint8_t> adjacency,
                                               std::size_t degree)
    : adj_(std::move(adjacency)), degree_(degree) {
  require(adj_.square() && adj_.rows() >= 1, "regular graph adjacency must be square");
  for (std::size_t i = 0; i < adj_.rows(); ++i) {
    require(adj_(i, i) == 0, "regular graph has a loop");
    std::size_t row = 0;
    for (std::size_t j = 0; j < adj_.cols(); ++j) {
      require(adj_(i, j) <= 1 && adj_(i, j) == adj_(j, i),
              "regular graph adjacency must be symmetric 0/1");
      row += adj_(i, j);
    }
    require(row == degree_, "vertex " + std::to_string(i) + " has degree " +
                                std::to_string(row) + ", expected " +
                                std::to_string(degree_));
  }
}

RealMatrix UndirectedRegularGraph::adjacency_real() const {
  RealMatrix m(size(), size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) m(i, j) = adj_(i, j);
  return m;
}

namespace {

// Multigraph produced by the pairing model, with double-edge switches.
class PairingMultigraph {
 public:
  PairingMultigraph(std::size_t n, std::size_t degree, Rng& rng)
      : rng_(rng), mult_(n, n, 0) {
    std::vector<std::size_t> points;
    points.reserve(n * degree);
    for (std::size_t v = 0; v < n; ++v) points.insert(points.end(), degree, v);
    for (std::size_t i = points.size(); i > 1; --i)
      std::swap(points[i - 1], points[rng_.below(i)]);
    for (std::size_t i = 0; i < points.size(); i += 2) {
      edges_.emplace_back(points[i], points[i + 1]);
      add(points[i], points[i + 1]);
    }
  }

  bool bad(std::size_t e) const {
    const auto [a, b] = edges_[e];
    return a == b || mult_(a, b) > 1;
  }

  // Replaces edges e, f = (a,b), (c,d) by (a,c), (b,d) (f randomly flipped)
  // if the new pair is simple and not yet present.
  bool try_switch(std::size_t e, std::size_t f) {
    auto [a, b] = edges_[e];
    auto [c, d] = edges_[f];
    if (rng_.below(2)) std::swap(c, d);
    remove(a, b);
    remove(c, d);
    const bool same_pair = std::minmax(a, c) == std::minmax(b, d);
    if (a != c && b != d && !same_pair && mult_(a, c) == 0 && mult_(b, d) == 0) {
      add(a, c);
      add(b, d);
      edges_[e] = {a, c};
      edges_[f] = {b, d};
      return true;
    }
    add(a, b);
    add(c, d);
    return false;
  }

  // Switches every loop and repeated edge away; false if the attempt budget
  // runs out first.
  bool repair() {
    const std::size_t m = edges_.size();
    std::size_t attempts = 0;
    const std::size_t budget = 200 * m + 1000;
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t e = 0; e < m; ++e) {
        if (!bad(e)) continue;
        dirty = true;
        if (m < 2) return false;
        std::size_t f;
        do {
          f = rng_.below(m);
        } while (f == e);
        try_switch(e, f);
        if (++attempts > budget) return false;
      }
    }
    return true;
  }

  void mix(std::size_t proposals) {
    const std::size_t m = edges_.size();
    if (m < 2) return;
    for (std::size_t s = 0; s < proposals; ++s) {
      const std::size_t e = rng_.below(m);
      std::size_t f = rng_.below(m - 1);
      if (f >= e) ++f;
      try_switch(e, f);
    }
  }

  Matrix<std::uint8_t> adjacency() const {
    Matrix<std::uint8_t> adj(mult_.rows(), mult_.cols(), 0);
    for (const auto& [a, b] : edges_) adj(a, b) = adj(b, a) = 1;
    return adj;
  }

 private:
  void add(std::size_t a, std::size_t b) {
    ++mult_(a, b);
    if (a != b) ++mult_(b, a);
  }
  void remove(std::size_t a, std::size_t b) {
    --mult_(a, b);
    if (a != b) --mult_(b, a);
  }

  Rng& rng_;
  Matrix<std::uint32_t> mult_;
  std::vector<Edge> edges_;
};

}  // namespace

UndirectedRegularGraph random_regular_graph(std::size_t n2, std::size_t degree,
                                            std::uint64_t seed) {
  require(n2 >= 2 && n2 % 2 == 0, "regular graph vertex count must be even and positive");
  require(degree >= 1 && degree < n2, "regular graph degree must lie in [1, n2)");
  require((n2 * degree) % 2 == 0, "n2 * degree must be even");
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < kMaxRegularRestarts; ++attempt) {
    PairingMultigraph graph(n2, degree, rng);
    if (!graph.repair()) continue;
    graph.mix(10 * n2 * degree / 2);
    return UndirectedRegularGraph(graph.adjacency(), degree);
  }
  fail(ErrorKind::kGeneration, "random_regular_graph: restart budget exhausted");
}

Digraph build_h1(const UndirectedRegularGraph& a) {
  const std::size_t m = a.size();
  Matrix<std::uint8_t> adj(2 * m, 2 * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      adj(i, m + j) = a.adjacency()(i, j);
      adj(m + i, j) = a.adjacency()(i, j);
    }
  }
  return Digraph(adj, true);
}

Digraph build_h2(const UndirectedRegularGraph& a) {
  const std::size_t m = a.size();
  Matrix<std::uint8_t> adj(2 * m, 2 * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      adj(i, m + j) = a.adjacency()(i, j);
      adj(m + i, j) = 1 - a.adjacency()(i, j);
    }
  }
  return Digraph(adj, false);
}

}  // namespace digraphon
