#pragma once

// Random instances for property tests. Uses std::mt19937_64 so the test
// inputs do not depend on the library generator under test.

#include <cstdint>
#include <random>
#include <vector>

#include "digraphon/digraph.hpp"
#include "digraphon/stepkernel.hpp"

namespace fixture {

using digraphon::Digraph;
using digraphon::RealMatrix;
using digraphon::StepDigraphon;
using digraphon::StepKernel;

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Each unordered pair independently: nothing, u->v, v->u, or (if allowed)
/// both, with edge probability p.
inline Digraph random_digraph(std::size_t n, double p, std::mt19937_64& rng,
                              bool bidirected = false) {
  std::vector<digraphon::Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      if (uniform(rng) >= p) continue;
      const double r = uniform(rng);
      if (bidirected && r < 1.0 / 3.0) {
        edges.emplace_back(u, v);
        edges.emplace_back(v, u);
      } else if (r < 2.0 / 3.0) {
        edges.emplace_back(u, v);
      } else {
        edges.emplace_back(v, u);
      }
    }
  return Digraph(n, edges, bidirected);
}

/// Positive measures summing to one. With `grid` > 0 every measure is a
/// positive multiple of 1/grid.
inline std::vector<double> random_measures(std::size_t k, std::mt19937_64& rng,
                                           int grid = 0) {
  std::vector<double> m(k);
  if (grid > 0) {
    std::vector<int> units(k, 1);
    for (int left = grid - static_cast<int>(k); left > 0; --left)
      ++units[uniform_int(rng, 0, k - 1)];
    for (std::size_t i = 0; i < k; ++i) m[i] = static_cast<double>(units[i]) / grid;
    return m;
  }
  double sum = 0.0;
  for (auto& x : m) sum += (x = uniform(rng, 0.05, 1.0));
  for (auto& x : m) x /= sum;
  // Push the rounding residue onto the last block.
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) partial += m[i];
  m[k - 1] = 1.0 - partial;
  return m;
}

inline StepKernel random_kernel(std::size_t k, double bound, std::mt19937_64& rng,
                                int grid = 0) {
  RealMatrix v(k, k);
  for (double& x : v.data()) x = uniform(rng, -bound, bound);
  return StepKernel(random_measures(k, rng, grid), v, bound);
}

inline StepDigraphon random_digraphon(std::size_t k, std::mt19937_64& rng, int grid = 0) {
  RealMatrix v(k, k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    v(i, i) = 0.5 * uniform(rng);
    for (std::size_t j = i + 1; j < k; ++j) {
      v(i, j) = uniform(rng);
      v(j, i) = (1.0 - v(i, j)) * uniform(rng);
    }
  }
  return StepDigraphon(random_measures(k, rng, grid), v);
}

}  // namespace fixture
