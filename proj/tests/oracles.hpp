#pragma once

// Independent reference computations. Everything here is deliberately naive
// (plain enumeration, textbook recurrences, Eigen) and shares no code with the
// library beyond its data types.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "digraphon/digraph.hpp"
#include "digraphon/stepkernel.hpp"

namespace oracle {

using digraphon::Digraph;
using digraphon::StepKernel;
using IntMatrix = std::vector<std::vector<std::int64_t>>;
using cld = std::complex<long double>;

inline IntMatrix to_int(const Digraph& g) {
  const std::size_t n = g.size();
  IntMatrix a(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g.has_edge(i, j) ? 1 : 0;
  return a;
}

inline IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// Tr(A^l) by repeated dense multiplication.
inline std::int64_t trace_power(const Digraph& g, std::size_t length) {
  const IntMatrix a = to_int(g);
  IntMatrix p = a;
  for (std::size_t s = 1; s < length; ++s) p = int_multiply(p, a);
  std::int64_t t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += p[i][i];
  return t;
}

/// Calls f(map) for every map [h] -> [n] in lexicographic order.
template <class F>
void for_each_map(std::size_t h, std::size_t n, F&& f) {
  std::vector<std::size_t> map(h, 0);
  while (true) {
    f(map);
    std::size_t pos = h;
    while (pos > 0) {
      --pos;
      if (++map[pos] < n) break;
      map[pos] = 0;
      if (pos == 0) return;
    }
    if (h == 0) return;
  }
}

inline std::uint64_t hom_count(const Digraph& h, const Digraph& g) {
  std::uint64_t count = 0;
  const auto edges = h.edges();
  for_each_map(h.size(), g.size(), [&](const std::vector<std::size_t>& f) {
    for (const auto& [u, v] : edges)
      if (!g.has_edge(f[u], f[v])) return;
    ++count;
  });
  return count;
}

/// Probability that a uniform |H|-subset of V(G) induces a copy of H.
inline double subgraph_density(const Digraph& h, const Digraph& g) {
  const std::size_t k = h.size();
  const std::size_t n = g.size();
  if (k > n) return 0.0;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  std::size_t hits = 0;
  std::size_t total = 0;
  do {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) subset.push_back(i);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    bool found = false;
    do {
      bool ok = true;
      for (std::size_t a = 0; a < k && ok; ++a)
        for (std::size_t b = 0; b < k && ok; ++b)
          if (a != b && h.has_edge(a, b) != g.has_edge(subset[perm[a]], subset[perm[b]]))
            ok = false;
      found = ok;
    } while (!found && std::next_permutation(perm.begin(), perm.end()));
    hits += found;
    ++total;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

/// t(H, W) by summing over every block map, no pruning.
inline double hom_density_step(const Digraph& h, const StepKernel& w) {
  double total = 0.0;
  const auto edges = h.edges();
  for_each_map(h.size(), w.k(), [&](const std::vector<std::size_t>& f) {
    double term = 1.0;
    for (std::size_t v = 0; v < f.size(); ++v) term *= w.measure(f[v]);
    for (const auto& [u, v] : edges) term *= w.value(f[u], f[v]);
    total += term;
  });
  return total;
}

/// Cut norm by enumerating all 4^k pairs of block subsets.
inline double cut_norm(const StepKernel& w) {
  const std::size_t k = w.k();
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1U << k); ++s) {
    for (std::uint32_t t = 0; t < (1U << k); ++t) {
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if ((s >> i & 1U) && (t >> j & 1U)) sum += w.measure(i) * w.measure(j) * w.value(i, j);
      best = std::max(best, std::abs(sum));
    }
  }
  return best;
}

/// Operator norm of the kernel discretized on a uniform grid. Exact when every
/// block measure is a multiple of 1/grid.
inline double grid_op_norm(const StepKernel& w, int grid) {
  std::vector<std::size_t> block(static_cast<std::size_t>(grid));
  double cumulative = 0.0;
  std::size_t b = 0;
  for (int c = 0; c < grid; ++c) {
    const double mid = (c + 0.5) / grid;
    while (b + 1 < w.k() && mid > cumulative + w.measure(b)) cumulative += w.measure(b++);
    block[static_cast<std::size_t>(c)] = b;
  }
  Eigen::MatrixXd m(grid, grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      m(i, j) = w.value(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>(j)]) /
                grid;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

/// Eigenvalues from Eigen's real Schur decomposition.
inline std::vector<std::complex<double>> eigen_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

/// Characteristic polynomial det(xI - M) of an integer matrix by the
/// Faddeev-LeVerrier recurrence in exact 128-bit arithmetic. Coefficients are
/// returned highest degree first (leading 1).
inline std::vector<__int128> char_poly(const IntMatrix& m) {
  const std::size_t n = m.size();
  using Row = std::vector<__int128>;
  std::vector<Row> mk(n, Row(n, 0));  // M_0 = 0
  std::vector<__int128> c(n + 1, 0);
  c[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = M * M_{k-1} + c_{k-1} I
    std::vector<Row> next(n, Row(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (mk[l] == Row(n, 0)) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += m[i][l] * mk[l][j];
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[k - 1];
    mk = std::move(next);
    __int128 tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += m[i][l] * mk[l][i];
    c[k] = -tr / static_cast<__int128>(k);
  }
  return c;
}

/// All roots of a monic polynomial by Aberth-Ehrlich iteration in long double,
/// followed by Newton polishing.
inline std::vector<std::complex<double>> poly_roots(const std::vector<__int128>& coeffs) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<long double> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = static_cast<long double>(coeffs[i]);
  auto eval = [&](cld z, cld& dp) {
    cld p = c[0];
    dp = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      dp = dp * z + p;
      p = p * z + c[i];
    }
    return p;
  };
  // Cauchy bound for the initial circle.
  long double radius = 0;
  for (std::size_t i = 1; i <= n; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1 + radius;
  radius = std::min<long double>(radius, 1e6L);
  std::vector<cld> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long double angle = 2.0L * 3.14159265358979323846L * (i + 0.25L) / n;
    z[i] = std::polar(0.5L * radius, angle);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cld dp;
      const cld p = eval(z[i], dp);
      if (p == cld(0)) continue;
      const cld ratio = p / dp;
      cld sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += cld(1) / (z[i] - z[j]);
      const cld step = ratio / (cld(1) - ratio * sum);
      z[i] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0L, std::abs(z[i])));
    }
    if (change < 1e-17L) break;
  }
  for (auto& r : z) {
    for (int s = 0; s < 3; ++s) {
      cld dp;
      const cld p = eval(r, dp);
      if (dp == cld(0)) break;
      r -= p / dp;
    }
  }
  std::vector<std::complex<double>> out;
  for (const auto& r : z)
    out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

/// Smallest achievable maximum pair distance over all bijections between two
/// multisets of equal size (bottleneck matching by subset dynamic programming).
inline double bottleneck_distance(const std::vector<std::complex<double>>& x,
                                  const std::vector<std::complex<double>>& y) {
  const std::size_t n = x.size();
  std::vector<double> dp(std::size_t{1} << n, std::numeric_limits<double>::infinity());
  dp[0] = 0.0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (!std::isfinite(dp[mask])) continue;
    const std::size_t i = static_cast<std::size_t>(__builtin_popcount(mask));
    if (i == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1U) continue;
      const std::uint32_t next = mask | (1U << j);
      dp[next] = std::min(dp[next], std::max(dp[mask], std::abs(x[i] - y[j])));
    }
  }
  return dp.back();
}

}  // namespace oracle
