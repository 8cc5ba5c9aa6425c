#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "digraphon/error.hpp"
#include "digraphon/limits.hpp"
#include "digraphon/stepkernel.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace digraphon {
namespace {

RealMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  RealMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::kInvalidArgument;
}

Digraph single_edge() { return Digraph(2, {{0, 1}}, false); }

StepKernel directed_triangle() {
  return StepKernel::uniform_blocks(mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
}

// ---------------------------------------------------------------------------

TEST(StepKernel, Validation) {
  EXPECT_THROW(StepKernel({0.5, 0.4}, RealMatrix(2, 2, 0.0)), Error);
  EXPECT_THROW(StepKernel({1.0, 0.0}, RealMatrix(2, 2, 0.0)), Error);
  EXPECT_THROW(StepKernel({1.0}, RealMatrix(2, 2, 0.0)), Error);
  EXPECT_THROW(StepKernel({1.0}, mat({{2.0}}), 1.0), Error);
  EXPECT_THROW(StepKernel({1.0}, mat({{NAN}})), Error);
  EXPECT_NO_THROW(StepKernel({0.25, 0.75}, mat({{-1, 1}, {0.5, 0}}), 1.0));
  EXPECT_DOUBLE_EQ(StepKernel({1.0}, mat({{-3.0}})).bound(), 3.0);
}

TEST(StepDigraphon, Validation) {
  EXPECT_THROW(StepDigraphon({1.0}, mat({{0.6}})), Error);  // diagonal above 1/2
  EXPECT_THROW(StepDigraphon({0.5, 0.5}, mat({{0, 0.7}, {0.4, 0}})), Error);
  EXPECT_THROW(StepDigraphon({0.5, 0.5}, mat({{0, -0.1}, {0.4, 0}})), Error);
  EXPECT_NO_THROW(StepDigraphon({0.5, 0.5}, mat({{0.5, 0.6}, {0.4, 0}})));
}

TEST(BidirectedStepPair, Validation) {
  const RealMatrix z(2, 2, 0.0);
  EXPECT_THROW(BidirectedStepPair({0.5, 0.5}, mat({{0, 0.5}, {0.2, 0}}), z), Error);
  EXPECT_THROW(BidirectedStepPair({0.5, 0.5}, mat({{0, 0.5}, {0.5, 0}}),
                                  mat({{0, 0.3}, {0.3, 0}})),
               Error);
  EXPECT_NO_THROW(BidirectedStepPair({0.5, 0.5}, mat({{0, 0.5}, {0.5, 0}}),
                                     mat({{0, 0.25}, {0.25, 0}})));
}

TEST(StepFromDigraph, SpecExamples) {
  const StepDigraphon w = step_from_digraph(cycle_digraph(3));
  EXPECT_EQ(w.k(), 3u);
  for (double m : w.measures()) EXPECT_DOUBLE_EQ(m, 1.0 / 3.0);
  EXPECT_EQ(w.values(), directed_triangle().values());

  const StepDigraphon e = step_from_digraph(Digraph(2));
  EXPECT_EQ(e.values(), RealMatrix(2, 2, 0.0));

  EXPECT_EQ(kind_of([] { step_from_digraph(cycle_digraph(2)); }), ErrorKind::kType);
}

TEST(StepPairFromDigraph, SpecExamples) {
  const auto c2 = step_pair_from_digraph(cycle_digraph(2));
  EXPECT_EQ(c2.w1().values(), mat({{0, 1}, {1, 0}}));
  EXPECT_EQ(c2.w2().values(), RealMatrix(2, 2, 0.0));

  const auto e = step_pair_from_digraph(single_edge());
  EXPECT_EQ(e.w1().values(), RealMatrix(2, 2, 0.0));
  EXPECT_EQ(e.w2().values(), mat({{0, 1}, {0, 0}}));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = fixture::random_digraph(12, 0.6, rng, true);
    const auto p = step_pair_from_digraph(g);
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = 0; j < 12; ++j)
        EXPECT_LE(p.w1().value(i, j) + p.w2().value(i, j) + p.w2().value(j, i), 1.0);
  }
}

TEST(HomDensityStep, SpecExamples) {
  for (std::size_t ell = 2; ell <= 7; ++ell)
    EXPECT_DOUBLE_EQ(hom_density_step(cycle_digraph(ell), StepKernel::constant(0.5)),
                     std::pow(0.5, static_cast<double>(ell)));
  EXPECT_NEAR(hom_density_step(cycle_digraph(3), directed_triangle()), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(hom_density_step(cycle_digraph(3), bidirected_collapsed_limit()), 0.0, 1e-15);
}

TEST(HomDensityStep, MatchesFullEnumeration) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = fixture::random_digraph(fixture::uniform_int(rng, 1, 5), 0.6, rng,
                                           trial % 2 == 1);
    const auto w = fixture::random_kernel(fixture::uniform_int(rng, 1, 5), 1.0, rng);
    EXPECT_NEAR(hom_density_step(h, w), oracle::hom_density_step(h, w), 1e-12);
  }
}

TEST(HomDensityStep, CycleEqualsTraceOfTransferPower) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto w = fixture::random_kernel(fixture::uniform_int(rng, 1, 6), 1.0, rng);
    const RealMatrix b = w.transfer_matrix();
    RealMatrix p = b;
    for (std::size_t ell = 2; ell <= 7; ++ell) {
      p = multiply(p, b);
      EXPECT_NEAR(hom_density_step(cycle_digraph(ell), w), trace(p), 1e-10);
    }
  }
}

TEST(HomDensityStep, BudgetGuard) {
  const auto w = StepKernel::uniform_blocks(RealMatrix(30, 30, 0.1));
  EXPECT_EQ(kind_of([&] { hom_density_step(Digraph(9), w); }), ErrorKind::kBudget);
}

TEST(SubgraphDensityStep, SpecExamples) {
  const auto half = StepDigraphon::uniform_blocks(RealMatrix(1, 1, 0.5));
  EXPECT_DOUBLE_EQ(subgraph_density_step(Digraph(2), half), 0.0);
  for (double p : {0.0, 0.1, 0.3, 0.5}) {
    const auto w = StepDigraphon::uniform_blocks(RealMatrix(1, 1, p));
    EXPECT_NEAR(subgraph_density_step(single_edge(), w), 2.0 * p, 1e-15);
  }
  EXPECT_EQ(kind_of([&] { subgraph_density_step(Digraph(6), half); }), ErrorKind::kBudget);
}

TEST(SubgraphDensityStep, ProbabilitiesSumToOne) {
  // One representative per isomorphism class of digraphs on m <= 3 vertices.
  std::vector<Digraph> classes;
  for (std::size_t m = 2; m <= 3; ++m) {
    std::vector<Edge> pairs;
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t v = u + 1; v < m; ++v) pairs.emplace_back(u, v);
    std::size_t codes = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) codes *= 3;
    std::vector<Digraph> found;
    for (std::size_t code = 0; code < codes; ++code) {
      std::vector<Edge> edges;
      std::size_t c = code;
      for (const auto& [u, v] : pairs) {
        if (c % 3 == 1) edges.emplace_back(u, v);
        if (c % 3 == 2) edges.emplace_back(v, u);
        c /= 3;
      }
      const Digraph h(m, edges, false);
      bool seen = false;
      for (const auto& other : found) seen = seen || subgraph_density(h, other) == 1.0;
      if (!seen) found.push_back(h);
    }
    EXPECT_EQ(found.size(), m == 2 ? 2u : 7u);
    std::mt19937_64 rng(m);
    for (int trial = 0; trial < 10; ++trial) {
      const auto w = fixture::random_digraphon(fixture::uniform_int(rng, 1, 4), rng);
      double total = 0.0;
      for (const auto& h : found) {
        const double d = subgraph_density_step(h, w);
        EXPECT_GE(d, -1e-15);
        EXPECT_LE(d, 1.0 + 1e-12);
        total += d;
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(HomDensityPair, BidirectedLimitValues) {
  EXPECT_EQ(hom_density_pair(cycle_digraph(2), bidirected_limit_h1()), 0.25);
  EXPECT_EQ(hom_density_pair(cycle_digraph(2), bidirected_limit_h2()), 0.0);
}

TEST(HomDensityPair, AgreesWithCollapseWithoutAntiparallelPairs) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = fixture::uniform_int(rng, 1, 4);
    RealMatrix w1(k, k, 0.0), w2(k, k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) {
        w1(i, j) = w1(j, i) = 0.3 * fixture::uniform(rng);
        w2(i, j) = 0.3 * fixture::uniform(rng);
        w2(j, i) = 0.3 * fixture::uniform(rng);
      }
    const BidirectedStepPair p(fixture::random_measures(k, rng), w1, w2);
    for (std::size_t ell = 3; ell <= 6; ++ell)
      EXPECT_NEAR(hom_density_pair(cycle_digraph(ell), p),
                  hom_density_step(cycle_digraph(ell), collapse(p)), 1e-13);
  }
}

TEST(CutNorm, SpecExamples) {
  EXPECT_EQ(cut_norm(StepKernel::uniform_blocks(RealMatrix(3, 3, 0.0))), 0.0);
  for (double c : {-0.7, 0.2, 1.0}) EXPECT_DOUBLE_EQ(cut_norm(StepKernel::constant(c)), std::abs(c));
  EXPECT_DOUBLE_EQ(cut_norm(StepKernel::uniform_blocks(mat({{1, -1}, {-1, 1}}))), 0.25);
}

TEST(CutNorm, ReportsLexicographicallyFirstOptimum) {
  const auto r = cut_norm_detail(StepKernel::uniform_blocks(mat({{1, -1}, {-1, 1}})));
  EXPECT_DOUBLE_EQ(r.value, 0.25);
  // Both diagonal cells and both off-diagonal cells are optimal.
  EXPECT_EQ(r.rows, 1u);
  EXPECT_EQ(r.columns, 1u);
}

TEST(CutNorm, MatchesSubsetPairEnumeration) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto w = fixture::random_kernel(fixture::uniform_int(rng, 1, 7), 1.0, rng);
    EXPECT_NEAR(cut_norm(w), oracle::cut_norm(w), 1e-13);
    EXPECT_LE(cut_norm(w), w.bound() + 1e-15);
  }
}

TEST(CutNorm, NormAxioms) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = fixture::uniform_int(rng, 1, 6);
    const auto a = fixture::random_kernel(k, 1.0, rng);
    const StepKernel b(a.measures(), fixture::random_kernel(k, 1.0, rng).values(), 1.0);
    const double c = fixture::uniform(rng, -3.0, 3.0);
    RealMatrix scaled = a.values();
    for (double& x : scaled.data()) x *= c;
    EXPECT_NEAR(cut_norm(StepKernel(a.measures(), scaled)), std::abs(c) * cut_norm(a), 1e-13);
    RealMatrix sum = a.values();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sum(i, j) += b.value(i, j);
    EXPECT_LE(cut_norm(StepKernel(a.measures(), sum)), cut_norm(a) + cut_norm(b) + 1e-13);
  }
}

TEST(CutNorm, FractionalRoundingNeverBeatsEnumeration) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = fixture::random_kernel(fixture::uniform_int(rng, 1, 6), 1.0, rng);
    const double exact = cut_norm(w);
    for (int c = 0; c < 1000; ++c) {
      std::vector<double> g(w.k()), h(w.k());
      for (auto& x : g) x = fixture::uniform(rng);
      for (auto& x : h) x = fixture::uniform(rng);
      // Round each block once: S = {i : r_i < g_i}, T = {j : r_j < h_j}.
      std::vector<bool> s(w.k()), t(w.k());
      for (std::size_t i = 0; i < w.k(); ++i) {
        s[i] = fixture::uniform(rng) < g[i];
        t[i] = fixture::uniform(rng) < h[i];
      }
      double frac = 0.0, rounded = 0.0;
      for (std::size_t i = 0; i < w.k(); ++i)
        for (std::size_t j = 0; j < w.k(); ++j) {
          const double mass = w.measure(i) * w.measure(j) * w.value(i, j);
          frac += mass * g[i] * h[j];
          rounded += mass * (s[i] && t[j]);
        }
      EXPECT_LE(std::abs(frac), exact + 1e-13);
      EXPECT_LE(std::abs(rounded), exact + 1e-13);
    }
  }
}

TEST(CutNorm, BlockLimit) {
  const auto w = StepKernel::uniform_blocks(RealMatrix(25, 25, 0.0));
  EXPECT_EQ(kind_of([&] { cut_norm(w); }), ErrorKind::kBudget);
}

TEST(CutMetric, SpecExamples) {
  std::mt19937_64 rng(51);
  const auto a = fixture::random_kernel(4, 1.0, rng);
  EXPECT_EQ(cut_metric(a, a), 0.0);
  EXPECT_DOUBLE_EQ(cut_metric(StepKernel::constant(0.5), StepKernel::constant(0.0)), 0.5);
  const StepKernel b(a.measures(), fixture::random_kernel(4, 1.0, rng).values(), 1.0);
  EXPECT_DOUBLE_EQ(cut_metric(a, b), cut_metric(b, a));
  EXPECT_EQ(kind_of([&] { cut_metric(a, StepKernel::constant(0.1)); }), ErrorKind::kStructure);
}

TEST(CutDistancePerm, SpecExamples) {
  std::mt19937_64 rng(52);
  const auto w = fixture::random_digraphon(5, rng, 5);  // equal blocks
  EXPECT_EQ(cut_distance_perm(w, w), 0.0);

  const std::vector<std::size_t> pi{2, 0, 4, 1, 3};
  RealMatrix permuted(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) permuted(pi[i], pi[j]) = w.value(i, j);
  const StepDigraphon wp(w.measures(), permuted);
  EXPECT_GT(cut_metric(w, wp), 0.0);
  EXPECT_NEAR(cut_distance_perm(w, wp), 0.0, 1e-15);

  const auto other = fixture::random_digraphon(5, rng, 5);
  const double d = cut_distance_perm(w, other);
  EXPECT_GE(d, 0.0);
  EXPECT_LE(d, cut_metric(w, other));
}

TEST(CutDistancePerm, Guards) {
  const StepDigraphon uneven({0.3, 0.7}, RealMatrix(2, 2, 0.1));
  EXPECT_EQ(kind_of([&] { cut_distance_perm(uneven, uneven); }), ErrorKind::kStructure);
  const auto big = StepDigraphon::uniform_blocks(RealMatrix(10, 10, 0.1));
  EXPECT_EQ(kind_of([&] { cut_distance_perm(big, big); }), ErrorKind::kBudget);
}

TEST(CommonRefinement, SpecExamples) {
  std::mt19937_64 rng(61);
  const auto a = fixture::random_kernel(3, 1.0, rng);
  const StepKernel b(a.measures(), fixture::random_kernel(3, 1.0, rng).values(), 1.0);
  const auto [ra, rb] = common_refinement(a, b);
  EXPECT_EQ(ra.measures(), a.measures());
  EXPECT_EQ(ra.values(), a.values());
  EXPECT_EQ(rb.values(), b.values());

  const auto [one, two] = common_refinement(StepKernel::constant(0.3),
                                            StepKernel::uniform_blocks(RealMatrix(2, 2, 0.6)));
  ASSERT_EQ(one.k(), 2u);
  ASSERT_TRUE(one.same_structure(two));
  for (double v : one.values().data()) EXPECT_EQ(v, 0.3);
  for (double v : two.values().data()) EXPECT_EQ(v, 0.6);
}

TEST(CommonRefinement, PreservesKernelFunctionAndCutNorm) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = fixture::random_kernel(fixture::uniform_int(rng, 1, 5), 1.0, rng);
    const auto b = fixture::random_kernel(fixture::uniform_int(rng, 1, 5), 1.0, rng);
    const auto [ra, rb] = common_refinement(a, b);
    ASSERT_TRUE(ra.same_structure(rb));
    EXPECT_LE(ra.k(), a.k() + b.k() - 1);
    EXPECT_NEAR(cut_norm(ra), cut_norm(a), 1e-12);
    EXPECT_NEAR(cut_norm(rb), cut_norm(b), 1e-12);
    // Point evaluation at random x, y.
    auto eval = [](const StepKernel& w, double x, double y) {
      auto block = [&](double t) {
        double c = 0.0;
        for (std::size_t i = 0; i < w.k(); ++i)
          if (t < (c += w.measure(i))) return i;
        return w.k() - 1;
      };
      return w.value(block(x), block(y));
    };
    for (int s = 0; s < 50; ++s) {
      const double x = fixture::uniform(rng), y = fixture::uniform(rng);
      // Stay away from block boundaries where rounding decides the side.
      EXPECT_EQ(eval(ra, x, y), eval(a, x, y)) << x << " " << y;
      EXPECT_EQ(eval(rb, x, y), eval(b, x, y)) << x << " " << y;
    }
  }
}

TEST(OpNorm, SpecExamples) {
  EXPECT_NEAR(op_norm_2to2(StepKernel::constant(1.0)), 1.0, 1e-12);
  EXPECT_EQ(op_norm_2to2(StepKernel::uniform_blocks(RealMatrix(3, 3, 0.0))), 0.0);
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = fixture::random_digraphon(fixture::uniform_int(rng, 1, 8), rng);
    EXPECT_LE(op_norm_2to2(w), 1.0 + 1e-12);
    const auto v = fixture::random_kernel(fixture::uniform_int(rng, 1, 8), 2.0, rng);
    EXPECT_LE(op_norm_2to2(v), v.bound() + 1e-12);
  }
}

TEST(OpNorm, MatchesDenseDiscretization) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = fixture::random_kernel(fixture::uniform_int(rng, 1, 8), 1.0, rng, 512);
    EXPECT_NEAR(op_norm_2to2(w), oracle::grid_op_norm(w, 512), 1e-6) << "trial " << trial;
  }
}

TEST(ComposeStep, SpecExamples) {
  std::mt19937_64 rng(81);
  const auto v = fixture::random_kernel(4, 1.0, rng);
  const StepKernel zero(v.measures(), RealMatrix(4, 4, 0.0), 1.0);
  const StepKernel vz = compose_step(v, zero);
  for (double x : vz.values().data()) EXPECT_EQ(x, 0.0);
  const auto ab = compose_step(StepKernel::constant(0.3), StepKernel::constant(-0.5));
  EXPECT_DOUBLE_EQ(ab.value(0, 0), -0.15);
  EXPECT_EQ(kind_of([&] { compose_step(v, StepKernel::constant(0.1)); }), ErrorKind::kStructure);
}

TEST(ComposeStep, OperatorNormBoundedByCutNorm) {
  std::mt19937_64 rng(82);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = fixture::uniform_int(rng, 1, 8);
    const auto v = fixture::random_kernel(k, 1.0, rng);
    const StepKernel u(v.measures(), fixture::random_kernel(k, 1.0, rng).values(), 1.0);
    EXPECT_LE(op_norm_2to2(compose_step(v, u)), 2.0 * std::sqrt(cut_norm(v)) + 1e-9);
    EXPECT_LE(op_norm_2to2(compose_step(v, u)), op_norm_2to2(v) * op_norm_2to2(u) + 1e-12);
  }
}

TEST(NuGaps, SpecExamples) {
  std::mt19937_64 rng(91);
  const auto w = fixture::random_kernel(4, 1.0, rng);
  const auto [g1, g2] = nu_convergence_gaps(w, w);
  EXPECT_EQ(g1, 0.0);
  EXPECT_EQ(g2, 0.0);
  const StepKernel zero(w.measures(), RealMatrix(4, 4, 0.0), 1.0);
  EXPECT_EQ(nu_convergence_gaps(w, zero).first, 0.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = fixture::uniform_int(rng, 1, 6);
    const auto a = fixture::random_kernel(k, 1.0, rng);
    const StepKernel b(a.measures(), fixture::random_kernel(k, 1.0, rng).values(), 1.0);
    const auto [x, y] = nu_convergence_gaps(a, b);
    const double envelope = 2.0 * std::sqrt(cut_metric(a, b));
    EXPECT_LE(x, envelope + 1e-9);
    EXPECT_LE(y, envelope + 1e-9);
  }
}

TEST(Collapse, BidirectedLimitPairsCollapseToTheSameKernel) {
  const StepKernel a = collapse(bidirected_limit_h1());
  const StepKernel b = collapse(bidirected_limit_h2());
  EXPECT_EQ(a.values(), b.values());
  EXPECT_EQ(a.values(), mat({{0, 0.5}, {0.5, 0}}));
  EXPECT_EQ(a.bound(), 1.0);

  RealMatrix sym(2, 2, 0.0);
  sym(0, 1) = sym(1, 0) = 0.3;
  sym(0, 0) = 0.2;
  const auto c = collapse(BidirectedStepPair({0.4, 0.6}, sym, RealMatrix(2, 2, 0.0)));
  EXPECT_EQ(c.value(0, 1), c.value(1, 0));
}

}  // namespace
}  // namespace digraphon
