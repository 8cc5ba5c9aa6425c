#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>

#include "digraphon/error.hpp"
#include "digraphon/matrix.hpp"
#include "digraphon/parallel.hpp"
#include "digraphon/rng.hpp"

namespace digraphon {
namespace {

TEST(Rng, ReproducibleStreams) {
  Rng a(123), b(123), c(124);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
}

TEST(Rng, UniformRangeAndMean) {
  Rng r(5);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, BelowAndCategorical) {
  Rng r(6);
  std::vector<int> counts(3, 0);
  const std::vector<double> w{0.2, 0.5, 0.3};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    EXPECT_LT(r.below(7), 7u);
    ++counts[r.categorical(w)];
  }
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_NEAR(counts[i] / static_cast<double>(n), w[i], 0.01);
}

TEST(Rng, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
  EXPECT_NE(derive_seed(42, 7), derive_seed(43, 7));
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
  try {
    parallel_for(100, [](std::size_t i) {
      if (i % 10 == 3) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "3");
  }
}

TEST(Matrix, BasicAlgebra) {
  RealMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = -3;
  a(1, 1) = 4;
  EXPECT_EQ(multiply(a, RealMatrix::identity(2)), a);
  EXPECT_EQ(trace(a), 5.0);
  EXPECT_EQ(norm_inf(a), 7.0);
  EXPECT_EQ(a.transposed()(0, 1), -3.0);
}

TEST(Error, KindsHaveNames) {
  EXPECT_STREQ(to_string(ErrorKind::kBudget), "budget");
  EXPECT_STREQ(to_string(ErrorKind::kIsolation), "isolation-violated");
  const Error e(ErrorKind::kNumerical, "x", 0.5);
  EXPECT_EQ(e.residual(), 0.5);
}

}  // namespace
}  // namespace digraphon
