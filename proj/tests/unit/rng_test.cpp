#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "prefforge/rng.hpp"

using prefforge::Rng;

TEST(Rng, SameSeedAndStreamRepeat) {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsDiffer) {
  Rng a(42, 1), b(42, 2), c(43, 1);
  const auto x = a.next_u64();
  EXPECT_NE(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

TEST(Rng, SplitIgnoresParentDraws) {
  Rng a(5, 3);
  const Rng child1 = a.split(9);
  for (int i = 0; i < 10; ++i) a.next_u64();
  Rng child2 = a.split(9);
  Rng c1 = child1;
  EXPECT_EQ(c1.next_u64(), child2.next_u64());
}

TEST(Rng, UniformRange) {
  Rng r(1);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(Rng, BelowIsUnbiased) {
  Rng r(2);
  std::vector<int> counts(3);
  for (int i = 0; i < 60000; ++i) ++counts[r.below(3)];
  for (int c : counts) EXPECT_NEAR(c / 60000.0, 1.0 / 3, 0.01);
  EXPECT_THROW(r.below(0), std::invalid_argument);
}

TEST(Rng, BetweenInclusive) {
  Rng r(3);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(r.between(-2, 2));
  EXPECT_EQ(seen, (std::set<std::int64_t>{-2, -1, 0, 1, 2}));
}

TEST(Rng, NormalMoments) {
  Rng r(4);
  double s = 0, s2 = 0;
  const int k = 200000;
  for (int i = 0; i < k; ++i) {
    const double x = r.normal(1.0, 2.0);
    s += x;
    s2 += x * x;
  }
  const double mean = s / k;
  EXPECT_NEAR(mean, 1.0, 0.02);
  EXPECT_NEAR(s2 / k - mean * mean, 4.0, 0.06);
}

TEST(Rng, GammaMoments) {
  for (double shape : {0.8, 2.5}) {
    Rng r(5);
    double s = 0, s2 = 0;
    const int k = 200000;
    for (int i = 0; i < k; ++i) {
      const double x = r.gamma(shape, 1.5);
      ASSERT_GT(x, 0.0);
      s += x;
      s2 += x * x;
    }
    const double mean = s / k;
    EXPECT_NEAR(mean, shape * 1.5, 0.02 * shape * 1.5);
    EXPECT_NEAR(s2 / k - mean * mean, shape * 2.25, 0.05 * shape * 2.25);
  }
}

TEST(Rng, DiscreteFollowsWeights) {
  Rng r(6);
  const std::vector<double> w{1, 0, 3};
  std::vector<int> counts(3);
  for (int i = 0; i < 40000; ++i) ++counts[r.discrete(w)];
  EXPECT_EQ(counts[1], 0);
  EXPECT_NEAR(counts[0] / 40000.0, 0.25, 0.01);
}

TEST(Rng, PermutationIsPermutation) {
  Rng r(7);
  auto p = r.permutation(20);
  std::sort(p.begin(), p.end());
  std::vector<int> id(20);
  std::iota(id.begin(), id.end(), 0);
  EXPECT_EQ(p, id);
}

TEST(Rng, BernoulliEdges) {
  Rng r(8);
  for (int i = 0; i < 100; ++i) {
    EXPECT_FALSE(r.bernoulli(0.0));
    EXPECT_TRUE(r.bernoulli(1.0));
  }
}
