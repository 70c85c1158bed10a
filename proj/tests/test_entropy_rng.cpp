#include "oracles.hpp"

#include "polyent/entropy.hpp"
#include "polyent/rng.hpp"
#include "polyent/states.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace polyent;

TEST(Shannon, KnownDistributions) {
  EXPECT_DOUBLE_EQ(shannon(std::vector<double>{0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(shannon(std::vector<double>{1.0, 0.0, 0.0}), 0.0);
  EXPECT_NEAR(shannon(std::vector<double>{0.25, 0.25, 0.25, 0.25}), 2.0, 1e-15);
  EXPECT_NEAR(shannon(std::vector<double>{0.7, 0.3}), oracle::binary_entropy(0.7), 1e-15);
}

TEST(BinaryEntropy, EndpointsAndSymmetry) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  for (double x : {0.1, 0.23, 0.4}) EXPECT_NEAR(binary_entropy(x), binary_entropy(1 - x), 1e-15);
}

TEST(Entropy, MatchesEigenSolverOracle) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const MultipartiteState m = random_mixed(DimList{2, 3}, 1 + static_cast<int>(i % 6), 13, i);
    EXPECT_NEAR(entropy(m.density()), oracle::entropy(m.density()), 1e-12);
  }
}

TEST(Entropy, PureIsZeroMaximallyMixedIsLogD) {
  EXPECT_NEAR(entropy(ghz(3).density()), 0.0, 1e-12);
  EXPECT_NEAR(entropy(max_mixed(DimList{2, 3}).density()), std::log2(6.0), 1e-13);
}

TEST(CounterRng, DeterministicPerSeedAndStream) {
  CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool differs_stream = false, differs_seed = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs_stream |= x != c.next();
    differs_seed |= x != d.next();
  }
  EXPECT_TRUE(differs_stream);
  EXPECT_TRUE(differs_seed);
  EXPECT_EQ(a.counter(), 100u);
}

TEST(CounterRng, UniformAndBelowRanges) {
  CounterRng r(1, 1);
  std::set<std::uint64_t> seen;
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    mean += u;
    const auto k = r.below(7);
    ASSERT_LT(k, 7u);
    seen.insert(k);
  }
  EXPECT_NEAR(mean / 20000, 0.5, 0.01);
  EXPECT_EQ(seen.size(), 7u);
}

TEST(CounterRng, ComplexNormalHasUnitSecondMoment) {
  CounterRng r(2, 9);
  double m2 = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) m2 += std::norm(r.complex_normal());
  EXPECT_NEAR(m2 / n, 1.0, 0.02);
}

TEST(StreamId, FamiliesDoNotCollide) {
  EXPECT_NE(stream_id(StreamFamily::pure_state, 5), stream_id(StreamFamily::mixed_state, 5));
  EXPECT_NE(stream_id(StreamFamily::optimizer, 0), stream_id(StreamFamily::suite, 0));
}
