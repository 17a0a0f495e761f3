#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lossless/discrete.hpp"
#include "lossless/synthdata.hpp"

using namespace lossless;

namespace {

double population_cmi(double theta) {
  H1Config cfg;
  cfg.theta = theta;
  return conditional_mutual_information(discretized_population(cfg, 10, 10));
}

}  // namespace

TEST(GenH0, Deterministic) {
  H0Config cfg;
  cfg.n = 500;
  cfg.seed = 9;
  const auto a = gen_h0(cfg), b = gen_h0(cfg);
  ASSERT_EQ(a.values().size(), b.values().size());
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  cfg.seed = 10;
  const auto c = gen_h0(cfg);
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
}

TEST(GenH0, RecordsIndependentOfSampleSize) {
  H0Config small, large;
  small.n = 10;
  large.n = 1000;
  small.seed = large.seed = 4;
  const auto a = gen_h0(small), b = gen_h0(large);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST(GenH0, TransformRecoversZ) {
  H0Config cfg;
  cfg.n = 20000;
  cfg.seed = 1;
  const auto ds = gen_h0(cfg);
  EXPECT_EQ(ds.d(), 2u);
  EXPECT_EQ(ds.d_prime(), 1u);
  for (std::size_t i = 0; i < ds.n(); ++i) {
    ASSERT_EQ(cfg.atom(atom_of(cfg, ds.x(i)[0])), ds.z(i)[0]);
    ASSERT_GE(ds.x(i)[1], 0.0);
    ASSERT_LT(ds.x(i)[1], 1.0);
  }
}

TEST(GenH0, NoiselessYIsFunctionOfZ) {
  H0Config cfg;
  cfg.n = 1000;
  cfg.noise_scale = 0.0;
  const auto ds = gen_h0(cfg);
  for (std::size_t i = 0; i < ds.n(); ++i) EXPECT_EQ(ds.y(i), ds.z(i)[0]);
}

TEST(GenH0, Validation) {
  H0Config cfg;
  cfg.interval_width = 0.25;
  EXPECT_THROW(gen_h0(cfg), std::invalid_argument);
  cfg.interval_width = 0.2;
  cfg.regression = {1.0};
  EXPECT_THROW(gen_h0(cfg), std::invalid_argument);
  H1Config h1;
  h1.theta = 0.0;
  EXPECT_THROW(gen_h1(h1), std::invalid_argument);
}

TEST(GenH1, Deterministic) {
  H1Config cfg;
  cfg.n = 300;
  cfg.seed = 3;
  const auto a = gen_h1(cfg), b = gen_h1(cfg);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
}

TEST(DiscretizedPopulation, NullIsConditionallyIndependent) {
  H1Config cfg;
  cfg.theta = 0.0;
  const auto joint = discretized_population(cfg, 10, 10);
  double total = 0.0;
  for (double p : joint.probs()) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_LE(conditional_mutual_information(joint), 1e-12);
}

TEST(DiscretizedPopulation, AlternativeDefectAndContinuityInTheta) {
  const double big = population_cmi(0.5), mid = population_cmi(0.1), small = population_cmi(0.01);
  EXPECT_GT(big, 0.01);
  EXPECT_GT(big, mid);
  EXPECT_GT(mid, small);
  EXPECT_LT(small, 0.05 * mid);
  EXPECT_LT(population_cmi(0.001), 1e-4);
  for (double t = 0.05; t < 0.5; t += 0.05) EXPECT_LE(population_cmi(t), population_cmi(t + 0.05) + 1e-12);
}

TEST(GenMarkovJoint, ConditionallyIndependentWithZeroExcess) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto [joint, map] = gen_markov_joint({3, 6, 3}, seed);
    EXPECT_LE(conditional_mutual_information(joint), 1e-12);
    EXPECT_NO_THROW(check_map_support(joint, map));
    std::vector<bool> hit(3, false);
    for (std::size_t x = 0; x < 6; ++x) hit[map(x)] = true;
    EXPECT_TRUE(hit[0] && hit[1] && hit[2]);
  }
  const auto [joint, map] = gen_markov_joint({2, 4, 2}, 77);
  for (std::uint64_t k = 0; k < 100; ++k) EXPECT_LE(std::abs(excess_risk(joint, map, gen_random_loss(2, 1.0, k))), 1e-12);
}

TEST(GenMarkovJoint, Deterministic) {
  const auto a = gen_markov_joint({2, 4, 2}, 5), b = gen_markov_joint({2, 4, 2}, 5);
  EXPECT_TRUE(std::equal(a.first.probs().begin(), a.first.probs().end(), b.first.probs().begin()));
  EXPECT_TRUE(std::equal(a.second.table().begin(), a.second.table().end(), b.second.table().begin()));
}

TEST(GenRandomJoint, Normalized) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto [joint, map] = gen_random_joint({4, 6, 3}, seed);
    double total = 0.0;
    for (double p : joint.probs()) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NO_THROW(check_map_support(joint, map));
  }
}

TEST(GenRandomLoss, SupNormBounded) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto l = gen_random_loss(4, 0.7, seed);
    EXPECT_LE(l.sup_norm(), 0.7);
    for (std::size_t y = 0; y < 4; ++y)
      for (std::size_t d = 0; d < 4; ++d) EXPECT_GE(l(y, d), 0.0);
  }
}

TEST(GenMarket, ReturnsWithinCmax) {
  MarketSizes sizes;
  sizes.c_max = 0.3;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = gen_market(sizes, seed);
    EXPECT_LE(m.c_max(), 0.3 + 1e-15);
    for (const auto& r : m.returns())
      for (double v : r) EXPECT_LE(std::abs(std::log(v)), 0.3 + 1e-15);
  }
}
