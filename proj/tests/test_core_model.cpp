#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "banditlab/errors.hpp"
#include "banditlab/instance.hpp"
#include "banditlab/json_io.hpp"
#include "banditlab/reward.hpp"
#include "banditlab/rng.hpp"
#include "oracles.hpp"

using namespace banditlab;

TEST(RewardDistribution, MeansAndDomains) {
  EXPECT_DOUBLE_EQ(RewardDistribution::bernoulli(0.3).mean(), 0.3);
  EXPECT_DOUBLE_EQ(RewardDistribution::deterministic(0.7).mean(), 0.7);
  EXPECT_DOUBLE_EQ(RewardDistribution::gaussian(-1.0, 2.0).mean(), -1.0);
  EXPECT_DOUBLE_EQ(RewardDistribution::bernoulli(0.5).variance(), 0.25);
  EXPECT_DOUBLE_EQ(RewardDistribution::deterministic(0.5).variance(), 0.0);
  EXPECT_DOUBLE_EQ(RewardDistribution::gaussian(0.0, 2.0).variance(), 4.0);
  EXPECT_THROW(RewardDistribution::bernoulli(1.5), ConfigError);
  EXPECT_THROW(RewardDistribution::bernoulli(-0.1), ConfigError);
  EXPECT_THROW(RewardDistribution::deterministic(1.1), ConfigError);
  EXPECT_THROW(RewardDistribution::gaussian(0.0, -1.0), ConfigError);
  EXPECT_NO_THROW(RewardDistribution::gaussian(0.0, 0.0));
  EXPECT_TRUE(RewardDistribution::deterministic(1.0).binary());
  EXPECT_FALSE(RewardDistribution::deterministic(0.5).binary());
  EXPECT_TRUE(RewardDistribution::bernoulli(0.5).binary());
}

TEST(SampleReward, DegenerateLaws) {
  RngStream rng(1, 2);
  const auto half = RewardDistribution::deterministic(0.5);
  const auto zero = RewardDistribution::bernoulli(0.0);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(sample_reward(half, rng), 0.5);
    EXPECT_EQ(sample_reward(zero, rng), 0.0);
  }
}

TEST(SampleReward, BernoulliMean) {
  RngStream rng(7, 0);
  const auto d = RewardDistribution::bernoulli(0.5);
  double sum = 0.0;
  for (int i = 0; i < 1'000'000; ++i) sum += sample_reward(d, rng);
  EXPECT_NEAR(sum / 1e6, 0.5, 0.002);
}

TEST(SampleReward, EmpiricalMeansWithinFiveStandardErrors) {
  const RewardDistribution laws[] = {RewardDistribution::bernoulli(0.1), RewardDistribution::bernoulli(0.9),
                                     RewardDistribution::gaussian(0.3, 1.5), RewardDistribution::deterministic(0.2)};
  std::uint64_t id = 0;
  for (const auto& law : laws) {
    RngStream rng(99, id++);
    double sum = 0.0;
    for (int i = 0; i < 1'000'000; ++i) sum += sample_reward(law, rng);
    EXPECT_LE(std::abs(sum / 1e6 - law.mean()), 5.0 * std::sqrt(law.variance() / 1e6) + 1e-9) << law.describe();
  }
}

TEST(SampleReward, WordsPerDrawAreFixed) {
  // Number of raw words to skip on a fresh stream to line up with the stream
  // after one draw.
  auto words_used = [](const RewardDistribution& d) {
    RngStream drawn(3, 4);
    sample_reward(d, drawn);
    const auto next = drawn.next_u64();
    for (int k = 0; k < 4; ++k) {
      RngStream fresh(3, 4);
      for (int i = 0; i < k; ++i) fresh.next_u64();
      if (fresh.next_u64() == next) return k;
    }
    return -1;
  };
  EXPECT_EQ(words_used(RewardDistribution::deterministic(0.5)), 0);
  EXPECT_EQ(words_used(RewardDistribution::bernoulli(0.5)), 1);
  EXPECT_EQ(words_used(RewardDistribution::gaussian(0.0, 1.0)), 2);
}

TEST(RngStream, PureFunctionOfKey) {
  RngStream a(42, 5), b(42, 5), c(42, 6), d(43, 5), e(42, 5, 1);
  std::set<std::uint64_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    if (i == 0) {
      firsts.insert(x);
      firsts.insert(c.next_u64());
      firsts.insert(d.next_u64());
      firsts.insert(e.next_u64());
    }
  }
  EXPECT_EQ(firsts.size(), 4u);
  EXPECT_EQ(RngStream(42, 5).split(1).next_u64(), RngStream(42, 5, 1).next_u64());
}

TEST(RngStream, UniformRangesAndMoments) {
  RngStream rng(11, 0);
  double sum = 0.0, sum_normal = 0.0, sum_normal2 = 0.0;
  for (int i = 0; i < 200'000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform_open();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    ASSERT_LT(rng.uniform_index(3), 3u);
    sum += u;
    const double z = rng.normal();
    sum_normal += z;
    sum_normal2 += z * z;
  }
  EXPECT_NEAR(sum / 2e5, 0.5, 0.003);
  EXPECT_NEAR(sum_normal / 2e5, 0.0, 0.01);
  EXPECT_NEAR(sum_normal2 / 2e5, 1.0, 0.015);
}

TEST(RngStream, BetaAndGammaMoments) {
  RngStream rng(5, 5);
  const std::pair<double, double> params[] = {{1, 1}, {1, 5}, {5, 1}, {3, 7}, {0.5, 0.5}, {20, 2}};
  for (auto [a, b] : params) {
    double sum = 0.0;
    for (int i = 0; i < 100'000; ++i) sum += rng.beta(a, b);
    const double mean = a / (a + b);
    const double sd = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1)));
    EXPECT_NEAR(sum / 1e5, mean, 5 * sd / std::sqrt(1e5)) << a << "," << b;
  }
  double g = 0.0;
  for (int i = 0; i < 100'000; ++i) g += rng.gamma(0.3);
  EXPECT_NEAR(g / 1e5, 0.3, 5 * std::sqrt(0.3 / 1e5));
}

TEST(Instances, ModerateGap) {
  const auto zero = make_moderate_gap_instance(0.0, 10'000, 0.5);
  EXPECT_EQ(zero.arms()[0], RewardDistribution::bernoulli(0.5));
  EXPECT_EQ(zero.arms()[1], RewardDistribution::bernoulli(0.5));
  EXPECT_EQ(zero.gap(), 0.0);

  const auto mod = make_moderate_gap_instance(3.5, 10'000, 0.9);
  EXPECT_NEAR(mod.gap(), oracle::kModerateGap_3_5_n1e4, 1e-12);
  EXPECT_EQ(mod.regime().kind, RegimeKind::kModerateGap);
  EXPECT_EQ(mod.regime().parameter, 3.5);
  EXPECT_EQ(mod.best_arm(), 0u);

  EXPECT_THROW(make_moderate_gap_instance(3.5, 10'000, 0.01), ConfigError);
  EXPECT_THROW(make_moderate_gap_instance(-1.0, 10'000, 0.5), ConfigError);
}

TEST(Instances, Diffusion) {
  const auto flat = make_diffusion_instance(0.0, 0.0, 0.0, 1.0, 1.0, 100);
  EXPECT_EQ(flat.arms()[0], RewardDistribution::gaussian(0.0, 1.0));
  EXPECT_EQ(flat.arms()[1], RewardDistribution::gaussian(0.0, 1.0));
  EXPECT_EQ(flat.gap(), 0.0);

  const auto tilted = make_diffusion_instance(0.0, 1.0, 0.0, 1.0, 1.0, 10'000);
  EXPECT_NEAR(tilted.gap(), 0.01, 1e-15);
  EXPECT_EQ(tilted.regime().kind, RegimeKind::kSmallGap);
  EXPECT_NEAR(tilted.regime().parameter, 1.0, 1e-15);
  EXPECT_EQ(tilted.regime().predicted_share, 0.5);
  EXPECT_EQ(tilted.diffusion_center(), 0.0);

  EXPECT_THROW(make_diffusion_instance(0.5, 0.0, 0.0, -1.0, 1.0, 10), ConfigError);
}

TEST(Instances, RealizedGapMatchesDeclaredFormula) {
  for (std::int64_t n : {10, 1000, 123'457}) {
    const double ln = std::log(static_cast<double>(n));
    EXPECT_NEAR(make_moderate_gap_instance(2.0, n, 0.95).gap(), std::sqrt(2.0 * ln / n), 1e-12);
    EXPECT_NEAR(make_small_gap_instance(0.7, n, 0.95).gap(), 0.7 / std::sqrt(double(n)), 1e-12);
    EXPECT_NEAR(make_diffusion_instance(0.2, 0.3, 1.1, 1, 1, n).gap(), 0.8 / std::sqrt(double(n)), 1e-12);
    EXPECT_EQ(make_zero_gap_instance(RewardDistribution::bernoulli(0.4), n).gap(), 0.0);
  }
}

TEST(Instances, ValidationAndDerivedQuantities) {
  EXPECT_THROW(Instance({RewardDistribution::bernoulli(0.5)}, 10), ConfigError);
  EXPECT_THROW(Instance({RewardDistribution::bernoulli(0.5), RewardDistribution::bernoulli(0.5)}, 0), ConfigError);
  // Declared zero gap but the means differ.
  EXPECT_THROW(Instance({RewardDistribution::bernoulli(0.5), RewardDistribution::bernoulli(0.4)}, 10,
                        RegimePrediction::zero_gap()),
               ConfigError);

  const auto k = make_k_armed_instance({0.9, 0.9, 0.1, 0.1}, 100);
  EXPECT_EQ(k.optimal_set(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(k.regime().kind, RegimeKind::kKArmedSeparated);
  EXPECT_EQ(k.regime().predicted_share, 0.5);
  EXPECT_NEAR(k.min_gap(), 0.8, 1e-15);

  const auto same = make_k_armed_instance({0.5, 0.5, 0.5, 0.5, 0.5}, 100);
  EXPECT_EQ(same.regime().kind, RegimeKind::kKArmedIdentical);
  EXPECT_EQ(same.optimal_set().size(), 5u);

  const auto large = make_large_gap_instance(0.9, 0.1, 100);
  EXPECT_EQ(large.regime().predicted_share, 1.0);
  EXPECT_EQ(large.with_horizon(50).horizon(), 50);
}

TEST(Instances, PureConstruction) {
  EXPECT_EQ(make_moderate_gap_instance(3.5, 10'000, 0.9), make_moderate_gap_instance(3.5, 10'000, 0.9));
  EXPECT_EQ(make_diffusion_instance(0.1, 1, 2, 1, 1, 77), make_diffusion_instance(0.1, 1, 2, 1, 1, 77));
}

TEST(InstanceJson, RoundTripAndDocumentedForm) {
  const auto inst = make_moderate_gap_instance(3.5, 10'000, 0.9);
  EXPECT_EQ(instance_from_json(to_json(inst)), inst);

  const auto doc = Json::parse(R"({"arms":[{"kind":"bernoulli","q":0.5},{"kind":"bernoulli","q":0.5}],
                                   "horizon":10000,"regime":{"kind":"zero"}})");
  const auto parsed = instance_from_json(doc);
  EXPECT_EQ(parsed.horizon(), 10'000);
  EXPECT_EQ(parsed.regime().kind, RegimeKind::kZeroGap);

  const auto diff = make_diffusion_instance(0.5, 1, 0, 1, 2, 400);
  EXPECT_EQ(instance_from_json(to_json(diff)), diff);

  EXPECT_THROW(instance_from_json(Json::parse(R"({"arms":[{"kind":"poisson"}],"horizon":3})")), ConfigError);
}
