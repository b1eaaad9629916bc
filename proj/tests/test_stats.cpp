#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "banditlab/errors.hpp"
#include "banditlab/rng.hpp"
#include "banditlab/stats.hpp"
#include "banditlab/ts_exact.hpp"
#include "oracles.hpp"

using namespace banditlab;

TEST(EmpiricalDistribution, SummaryStatistics) {
  const EmpiricalDistribution d({3.0, 1.0, 2.0, 4.0});
  EXPECT_EQ(d.samples()[0], 1.0);
  EXPECT_EQ(d.count(), 4u);
  EXPECT_DOUBLE_EQ(d.mean(), 2.5);
  EXPECT_DOUBLE_EQ(d.variance(), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(d.quantile(0.5), 2.5);
  EXPECT_DOUBLE_EQ(d.quantile(0.0), 1.0);
  EXPECT_DOUBLE_EQ(d.quantile(1.0), 4.0);
  EXPECT_DOUBLE_EQ(d.cdf(2.0), 0.5);
  EXPECT_DOUBLE_EQ(d.fraction_within(1.5, 3.0), 0.5);
  EXPECT_EQ(d, EmpiricalDistribution({4.0, 3.0, 2.0, 1.0}));
}

TEST(KsStatistic, Examples) {
  EXPECT_DOUBLE_EQ(ks_statistic(EmpiricalDistribution({0.5}), UniformUnit{}), 0.5);
  for (int m : {1, 9, 100, 1000}) {
    std::vector<double> lattice;
    for (int k = 1; k <= m; ++k) lattice.push_back(double(k) / (m + 1));
    EXPECT_LE(ks_statistic(EmpiricalDistribution(lattice), UniformUnit{}), 1.0 / (m + 1) + 1e-15);
  }
  EXPECT_THROW(ks_statistic(EmpiricalDistribution(), UniformUnit{}), ConfigError);
}

TEST(KsStatistic, PseudoUniformDrawsUsuallyPass) {
  const double critical = 1.36 / std::sqrt(1e5);
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, 0);
    std::vector<double> u(100'000);
    for (auto& x : u) x = rng.uniform();
    passes += ks_statistic(EmpiricalDistribution(u), UniformUnit{}) < critical ? 1 : 0;
  }
  EXPECT_GE(passes, 18);
}

TEST(KsStatistic, OrderInvariantAndPositive) {
  std::vector<double> v{0.9, 0.1, 0.5, 0.33};
  const double a = ks_statistic(EmpiricalDistribution(v), UniformUnit{});
  std::reverse(v.begin(), v.end());
  EXPECT_EQ(a, ks_statistic(EmpiricalDistribution(v), UniformUnit{}));
  EXPECT_GT(a, 0.0);
}

TEST(KsStatistic, AtomicLaws) {
  EXPECT_EQ(ks_statistic(EmpiricalDistribution({0.5, 0.5}), DiracAt{0.5}), 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic(EmpiricalDistribution({0.0, 1.0}), DiracAt{0.5}), 0.5);
  const DiscreteLaw coin{{0.0, 1.0}, {0.5, 0.5}};
  EXPECT_DOUBLE_EQ(ks_statistic(EmpiricalDistribution({0.0, 0.0, 0.0, 1.0}), coin), 0.25);
  EXPECT_THROW(validate(DiscreteLaw{{0.0, 1.0}, {0.5, 0.4}}), ConfigError);
  EXPECT_THROW(validate(NormalLaw{0.0, 0.0}), ConfigError);
}

TEST(KsStatistic, ExactUniformLawIsWithinDiscretizationGap) {
  for (std::int64_t n : {10, 100, 1000}) {
    const auto d = exact_count_distribution(n, 1);
    DiscreteLaw law;
    for (std::int64_t m = 0; m <= n; ++m) law.support.push_back(double(m) / n);
    law.mass = d.mass;
    EXPECT_LE(ks_law_distance(law, UniformUnit{}), 1.0 / (n + 1) + 1e-12) << n;
  }
}

TEST(KsTwoSample, IdenticalAndDisjoint) {
  const EmpiricalDistribution a({0.1, 0.2, 0.3}), b({0.7, 0.8});
  EXPECT_EQ(ks_two_sample(a, a), 0.0);
  EXPECT_EQ(ks_two_sample(a, b), 1.0);
  EXPECT_DOUBLE_EQ(ks_two_sample(EmpiricalDistribution({0.0, 1.0}), EmpiricalDistribution({0.0, 0.0})), 0.5);
}

TEST(KsCriticalValue, KnownConstants) {
  EXPECT_NEAR(ks_critical_value(0.05, 1) , 1.3581015157, 1e-9);
  EXPECT_NEAR(ks_critical_value(0.01, 10'000), 1.6276236115 / 100, 1e-9);
  EXPECT_NEAR(ks_two_sample_critical_value(0.01, 100, 100), 1.6276236115 * std::sqrt(0.02), 1e-8);
}

TEST(NormalHelpers, AgainstBoost) {
  for (double p : {1e-10, 1e-4, 0.01, 0.2, 0.5, 0.77, 0.975, 1 - 1e-9}) {
    EXPECT_NEAR(normal_quantile(p), oracle::normal_quantile(p), 1e-9 * std::max(1.0, std::abs(oracle::normal_quantile(p))));
  }
  EXPECT_NEAR(normal_cdf(1.0), 0.8413447460685429, 1e-15);
  EXPECT_NEAR(normal_pdf(0.0), 0.3989422804014327, 1e-15);
}

TEST(ChiSquare, Examples) {
  std::vector<double> balanced;
  for (int b = 0; b < 10; ++b)
    for (int k = 0; k < 100; ++k) balanced.push_back((b + 0.5) / 10);
  const auto ok = chi_square_uniform(EmpiricalDistribution(balanced), 10);
  EXPECT_EQ(ok.statistic, 0.0);
  EXPECT_TRUE(ok.pass);

  const auto lumped = chi_square_uniform(EmpiricalDistribution(std::vector<double>(1000, 0.05)), 10);
  EXPECT_DOUBLE_EQ(lumped.statistic, 9000.0);
  EXPECT_FALSE(lumped.pass);

  EXPECT_THROW(chi_square_uniform(EmpiricalDistribution(), 10), ConfigError);
  EXPECT_THROW(chi_square_uniform(EmpiricalDistribution({0.5}), 1), ConfigError);
}

TEST(ChiSquare, ExactUniformQuantilesPass) {
  const std::int64_t n = 1000;
  const auto d = exact_count_distribution(n, 1);
  std::vector<double> samples;
  const int m = 20'000;
  double cum = 0.0;
  std::int64_t k = 0;
  for (int i = 0; i < m; ++i) {
    const double p = (i + 0.5) / m;
    while (cum + d.mass[k] < p) cum += d.mass[k++];
    samples.push_back(double(k) / n);
  }
  EXPECT_TRUE(chi_square_uniform(EmpiricalDistribution(samples), 50).pass);
}

TEST(ChiSquare, QuantileApproximation) {
  // Upper 1% points of chi-square with 9 and 49 degrees of freedom.
  EXPECT_NEAR(chi_square_quantile(0.01, 9), 21.666, 0.05);
  EXPECT_NEAR(chi_square_quantile(0.01, 49), 74.919, 0.05);
}

TEST(Hoeffding, BoundShape) {
  EXPECT_NEAR(hoeffding_two_sample_bound(1e-9, 10, 10), 1.0, 1e-12);
  EXPECT_NEAR(hoeffding_two_sample_bound(1.0, 1, 1), std::exp(-1.0), 1e-15);
  EXPECT_GT(hoeffding_two_sample_bound(0.1, 10, 10), hoeffding_two_sample_bound(0.2, 10, 10));
  EXPECT_GT(hoeffding_two_sample_bound(0.1, 10, 50), hoeffding_two_sample_bound(0.1, 20, 50));
}

TEST(Hoeffding, EmpiricalExceedanceBelowBound) {
  RngStream rng(2024, 0);
  const int m = 50, trials = 100'000;
  int exceed = 0;
  for (int t = 0; t < trials; ++t) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < m; ++i) a += (rng.bernoulli(0.5) ? 0.5 : -0.5);
    for (int i = 0; i < m; ++i) b += (rng.bernoulli(0.5) ? 0.5 : -0.5);
    exceed += (a / m - b / m >= 0.2) ? 1 : 0;
  }
  EXPECT_LE(double(exceed) / trials, hoeffding_two_sample_bound(0.2, m, m));
  EXPECT_NEAR(hoeffding_two_sample_bound(0.2, m, m), std::exp(-2.0), 1e-15);
}

TEST(Normality, Examples) {
  const auto point = normality_report(EmpiricalDistribution(std::vector<double>(100, 1.5)), 1.5, 2.0, 0.1);
  EXPECT_DOUBLE_EQ(point.statistic, 0.5);
  EXPECT_FALSE(point.pass);

  const int m = 999;
  std::vector<double> lattice;
  for (int k = 1; k <= m; ++k) lattice.push_back(oracle::normal_quantile(double(k) / (m + 1)));
  EXPECT_LE(normality_report(EmpiricalDistribution(lattice), 0.0, 1.0, 1.0).statistic, 1.0 / (m + 1) + 1e-9);
  EXPECT_THROW(normality_report(EmpiricalDistribution(lattice), 0.0, 0.0, 1.0), ConfigError);
}

TEST(TestReport, PassMeansStatisticWithinThreshold) {
  EXPECT_TRUE(make_report("a", 0.1, 0.1, 5).pass);
  EXPECT_FALSE(make_report("a", 0.11, 0.1, 5).pass);
  EXPECT_EQ(to_json_line(make_report("ks_uniform", 0.25, 0.5, 3)),
            R"({"test":"ks_uniform","statistic":0.25,"threshold":0.5,"pass":true,"samples":3})");
}

TEST(Histogram, BinsAndDensity) {
  const std::vector<double> v{0.0, 0.1, 0.5, 0.99, 1.0, 1.5, -2.0};
  const auto h = make_histogram(v, 4, 0.0, 1.0);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{3, 0, 1, 3}));
  EXPECT_EQ(h.total(), v.size());
  EXPECT_NEAR(h.density(0), 3.0 / (7 * 0.25), 1e-15);
  EXPECT_DOUBLE_EQ(h.bin_center(1), 0.375);
}
