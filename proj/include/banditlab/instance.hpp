#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "banditlab/reward.hpp"

namespace banditlab {

enum class RegimeKind {
  kUnspecified,
  kLargeGap,
  kSmallGap,     // gap = c / sqrt(n)
  kModerateGap,  // gap = sqrt(theta log n / n)
  kZeroGap,
  kKArmedIdentical,
  kKArmedSeparated,
};

std::string to_string(RegimeKind kind);

/// Gap regime an instance was built in, with the limiting share of pulls
/// the optimal arm(s) receive under UCB. Moderate-gap shares depend on the
/// exploration coefficient and stay empty until resolved (see asymptotics).
struct RegimePrediction {
  RegimeKind kind = RegimeKind::kUnspecified;
  double parameter = 0.0;  // c for kSmallGap, theta for kModerateGap
  std::optional<double> predicted_share;

  static RegimePrediction unspecified() { return {}; }
  static RegimePrediction large_gap() { return {RegimeKind::kLargeGap, 0.0, 1.0}; }
  static RegimePrediction small_gap(double c);
  static RegimePrediction moderate_gap(double theta);
  static RegimePrediction zero_gap() { return {RegimeKind::kZeroGap, 0.0, 0.5}; }
  static RegimePrediction k_armed_identical(std::size_t k);
  static RegimePrediction k_armed_separated(std::size_t optimal_count);

  /// Gap implied by the regime at horizon n, when the regime fixes one.
  std::optional<double> declared_gap(std::int64_t horizon) const;

  friend bool operator==(const RegimePrediction&, const RegimePrediction&) = default;
};

class Instance {
 public:
  /// Throws ConfigError on fewer than two arms, a non-positive horizon, or a
  /// realized gap that disagrees with the regime's declared gap by > 1e-12.
  Instance(std::vector<RewardDistribution> arms, std::int64_t horizon,
           RegimePrediction regime = {}, std::optional<double> diffusion_center = std::nullopt);

  const std::vector<RewardDistribution>& arms() const { return arms_; }
  std::size_t num_arms() const { return arms_.size(); }
  std::int64_t horizon() const { return horizon_; }
  const RegimePrediction& regime() const { return regime_; }
  // Base mean mu of a diffusion-scaled instance; reward paths are centered on it.
  const std::optional<double>& diffusion_center() const { return diffusion_center_; }

  std::vector<double> means() const;
  double best_mean() const;
  // 0-based indices of arms attaining the best mean.
  std::vector<std::size_t> optimal_set() const;
  std::size_t best_arm() const { return optimal_set().front(); }
  // |mu_1 - mu_2| for two arms; best minus runner-up mean otherwise.
  double gap() const;
  // Best mean minus the best strictly suboptimal mean; 0 when all arms tie.
  double min_gap() const;
  bool all_binary() const;

  Instance with_horizon(std::int64_t horizon) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<RewardDistribution> arms_;
  std::int64_t horizon_;
  RegimePrediction regime_;
  std::optional<double> diffusion_center_;
};

/// Two Bernoulli arms with means base_mean and base_mean - sqrt(theta ln n / n).
Instance make_moderate_gap_instance(double theta, std::int64_t n, double base_mean);

/// Two Gaussian arms with means mu + theta_i / sqrt(n) and std devs sigma_i.
Instance make_diffusion_instance(double mu, double theta1, double theta2, double sigma1,
                                 double sigma2, std::int64_t n);

/// Two Bernoulli arms with means base_mean and base_mean - c / sqrt(n).
Instance make_small_gap_instance(double c, std::int64_t n, double base_mean);

Instance make_zero_gap_instance(const RewardDistribution& arm, std::int64_t n);

Instance make_large_gap_instance(double q_best, double q_other, std::int64_t n);

/// K Bernoulli arms; regime is k-armed-identical when all means agree,
/// k-armed-separated otherwise.
Instance make_k_armed_instance(const std::vector<double>& means, std::int64_t n);

}  // namespace banditlab
