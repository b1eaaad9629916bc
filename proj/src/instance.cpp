#include "banditlab/instance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

constexpr double kGapTolerance = 1e-12;

void require_horizon(std::int64_t n) {
  if (n < 1) throw ConfigError("horizon must be a positive integer");
}

}  // namespace

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::kUnspecified: return "none";
    case RegimeKind::kLargeGap: return "large";
    case RegimeKind::kSmallGap: return "small";
    case RegimeKind::kModerateGap: return "moderate";
    case RegimeKind::kZeroGap: return "zero";
    case RegimeKind::kKArmedIdentical: return "k_identical";
    case RegimeKind::kKArmedSeparated: return "k_separated";
  }
  return "none";
}

RegimePrediction RegimePrediction::small_gap(double c) {
  if (!(c >= 0.0)) throw ConfigError("small-gap constant c must be >= 0");
  return {RegimeKind::kSmallGap, c, 0.5};
}

RegimePrediction RegimePrediction::moderate_gap(double theta) {
  if (!(theta >= 0.0)) throw ConfigError("theta must be >= 0");
  return {RegimeKind::kModerateGap, theta, std::nullopt};
}

RegimePrediction RegimePrediction::k_armed_identical(std::size_t k) {
  if (k < 2) throw ConfigError("k-armed regime needs at least two arms");
  return {RegimeKind::kKArmedIdentical, 0.0, 1.0 / static_cast<double>(k)};
}

RegimePrediction RegimePrediction::k_armed_separated(std::size_t optimal_count) {
  if (optimal_count < 1) throw ConfigError("optimal set must be non-empty");
  return {RegimeKind::kKArmedSeparated, 0.0, 1.0 / static_cast<double>(optimal_count)};
}

std::optional<double> RegimePrediction::declared_gap(std::int64_t horizon) const {
  const auto n = static_cast<double>(horizon);
  switch (kind) {
    case RegimeKind::kZeroGap: return 0.0;
    case RegimeKind::kSmallGap: return parameter / std::sqrt(n);
    case RegimeKind::kModerateGap: return std::sqrt(parameter * std::log(n) / n);
    default: return std::nullopt;
  }
}

Instance::Instance(std::vector<RewardDistribution> arms, std::int64_t horizon,
                   RegimePrediction regime, std::optional<double> diffusion_center)
    : arms_(std::move(arms)),
      horizon_(horizon),
      regime_(regime),
      diffusion_center_(diffusion_center) {
  if (arms_.size() < 2) throw ConfigError("an instance needs at least two arms");
  require_horizon(horizon_);
  if (arms_.size() == 2) {
    if (const auto declared = regime_.declared_gap(horizon_)) {
      if (std::abs(gap() - *declared) > kGapTolerance) {
        throw ConfigError("arm means do not realize the gap declared by the " +
                          to_string(regime_.kind) + " regime");
      }
    }
  }
  const std::size_t optimal = optimal_set().size();
  if (regime_.kind == RegimeKind::kKArmedIdentical && optimal != arms_.size()) {
    throw ConfigError("k_identical regime requires all arm means to be equal");
  }
  if (regime_.kind == RegimeKind::kKArmedSeparated && regime_.predicted_share &&
      std::abs(*regime_.predicted_share - 1.0 / static_cast<double>(optimal)) > kGapTolerance) {
    throw ConfigError("k_separated regime share disagrees with the optimal set size");
  }
}

std::vector<double> Instance::means() const {
  std::vector<double> out;
  out.reserve(arms_.size());
  for (const auto& arm : arms_) out.push_back(arm.mean());
  return out;
}

double Instance::best_mean() const {
  const auto m = means();
  return *std::max_element(m.begin(), m.end());
}

std::vector<std::size_t> Instance::optimal_set() const {
  const auto m = means();
  const double best = *std::max_element(m.begin(), m.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == best) out.push_back(i);
  }
  return out;
}

double Instance::gap() const {
  auto m = means();
  if (m.size() == 2) return std::abs(m[0] - m[1]);
  std::sort(m.begin(), m.end(), std::greater<>());
  return m[0] - m[1];
}

double Instance::min_gap() const {
  const auto m = means();
  const double best = *std::max_element(m.begin(), m.end());
  double runner_up = -INFINITY;
  for (double x : m) {
    if (x < best) runner_up = std::max(runner_up, x);
  }
  return std::isinf(runner_up) ? 0.0 : best - runner_up;
}

bool Instance::all_binary() const {
  return std::all_of(arms_.begin(), arms_.end(), [](const auto& a) { return a.binary(); });
}

Instance Instance::with_horizon(std::int64_t horizon) const {
  return Instance(arms_, horizon, regime_, diffusion_center_);
}

Instance make_moderate_gap_instance(double theta, std::int64_t n, double base_mean) {
  if (!(theta >= 0.0)) throw ConfigError("theta must be >= 0");
  require_horizon(n);
  if (!(base_mean > 0.0 && base_mean < 1.0)) throw ConfigError("base_mean must lie in (0,1)");
  const auto regime = RegimePrediction::moderate_gap(theta);
  const double gap = *regime.declared_gap(n);
  const double second = base_mean - gap;
  if (second < 0.0) throw ConfigError("moderate gap pushes the second arm's mean below 0");
  return Instance({RewardDistribution::bernoulli(base_mean), RewardDistribution::bernoulli(second)},
                  n, regime);
}

Instance make_diffusion_instance(double mu, double theta1, double theta2, double sigma1,
                                 double sigma2, std::int64_t n) {
  require_horizon(n);
  if (!(theta1 >= 0.0) || !(theta2 >= 0.0)) throw ConfigError("theta_i must be >= 0");
  if (!(sigma1 >= 0.0) || !(sigma2 >= 0.0)) throw ConfigError("sigma_i must be >= 0");
  const double root_n = std::sqrt(static_cast<double>(n));
  auto arm1 = RewardDistribution::gaussian(mu + theta1 / root_n, sigma1);
  auto arm2 = RewardDistribution::gaussian(mu + theta2 / root_n, sigma2);
  // Declared gap is |theta1 - theta2| / sqrt(n); the two means are rounded
  // independently, which stays far inside the 1e-12 consistency check.
  return Instance({arm1, arm2}, n, RegimePrediction::small_gap(std::abs(theta1 - theta2)), mu);
}

Instance make_small_gap_instance(double c, std::int64_t n, double base_mean) {
  require_horizon(n);
  const auto regime = RegimePrediction::small_gap(c);
  const double second = base_mean - *regime.declared_gap(n);
  if (!(base_mean <= 1.0) || !(second >= 0.0)) throw ConfigError("small gap means escape [0,1]");
  return Instance({RewardDistribution::bernoulli(base_mean), RewardDistribution::bernoulli(second)},
                  n, regime);
}

Instance make_zero_gap_instance(const RewardDistribution& arm, std::int64_t n) {
  return Instance({arm, arm}, n, RegimePrediction::zero_gap());
}

Instance make_large_gap_instance(double q_best, double q_other, std::int64_t n) {
  if (!(q_best > q_other)) throw ConfigError("large-gap instance needs q_best > q_other");
  return Instance({RewardDistribution::bernoulli(q_best), RewardDistribution::bernoulli(q_other)}, n,
                  RegimePrediction::large_gap());
}

Instance make_k_armed_instance(const std::vector<double>& means, std::int64_t n) {
  if (means.size() < 2) throw ConfigError("k-armed instance needs at least two arms");
  std::vector<RewardDistribution> arms;
  for (double m : means) arms.push_back(RewardDistribution::bernoulli(m));
  const double best = *std::max_element(means.begin(), means.end());
  const auto optimal =
      static_cast<std::size_t>(std::count(means.begin(), means.end(), best));
  const auto regime = optimal == means.size() ? RegimePrediction::k_armed_identical(means.size())
                                              : RegimePrediction::k_armed_separated(optimal);
  return Instance(std::move(arms), n, regime);
}

}  // namespace banditlab
