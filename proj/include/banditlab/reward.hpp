#pragma once

#include <string>
#include <variant>

#include "banditlab/rng.hpp"

namespace banditlab {

struct Bernoulli {
  double q;
};

struct Deterministic {
  double v;
};

struct Gaussian {
  double mean;
  double sigma;
};

/// Reward law of a single arm. Bernoulli and Deterministic rewards live in
/// [0, 1]; Gaussian rewards are reserved for diffusion-scale experiments.
class RewardDistribution {
 public:
  using Kind = std::variant<Bernoulli, Deterministic, Gaussian>;

  // Throws ConfigError when parameters fall outside their domain.
  static RewardDistribution bernoulli(double q);
  static RewardDistribution deterministic(double v);
  static RewardDistribution gaussian(double mean, double sigma);

  const Kind& kind() const { return kind_; }
  double mean() const;
  double variance() const;
  bool bounded_unit() const { return !std::holds_alternative<Gaussian>(kind_); }
  // True when every draw is exactly 0 or 1.
  bool binary() const;

  std::string describe() const;

  friend bool operator==(const RewardDistribution& a, const RewardDistribution& b);

 private:
  explicit RewardDistribution(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// One draw. Words consumed per kind: Deterministic 0, Bernoulli 1, Gaussian 2.
double sample_reward(const RewardDistribution& dist, RngStream& rng);

}  // namespace banditlab
