#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "banditlab/rng.hpp"

namespace banditlab {

// ---------------------------------------------------------------------------
// Configuration

struct UcbConfig {
  double rho = 2.0;
};
struct TsBetaConfig {};
struct TsGaussianConfig {};

using PolicySpec = std::variant<UcbConfig, TsBetaConfig, TsGaussianConfig>;

/// Rejects UCB exploration coefficients rho <= 1.
void validate(const PolicySpec& spec);
std::string policy_name(const PolicySpec& spec);

// ---------------------------------------------------------------------------
// Sufficient statistics

struct UcbState {
  std::vector<std::int64_t> counts;
  std::vector<double> reward_sums;
  std::int64_t t = 0;  // completed pulls

  explicit UcbState(std::size_t arms) : counts(arms, 0), reward_sums(arms, 0.0) {}
  std::size_t num_arms() const { return counts.size(); }
};

struct TsBetaState {
  std::vector<std::int64_t> successes;
  std::vector<std::int64_t> failures;
  std::int64_t t = 0;

  explicit TsBetaState(std::size_t arms) : successes(arms, 0), failures(arms, 0) {}
  std::size_t num_arms() const { return successes.size(); }
};

struct TsGaussianState {
  std::vector<std::int64_t> counts;
  std::vector<double> reward_sums;
  std::int64_t t = 0;

  explicit TsGaussianState(std::size_t arms) : counts(arms, 0), reward_sums(arms, 0.0) {}
  std::size_t num_arms() const { return counts.size(); }
};

// ---------------------------------------------------------------------------
// Selection rules. Arm indices are 0-based throughout.

/// Canonical UCB: argmax of mean_i + sqrt(rho * ln(t) / N_i) with t the
/// number of completed pulls. At decision time t+1 this is the textbook
/// log(t-1) bonus written in terms of the previous step. Exact ties are
/// broken uniformly at random; rng is only consumed on a tie.
/// Requires t >= K (every arm pulled once).
std::size_t ucb_select(const UcbState& state, double rho, RngStream& rng);

double ucb_index(const UcbState& state, std::size_t arm, double rho);

/// Draws Beta(S_i + 1, F_i + 1) per arm and plays the argmax.
std::size_t ts_beta_select(const TsBetaState& state, RngStream& rng);

/// Draws Normal(sum_i / (N_i + 1), 1 / (N_i + 1)) per arm (standard normal
/// prior) and plays the argmax.
std::size_t ts_gaussian_select(const TsGaussianState& state, RngStream& rng);

void policy_update(UcbState& state, std::size_t arm, double reward);
/// Throws InvariantViolation unless reward is exactly 0 or 1.
void policy_update(TsBetaState& state, std::size_t arm, double reward);
void policy_update(TsGaussianState& state, std::size_t arm, double reward);

// ---------------------------------------------------------------------------
// Stateful wrappers used by the simulation loop.

/// UCB with the forced initialization phase: arms 0..K-1 in order at t=1..K.
class UcbPolicy {
 public:
  UcbPolicy(std::size_t arms, double rho);
  std::size_t select(RngStream& rng) const;
  void update(std::size_t arm, double reward) { policy_update(state_, arm, reward); }
  const UcbState& state() const { return state_; }

 private:
  UcbState state_;
  double rho_;
};

class TsBetaPolicy {
 public:
  explicit TsBetaPolicy(std::size_t arms) : state_(arms) {}
  std::size_t select(RngStream& rng) const { return ts_beta_select(state_, rng); }
  void update(std::size_t arm, double reward) { policy_update(state_, arm, reward); }
  const TsBetaState& state() const { return state_; }

 private:
  TsBetaState state_;
};

class TsGaussianPolicy {
 public:
  explicit TsGaussianPolicy(std::size_t arms) : state_(arms) {}
  std::size_t select(RngStream& rng) const { return ts_gaussian_select(state_, rng); }
  void update(std::size_t arm, double reward) { policy_update(state_, arm, reward); }
  const TsGaussianState& state() const { return state_; }

 private:
  TsGaussianState state_;
};

}  // namespace banditlab
