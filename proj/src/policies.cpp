#include "banditlab/policies.hpp"

#include <cmath>
#include <sstream>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

void check_arm(std::size_t arm, std::size_t arms) {
  if (arm >= arms) throw InvariantViolation("arm index out of range");
}

// Argmax with uniform tie-breaking. The rng is touched only when several
// entries share the maximum, so tie-free runs consume no words here.
template <class Score>
std::size_t argmax_random_ties(std::size_t arms, Score&& score, RngStream& rng) {
  std::size_t best = 0;
  double best_score = score(0);
  std::size_t ties = 1;
  for (std::size_t i = 1; i < arms; ++i) {
    const double s = score(i);
    if (s > best_score) {
      best = i;
      best_score = s;
      ties = 1;
    } else if (s == best_score) {
      ++ties;
    }
  }
  if (ties == 1) return best;
  std::size_t pick = rng.uniform_index(ties);
  for (std::size_t i = 0; i < arms; ++i) {
    if (score(i) == best_score && pick-- == 0) return i;
  }
  return best;
}

// Per-arm scores, stored inline for the common small-K case.
class ScoreBuffer {
 public:
  explicit ScoreBuffer(std::size_t arms) {
    if (arms > kInline) heap_.resize(arms);
    data_ = arms > kInline ? heap_.data() : inline_;
  }
  ScoreBuffer(const ScoreBuffer&) = delete;
  ScoreBuffer& operator=(const ScoreBuffer&) = delete;
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

 private:
  static constexpr std::size_t kInline = 8;
  double inline_[kInline];
  std::vector<double> heap_;
  double* data_;
};

}  // namespace

void validate(const PolicySpec& spec) {
  if (const auto* ucb = std::get_if<UcbConfig>(&spec)) {
    if (!(ucb->rho > 1.0)) {
      std::ostringstream os;
      os << "UCB exploration coefficient rho must satisfy rho > 1 (got " << ucb->rho << ")";
      throw ConfigError(os.str());
    }
  }
}

std::string policy_name(const PolicySpec& spec) {
  switch (spec.index()) {
    case 0: return "ucb";
    case 1: return "ts_beta";
    default: return "ts_gaussian";
  }
}

double ucb_index(const UcbState& state, std::size_t arm, double rho) {
  check_arm(arm, state.num_arms());
  const auto n = static_cast<double>(state.counts[arm]);
  return state.reward_sums[arm] / n + std::sqrt(rho * std::log(static_cast<double>(state.t)) / n);
}

std::size_t ucb_select(const UcbState& state, double rho, RngStream& rng) {
  const std::size_t arms = state.num_arms();
  if (state.t < static_cast<std::int64_t>(arms)) {
    throw InvariantViolation("ucb_select called before every arm was played once");
  }
  const double scale = rho * std::log(static_cast<double>(state.t));
  ScoreBuffer scores(arms);
  for (std::size_t i = 0; i < arms; ++i) {
    const auto n = static_cast<double>(state.counts[i]);
    scores[i] = state.reward_sums[i] / n + std::sqrt(scale / n);
  }
  return argmax_random_ties(arms, [&](std::size_t i) { return scores[i]; }, rng);
}

std::size_t ts_beta_select(const TsBetaState& state, RngStream& rng) {
  const std::size_t arms = state.num_arms();
  ScoreBuffer draws(arms);
  for (std::size_t i = 0; i < arms; ++i) {
    draws[i] = rng.beta(static_cast<double>(state.successes[i] + 1),
                        static_cast<double>(state.failures[i] + 1));
  }
  return argmax_random_ties(arms, [&](std::size_t i) { return draws[i]; }, rng);
}

std::size_t ts_gaussian_select(const TsGaussianState& state, RngStream& rng) {
  const std::size_t arms = state.num_arms();
  ScoreBuffer draws(arms);
  for (std::size_t i = 0; i < arms; ++i) {
    const double precision = static_cast<double>(state.counts[i]) + 1.0;
    draws[i] = state.reward_sums[i] / precision + rng.normal() / std::sqrt(precision);
  }
  return argmax_random_ties(arms, [&](std::size_t i) { return draws[i]; }, rng);
}

void policy_update(UcbState& state, std::size_t arm, double reward) {
  check_arm(arm, state.num_arms());
  ++state.counts[arm];
  state.reward_sums[arm] += reward;
  ++state.t;
}

void policy_update(TsBetaState& state, std::size_t arm, double reward) {
  check_arm(arm, state.num_arms());
  if (reward == 1.0) {
    ++state.successes[arm];
  } else if (reward == 0.0) {
    ++state.failures[arm];
  } else {
    throw InvariantViolation("Beta Thompson Sampling requires rewards in {0,1}");
  }
  ++state.t;
}

void policy_update(TsGaussianState& state, std::size_t arm, double reward) {
  check_arm(arm, state.num_arms());
  ++state.counts[arm];
  state.reward_sums[arm] += reward;
  ++state.t;
}

UcbPolicy::UcbPolicy(std::size_t arms, double rho) : state_(arms), rho_(rho) {
  validate(UcbConfig{rho});
}

std::size_t UcbPolicy::select(RngStream& rng) const {
  if (state_.t < static_cast<std::int64_t>(state_.num_arms())) {
    return static_cast<std::size_t>(state_.t);
  }
  return ucb_select(state_, rho_, rng);
}

}  // namespace banditlab
