#include "banditlab/reward.hpp"

#include <cmath>
#include <sstream>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

RewardDistribution RewardDistribution::bernoulli(double q) {
  if (!in_unit(q)) throw ConfigError("Bernoulli parameter must lie in [0,1]");
  return RewardDistribution(Bernoulli{q});
}

RewardDistribution RewardDistribution::deterministic(double v) {
  if (!in_unit(v)) throw ConfigError("deterministic reward must lie in [0,1]");
  return RewardDistribution(Deterministic{v});
}

RewardDistribution RewardDistribution::gaussian(double mean, double sigma) {
  if (!std::isfinite(mean)) throw ConfigError("Gaussian mean must be finite");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("Gaussian sigma must be >= 0");
  return RewardDistribution(Gaussian{mean, sigma});
}

double RewardDistribution::mean() const {
  return std::visit(overloaded{[](const Bernoulli& b) { return b.q; },
                               [](const Deterministic& d) { return d.v; },
                               [](const Gaussian& g) { return g.mean; }},
                    kind_);
}

double RewardDistribution::variance() const {
  return std::visit(overloaded{[](const Bernoulli& b) { return b.q * (1.0 - b.q); },
                               [](const Deterministic&) { return 0.0; },
                               [](const Gaussian& g) { return g.sigma * g.sigma; }},
                    kind_);
}

bool RewardDistribution::binary() const {
  return std::visit(overloaded{[](const Bernoulli&) { return true; },
                               [](const Deterministic& d) { return d.v == 0.0 || d.v == 1.0; },
                               [](const Gaussian&) { return false; }},
                    kind_);
}

std::string RewardDistribution::describe() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const Bernoulli& b) { os << "Bernoulli(" << b.q << ")"; },
                        [&](const Deterministic& d) { os << "Deterministic(" << d.v << ")"; },
                        [&](const Gaussian& g) { os << "Gaussian(" << g.mean << ", " << g.sigma << ")"; }},
             kind_);
  return os.str();
}

bool operator==(const RewardDistribution& a, const RewardDistribution& b) {
  if (a.kind_.index() != b.kind_.index()) return false;
  return std::visit(overloaded{[&](const Bernoulli& x) { return x.q == std::get<Bernoulli>(b.kind_).q; },
                               [&](const Deterministic& x) { return x.v == std::get<Deterministic>(b.kind_).v; },
                               [&](const Gaussian& x) {
                                 const auto& y = std::get<Gaussian>(b.kind_);
                                 return x.mean == y.mean && x.sigma == y.sigma;
                               }},
                    a.kind_);
}

double sample_reward(const RewardDistribution& dist, RngStream& rng) {
  return std::visit(overloaded{[&](const Bernoulli& b) { return rng.uniform() < b.q ? 1.0 : 0.0; },
                               [](const Deterministic& d) { return d.v; },
                               [&](const Gaussian& g) { return g.mean + g.sigma * rng.normal(); }},
                    dist.kind());
}

}  // namespace banditlab
