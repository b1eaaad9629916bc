#include "banditlab/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

constexpr double kRegretTolerance = 1e-9;

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <class Policy>
ReplicationResult play(const ExperimentConfig& cfg, std::uint64_t rep_id, Policy policy) {
  const Instance& inst = cfg.instance;
  const std::size_t arms = inst.num_arms();
  const std::int64_t n = inst.horizon();
  const double best = inst.best_mean();
  const double center = cfg.effective_path_center();

  RngStream policy_rng(cfg.master_seed, rep_id, 0);
  std::vector<RngStream> reward_rngs;
  reward_rngs.reserve(arms);
  for (std::size_t i = 0; i < arms; ++i) reward_rngs.push_back(policy_rng.split(i + 1));

  ReplicationResult out;
  out.rep_id = rep_id;
  out.counts.assign(arms, 0);
  std::vector<CompensatedSum> arm_sums(arms);
  CompensatedSum regret;

  const std::size_t grid = cfg.record.paths ? cfg.path_grid : 0;
  std::size_t next_grid = 0;
  auto grid_step = [&](std::size_t k) {
    return static_cast<std::int64_t>((static_cast<unsigned __int128>(n) * k) / (grid - 1));
  };
  auto record_until = [&](std::int64_t step) {
    while (next_grid < grid && grid_step(next_grid) == step) {
      PathPoint p;
      p.t = static_cast<double>(next_grid) / static_cast<double>(grid - 1);
      p.step = step;
      p.counts = out.counts;
      p.centered_rewards.resize(arms);
      for (std::size_t i = 0; i < arms; ++i) {
        p.centered_rewards[i] = arm_sums[i].value() - center * static_cast<double>(out.counts[i]);
      }
      p.regret = regret.value();
      out.path.push_back(std::move(p));
      ++next_grid;
    }
  };
  if (grid > 0) out.path.reserve(grid);
  record_until(0);

  for (std::int64_t step = 1; step <= n; ++step) {
    const std::size_t arm = policy.select(policy_rng);
    const double reward = sample_reward(inst.arms()[arm], reward_rngs[arm]);
    policy.update(arm, reward);
    ++out.counts[arm];
    arm_sums[arm].add(reward);
    regret.add(best - reward);
    if (grid > 0) record_until(step);
  }

  CompensatedSum total;
  out.reward_sums.resize(arms);
  std::int64_t pulls = 0;
  for (std::size_t i = 0; i < arms; ++i) {
    out.reward_sums[i] = arm_sums[i].value();
    total.add(out.reward_sums[i]);
    pulls += out.counts[i];
  }
  out.total_reward = total.value();
  out.stochastic_regret = regret.value();

  if (pulls != n) throw InvariantViolation("arm counts do not sum to the horizon");
  const double identity = static_cast<double>(n) * best - out.total_reward;
  if (std::abs(identity - out.stochastic_regret) > kRegretTolerance * std::max(1.0, std::abs(identity))) {
    throw InvariantViolation("stochastic regret disagrees with n * best_mean - total reward");
  }
  if (cfg.record.z_stat && out.counts[cfg.z_arm] > 0) {
    out.z_stat = z_statistic(out, cfg.z_reference_mean, cfg.z_arm);
  }
  return out;
}

// Runs fn(i) for i in [0, count) over a pool of workers. The first exception
// thrown by any worker is rethrown after all workers have joined.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void ExperimentConfig::validate() const {
  banditlab::validate(policy);
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (record.paths && path_grid < 2) throw ConfigError("path grid needs at least two points");
  if (z_arm >= instance.num_arms()) throw ConfigError("z_arm out of range");
  if (std::holds_alternative<TsBetaConfig>(policy) && !instance.all_binary()) {
    throw ConfigError("Beta Thompson Sampling requires Bernoulli or 0/1 deterministic arms");
  }
}

double ExperimentConfig::effective_path_center() const {
  if (path_center) return *path_center;
  return instance.diffusion_center().value_or(0.0);
}

ReplicationResult run_replication(const ExperimentConfig& cfg, std::uint64_t rep_id) {
  cfg.validate();
  const std::size_t arms = cfg.instance.num_arms();
  return std::visit(
      [&](const auto& spec) -> ReplicationResult {
        using Spec = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<Spec, UcbConfig>) {
          return play(cfg, rep_id, UcbPolicy(arms, spec.rho));
        } else if constexpr (std::is_same_v<Spec, TsBetaConfig>) {
          return play(cfg, rep_id, TsBetaPolicy(arms));
        } else {
          return play(cfg, rep_id, TsGaussianPolicy(arms));
        }
      },
      cfg.policy);
}

std::vector<ReplicationResult> run_replications(const ExperimentConfig& cfg, unsigned threads) {
  return run_replication_range(cfg, 0, cfg.replications, threads);
}

std::vector<ReplicationResult> run_replication_range(const ExperimentConfig& cfg, std::uint64_t first,
                                                     std::uint64_t count, unsigned threads) {
  cfg.validate();
  std::vector<ReplicationResult> results(count);
  parallel_for(count, threads, [&](std::uint64_t i) { results[i] = run_replication(cfg, first + i); });
  return results;
}

std::map<std::string, EmpiricalDistribution> summarize(const ExperimentConfig& cfg,
                                                       const std::vector<ReplicationResult>& results) {
  const Instance& inst = cfg.instance;
  const std::size_t arms = inst.num_arms();
  const auto n = static_cast<double>(inst.horizon());
  const auto optimal = inst.optimal_set();

  std::vector<std::vector<double>> shares(arms);
  std::vector<double> best_share;
  std::vector<double> optimal_share;
  std::vector<double> regret_root_n;
  std::vector<double> regret_root_nlogn;
  std::vector<double> z;
  for (const auto& r : results) {
    for (std::size_t i = 0; i < arms; ++i) shares[i].push_back(static_cast<double>(r.counts[i]) / n);
    best_share.push_back(static_cast<double>(r.counts[optimal.front()]) / n);
    double opt = 0.0;
    for (std::size_t i : optimal) opt += static_cast<double>(r.counts[i]);
    optimal_share.push_back(opt / n);
    regret_root_n.push_back(r.stochastic_regret / std::sqrt(n));
    if (inst.horizon() >= 2) regret_root_nlogn.push_back(r.stochastic_regret / std::sqrt(n * std::log(n)));
    if (r.z_stat) z.push_back(*r.z_stat);
  }

  std::map<std::string, EmpiricalDistribution> out;
  for (std::size_t i = 0; i < arms; ++i) {
    out.emplace("share_arm_" + std::to_string(i + 1), EmpiricalDistribution(std::move(shares[i])));
  }
  out.emplace("share_best", EmpiricalDistribution(std::move(best_share)));
  out.emplace("share_optimal_set", EmpiricalDistribution(std::move(optimal_share)));
  out.emplace("regret_sqrt_n", EmpiricalDistribution(std::move(regret_root_n)));
  if (!regret_root_nlogn.empty()) {
    out.emplace("regret_sqrt_n_log_n", EmpiricalDistribution(std::move(regret_root_nlogn)));
  }
  if (cfg.record.z_stat) out.emplace("z_stat", EmpiricalDistribution(std::move(z)));
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  ExperimentOutput out;
  out.replications = run_replications(cfg, threads);
  out.distributions = summarize(cfg, out.replications);
  return out;
}

double z_statistic(const ReplicationResult& result, double reference_mean, std::size_t arm) {
  if (arm >= result.counts.size()) throw ConfigError("z statistic arm out of range");
  const std::int64_t pulls = result.counts[arm];
  if (pulls <= 0) throw InvariantViolation("z statistic undefined: arm was never pulled");
  const auto m = static_cast<double>(pulls);
  return 2.0 * std::sqrt(m) * (result.reward_sums[arm] / m - reference_mean);
}

std::vector<DiffusionPath> diffusion_paths(const ExperimentConfig& cfg, unsigned threads) {
  if (!cfg.instance.diffusion_center()) {
    throw ConfigError("diffusion paths need an instance built by make_diffusion_instance");
  }
  ExperimentConfig with_paths = cfg;
  with_paths.record.paths = true;
  const auto results = run_replications(with_paths, threads);
  const double root_n = std::sqrt(static_cast<double>(cfg.instance.horizon()));
  std::vector<DiffusionPath> out;
  out.reserve(results.size());
  for (const auto& r : results) {
    DiffusionPath p;
    p.centered.resize(cfg.instance.num_arms());
    for (const auto& point : r.path) {
      p.t.push_back(point.t);
      for (std::size_t i = 0; i < p.centered.size(); ++i) {
        p.centered[i].push_back(point.centered_rewards[i] / root_n);
      }
      p.regret.push_back(point.regret / root_n);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_replications_csv(std::ostream& os, const std::vector<ReplicationResult>& results,
                            std::size_t arms) {
  os << "rep_id";
  for (std::size_t i = 0; i < arms; ++i) os << ",N_" << (i + 1);
  os << ",R_n,z_stat\n";
  for (const auto& r : results) {
    os << r.rep_id;
    for (auto c : r.counts) os << ',' << c;
    os << ',' << format_double(r.stochastic_regret) << ',';
    if (r.z_stat) os << format_double(*r.z_stat);
    os << '\n';
  }
}

void write_paths_csv(std::ostream& os, const std::vector<ReplicationResult>& results) {
  os << "rep_id,t,arm,count,centered_reward\n";
  for (const auto& r : results) {
    for (const auto& p : r.path) {
      for (std::size_t i = 0; i < p.counts.size(); ++i) {
        os << r.rep_id << ',' << format_double(p.t) << ',' << (i + 1) << ',' << p.counts[i] << ','
           << format_double(p.centered_rewards[i]) << '\n';
      }
    }
  }
}

}  // namespace banditlab
