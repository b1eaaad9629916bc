#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "banditlab/instance.hpp"
#include "banditlab/policies.hpp"
#include "banditlab/stats.hpp"

namespace banditlab {

struct RecordFlags {
  bool paths = false;
  bool z_stat = false;

  friend bool operator==(const RecordFlags&, const RecordFlags&) = default;
};

struct ExperimentConfig {
  explicit ExperimentConfig(Instance inst) : instance(std::move(inst)) {}

  Instance instance;
  PolicySpec policy = UcbConfig{};
  std::uint64_t replications = 1;
  std::uint64_t master_seed = 42;
  // Number of evenly spaced t values in [0, 1] (both ends included).
  std::size_t path_grid = 101;
  RecordFlags record;
  // Z statistic: 2 sqrt(N_a) (mean_a - z_reference_mean) for arm z_arm (0-based).
  double z_reference_mean = 0.5;
  std::size_t z_arm = 1;
  // Centering mean for cumulative-reward paths; defaults to the instance's
  // diffusion center, else 0.
  std::optional<double> path_center;

  /// Throws ConfigError for inconsistent settings.
  void validate() const;
  double effective_path_center() const;
};

/// Snapshot of a replication after floor(n t) pulls.
struct PathPoint {
  double t = 0.0;
  std::int64_t step = 0;
  std::vector<std::int64_t> counts;
  std::vector<double> centered_rewards;  // S_i - center * N_i
  double regret = 0.0;                   // R at this step

  friend bool operator==(const PathPoint&, const PathPoint&) = default;
};

struct ReplicationResult {
  std::uint64_t rep_id = 0;
  std::vector<std::int64_t> counts;
  std::vector<double> reward_sums;
  double total_reward = 0.0;
  double stochastic_regret = 0.0;  // accumulated step by step
  std::vector<PathPoint> path;
  std::optional<double> z_stat;

  friend bool operator==(const ReplicationResult&, const ReplicationResult&) = default;
};

/// Plays the configured policy for n steps. A pure function of (cfg, rep_id):
/// the policy draws from substream 0 and arm i draws its rewards from
/// substream i + 1 of stream (master_seed, rep_id).
ReplicationResult run_replication(const ExperimentConfig& cfg, std::uint64_t rep_id);

/// All replications 0..R-1, ordered by rep_id. `threads == 0` uses the
/// hardware concurrency. Output does not depend on the thread count.
std::vector<ReplicationResult> run_replications(const ExperimentConfig& cfg, unsigned threads = 0);

/// Replications first..first+count-1, for callers that fold results in chunks.
std::vector<ReplicationResult> run_replication_range(const ExperimentConfig& cfg, std::uint64_t first,
                                                     std::uint64_t count, unsigned threads = 0);

/// Named empirical distributions over replications:
///   share_arm_<i>        N_i(n)/n (1-based arm labels)
///   share_best           N_{i*}(n)/n for the first optimal arm
///   share_optimal_set    sum over optimal arms of N_i(n)/n
///   regret_sqrt_n        R_n / sqrt(n)
///   regret_sqrt_n_log_n  R_n / sqrt(n log n)   (n >= 2)
///   z_stat               defined Z statistics, when recorded
std::map<std::string, EmpiricalDistribution> summarize(const ExperimentConfig& cfg,
                                                       const std::vector<ReplicationResult>& results);

struct ExperimentOutput {
  std::vector<ReplicationResult> replications;
  std::map<std::string, EmpiricalDistribution> distributions;
};

ExperimentOutput run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

/// 2 sqrt(N_arm) (mean_arm - reference_mean). Throws InvariantViolation when
/// the arm was never pulled.
double z_statistic(const ReplicationResult& result, double reference_mean, std::size_t arm = 1);

/// Diffusion-scaled trajectory of one replication on the t grid.
struct DiffusionPath {
  std::vector<double> t;
  std::vector<std::vector<double>> centered;  // [arm][grid] S~_i(floor(nt)) / sqrt(n)
  std::vector<double> regret;                 // R(floor(nt)) / sqrt(n)
};

/// Requires an instance built by make_diffusion_instance.
std::vector<DiffusionPath> diffusion_paths(const ExperimentConfig& cfg, unsigned threads = 0);

/// rep_id,N_1..N_K,R_n,z_stat
void write_replications_csv(std::ostream& os, const std::vector<ReplicationResult>& results,
                            std::size_t arms);
/// rep_id,t,arm,count,centered_reward
void write_paths_csv(std::ostream& os, const std::vector<ReplicationResult>& results);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace banditlab
