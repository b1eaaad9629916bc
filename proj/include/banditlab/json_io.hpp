#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "banditlab/instance.hpp"
#include "banditlab/policies.hpp"
#include "banditlab/sim_engine.hpp"
#include "banditlab/stats.hpp"

namespace banditlab {

using Json = nlohmann::json;

/// Explicit form:
///   {"arms":[{"kind":"bernoulli","q":0.5},...],"horizon":10000,
///    "regime":{"kind":"moderate","theta":3.5}}
/// Builder form (horizon may come from `default_horizon`):
///   {"builder":"moderate_gap","theta":3.5,"base_mean":0.5}
///   {"builder":"diffusion","mu":0,"theta1":1,"theta2":0,"sigma1":1,"sigma2":1}
///   {"builder":"small_gap","c":1,"base_mean":0.5}
///   {"builder":"zero_gap","arm":{"kind":"bernoulli","q":0.5}}
///   {"builder":"large_gap","q_best":0.9,"q_other":0.1}
///   {"builder":"k_armed","means":[0.5,0.5,0.5,0.5]}
/// All parse errors surface as ConfigError.
Instance instance_from_json(const Json& j, std::optional<std::int64_t> default_horizon = std::nullopt);
Json to_json(const Instance& instance);

/// {"policy":"ucb","rho":2.0} | {"policy":"ts_beta"} | {"policy":"ts_gaussian"}
PolicySpec policy_from_json(const Json& j);
Json to_json(const PolicySpec& policy);

/// {"instance":{...},"policy":{...},"horizon":n,"replications":R,"seed":s,
///  "path_grid":101,"record":{"paths":false,"z_stat":false},
///  "z_reference_mean":0.5,"z_arm":2,"path_center":mu}
/// z_arm is 1-based in JSON.
ExperimentConfig experiment_from_json(const Json& j);
/// Canonical, fully resolved form (instances always in explicit form).
Json to_json(const ExperimentConfig& cfg);

/// FNV-1a 64-bit hash, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// fnv1a_hex of the canonical JSON dump.
std::string config_hash(const ExperimentConfig& cfg);

Json to_json(const TestReport& report);
Json summary_json(const EmpiricalDistribution& d);

}  // namespace banditlab
