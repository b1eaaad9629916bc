#include "banditlab/json_io.hpp"

#include <cstdio>

#include "banditlab/asymptotics.hpp"
#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("field \"") + key + "\" has the wrong type");
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

RewardDistribution arm_from_json(const Json& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "bernoulli") return RewardDistribution::bernoulli(field<double>(j, "q"));
  if (kind == "deterministic") return RewardDistribution::deterministic(field<double>(j, "v"));
  if (kind == "gaussian") {
    return RewardDistribution::gaussian(field<double>(j, "mean"), field<double>(j, "sigma"));
  }
  throw ConfigError("unknown arm kind \"" + kind + "\"");
}

Json arm_to_json(const RewardDistribution& arm) {
  if (const auto* b = std::get_if<Bernoulli>(&arm.kind())) return {{"kind", "bernoulli"}, {"q", b->q}};
  if (const auto* d = std::get_if<Deterministic>(&arm.kind())) {
    return {{"kind", "deterministic"}, {"v", d->v}};
  }
  const auto& g = std::get<Gaussian>(arm.kind());
  return {{"kind", "gaussian"}, {"mean", g.mean}, {"sigma", g.sigma}};
}

RegimePrediction regime_from_json(const Json& j, const std::vector<RewardDistribution>& arms) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "none") return RegimePrediction::unspecified();
  if (kind == "large") return RegimePrediction::large_gap();
  if (kind == "small") return RegimePrediction::small_gap(field<double>(j, "c"));
  if (kind == "moderate") return RegimePrediction::moderate_gap(field<double>(j, "theta"));
  if (kind == "zero") return RegimePrediction::zero_gap();
  if (kind == "k_identical") return RegimePrediction::k_armed_identical(arms.size());
  if (kind == "k_separated") {
    // Share follows from the optimal set; Instance validates consistency.
    double best = arms.front().mean();
    for (const auto& a : arms) best = std::max(best, a.mean());
    std::size_t optimal = 0;
    for (const auto& a : arms) optimal += a.mean() == best ? 1 : 0;
    return RegimePrediction::k_armed_separated(optimal);
  }
  throw ConfigError("unknown regime kind \"" + kind + "\"");
}

Json regime_to_json(const RegimePrediction& r) {
  Json j{{"kind", to_string(r.kind)}};
  if (r.kind == RegimeKind::kSmallGap) j["c"] = r.parameter;
  if (r.kind == RegimeKind::kModerateGap) j["theta"] = r.parameter;
  return j;
}

Instance instance_from_builder(const Json& j, std::int64_t n) {
  const auto builder = field<std::string>(j, "builder");
  if (builder == "moderate_gap") {
    return make_moderate_gap_instance(field<double>(j, "theta"), n, field_or(j, "base_mean", 0.5));
  }
  if (builder == "diffusion") {
    return make_diffusion_instance(field_or(j, "mu", 0.0), field_or(j, "theta1", 0.0),
                                   field_or(j, "theta2", 0.0), field_or(j, "sigma1", 1.0),
                                   field_or(j, "sigma2", 1.0), n);
  }
  if (builder == "small_gap") {
    return make_small_gap_instance(field<double>(j, "c"), n, field_or(j, "base_mean", 0.5));
  }
  if (builder == "zero_gap") return make_zero_gap_instance(arm_from_json(field<Json>(j, "arm")), n);
  if (builder == "large_gap") {
    return make_large_gap_instance(field<double>(j, "q_best"), field<double>(j, "q_other"), n);
  }
  if (builder == "k_armed") return make_k_armed_instance(field<std::vector<double>>(j, "means"), n);
  throw ConfigError("unknown instance builder \"" + builder + "\"");
}

}  // namespace

Instance instance_from_json(const Json& j, std::optional<std::int64_t> default_horizon) {
  if (!j.is_object()) throw ConfigError("instance must be a JSON object");
  std::int64_t n = 0;
  if (j.contains("horizon")) {
    n = field<std::int64_t>(j, "horizon");
  } else if (default_horizon) {
    n = *default_horizon;
  } else {
    throw ConfigError("missing field \"horizon\"");
  }
  if (j.contains("builder")) return instance_from_builder(j, n);

  const auto arms_json = field<Json>(j, "arms");
  if (!arms_json.is_array()) throw ConfigError("\"arms\" must be an array");
  std::vector<RewardDistribution> arms;
  for (const auto& a : arms_json) arms.push_back(arm_from_json(a));
  if (arms.size() < 2) throw ConfigError("an instance needs at least two arms");
  const auto regime = j.contains("regime") ? regime_from_json(j.at("regime"), arms)
                                           : RegimePrediction::unspecified();
  std::optional<double> center;
  if (j.contains("diffusion_center")) center = field<double>(j, "diffusion_center");
  return Instance(std::move(arms), n, regime, center);
}

Json to_json(const Instance& instance) {
  Json arms = Json::array();
  for (const auto& a : instance.arms()) arms.push_back(arm_to_json(a));
  Json j{{"arms", arms}, {"horizon", instance.horizon()}, {"regime", regime_to_json(instance.regime())}};
  if (instance.diffusion_center()) j["diffusion_center"] = *instance.diffusion_center();
  return j;
}

PolicySpec policy_from_json(const Json& j) {
  const auto name = field<std::string>(j, "policy");
  PolicySpec spec;
  if (name == "ucb") {
    spec = UcbConfig{field_or(j, "rho", 2.0)};
  } else if (name == "ts_beta") {
    spec = TsBetaConfig{};
  } else if (name == "ts_gaussian") {
    spec = TsGaussianConfig{};
  } else {
    throw ConfigError("unknown policy \"" + name + "\"");
  }
  validate(spec);
  return spec;
}

Json to_json(const PolicySpec& policy) {
  Json j{{"policy", policy_name(policy)}};
  if (const auto* ucb = std::get_if<UcbConfig>(&policy)) j["rho"] = ucb->rho;
  return j;
}

ExperimentConfig experiment_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  std::optional<std::int64_t> horizon;
  if (j.contains("horizon")) horizon = field<std::int64_t>(j, "horizon");
  ExperimentConfig cfg{instance_from_json(field<Json>(j, "instance"), horizon)};
  cfg.policy = policy_from_json(field<Json>(j, "policy"));
  const auto reps = field_or<std::int64_t>(j, "replications", 1);
  if (reps < 1) throw ConfigError("replications must be >= 1");
  cfg.replications = static_cast<std::uint64_t>(reps);
  cfg.master_seed = field_or<std::uint64_t>(j, "seed", 42);
  const auto grid = field_or<std::int64_t>(j, "path_grid", 101);
  if (grid < 2) throw ConfigError("path_grid must be >= 2");
  cfg.path_grid = static_cast<std::size_t>(grid);
  if (j.contains("record")) {
    const auto& r = j.at("record");
    cfg.record.paths = field_or(r, "paths", false);
    cfg.record.z_stat = field_or(r, "z_stat", false);
  }
  cfg.z_reference_mean = field_or(j, "z_reference_mean", 0.5);
  const auto z_arm = field_or<std::int64_t>(j, "z_arm", 2);
  if (z_arm < 1) throw ConfigError("z_arm is 1-based and must be >= 1");
  cfg.z_arm = static_cast<std::size_t>(z_arm - 1);
  if (j.contains("path_center")) cfg.path_center = field<double>(j, "path_center");
  cfg.validate();
  return cfg;
}

Json to_json(const ExperimentConfig& cfg) {
  Json j{{"instance", to_json(cfg.instance)},
         {"policy", to_json(cfg.policy)},
         {"horizon", cfg.instance.horizon()},
         {"replications", cfg.replications},
         {"seed", cfg.master_seed},
         {"path_grid", cfg.path_grid},
         {"record", {{"paths", cfg.record.paths}, {"z_stat", cfg.record.z_stat}}},
         {"z_reference_mean", cfg.z_reference_mean},
         {"z_arm", cfg.z_arm + 1}};
  if (cfg.path_center) j["path_center"] = *cfg.path_center;
  return j;
}

std::string config_hash(const ExperimentConfig& cfg) { return fnv1a_hex(to_json(cfg).dump()); }

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const TestReport& r) {
  return {{"test", r.test}, {"statistic", r.statistic}, {"threshold", r.threshold},
          {"pass", r.pass}, {"samples", r.sample_count}};
}

Json summary_json(const EmpiricalDistribution& d) {
  if (d.empty()) return {{"count", 0}};
  return {{"count", d.count()},       {"mean", d.mean()},           {"variance", d.variance()},
          {"min", d.min()},           {"q05", d.quantile(0.05)},    {"median", d.quantile(0.5)},
          {"q95", d.quantile(0.95)},  {"max", d.max()}};
}

}  // namespace banditlab
