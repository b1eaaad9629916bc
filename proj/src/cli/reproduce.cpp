#include "cli/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "banditlab/asymptotics.hpp"
#include "banditlab/errors.hpp"
#include "banditlab/json_io.hpp"
#include "banditlab/sim_engine.hpp"
#include "banditlab/svg.hpp"
#include "banditlab/ts_exact.hpp"
#include "cli/output.hpp"

namespace banditlab::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kShareBins = 50;
constexpr double kAlpha = 0.01;
constexpr std::size_t kPathRows = 200;

struct Context {
  ReproduceOptions options;
  std::int64_t horizon;
  std::uint64_t replications;
  std::vector<std::string> outputs;
  Json configs = Json::object();
  std::vector<TestReport> reports;

  void save(const std::string& name, const std::string& content) {
    write_file_atomic(options.output / name, content);
    outputs.push_back(name);
  }

  void report(TestReport r) { reports.push_back(std::move(r)); }
};

ExperimentConfig make_config(const Context& ctx, Instance instance, PolicySpec policy) {
  ExperimentConfig cfg{std::move(instance)};
  cfg.policy = policy;
  cfg.replications = ctx.replications;
  cfg.master_seed = ctx.options.seed;
  return cfg;
}

ExperimentOutput run_and_save(Context& ctx, const std::string& name, const ExperimentConfig& cfg) {
  ctx.configs[name] = to_json(cfg);
  auto out = run_experiment(cfg, ctx.options.threads);
  std::ostringstream csv;
  write_replications_csv(csv, out.replications, cfg.instance.num_arms());
  ctx.save(name + "_replications.csv", csv.str());
  Json summary = Json::object();
  for (const auto& [key, dist] : out.distributions) summary[key] = summary_json(dist);
  ctx.save(name + "_summary.json", summary.dump(2) + "\n");
  return out;
}

svg::Series density_curve(double lo, double hi, const std::function<double(double)>& pdf,
                          const std::string& label) {
  svg::Series s;
  s.label = label;
  for (int i = 0; i <= 200; ++i) {
    const double x = lo + (hi - lo) * i / 200.0;
    s.x.push_back(x);
    s.y.push_back(pdf(x));
  }
  return s;
}

// Writes <name>_histogram.csv and <name>.svg. Reference density, when given,
// is evaluated at bin centers for the CSV and on a fine grid for the plot.
void emit_histogram(Context& ctx, const std::string& name, const std::string& title,
                    const std::string& x_label, std::span<const double> samples, double lo, double hi,
                    const std::function<double(double)>& reference = {},
                    std::vector<std::pair<double, std::string>> markers = {}) {
  const auto hist = make_histogram(samples, kShareBins, lo, hi);
  std::vector<double> ref_at_centers;
  svg::HistogramPlot plot{title, x_label, hist, std::nullopt, std::move(markers)};
  if (reference) {
    for (std::size_t i = 0; i < hist.counts.size(); ++i) ref_at_centers.push_back(reference(hist.bin_center(i)));
    plot.overlay = density_curve(lo, hi, reference, "reference");
  }
  ctx.save(name + "_histogram.csv", histogram_csv(hist, ref_at_centers));
  ctx.save(name + ".svg", svg::render_histogram(plot));
}

std::pair<double, double> padded_range(const EmpiricalDistribution& d) {
  const double lo = std::min(d.min(), -4.0);
  const double hi = std::max(d.max(), 4.0);
  return {lo, hi};
}

std::function<double(double)> normal_density(double mean, double sigma) {
  return [mean, sigma](double x) { return normal_pdf((x - mean) / sigma) / sigma; };
}

// ---------------------------------------------------------------------------

void run_fig1(Context& ctx) {
  const auto n = ctx.horizon;
  const auto half = RewardDistribution::bernoulli(0.5);

  auto ucb = run_and_save(ctx, "fig1_a_ucb_q0.5",
                          make_config(ctx, make_zero_gap_instance(half, n), UcbConfig{2.0}));
  const auto& a1 = ucb.distributions.at("share_arm_1");
  emit_histogram(ctx, "fig1_a_ucb_q0.5", "UCB, Bernoulli(0.5) arms", "N1(n)/n", a1.samples(), 0.0, 1.0, {},
                 {{0.5, "limit 1/2"}});
  ctx.report(make_report("fig1_a_mean_share_deviation", std::abs(a1.mean() - 0.5), 0.01, a1.count()));
  ctx.report(make_report("fig1_a_exchange_symmetry_ks2",
                         ks_two_sample(a1, ucb.distributions.at("share_arm_2")),
                         ks_two_sample_critical_value(kAlpha, a1.count(), a1.count()), a1.count()));

  auto ts_half = run_and_save(ctx, "fig1_b_ts_beta_q0.5",
                              make_config(ctx, make_zero_gap_instance(half, n), TsBetaConfig{}));
  const auto& b1 = ts_half.distributions.at("share_arm_1");
  emit_histogram(ctx, "fig1_b_ts_beta_q0.5", "Thompson Sampling (Beta), Bernoulli(0.5) arms", "N1(n)/n",
                 b1.samples(), 0.0, 1.0);

  const auto zero = RewardDistribution::deterministic(0.0);
  auto ts_zero = run_and_save(ctx, "fig1_c_ts_beta_q0",
                              make_config(ctx, make_zero_gap_instance(zero, n), TsBetaConfig{}));
  const auto& c1 = ts_zero.distributions.at("share_arm_1");
  // Exact law of N1(n)/n drawn as a density (mass * n per unit share).
  const auto law = exact_count_distribution(n, 0);
  const auto nd = static_cast<double>(n);
  auto exact_density = [&law, nd](double x) {
    const auto m = static_cast<std::size_t>(std::clamp(std::round(x * nd), 0.0, nd));
    return law.mass[m] * nd;
  };
  emit_histogram(ctx, "fig1_c_ts_beta_q0", "Thompson Sampling (Beta), deterministic 0 rewards", "N1(n)/n",
                 c1.samples(), 0.0, 1.0, exact_density, {{0.5, "limit 1/2"}});
  ctx.report(make_report("fig1_c_mean_share_deviation", std::abs(c1.mean() - 0.5), 0.005, c1.count()));
  const auto bound = exact_variance_bound_check(std::min<std::int64_t>(n, kDpLimit));
  ctx.report(make_report("fig1_c_exact_variance_vs_bound", bound.variance, bound.bound, 1));
}

void run_fig2(Context& ctx) {
  const auto n = ctx.horizon;
  Instance one_armed({RewardDistribution::deterministic(0.5), RewardDistribution::bernoulli(0.5)}, n,
                     RegimePrediction::zero_gap());
  auto with_z = [&](PolicySpec policy) {
    auto cfg = make_config(ctx, one_armed, policy);
    cfg.record.z_stat = true;
    cfg.z_arm = 1;
    cfg.z_reference_mean = 0.5;
    return cfg;
  };

  auto ts = run_and_save(ctx, "fig2_ts_gaussian", with_z(TsGaussianConfig{}));
  auto ucb = run_and_save(ctx, "fig2_ucb", with_z(UcbConfig{2.0}));

  const auto& ts_share = ts.distributions.at("share_arm_1");
  emit_histogram(ctx, "fig2_a_ts_gaussian_share", "Thompson Sampling (Gaussian), one-armed instance",
                 "N1(n)/n", ts_share.samples(), 0.0, 1.0);

  const auto& ts_z = ts.distributions.at("z_stat");
  const auto& ucb_z = ucb.distributions.at("z_stat");
  if (ts_z.empty() || ucb_z.empty()) throw InvariantViolation("no defined Z statistics to report");
  auto [lo_t, hi_t] = padded_range(ts_z);
  emit_histogram(ctx, "fig2_b_ts_gaussian_z", "Z statistic under Thompson Sampling", "Z", ts_z.samples(), lo_t,
                 hi_t, normal_density(0.0, 1.0));
  auto [lo_u, hi_u] = padded_range(ucb_z);
  emit_histogram(ctx, "fig2_c_ucb_z", "Z statistic under UCB", "Z", ucb_z.samples(), lo_u, hi_u,
                 normal_density(0.0, 1.0));

  auto ts_report = normality_report(ts_z, 0.0, 1.0, ks_critical_value(kAlpha, ts_z.count()));
  ts_report.test = "fig2_b_ts_gaussian_z_ks_normal";
  auto ucb_report = normality_report(ucb_z, 0.0, 1.0, ks_critical_value(kAlpha, ucb_z.count()));
  ucb_report.test = "fig2_c_ucb_z_ks_normal";
  ctx.report(ts_report);
  ctx.report(ucb_report);
  ctx.report(make_report("fig2_ucb_closer_to_normal_than_ts", ucb_report.statistic - ts_report.statistic, 0.0,
                         ucb_z.count()));
}

void run_fig3(Context& ctx) {
  struct Caption {
    double rho, theta, h;
  };
  const Caption captions[] = {{1.1, 1.9, 0.2367}, {2.0, 3.5, 0.3192}, {3.0, 5.3, 0.3909}, {4.0, 7.0, 0.4514}};
  const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"};

  std::ostringstream curves;
  curves << "rho,theta,h\n";
  std::ostringstream maxima;
  maxima << "rho,theta_star,h_star,reference_theta,reference_h\n";
  svg::LinePlot plot{"h_rho(theta)", "theta", "h", {}, {}};
  Json cfg = Json::array();
  for (std::size_t k = 0; k < std::size(captions); ++k) {
    const auto& c = captions[k];
    svg::Series s;
    s.label = "rho = " + format_double(c.rho);
    s.color = colors[k];
    for (int i = 0; i <= 400; ++i) {
      const double theta = 0.05 * i;
      const double h = h_function(LimitQuery(theta, c.rho));
      s.x.push_back(theta);
      s.y.push_back(h);
      curves << format_double(c.rho) << ',' << format_double(theta) << ',' << format_double(h) << '\n';
    }
    plot.series.push_back(std::move(s));
    const auto point = theta_star(c.rho);
    plot.points.emplace_back(point.theta_star, point.h_star);
    maxima << format_double(c.rho) << ',' << format_double(point.theta_star) << ','
           << format_double(point.h_star) << ',' << format_double(c.theta) << ',' << format_double(c.h) << '\n';
    const std::string tag = "fig3_rho" + format_double(c.rho);
    ctx.report(make_report(tag + "_theta_star_deviation", std::abs(point.theta_star - c.theta), 0.1, 1));
    ctx.report(make_report(tag + "_h_star_deviation", std::abs(point.h_star - c.h), 5e-4, 1));
    cfg.push_back({{"rho", c.rho}});
  }
  ctx.configs["fig3"] = cfg;
  ctx.save("fig3_curves.csv", curves.str());
  ctx.save("fig3_maximizers.csv", maxima.str());
  ctx.save("fig3.svg", svg::render_lines(plot));
}

void run_thm1(Context& ctx) {
  const auto n = ctx.horizon;
  const double rho = 2.0;
  struct Case {
    std::string name;
    Instance instance;
  };
  std::vector<Case> cases;
  cases.push_back({"thm1_large_gap", make_large_gap_instance(0.9, 0.1, n)});
  cases.push_back({"thm1_zero_gap", make_zero_gap_instance(RewardDistribution::bernoulli(0.5), n)});
  cases.push_back({"thm1_moderate_gap", make_moderate_gap_instance(3.5, n, 0.5)});
  for (const auto& c : cases) {
    const auto out = run_and_save(ctx, c.name, make_config(ctx, c.instance, UcbConfig{rho}));
    const auto& share = out.distributions.at("share_best");
    const double predicted = predicted_share(c.instance.regime(), rho, 2, c.instance.optimal_set().size());
    emit_histogram(ctx, c.name, c.name + " (UCB, rho = 2)", "N_best(n)/n", share.samples(), 0.0, 1.0, {},
                   {{predicted, "predicted " + format_double(std::round(predicted * 1e4) / 1e4)}});
    if (c.instance.regime().kind == RegimeKind::kLargeGap) {
      ctx.report(make_report(c.name + "_shortfall_from_one", 1.0 - share.mean(), 0.03, share.count()));
    } else if (c.instance.regime().kind == RegimeKind::kZeroGap) {
      ctx.report(make_report(c.name + "_mean_share_deviation", std::abs(share.mean() - 0.5), 0.01, share.count()));
    } else {
      ctx.report(make_report(c.name + "_excess_over_lambda_star", share.mean() - predicted, 0.05, share.count()));
      ctx.report(make_report(c.name + "_gap_below_0.55", 0.55 - share.mean(), 0.0, share.count()));
    }
  }
}

void run_thm2(Context& ctx) {
  const auto n = ctx.horizon;
  const auto identical = run_and_save(
      ctx, "thm2_identical", make_config(ctx, make_k_armed_instance({0.5, 0.5, 0.5, 0.5}, n), UcbConfig{2.0}));
  for (int i = 1; i <= 4; ++i) {
    const auto& d = identical.distributions.at("share_arm_" + std::to_string(i));
    ctx.report(make_report("thm2_identical_arm" + std::to_string(i) + "_deviation", std::abs(d.mean() - 0.25),
                           0.01, d.count()));
  }
  const auto& id1 = identical.distributions.at("share_arm_1");
  emit_histogram(ctx, "thm2_identical_arm1", "UCB, four identical Bernoulli(0.5) arms", "N1(n)/n",
                 id1.samples(), 0.0, 1.0, {}, {{0.25, "limit 1/4"}});

  const auto separated = run_and_save(
      ctx, "thm2_separated", make_config(ctx, make_k_armed_instance({0.9, 0.9, 0.1, 0.1}, n), UcbConfig{2.0}));
  const auto& opt = separated.distributions.at("share_optimal_set");
  const auto& s1 = separated.distributions.at("share_arm_1");
  const auto& s2 = separated.distributions.at("share_arm_2");
  ctx.report(make_report("thm2_separated_optimal_set_shortfall", 1.0 - opt.mean(), 0.05, opt.count()));
  ctx.report(make_report("thm2_separated_optimal_arm_imbalance", std::abs(s1.mean() - s2.mean()), 0.01,
                         s1.count()));
  emit_histogram(ctx, "thm2_separated_arm1", "UCB, means (0.9, 0.9, 0.1, 0.1)", "N1(n)/n", s1.samples(), 0.0,
                 1.0, {}, {{0.5, "limit 1/2"}});
}

void run_thm5(Context& ctx) {
  const auto n = ctx.horizon;
  const double theta1 = 0.0, theta2 = 0.0, sigma1 = 1.0, sigma2 = 1.0;
  auto cfg = make_config(ctx, make_diffusion_instance(0.0, theta1, theta2, sigma1, sigma2, n), UcbConfig{2.0});
  cfg.record.paths = true;
  ctx.configs["thm5_diffusion"] = to_json(cfg);

  // Paths are folded chunk by chunk to bound memory at paper scale.
  const std::size_t grid = cfg.path_grid;
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> sum_s1(grid), sum_s2(grid), sum_r(grid), sum_r2(grid), times(grid);
  std::vector<ReplicationResult> terminal;
  std::ostringstream paths;
  paths << "rep_id,t,arm,count,centered_reward\n";
  constexpr std::uint64_t kChunk = 1000;
  for (std::uint64_t first = 0; first < cfg.replications; first += kChunk) {
    const auto count = std::min(kChunk, cfg.replications - first);
    auto chunk = run_replication_range(cfg, first, count, ctx.options.threads);
    for (auto& r : chunk) {
      for (std::size_t k = 0; k < grid; ++k) {
        const auto& p = r.path[k];
        times[k] = p.t;
        sum_s1[k] += p.centered_rewards[0] / root_n;
        sum_s2[k] += p.centered_rewards[1] / root_n;
        const double reg = p.regret / root_n;
        sum_r[k] += reg;
        sum_r2[k] += reg * reg;
      }
      if (r.rep_id < kPathRows) write_paths_csv(paths, {r});
      r.path.clear();
      r.path.shrink_to_fit();
      terminal.push_back(std::move(r));
    }
  }
  ctx.save("thm5_paths.csv", paths.str());
  std::ostringstream csv;
  write_replications_csv(csv, terminal, 2);
  ctx.save("thm5_diffusion_replications.csv", csv.str());

  const double delta0 = std::abs(theta1 - theta2);
  const double var_rate = (sigma1 * sigma1 + sigma2 * sigma2) / 2.0;
  std::ostringstream mean_path;
  mean_path << "t,mean_centered_1,limit_centered_1,mean_centered_2,limit_centered_2,mean_regret,limit_regret,"
               "var_regret,limit_var_regret\n";
  const auto reps = static_cast<double>(cfg.replications);
  for (std::size_t k = 0; k < grid; ++k) {
    const double t = times[k];
    const double mr = sum_r[k] / reps;
    const double vr = reps > 1 ? (sum_r2[k] - reps * mr * mr) / (reps - 1.0) : 0.0;
    mean_path << format_double(t) << ',' << format_double(sum_s1[k] / reps) << ',' << format_double(theta1 * t / 2)
              << ',' << format_double(sum_s2[k] / reps) << ',' << format_double(theta2 * t / 2) << ','
              << format_double(mr) << ',' << format_double(delta0 * t / 2) << ',' << format_double(vr) << ','
              << format_double(var_rate * t) << '\n';
  }
  ctx.save("thm5_mean_path.csv", mean_path.str());

  const auto dists = summarize(cfg, terminal);
  const auto& regret = dists.at("regret_sqrt_n");
  const double mean = delta0 / 2.0;
  const double sigma = std::sqrt(var_rate);
  const auto [lo, hi] = std::pair{std::min(regret.min(), mean - 4 * sigma), std::max(regret.max(), mean + 4 * sigma)};
  emit_histogram(ctx, "thm5_terminal_regret", "UCB terminal regret R_n/sqrt(n), diffusion scale", "R_n/sqrt(n)",
                 regret.samples(), lo, hi, normal_density(mean, sigma), {{mean, "mean D0/2"}});
  auto r = normality_report(regret, mean, sigma, ks_critical_value(kAlpha, regret.count()));
  r.test = "thm5_terminal_regret_ks_normal";
  ctx.report(r);
  ctx.report(make_report("thm5_terminal_regret_mean_deviation", std::abs(regret.mean() - mean),
                         4.0 * sigma / std::sqrt(reps), regret.count()));
}

}  // namespace

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> targets{"fig1", "fig2", "fig3", "thm1", "thm2", "thm5"};
  return targets;
}

std::vector<TestReport> reproduce(const ReproduceOptions& options, std::ostream& out) {
  const auto& targets = reproduce_targets();
  if (std::find(targets.begin(), targets.end(), options.target) == targets.end()) {
    throw ConfigError("unknown reproduce target \"" + options.target + "\"");
  }
  ensure_directory(options.output);
  Stopwatch clock;
  const bool paper = options.scale == Scale::kPaper;
  Context ctx{options, paper ? 10'000 : 1'000, paper ? 20'000u : 2'000u, {}, Json::object(), {}};

  if (options.target == "fig1") run_fig1(ctx);
  if (options.target == "fig2") run_fig2(ctx);
  if (options.target == "fig3") run_fig3(ctx);
  if (options.target == "thm1") run_thm1(ctx);
  if (options.target == "thm2") run_thm2(ctx);
  if (options.target == "thm5") run_thm5(ctx);

  std::ostringstream lines;
  for (const auto& r : ctx.reports) {
    lines << to_json_line(r) << '\n';
    out << (r.pass ? "[pass] " : "[FAIL] ") << r.test << " statistic=" << format_double(r.statistic)
        << " threshold=" << format_double(r.threshold) << '\n';
  }
  ctx.save(options.target + "_reports.jsonl", lines.str());

  Json config{{"target", options.target},
              {"scale", paper ? "paper" : "quick"},
              {"horizon", ctx.horizon},
              {"replications", ctx.replications},
              {"seed", options.seed},
              {"experiments", ctx.configs}};
  RunManifest manifest{"reproduce " + options.target, json_hash(config), options.seed, config, ctx.outputs,
                       clock.seconds()};
  write_manifest(options.output, manifest);
  return ctx.reports;
}

}  // namespace banditlab::cli
