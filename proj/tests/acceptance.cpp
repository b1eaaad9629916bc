// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails. `--only 4,6` restricts the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "banditlab/asymptotics.hpp"
#include "banditlab/sim_engine.hpp"
#include "banditlab/stats.hpp"
#include "banditlab/ts_exact.hpp"
#include "oracles.hpp"

using namespace banditlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Detail {
 public:
  Detail() { os_ << std::boolalpha; }

  template <class T>
  Detail& operator()(const std::string& key, const T& value) {
    if (!first_) os_ << ", ";
    first_ = false;
    os_ << key << '=' << value;
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  bool first_ = true;
};

unsigned g_threads = 0;

// Configs and CSVs of every simulation run, replayed by the determinism check.
struct Recorded {
  std::string name;
  ExperimentConfig cfg;
  std::string csv;
};
std::vector<Recorded> g_recorded;

std::string csv_of(const ExperimentConfig& cfg, const std::vector<ReplicationResult>& reps) {
  std::ostringstream os;
  write_replications_csv(os, reps, cfg.instance.num_arms());
  return os.str();
}

ExperimentOutput simulate(const std::string& name, Instance instance, PolicySpec policy, std::uint64_t reps,
                          bool z_stat = false) {
  ExperimentConfig cfg(std::move(instance));
  cfg.policy = policy;
  cfg.replications = reps;
  cfg.master_seed = 42;
  cfg.record.z_stat = z_stat;
  auto out = run_experiment(cfg, g_threads);
  g_recorded.push_back({name, cfg, csv_of(cfg, out.replications)});
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome closed_form_consistency() {
  const double rhos[] = {1.01, 1.1, 2.0, 3.0, 4.0, 10.0};
  double worst = 0.0;
  bool in_range = true;
  for (double rho : rhos) {
    for (int i = 0; i < 1000; ++i) {
      const LimitQuery q(100.0 * i / 999.0, rho);
      const double lambda = lambda_star(q);
      in_range = in_range && lambda >= 0.5 && lambda < 1.0;
      worst = std::max(worst, std::abs(verify_limit_equation(lambda, q)));
    }
  }
  return {worst <= 1e-10 && in_range, Detail()("points", 6000)("max|residual|", fmt(worst))("in [1/2,1)", in_range).str()};
}

Outcome figure3_caption() {
  struct Row {
    double rho, theta, h;
  };
  const Row rows[] = {{1.1, 1.9, 0.2367}, {2.0, 3.5, 0.3192}, {3.0, 5.3, 0.3909}, {4.0, 7.0, 0.4514}};
  Outcome o;
  Detail d;
  for (const auto& r : rows) {
    const auto p = theta_star(r.rho);
    o.pass = o.pass && std::abs(p.theta_star - r.theta) <= 0.1 && std::abs(p.h_star - r.h) <= 5e-4;
    d("rho " + fmt(r.rho), "(" + fmt(p.theta_star) + ", " + fmt(p.h_star) + ")");
  }
  o.detail = d.str();
  return o;
}

Outcome ts_exact_uniform() {
  bool uniform = true;
  for (std::int64_t n = 1; n <= kExactLimit; ++n) {
    const auto mass = exact_count_distribution_rational(n, 1);
    for (const auto& p : mass) uniform = uniform && p == Rational(1, n + 1);
  }
  bool brute = true;
  for (int n = 1; n <= 12; ++n) brute = brute && exact_count_distribution_rational(n, 1) == oracle::brute_force_counts(n, 1);
  return {uniform && brute, Detail()("uniform n<=64", uniform)("brute-force n<=12", brute).str()};
}

Outcome ts_uniform_monte_carlo() {
  const auto one = RewardDistribution::deterministic(1.0);
  const auto out = simulate("ts_beta_deterministic_1", make_zero_gap_instance(one, 1000), TsBetaConfig{}, 20'000);
  const double ks = ks_statistic(out.distributions.at("share_arm_1"), UniformUnit{});
  return {ks < 0.015, Detail()("KS to U[0,1]", fmt(ks))("limit", 0.015).str()};
}

Outcome ts_incomplete_learning_zero() {
  bool bound = true;
  double worst_ratio = 0.0;
  for (std::int64_t n = 1; n <= kExactLimit; ++n) {
    const auto c = exact_variance_bound_check(n);
    bound = bound && c.ok;
    worst_ratio = std::max(worst_ratio, c.variance / c.bound);
  }
  const auto zero = RewardDistribution::deterministic(0.0);
  const auto out = simulate("ts_beta_deterministic_0", make_zero_gap_instance(zero, 10'000), TsBetaConfig{}, 20'000);
  const double mean = out.distributions.at("share_arm_1").mean();
  return {bound && std::abs(mean - 0.5) <= 0.005,
          Detail()("Var<=1/(4n) for n<=64", bound)("max Var*4n", fmt(worst_ratio))("MC mean N1/n", fmt(mean)).str()};
}

Outcome ucb_zero_gap() {
  const auto half = RewardDistribution::bernoulli(0.5);
  const auto out = simulate("ucb_bernoulli_half", make_zero_gap_instance(half, 10'000), UcbConfig{2.0}, 20'000);
  const auto& a1 = out.distributions.at("share_arm_1");
  const auto& a2 = out.distributions.at("share_arm_2");
  const double mean = a1.mean();
  const double ks = ks_two_sample(a1, a2);
  const double crit = ks_two_sample_critical_value(0.01, a1.count(), a2.count());
  const double inside = a1.fraction_within(0.2, 0.8);
  return {mean >= 0.49 && mean <= 0.51 && ks < crit && inside >= 0.95,
          Detail()("mean N1/n", fmt(mean))("KS(N1/n,N2/n)", fmt(ks))("1% critical", fmt(crit))(
              "share in [0.2,0.8]", fmt(inside))
              .str()};
}

Outcome ucb_moderate_trend() {
  const double bracket = lambda_star(LimitQuery(3.5, 2.0)) + 0.05;
  std::vector<double> means;
  for (std::int64_t n : {1'000, 10'000, 100'000}) {
    const auto out = simulate("ucb_moderate_n" + std::to_string(n), make_moderate_gap_instance(3.5, n, 0.5),
                              UcbConfig{2.0}, 1000);
    means.push_back(out.distributions.at("share_best").mean());
  }
  const bool increasing = means[0] < means[1] && means[1] < means[2];
  bool below = true;
  for (double m : means) below = below && m < bracket;
  return {increasing && means[2] > 0.55 && below,
          Detail()("means n=1e3,1e4,1e5", fmt(means[0]) + ", " + fmt(means[1]) + ", " + fmt(means[2]))(
              "upper bracket", fmt(bracket))
              .str()};
}

Outcome ucb_large_gap() {
  const auto out = simulate("ucb_large_gap", make_large_gap_instance(0.9, 0.1, 10'000), UcbConfig{2.0}, 1000);
  const double mean = out.distributions.at("share_best").mean();
  return {mean >= 0.97, Detail()("mean N*/n", fmt(mean)).str()};
}

Outcome ucb_k_armed() {
  const auto same = simulate("ucb_k4_identical", make_k_armed_instance({0.5, 0.5, 0.5, 0.5}, 10'000), UcbConfig{2.0},
                             10'000);
  bool ok = true;
  std::string shares;
  for (int i = 1; i <= 4; ++i) {
    const double m = same.distributions.at("share_arm_" + std::to_string(i)).mean();
    ok = ok && m >= 0.24 && m <= 0.26;
    shares += (i > 1 ? ", " : "") + fmt(m);
  }
  const auto sep = simulate("ucb_k4_separated", make_k_armed_instance({0.9, 0.9, 0.1, 0.1}, 10'000), UcbConfig{2.0},
                            10'000);
  const double opt = sep.distributions.at("share_optimal_set").mean();
  const double diff =
      std::abs(sep.distributions.at("share_arm_1").mean() - sep.distributions.at("share_arm_2").mean());
  return {ok && opt >= 0.95 && diff <= 0.01,
          Detail()("identical shares", shares)("separated (N1+N2)/n", fmt(opt))("|N1-N2|/n", fmt(diff)).str()};
}

Outcome diffusion_and_z() {
  const auto diff = simulate("ucb_diffusion", make_diffusion_instance(0.0, 0.0, 0.0, 1.0, 1.0, 10'000), UcbConfig{2.0},
                             20'000);
  const double ks_regret = ks_statistic(diff.distributions.at("regret_sqrt_n"), NormalLaw{0.0, 1.0});

  const Instance one_armed({RewardDistribution::deterministic(0.5), RewardDistribution::bernoulli(0.5)}, 10'000,
                           RegimePrediction::zero_gap());
  const auto ucb = simulate("ucb_one_armed_z", one_armed, UcbConfig{2.0}, 20'000, true);
  const auto ts = simulate("ts_gaussian_one_armed_z", one_armed, TsGaussianConfig{}, 20'000, true);
  const auto& zu = ucb.distributions.at("z_stat");
  const auto& zt = ts.distributions.at("z_stat");
  const double ks_ucb = ks_statistic(zu, NormalLaw{0.0, 1.0});
  const double ks_ts = ks_statistic(zt, NormalLaw{0.0, 1.0});
  return {ks_regret < 0.02 && ks_ucb < ks_ts,
          Detail()("KS(R/sqrt n, N(0,1))", fmt(ks_regret))("KS UCB Z", fmt(ks_ucb))("KS TS Z", fmt(ks_ts))(
              "defined Z (UCB/TS)", std::to_string(zu.count()) + "/" + std::to_string(zt.count()))
              .str()};
}

Outcome beta_facts() {
  double worst = 0.0;
  for (int k = 0; k <= 20; ++k) {
    for (int l = 0; l <= 20; ++l) {
      worst = std::max(worst, std::abs(beta_win_prob_fact1(k, l).convert_to<double>() -
                                       oracle::beta_greater_quadrature(1, k + 1, 1, l + 1)));
      worst = std::max(worst, std::abs(beta_win_prob_fact2(k, l).convert_to<double>() -
                                       oracle::beta_greater_quadrature(k + 1, 1, l + 1, 1)));
    }
  }
  RngStream pick(2024, 0);
  double worst_mc = 0.0;
  for (int pair = 0; pair < 10; ++pair) {
    const auto k = static_cast<std::int64_t>(pick.uniform_index(21));
    const auto l = static_cast<std::int64_t>(pick.uniform_index(21));
    TsBetaState failures(2), successes(2);
    failures.failures = {k, l};
    successes.successes = {k, l};
    RngStream rng(2024, 1 + pair);
    int wins1 = 0, wins2 = 0;
    for (int i = 0; i < 1'000'000; ++i) {
      wins1 += ts_beta_select(failures, rng) == 0 ? 1 : 0;
      wins2 += ts_beta_select(successes, rng) == 0 ? 1 : 0;
    }
    worst_mc = std::max(worst_mc, std::abs(wins1 / 1e6 - beta_win_prob_fact1(k, l).convert_to<double>()));
    worst_mc = std::max(worst_mc, std::abs(wins2 / 1e6 - beta_win_prob_fact2(k, l).convert_to<double>()));
  }
  return {worst <= 1e-6 && worst_mc <= 0.005,
          Detail()("max |closed - quadrature|", fmt(worst))("max |closed - MC|", fmt(worst_mc)).str()};
}

Outcome hoeffding() {
  const double alphas[] = {0.1, 0.2, 0.3};
  const std::pair<int, int> sizes[] = {{10, 10}, {50, 100}};
  bool ok = true;
  double worst_margin = -1.0;
  std::uint64_t cell = 0;
  for (auto [m1, m2] : sizes) {
    for (double alpha : alphas) {
      RngStream rng(77, cell++);
      int exceed = 0;
      for (int t = 0; t < 100'000; ++t) {
        double a = 0.0, b = 0.0;
        for (int i = 0; i < m1; ++i) a += rng.bernoulli(0.5) ? 0.5 : -0.5;
        for (int i = 0; i < m2; ++i) b += rng.bernoulli(0.5) ? 0.5 : -0.5;
        exceed += a / m1 - b / m2 >= alpha ? 1 : 0;
      }
      const double freq = exceed / 1e5;
      const double bound = hoeffding_two_sample_bound(alpha, m1, m2);
      ok = ok && freq <= bound;
      worst_margin = std::max(worst_margin, freq - bound);
    }
  }
  return {ok, Detail()("cells", 6)("max(freq - bound)", fmt(worst_margin)).str()};
}

Outcome determinism() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned used = g_threads == 0 ? hw : g_threads;
  const unsigned other = used == 1 ? 4 : 1;
  bool ok = true;
  std::string mismatched;
  for (const auto& r : g_recorded) {
    const auto again = run_replications(r.cfg, other);
    if (csv_of(r.cfg, again) != r.csv) {
      ok = false;
      mismatched += " " + r.name;
    }
  }
  Detail d;
  d("experiments", g_recorded.size())("threads", std::to_string(used) + " vs " + std::to_string(other));
  if (!ok) d("mismatched", mismatched);
  return {ok && !g_recorded.empty(), d.str()};
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"banditlab acceptance suite"};
  std::vector<int> only;
  app.add_option("--only", only, "Criterion numbers to run")->delimiter(',');
  app.add_option("--threads", g_threads, "Worker threads for simulations (0 = hardware)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "closed-form lambda* satisfies the limit equation", 1, closed_form_consistency},
      {2, "theta*/h* match the Figure 3 caption table", 1, figure3_caption},
      {3, "exact TS law is uniform for q=1 (rational, n<=64; brute force n<=12)", 10, ts_exact_uniform},
      {4, "TS-Beta Deterministic(1) arms: N1/n close to Uniform[0,1]", 60, ts_uniform_monte_carlo},
      {5, "TS-Beta Deterministic(0) arms: variance bound and mean 1/2", 120, ts_incomplete_learning_zero},
      {6, "UCB zero gap: symmetry and concentration", 300, ucb_zero_gap},
      {7, "UCB moderate gap theta=3.5: increasing trend and bracket", 600, ucb_moderate_trend},
      {8, "UCB large gap: optimal share >= 0.97", 60, ucb_large_gap},
      {9, "UCB K=4: identical and separated arms", 300, ucb_k_armed},
      {10, "diffusion regret normality and Z statistic ordering", 600, diffusion_and_z},
      {11, "Beta win probabilities vs quadrature and Monte Carlo", 60, beta_facts},
      {12, "two-sample Hoeffding bound dominates exceedance frequencies", 60, hoeffding},
      {13, "replication CSVs independent of thread count", 1e9, determinism},
  };

  const std::set<int> selected(only.begin(), only.end());
  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " | " << o.detail << " | "
              << fmt(secs) << " s";
    if (c.budget_seconds < 1e9) std::cout << " (budget " << fmt(c.budget_seconds) << " s)";
    if (!in_time) std::cout << " over budget";
    std::cout << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
