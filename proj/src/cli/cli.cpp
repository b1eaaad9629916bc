#include "banditlab/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "banditlab/asymptotics.hpp"
#include "banditlab/errors.hpp"
#include "banditlab/json_io.hpp"
#include "banditlab/sim_engine.hpp"
#include "banditlab/ts_exact.hpp"
#include "cli/output.hpp"
#include "cli/reproduce.hpp"

namespace banditlab::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 42;
  bool seed_given = false;
  unsigned threads = 0;
  std::string output;
};

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

void emit_csv(const GlobalOptions& g, const std::string& file_name, const std::string& csv, std::ostream& out) {
  if (g.output.empty()) {
    out << csv;
    return;
  }
  ensure_directory(g.output);
  write_file_atomic(fs::path(g.output) / file_name, csv);
}

int cmd_simulate(const GlobalOptions& g, const std::string& config_path, std::ostream& out) {
  Stopwatch clock;
  const Json raw = read_json_file(config_path);
  auto cfg = experiment_from_json(raw);
  if (g.seed_given) cfg.master_seed = g.seed;
  cfg.validate();
  if (g.output.empty()) throw ConfigError("simulate requires --output <dir>");
  const fs::path dir = g.output;
  ensure_directory(dir);

  const auto result = run_experiment(cfg, g.threads);
  std::vector<std::string> outputs;

  std::ostringstream csv;
  write_replications_csv(csv, result.replications, cfg.instance.num_arms());
  write_file_atomic(dir / "replications.csv", csv.str());
  outputs.emplace_back("replications.csv");

  if (cfg.record.paths) {
    std::ostringstream paths;
    write_paths_csv(paths, result.replications);
    write_file_atomic(dir / "paths.csv", paths.str());
    outputs.emplace_back("paths.csv");
  }

  Json summary = Json::object();
  for (const auto& [key, dist] : result.distributions) summary[key] = summary_json(dist);
  write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
  outputs.emplace_back("summary.json");

  const Json resolved = to_json(cfg);
  write_manifest(dir, {"simulate", config_hash(cfg), cfg.master_seed, resolved, outputs, clock.seconds()});
  out << "wrote " << result.replications.size() << " replications to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_reproduce(const GlobalOptions& g, const std::string& target, const std::string& scale, std::ostream& out) {
  ReproduceOptions options;
  options.target = target;
  options.output = g.output.empty() ? fs::path("out") / target : fs::path(g.output);
  options.scale = scale == "paper" ? Scale::kPaper : Scale::kQuick;
  options.seed = g.seed;
  options.threads = g.threads;
  reproduce(options, out);
  return kExitOk;
}

int cmd_exact_ts(const GlobalOptions& g, std::int64_t n, int q, bool exact, std::ostream& out) {
  if (n < 1) throw ConfigError("--n must be >= 1");
  if (q != 0 && q != 1) throw ConfigError("--q must be 0 or 1");
  std::ostringstream csv;
  csv << "m,probability\n";
  if (exact) {
    if (n > kExactLimit) throw ConfigError("--exact supports n <= " + std::to_string(kExactLimit));
    const auto mass = exact_count_distribution_rational(n, q);
    for (std::size_t m = 0; m < mass.size(); ++m) csv << m << ',' << mass[m].str() << '\n';
  } else {
    const auto dist = exact_count_distribution(n, q);
    for (std::size_t m = 0; m < dist.mass.size(); ++m) csv << m << ',' << format_double(dist.mass[m]) << '\n';
  }
  emit_csv(g, "exact_ts_n" + std::to_string(n) + "_q" + std::to_string(q) + ".csv", csv.str(), out);
  return kExitOk;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--theta-grid expects lo:hi:step, got \"" + spec + "\"");
    }
  }
  if (parts.size() != 3 || parts[2] <= 0.0 || parts[1] < parts[0]) {
    throw ConfigError("--theta-grid expects lo:hi:step with step > 0 and hi >= lo");
  }
  std::vector<double> grid;
  const auto steps = static_cast<std::int64_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (std::int64_t i = 0; i <= steps; ++i) grid.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return grid;
}

int cmd_asymptotics(const GlobalOptions& g, std::vector<double> thetas, const std::string& grid,
                    const std::vector<double>& rhos, std::ostream& out) {
  if (thetas.empty()) thetas = parse_grid(grid);
  const auto rows = asymptotics_table(thetas, rhos);
  std::ostringstream csv;
  csv << "theta,rho,lambda_star,h,residual\n";
  for (const auto& r : rows) {
    csv << format_double(r.theta) << ',' << format_double(r.rho) << ',' << format_double(r.lambda_star) << ','
        << format_double(r.h) << ',' << format_double(r.residual) << '\n';
  }
  emit_csv(g, "asymptotics.csv", csv.str(), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"banditlab: arm-sampling experiments for UCB and Thompson Sampling", "banditlab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = hardware parallelism)")->capture_default_str();
  app.add_option("--output", g.output, "Output directory");

  auto* simulate = app.add_subcommand("simulate", "Run an experiment from a JSON config");
  std::string config_path;
  simulate->add_option("config", config_path, "Experiment config (JSON)")->required();

  auto* reproduce_cmd = app.add_subcommand("reproduce", "Re-run a canned experiment");
  std::string target;
  std::string scale = "quick";
  reproduce_cmd->add_option("target", target, "Target")->required()->check(CLI::IsMember(reproduce_targets()));
  reproduce_cmd->add_option("--scale", scale, "paper or quick")
      ->capture_default_str()
      ->check(CLI::IsMember({"paper", "quick"}));

  auto* exact_ts = app.add_subcommand("exact-ts", "Exact law of N1(n) under Thompson Sampling");
  std::int64_t n = 0;
  int q = 0;
  bool exact = false;
  exact_ts->add_option("--n", n, "Horizon")->required();
  exact_ts->add_option("--q", q, "Common deterministic reward (0 or 1)")->required();
  exact_ts->add_flag("--exact", exact, "Print exact fractions (n <= 64)");

  auto* asym = app.add_subcommand("asymptotics", "Tabulate lambda*, h on a theta x rho grid");
  std::vector<double> thetas;
  std::string grid = "0:20:0.5";
  std::vector<double> rhos{1.1, 2.0, 3.0, 4.0};
  asym->add_option("--theta", thetas, "Explicit theta values");
  asym->add_option("--theta-grid", grid, "lo:hi:step")->capture_default_str();
  asym->add_option("--rho", rhos, "Exploration coefficients")->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (simulate->parsed()) return cmd_simulate(g, config_path, out);
    if (reproduce_cmd->parsed()) return cmd_reproduce(g, target, scale, out);
    if (exact_ts->parsed()) return cmd_exact_ts(g, n, q, exact, out);
    if (asym->parsed()) return cmd_asymptotics(g, thetas, grid, rhos, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitConfig;
}

}  // namespace banditlab::cli
