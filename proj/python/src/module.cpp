#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "banditlab/asymptotics.hpp"
#include "banditlab/json_io.hpp"
#include "banditlab/sim_engine.hpp"
#include "banditlab/stats.hpp"
#include "banditlab/ts_exact.hpp"

namespace py = pybind11;
using namespace banditlab;

namespace {

py::dict run_config(const std::string& config_json, unsigned threads) {
  const auto cfg = experiment_from_json(Json::parse(config_json));
  ExperimentOutput out;
  {
    py::gil_scoped_release release;
    out = run_experiment(cfg, threads);
  }
  py::dict distributions;
  for (const auto& [key, dist] : out.distributions) {
    distributions[py::str(key)] = std::vector<double>(dist.samples().begin(), dist.samples().end());
  }
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<double> regret;
  for (const auto& r : out.replications) {
    counts.push_back(r.counts);
    regret.push_back(r.stochastic_regret);
  }
  py::dict result;
  result["distributions"] = distributions;
  result["counts"] = counts;
  result["regret"] = regret;
  result["config_hash"] = config_hash(cfg);
  return result;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Arm-sampling limits and Monte Carlo experiments for UCB and Thompson Sampling";

  m.def("lambda_star", [](double theta, double rho) { return lambda_star(LimitQuery(theta, rho)); },
        py::arg("theta"), py::arg("rho"));
  m.def("h_function", [](double theta, double rho) { return h_function(LimitQuery(theta, rho)); },
        py::arg("theta"), py::arg("rho"));
  m.def("verify_limit_equation",
        [](double lambda, double theta, double rho) { return verify_limit_equation(lambda, LimitQuery(theta, rho)); },
        py::arg("lam"), py::arg("theta"), py::arg("rho"));
  m.def("theta_star", [](double rho) {
    const auto p = theta_star(rho);
    return py::make_tuple(p.theta_star, p.h_star);
  }, py::arg("rho"));

  m.def("exact_count_distribution", [](std::int64_t n, int q) { return exact_count_distribution(n, q).mass; },
        py::arg("n"), py::arg("q"));
  m.def("exact_count_distribution_fractions", [](std::int64_t n, int q) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : exact_count_distribution_rational(n, q)) {
      out.emplace_back(numerator(p).str(), denominator(p).str());
    }
    return out;
  }, py::arg("n"), py::arg("q"), "Exact masses as (numerator, denominator) decimal strings.");

  m.def("ks_uniform", [](std::vector<double> samples) {
    return ks_statistic(EmpiricalDistribution(std::move(samples)), UniformUnit{});
  }, py::arg("samples"));
  m.def("ks_normal", [](std::vector<double> samples, double mean, double sigma) {
    return ks_statistic(EmpiricalDistribution(std::move(samples)), NormalLaw{mean, sigma});
  }, py::arg("samples"), py::arg("mean") = 0.0, py::arg("sigma") = 1.0);
  m.def("hoeffding_two_sample_bound", &hoeffding_two_sample_bound, py::arg("alpha"), py::arg("m1"), py::arg("m2"));

  m.def("_run_config", &run_config, py::arg("config_json"), py::arg("threads") = 0);
}
