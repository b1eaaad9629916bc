#include "banditlab/asymptotics.hpp"

#include <cmath>
#include <sstream>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

// a = 1 / (1 + sqrt(1 + theta/rho))^2, which lies in (0, 1/4].
double shape_term(const LimitQuery& q) {
  const double s = 1.0 + std::sqrt(1.0 + q.theta() / q.rho());
  return 1.0 / (s * s);
}

// Golden-section maximization of a unimodal f on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tolerance) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LimitQuery::LimitQuery(double theta, double rho) : theta_(theta), rho_(rho) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw ConfigError("theta must be a finite value >= 0");
  if (!(rho > 1.0) || !std::isfinite(rho)) {
    std::ostringstream os;
    os << "exploration coefficient rho must satisfy rho > 1 (got " << rho << ")";
    throw ConfigError(os.str());
  }
}

double lambda_star(const LimitQuery& q) { return 0.5 + std::sqrt(0.25 - shape_term(q)); }

double lambda_star_complement(const LimitQuery& q) {
  // 1/2 - sqrt(1/4 - a) == a / (1/2 + sqrt(1/4 - a))
  const double a = shape_term(q);
  return a / (0.5 + std::sqrt(0.25 - a));
}

double h_function(const LimitQuery& q) { return std::sqrt(q.theta()) * lambda_star_complement(q); }

double verify_limit_equation(double lambda, const LimitQuery& q) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie strictly inside (0,1)");
  return 1.0 / std::sqrt(1.0 - lambda) - 1.0 / std::sqrt(lambda) - std::sqrt(q.theta() / q.rho());
}

MinimaxPoint theta_star(double rho, const ThetaStarOptions& options) {
  const LimitQuery probe(0.0, rho);  // validates rho
  const double step = options.grid_step;
  const double theta_max = options.span_per_rho * rho;
  const auto points = static_cast<std::size_t>(std::ceil(theta_max / step));
  auto h = [rho](double theta) { return h_function(LimitQuery(theta, rho)); };

  std::size_t best = 0;
  double best_h = h(0.0);
  for (std::size_t i = 1; i <= points; ++i) {
    const double v = h(static_cast<double>(i) * step);
    if (v > best_h) {
      best_h = v;
      best = i;
    }
  }
  if (best == 0 || best == points) {
    throw InvariantViolation("h_rho grid maximum lies on the search boundary");
  }

  const double lo = static_cast<double>(best - 1) * step;
  const double hi = static_cast<double>(best + 1) * step;
  const double theta = golden_section_max(h, lo, hi, options.tolerance);
  const double h_star = h(theta);
  if (h_star < best_h) throw InvariantViolation("golden-section refinement fell below the grid peak");
  if (!(h(theta_max) < h_star)) throw InvariantViolation("h_rho does not decay toward the search limit");
  return {theta, h_star};
}

double predicted_share(const RegimePrediction& regime, double rho, std::size_t arms,
                       std::size_t optimal_count) {
  switch (regime.kind) {
    case RegimeKind::kLargeGap: return 1.0;
    case RegimeKind::kSmallGap:
    case RegimeKind::kZeroGap:
      if (arms != 2) throw ConfigError("two-armed regime used with K != 2");
      return 0.5;
    case RegimeKind::kModerateGap: return lambda_star(LimitQuery(regime.parameter, rho));
    case RegimeKind::kKArmedIdentical:
      if (optimal_count != arms) throw ConfigError("identical regime requires |I| = K");
      return 1.0 / static_cast<double>(arms);
    case RegimeKind::kKArmedSeparated:
      if (optimal_count == 0 || optimal_count > arms) throw ConfigError("invalid optimal set size");
      return 1.0 / static_cast<double>(optimal_count);
    case RegimeKind::kUnspecified: break;
  }
  throw ConfigError("instance carries no regime prediction");
}

RegimePrediction resolve_prediction(const RegimePrediction& regime, double rho) {
  RegimePrediction out = regime;
  if (regime.kind == RegimeKind::kModerateGap) {
    out.predicted_share = lambda_star(LimitQuery(regime.parameter, rho));
  }
  return out;
}

std::vector<AsymptoticsRow> asymptotics_table(const std::vector<double>& thetas,
                                              const std::vector<double>& rhos) {
  std::vector<AsymptoticsRow> rows;
  rows.reserve(thetas.size() * rhos.size());
  for (double rho : rhos) {
    for (double theta : thetas) {
      const LimitQuery q(theta, rho);
      const double lambda = lambda_star(q);
      rows.push_back({theta, rho, lambda, h_function(q), verify_limit_equation(lambda, q)});
    }
  }
  return rows;
}

}  // namespace banditlab
