#pragma once

#include <cstddef>
#include <vector>

#include "banditlab/instance.hpp"

namespace banditlab {

/// (theta, rho) pair for the moderate-gap limit; theta >= 0 and rho > 1.
class LimitQuery {
 public:
  /// Throws ConfigError on theta < 0 or rho <= 1.
  LimitQuery(double theta, double rho);
  double theta() const { return theta_; }
  double rho() const { return rho_; }

 private:
  double theta_;
  double rho_;
};

struct MinimaxPoint {
  double theta_star;
  double h_star;
};

/// Limiting share of pulls of the optimal arm in the moderate-gap regime:
/// the root in [1/2, 1) of 1/sqrt(1-l) - 1/sqrt(l) = sqrt(theta/rho), in
/// closed form 1/2 + sqrt(1/4 - 1/(1 + sqrt(1 + theta/rho))^2).
double lambda_star(const LimitQuery& q);

/// 1 - lambda_star, evaluated without cancellation for large theta.
double lambda_star_complement(const LimitQuery& q);

/// Asymptotic constant of R_n / sqrt(n log n): sqrt(theta) * (1 - lambda_star).
double h_function(const LimitQuery& q);

/// 1/sqrt(1-l) - 1/sqrt(l) - sqrt(theta/rho). Throws ConfigError unless 0 < l < 1.
double verify_limit_equation(double lambda, const LimitQuery& q);

struct ThetaStarOptions {
  double grid_step = 0.01;
  double tolerance = 1e-6;
  // Upper end of the search interval as a multiple of rho.
  double span_per_rho = 100.0;
};

/// Maximizer of h_rho over [0, span_per_rho * rho]. A coarse grid scan
/// brackets the peak and golden-section search refines it. Throws
/// InvariantViolation when the grid peak sits on the boundary or the
/// refinement disagrees with the scan.
MinimaxPoint theta_star(double rho, const ThetaStarOptions& options = {});

/// Limiting share of N_{i*}(n)/n for the regime: 1, 1/2, lambda_star(theta),
/// or 1/|I|. Throws ConfigError for a moderate regime with rho <= 1 or for an
/// unspecified regime.
double predicted_share(const RegimePrediction& regime, double rho, std::size_t arms,
                       std::size_t optimal_count);

/// Copy of the regime with its moderate-gap share filled in for rho.
RegimePrediction resolve_prediction(const RegimePrediction& regime, double rho);

struct AsymptoticsRow {
  double theta;
  double rho;
  double lambda_star;
  double h;
  double residual;
};

std::vector<AsymptoticsRow> asymptotics_table(const std::vector<double>& thetas,
                                              const std::vector<double>& rhos);

}  // namespace banditlab
