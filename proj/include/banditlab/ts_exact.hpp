#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace banditlab {

using Rational = boost::multiprecision::cpp_rational;

/// P(X > Y) for independent X ~ Beta(1, k+1), Y ~ Beta(1, l+1): (l+1)/(k+l+2).
/// This is the chance that an arm with k observed failures (and no successes)
/// out-samples one with l failures.
Rational beta_win_prob_fact1(std::int64_t k, std::int64_t l);

/// P(X > Y) for independent X ~ Beta(k+1, 1), Y ~ Beta(l+1, 1): (k+1)/(k+l+2).
Rational beta_win_prob_fact2(std::int64_t k, std::int64_t l);

struct CountState {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
};

/// Probability that Beta Thompson Sampling plays arm 1 from `state` when
/// every reward is q (0 or 1).
Rational arm1_pull_probability(const CountState& state, int q);

/// Law of N_1(n) under Beta Thompson Sampling on two arms that always pay q.
struct CountDistribution {
  std::int64_t n = 0;
  std::vector<double> mass;                 // mass[m] = P(N_1(n) = m)
  std::optional<std::vector<Rational>> exact;  // present when n <= kExactLimit

  double mean_share() const;      // E[N_1(n) / n]
  double variance_share() const;  // Var(N_1(n) / n)
};

inline constexpr std::int64_t kExactLimit = 64;
inline constexpr std::int64_t kDpLimit = 10'000;

/// Forward dynamic program over (n1, n2). Exact rationals for n <= 64,
/// double precision above. Throws ConfigError for q outside {0,1}, n < 1 or
/// n > 10^4.
CountDistribution exact_count_distribution(std::int64_t n, int q);

/// Rational DP only; n <= 64.
std::vector<Rational> exact_count_distribution_rational(std::int64_t n, int q);

struct VarianceBoundCheck {
  double variance;
  double bound;  // 1 / (4n)
  bool ok;
};

/// Var(N_1(n)/n) for the q = 0 law against 1/(4n). The comparison is done in
/// exact arithmetic for n <= 64.
VarianceBoundCheck exact_variance_bound_check(std::int64_t n);

}  // namespace banditlab
