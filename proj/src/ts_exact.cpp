#include "banditlab/ts_exact.hpp"

#include <numeric>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

void check_counts(std::int64_t k, std::int64_t l) {
  if (k < 0 || l < 0) throw ConfigError("Beta win probabilities need nonnegative counts");
}

void check_query(std::int64_t n, int q) {
  if (q != 0 && q != 1) throw ConfigError("exact count distribution requires q in {0,1}");
  if (n < 1) throw ConfigError("horizon must be a positive integer");
  if (n > kDpLimit) throw ConfigError("horizon exceeds the exact DP budget (n <= 10000)");
}

// One forward step of the count lattice. `row[m]` holds P(N_1(t) = m).
template <class Number, class Prob>
std::vector<Number> advance(const std::vector<Number>& row, std::int64_t t, Prob&& arm1_prob) {
  std::vector<Number> next(row.size() + 1, Number(0));
  for (std::int64_t m = 0; m <= t; ++m) {
    const auto& p = row[static_cast<std::size_t>(m)];
    if (p == 0) continue;
    const Number to_arm1 = arm1_prob(m, t - m);
    next[static_cast<std::size_t>(m) + 1] += p * to_arm1;
    next[static_cast<std::size_t>(m)] += p * (Number(1) - to_arm1);
  }
  return next;
}

}  // namespace

Rational beta_win_prob_fact1(std::int64_t k, std::int64_t l) {
  check_counts(k, l);
  return Rational(l + 1, k + l + 2);
}

Rational beta_win_prob_fact2(std::int64_t k, std::int64_t l) {
  check_counts(k, l);
  return Rational(k + 1, k + l + 2);
}

Rational arm1_pull_probability(const CountState& state, int q) {
  // Under all-zero rewards both posteriors are Beta(1, n_i + 1); under
  // all-one rewards they are Beta(n_i + 1, 1).
  return q == 0 ? beta_win_prob_fact1(state.n1, state.n2) : beta_win_prob_fact2(state.n1, state.n2);
}

std::vector<Rational> exact_count_distribution_rational(std::int64_t n, int q) {
  check_query(n, q);
  if (n > kExactLimit) throw ConfigError("rational DP is limited to n <= 64");
  std::vector<Rational> row{Rational(1)};
  for (std::int64_t t = 0; t < n; ++t) {
    row = advance(row, t, [q](std::int64_t n1, std::int64_t n2) {
      return arm1_pull_probability({n1, n2}, q);
    });
  }
  return row;
}

CountDistribution exact_count_distribution(std::int64_t n, int q) {
  check_query(n, q);
  CountDistribution out;
  out.n = n;
  if (n <= kExactLimit) {
    auto exact = exact_count_distribution_rational(n, q);
    out.mass.reserve(exact.size());
    for (const auto& p : exact) out.mass.push_back(static_cast<double>(p));
    out.exact = std::move(exact);
    return out;
  }
  std::vector<double> row{1.0};
  row.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t t = 0; t < n; ++t) {
    row = advance(row, t, [q, t](std::int64_t n1, std::int64_t n2) {
      const auto favored = static_cast<double>(q == 0 ? n2 : n1);
      return (favored + 1.0) / static_cast<double>(t + 2);
    });
  }
  out.mass = std::move(row);
  return out;
}

double CountDistribution::mean_share() const {
  double mean = 0.0;
  for (std::size_t m = 0; m < mass.size(); ++m) mean += mass[m] * static_cast<double>(m);
  return mean / static_cast<double>(n);
}

double CountDistribution::variance_share() const {
  const double mu = mean_share();
  double var = 0.0;
  for (std::size_t m = 0; m < mass.size(); ++m) {
    const double d = static_cast<double>(m) / static_cast<double>(n) - mu;
    var += mass[m] * d * d;
  }
  return var;
}

VarianceBoundCheck exact_variance_bound_check(std::int64_t n) {
  if (n <= kExactLimit) {
    const auto law = exact_count_distribution_rational(n, 0);
    Rational mean(0);
    Rational second(0);
    for (std::size_t m = 0; m < law.size(); ++m) {
      const Rational share(static_cast<std::int64_t>(m), n);
      mean += law[m] * share;
      second += law[m] * share * share;
    }
    const Rational variance = second - mean * mean;
    const Rational bound(1, 4 * n);
    return {static_cast<double>(variance), static_cast<double>(bound), variance <= bound};
  }
  const auto law = exact_count_distribution(n, 0);
  const double variance = law.variance_share();
  const double bound = 1.0 / (4.0 * static_cast<double>(n));
  return {variance, bound, variance <= bound};
}

}  // namespace banditlab
