#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace banditlab {

/// Sorted sample set with its first two moments.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::span<const double> samples() const { return samples_; }
  std::size_t count() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double mean() const { return mean_; }
  // Unbiased (m - 1) sample variance; 0 for a single sample.
  double variance() const { return variance_; }
  double min() const { return samples_.front(); }
  double max() const { return samples_.back(); }
  // Type-7 linear interpolation quantile.
  double quantile(double p) const;
  // Fraction of samples <= x.
  double cdf(double x) const;
  // Fraction of samples inside [lo, hi].
  double fraction_within(double lo, double hi) const;

  friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;

 private:
  std::vector<double> samples_;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

struct UniformUnit {};
struct NormalLaw {
  double mean;
  double sigma;
};
struct DiracAt {
  double v;
};
/// Finite law: support points (ascending) with their masses.
struct DiscreteLaw {
  std::vector<double> support;
  std::vector<double> mass;
};

using ReferenceLaw = std::variant<UniformUnit, NormalLaw, DiracAt, DiscreteLaw>;

/// Throws ConfigError for sigma <= 0, mismatched/unsorted support, or masses
/// that do not sum to 1 within 1e-9.
void validate(const ReferenceLaw& law);
double cdf(const ReferenceLaw& law, double x);
bool is_continuous(const ReferenceLaw& law);

double normal_cdf(double x);
double normal_pdf(double x);
/// Inverse standard normal CDF (Acklam's rational approximation followed by
/// one Halley step), p in (0, 1).
double normal_quantile(double p);

struct TestReport {
  std::string test;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;  // statistic <= threshold
  std::size_t sample_count = 0;
};

TestReport make_report(std::string test, double statistic, double threshold, std::size_t samples);
/// {"test":...,"statistic":...,"threshold":...,"pass":...,"samples":...}
std::string to_json_line(const TestReport& report);

/// sup_x |F_m(x) - F(x)|. Continuous laws use the two-sided evaluation at the
/// sample points; atomic laws are compared at every jump of either CDF,
/// from both sides. Throws ConfigError on an empty sample set.
double ks_statistic(const EmpiricalDistribution& samples, const ReferenceLaw& law);

/// sup distance between a discrete law and a continuous reference law.
double ks_law_distance(const DiscreteLaw& discrete, const ReferenceLaw& continuous);

/// Two-sample KS statistic sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// Asymptotic Kolmogorov critical value c(alpha) / sqrt(m), c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical_value(double alpha, std::size_t m);
double ks_two_sample_critical_value(double alpha, std::size_t m1, std::size_t m2);

/// Upper-tail chi-square quantile via the Wilson-Hilferty cube approximation.
double chi_square_quantile(double upper_tail, std::size_t dof);

/// Pearson statistic of `bins` equal-width bins on [0,1] against uniform
/// expectation; threshold is the 1% upper quantile with bins-1 dof.
TestReport chi_square_uniform(const EmpiricalDistribution& samples, std::size_t bins);

/// exp(-2 alpha^2 m1 m2 / (m1 + m2)): tail bound for the difference of two
/// sample means of independent, zero-mean, unit-range variables.
double hoeffding_two_sample_bound(double alpha, std::size_t m1, std::size_t m2);

/// KS distance to Normal(mean, sigma) with a caller-supplied pass threshold.
TestReport normality_report(const EmpiricalDistribution& samples, double mean, double sigma,
                            double threshold);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;

  double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  double bin_center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width(); }
  // Probability density of bin i (count / (total * width)).
  double density(std::size_t i) const;
  std::size_t total() const;
};

/// Equal-width histogram on [lo, hi]; values outside are clamped into the
/// edge bins and the right edge belongs to the last bin.
Histogram make_histogram(std::span<const double> samples, std::size_t bins, double lo, double hi);

}  // namespace banditlab
