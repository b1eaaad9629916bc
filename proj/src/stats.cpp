#include "banditlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "banditlab/errors.hpp"

namespace banditlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// F(x-) for laws with atoms; equals cdf() for continuous laws.
double cdf_left(const ReferenceLaw& law, double x) {
  return std::visit(
      overloaded{[&](const DiracAt& d) { return x > d.v ? 1.0 : 0.0; },
                 [&](const DiscreteLaw& d) {
                   double acc = 0.0;
                   for (std::size_t j = 0; j < d.support.size() && d.support[j] < x; ++j) acc += d.mass[j];
                   return std::min(acc, 1.0);
                 },
                 [&](const auto&) { return cdf(law, x); }},
      law);
}

std::vector<double> atoms(const ReferenceLaw& law) {
  if (const auto* d = std::get_if<DiracAt>(&law)) return {d->v};
  if (const auto* d = std::get_if<DiscreteLaw>(&law)) return d->support;
  return {};
}

void require_samples(const EmpiricalDistribution& s) {
  if (s.empty()) throw ConfigError("statistic requires at least one sample");
}

}  // namespace

// ---------------------------------------------------------------------------

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  std::sort(samples_.begin(), samples_.end());
  if (samples_.empty()) return;
  const auto m = static_cast<double>(samples_.size());
  mean_ = std::accumulate(samples_.begin(), samples_.end(), 0.0) / m;
  if (samples_.size() > 1) {
    double ss = 0.0;
    for (double x : samples_) ss += (x - mean_) * (x - mean_);
    variance_ = ss / (m - 1.0);
  }
}

double EmpiricalDistribution::quantile(double p) const {
  if (samples_.empty()) throw ConfigError("quantile of an empty sample set");
  p = std::clamp(p, 0.0, 1.0);
  const double h = p * static_cast<double>(samples_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, samples_.size() - 1);
  return samples_[lo] + (h - static_cast<double>(lo)) * (samples_[hi] - samples_[lo]);
}

double EmpiricalDistribution::cdf(double x) const {
  if (samples_.empty()) return 0.0;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::fraction_within(double lo, double hi) const {
  if (samples_.empty()) return 0.0;
  const auto first = std::lower_bound(samples_.begin(), samples_.end(), lo);
  const auto last = std::upper_bound(samples_.begin(), samples_.end(), hi);
  return static_cast<double>(std::max<std::ptrdiff_t>(last - first, 0)) /
         static_cast<double>(samples_.size());
}

// ---------------------------------------------------------------------------

void validate(const ReferenceLaw& law) {
  std::visit(overloaded{[](const UniformUnit&) {},
                        [](const NormalLaw& n) {
                          if (!(n.sigma > 0.0)) throw ConfigError("normal law needs sigma > 0");
                        },
                        [](const DiracAt&) {},
                        [](const DiscreteLaw& d) {
                          if (d.support.size() != d.mass.size() || d.support.empty()) {
                            throw ConfigError("discrete law needs matching, non-empty support and mass");
                          }
                          if (!std::is_sorted(d.support.begin(), d.support.end())) {
                            throw ConfigError("discrete law support must be ascending");
                          }
                          double total = 0.0;
                          for (double p : d.mass) {
                            if (p < 0.0) throw ConfigError("discrete law has negative mass");
                            total += p;
                          }
                          if (std::abs(total - 1.0) > 1e-9) throw ConfigError("discrete law mass must sum to 1");
                        }},
             law);
}

double cdf(const ReferenceLaw& law, double x) {
  return std::visit(
      overloaded{[&](const UniformUnit&) { return std::clamp(x, 0.0, 1.0); },
                 [&](const NormalLaw& n) { return normal_cdf((x - n.mean) / n.sigma); },
                 [&](const DiracAt& d) { return x >= d.v ? 1.0 : 0.0; },
                 [&](const DiscreteLaw& d) {
                   double acc = 0.0;
                   for (std::size_t j = 0; j < d.support.size() && d.support[j] <= x; ++j) acc += d.mass[j];
                   return std::min(acc, 1.0);
                 }},
      law);
}

bool is_continuous(const ReferenceLaw& law) {
  return std::holds_alternative<UniformUnit>(law) || std::holds_alternative<NormalLaw>(law);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("normal quantile requires p in (0,1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

// ---------------------------------------------------------------------------

TestReport make_report(std::string test, double statistic, double threshold, std::size_t samples) {
  return {std::move(test), statistic, threshold, statistic <= threshold, samples};
}

std::string to_json_line(const TestReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"test\":\"" << r.test << "\",\"statistic\":" << r.statistic
     << ",\"threshold\":" << r.threshold << ",\"pass\":" << (r.pass ? "true" : "false")
     << ",\"samples\":" << r.sample_count << "}";
  return os.str();
}

double ks_statistic(const EmpiricalDistribution& samples, const ReferenceLaw& law) {
  require_samples(samples);
  validate(law);
  const auto xs = samples.samples();
  const auto m = static_cast<double>(xs.size());

  if (is_continuous(law)) {
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double f = cdf(law, xs[i]);
      d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
    }
    return d;
  }

  // Both CDFs are step functions: the supremum is attained at a jump of
  // either, approached from the left or taken at the point.
  std::vector<double> jumps(xs.begin(), xs.end());
  const auto law_atoms = atoms(law);
  jumps.insert(jumps.end(), law_atoms.begin(), law_atoms.end());
  std::sort(jumps.begin(), jumps.end());
  jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());
  double d = 0.0;
  for (double x : jumps) {
    const auto below = std::lower_bound(xs.begin(), xs.end(), x) - xs.begin();
    const auto upto = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
    d = std::max(d, std::abs(static_cast<double>(upto) / m - cdf(law, x)));
    d = std::max(d, std::abs(static_cast<double>(below) / m - cdf_left(law, x)));
  }
  return d;
}

double ks_law_distance(const DiscreteLaw& discrete, const ReferenceLaw& continuous) {
  validate(discrete);
  validate(continuous);
  if (!is_continuous(continuous)) throw ConfigError("ks_law_distance needs a continuous reference");
  double d = 0.0;
  double before = 0.0;
  for (std::size_t j = 0; j < discrete.support.size(); ++j) {
    const double f = cdf(continuous, discrete.support[j]);
    const double after = before + discrete.mass[j];
    d = std::max({d, std::abs(after - f), std::abs(before - f)});
    before = after;
  }
  return d;
}

double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  require_samples(a);
  require_samples(b);
  const auto xa = a.samples();
  const auto xb = b.samples();
  const auto ma = static_cast<double>(xa.size());
  const auto mb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == x) ++i;
    while (j < xb.size() && xb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / ma - static_cast<double>(j) / mb));
  }
  return d;
}

double ks_critical_value(double alpha, std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0) || m == 0) throw ConfigError("invalid KS critical value query");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(m));
}

double ks_two_sample_critical_value(double alpha, std::size_t m1, std::size_t m2) {
  if (m1 == 0 || m2 == 0) throw ConfigError("invalid KS critical value query");
  const auto a = static_cast<double>(m1);
  const auto b = static_cast<double>(m2);
  return ks_critical_value(alpha, 1) * std::sqrt((a + b) / (a * b));
}

double chi_square_quantile(double upper_tail, std::size_t dof) {
  if (dof == 0) throw ConfigError("chi-square needs at least one degree of freedom");
  const double k = static_cast<double>(dof);
  const double z = normal_quantile(1.0 - upper_tail);
  const double v = 2.0 / (9.0 * k);
  const double cube = 1.0 - v + z * std::sqrt(v);
  return k * cube * cube * cube;
}

TestReport chi_square_uniform(const EmpiricalDistribution& samples, std::size_t bins) {
  require_samples(samples);
  if (bins < 2) throw ConfigError("chi-square test needs at least two bins");
  for (double x : samples.samples()) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("chi-square uniform test needs samples in [0,1]");
  }
  const auto hist = make_histogram(samples.samples(), bins, 0.0, 1.0);
  const double expected = static_cast<double>(samples.count()) / static_cast<double>(bins);
  double stat = 0.0;
  for (std::size_t c : hist.counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return make_report("chi_square_uniform", stat, chi_square_quantile(0.01, bins - 1), samples.count());
}

double hoeffding_two_sample_bound(double alpha, std::size_t m1, std::size_t m2) {
  if (!(alpha > 0.0)) throw ConfigError("Hoeffding bound requires alpha > 0");
  if (m1 == 0 || m2 == 0) throw ConfigError("Hoeffding bound requires positive sample sizes");
  const auto a = static_cast<double>(m1);
  const auto b = static_cast<double>(m2);
  return std::exp(-2.0 * alpha * alpha * a * b / (a + b));
}

TestReport normality_report(const EmpiricalDistribution& samples, double mean, double sigma,
                            double threshold) {
  if (!(sigma > 0.0)) throw ConfigError("normality report needs sigma > 0");
  return make_report("ks_normal", ks_statistic(samples, NormalLaw{mean, sigma}), threshold,
                     samples.count());
}

// ---------------------------------------------------------------------------

double Histogram::density(std::size_t i) const {
  const std::size_t n = total();
  if (n == 0) return 0.0;
  return static_cast<double>(counts[i]) / (static_cast<double>(n) * bin_width());
}

std::size_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

Histogram make_histogram(std::span<const double> samples, std::size_t bins, double lo, double hi) {
  if (bins == 0 || !(hi > lo)) throw ConfigError("histogram needs bins >= 1 and hi > lo");
  Histogram h{lo, hi, std::vector<std::size_t>(bins, 0)};
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    auto idx = static_cast<std::ptrdiff_t>(std::floor((x - lo) / width));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

}  // namespace banditlab
