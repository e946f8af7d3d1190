#pragma once

// Estimator plumbing shared by the Monte Carlo layer: running moments,
// compensated sums, log-space reductions, the regularized incomplete
// gamma function, Kolmogorov-Smirnov machinery, Wilson intervals and
// least-squares lines.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace polymer {

struct SampleStats {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double stderr_mean = 0.0;
};

// Welford one-pass accumulator.
class RunningStats {
 public:
  void add(double x);
  SampleStats stats() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Neumaier-compensated sum in the order given (deterministic).
double compensated_sum(std::span<const double> xs);

// log(sum of e^x) over the span; -inf on empty input.
double logsumexp(std::span<const double> xs);

// Regularized lower incomplete gamma P(a, x): series for x < a + 1,
// Lentz continued fraction otherwise.
double reg_lower_gamma(double a, double x);

// CDF of Gamma(shape, 1) at x.
double gamma_cdf(double x, double shape);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sided KS test of the samples against a continuous CDF, with the
// asymptotic Kolmogorov p-value (accurate for n >= 50).
KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf);

// Asymptotic tail Q(lambda) of the Kolmogorov distribution with the
// standard finite-n argument correction.
double kolmogorov_pvalue(double statistic, std::size_t n);

// Lag-1 sample autocorrelation.
double autocorr_lag1(std::span<const double> xs);

struct FitLine {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};

FitLine least_squares(std::span<const double> xs, std::span<const double> ys);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval for a binomial proportion at z standard normal
// quantiles (z = 1.96 for 95%).
Interval wilson_interval(std::size_t hits, std::size_t trials, double z);

}  // namespace polymer
