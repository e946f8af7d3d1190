#include "polymer/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polymer/errors.hpp"
#include "polymer/specfun.hpp"

namespace polymer {

void RunningStats::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

SampleStats RunningStats::stats() const {
  SampleStats s;
  s.count = n_;
  s.mean = mean_;
  s.variance = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  s.stderr_mean = n_ > 0 ? std::sqrt(s.variance / static_cast<double>(n_)) : 0.0;
  return s;
}

double compensated_sum(std::span<const double> xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    comp += (std::fabs(sum) >= std::fabs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double logsumexp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  double hi = xs[0];
  for (double x : xs) hi = std::fmax(hi, x);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

double reg_lower_gamma(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(x))
    throw std::domain_error("reg_lower_gamma: need a > 0, x >= 0 finite");
  if (x == 0.0) return 0.0;
  const double lg = log_gamma(a);
  const double prefix = a * std::log(x) - x - lg;
  if (x < a + 1.0) {
    // series: P = e^prefix * sum_k x^k / (a)_{k+1} ... starting 1/a
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
      term *= x / (a + k);
      sum += term;
      if (term < sum * 1e-16) return std::exp(prefix) * sum;
    }
    throw NumericError("reg_lower_gamma: series did not converge", term, 500);
  }
  // Lentz continued fraction for Q(a, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 500; ++k) {
    const double an = -static_cast<double>(k) * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) return 1.0 - std::exp(prefix) * h;
  }
  throw NumericError("reg_lower_gamma: continued fraction did not converge",
                     0.0, 500);
}

double gamma_cdf(double x, double shape) {
  if (x <= 0.0) return 0.0;
  return reg_lower_gamma(shape, x);
}

double kolmogorov_pvalue(double statistic, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lam = (sn + 0.12 + 0.11 / sn) * statistic;
  if (lam < 1e-8) return 1.0;
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lam * lam);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  return std::fmin(std::fmax(2.0 * sum, 0.0), 1.0);
}

KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    d = std::fmax(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::fmax(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return {d, kolmogorov_pvalue(d, n)};
}

double autocorr_lag1(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 3) throw std::invalid_argument("autocorr_lag1: need >= 3 samples");
  double mean = compensated_sum(xs) / static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = xs[i] - mean;
    den += d * d;
    if (i + 1 < n) num += d * (xs[i + 1] - mean);
  }
  if (den == 0.0) return 0.0;
  return num / den;
}

FitLine least_squares(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n)
    throw std::invalid_argument("least_squares: need >= 2 matched points");
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares: degenerate xs");
  FitLine fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = ys[i] - fit.intercept - fit.slope * xs[i];
      rss += e * e;
    }
    fit.slope_se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

Interval wilson_interval(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0 || hits > trials)
    throw std::invalid_argument("wilson_interval: need 0 <= hits <= trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {(center - half) / denom, (center + half) / denom};
}

}  // namespace polymer
