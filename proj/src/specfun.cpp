#include "polymer/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "polymer/errors.hpp"

namespace polymer {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5*ln(2*pi)

// B_{2n} for n = 1..7
constexpr double kB2n[] = {1.0 / 6.0,   -1.0 / 30.0,    1.0 / 42.0, -1.0 / 30.0,
                           5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0};

void check_domain(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error(std::string(fn) + ": argument must be finite and > 0");
}

}  // namespace

double log_gamma(double x) {
  check_domain(x, "log_gamma");
  // Shift to x >= 10 where the Stirling series converges to ~1e-17.
  double shift = 0.0;
  while (x < 10.0) {
    shift -= std::log(x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double p = inv;  // x^{-(2n-1)}
  for (int n = 1; n <= 7; ++n) {
    series += kB2n[n - 1] / (2.0 * n * (2.0 * n - 1.0)) * p;
    p *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + series + shift;
}

double digamma(double x) {
  check_domain(x, "digamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double p = inv2;  // x^{-2n}
  for (int n = 1; n <= 7; ++n) {
    series += kB2n[n - 1] / (2.0 * n) * p;
    p *= inv2;
  }
  return std::log(x) - 0.5 / x - series + shift;
}

double trigamma(double x) {
  check_domain(x, "trigamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double p = inv2 * inv;  // x^{-(2n+1)}
  for (int n = 1; n <= 7; ++n) {
    series += kB2n[n - 1] * p;
    p *= inv2;
  }
  return inv + 0.5 * inv2 + series + shift;
}

double tetragamma(double x) {
  check_domain(x, "tetragamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 2.0 / (x * x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double p = inv2 * inv2;  // x^{-(2n+2)}
  for (int n = 1; n <= 7; ++n) {
    series += kB2n[n - 1] * (2.0 * n + 1.0) * p;
    p *= inv2;
  }
  return -inv2 - inv2 * inv - series + shift;
}

double inv_digamma(double y) {
  if (!std::isfinite(y)) throw std::domain_error("inv_digamma: argument must be finite");
  double x = (y >= -2.22) ? std::exp(y) + 0.5 : -1.0 / (y + kEulerGamma);
  if (!(x > 0.0)) x = 1e-300;
  const int max_iter = 200;
  double resid = digamma(x) - y;
  for (int it = 0; it < max_iter; ++it) {
    if (std::fabs(resid) <= 1e-13 * std::fmax(1.0, std::fabs(y))) return x;
    double step = resid / trigamma(x);
    double next = x - step;
    if (!(next > 0.0)) next = 0.5 * x;  // Psi0 is increasing; stay in (0, inf)
    x = next;
    resid = digamma(x) - y;
  }
  if (std::fabs(resid) <= 1e-12 * std::fmax(1.0, std::fabs(y))) return x;
  throw NumericError("inv_digamma: Newton did not converge", resid, max_iter);
}

}  // namespace polymer
