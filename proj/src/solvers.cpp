#include "polymer/solvers.hpp"

namespace polymer {

RootResult bisect_root(const std::function<double(double)>& f, double lo,
                       double hi, const SolverConfig& cfg) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(flo) == std::signbit(fhi))
    throw NumericError("bisect_root: endpoints do not bracket a root",
                       std::fmin(std::fabs(flo), std::fabs(fhi)), 0);
  int it = 0;
  double mid = 0.5 * (lo + hi), fm = 0.0;
  for (; it < cfg.max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    fm = f(mid);
    if (fm == 0.0 || hi - lo <= cfg.root_tol * std::fmax(1.0, std::fabs(mid)))
      break;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {mid, fm, it};
}

RootResult newton_bisect_root(const std::function<double(double)>& f,
                              const std::function<double(double)>& df,
                              double lo, double hi, const SolverConfig& cfg) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(flo) == std::signbit(fhi))
    throw NumericError("newton_bisect_root: endpoints do not bracket a root",
                       std::fmin(std::fabs(flo), std::fabs(fhi)), 0);
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (fx == 0.0 || hi - lo <= cfg.root_tol * std::fmax(1.0, std::fabs(x)))
      return {x, fx, it};
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    double d = df(x);
    double next = x - fx / d;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    x = next;
    fx = f(x);
  }
  return {x, fx, cfg.max_iter};
}

double expand_bracket_toward(const std::function<double(double)>& f, double x0,
                             double toward, const SolverConfig& cfg) {
  const bool want_neg = f(x0) > 0.0;
  double gap = std::fabs(toward - x0);
  double frac = 0.5;
  for (int it = 0; it < 2000; ++it) {
    double x = toward + (x0 < toward ? -1.0 : 1.0) * gap * frac;
    // keep strictly inside the open interval
    if (x == toward) break;
    double fx = f(x);
    if (std::isfinite(fx) && (want_neg ? fx < 0.0 : fx > 0.0)) return x;
    frac *= 0.5;
  }
  throw NumericError("expand_bracket_toward: no sign change before the pole",
                     0.0, 2000);
  (void)cfg;
}

MinResult golden_minimize(const std::function<double(double)>& f, double lo,
                          double hi, const SolverConfig& cfg) {
  constexpr double invphi = 0.61803398874989484820;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  for (; it < cfg.max_iter * 4; ++it) {
    if (b - a <= cfg.opt_tol * std::fmax(1.0, std::fabs(a) + std::fabs(b)))
      break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  return {x, f(x), it};
}

}  // namespace polymer
