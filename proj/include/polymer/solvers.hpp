#pragma once

// Bracketed scalar root finding and convex 1-d minimization used by the
// rate-function formulas.  All optimizations run over open intervals whose
// endpoints are digamma poles, so brackets are established by geometric
// expansion toward the endpoints rather than fixed clamps.

#include <cmath>
#include <functional>
#include <limits>

#include "polymer/errors.hpp"

namespace polymer {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SolverConfig {
  double root_tol = 1e-12;
  double opt_tol = 1e-10;
  int max_iter = 200;
  double bracket_margin = 1e-9;  // offset from open-interval endpoints
};

struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign.
// Plain bisection; monotone callers rely on the guaranteed bracket.
RootResult bisect_root(const std::function<double(double)>& f, double lo,
                       double hi, const SolverConfig& cfg);

// Newton from the bracket midpoint, falling back to bisection whenever the
// step leaves the current bracket.
RootResult newton_bisect_root(const std::function<double(double)>& f,
                              const std::function<double(double)>& df,
                              double lo, double hi, const SolverConfig& cfg);

// Starting from x0 inside (a, b), walk geometrically toward endpoint `toward`
// (a pole of f) until f changes sign relative to f(x0).  Returns the bracket
// endpoint on the pole side.  Throws NumericError if no sign change is found.
double expand_bracket_toward(const std::function<double(double)>& f, double x0,
                             double toward, const SolverConfig& cfg);

struct MinResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

// Golden-section minimization of a unimodal f on [lo, hi].
MinResult golden_minimize(const std::function<double(double)>& f, double lo,
                          double hi, const SolverConfig& cfg);

}  // namespace polymer
