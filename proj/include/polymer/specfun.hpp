#pragma once

// Gamma-family special functions on (0, inf): log Gamma, digamma (Psi0),
// trigamma (Psi1), tetragamma (Psi2) and the inverse of digamma.
// Self-contained: argument shifted upward by recurrence until the
// Bernoulli asymptotic series applies.

namespace polymer {

inline constexpr double kEulerGamma = 0.57721566490153286061;

// ln Gamma(x), x > 0.  Relative error ~1e-14 away from the zeros at x=1,2
// (absolute ~1e-14 there).
double log_gamma(double x);

// Psi0(x) = Gamma'(x)/Gamma(x), x > 0.
double digamma(double x);

// Psi1(x) = Psi0'(x), x > 0.
double trigamma(double x);

// Psi2(x) = Psi0''(x), x > 0.
double tetragamma(double x);

// Unique x > 0 with Psi0(x) = y.  Newton with the exp(y)+1/2 and -1/(y+gamma)
// starting guesses, bisection fallback.  Throws NumericError on
// non-convergence.
double inv_digamma(double y);

}  // namespace polymer
