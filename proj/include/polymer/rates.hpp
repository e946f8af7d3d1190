#pragma once

// Closed-form and variational quantities of the log-gamma polymer:
// free energies, right-tail rate functions, logarithmic moment generating
// functions (l.m.g.f.), transition predicates, Cramer rates, kappa
// functions, infimal convolutions and numeric Legendre transforms.
//
// Infinite branches are represented by IEEE +infinity (kInf), which is
// absorbing under addition and max.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polymer/solvers.hpp"

namespace polymer {

struct PolymerParams {
  double mu;                    // bulk shape, > 0
  std::optional<double> theta;  // boundary shape, in (0, mu) when present

  void validate() const;          // throws std::invalid_argument
  double require_theta() const;   // throws if theta is absent
};

struct Direction {
  double s = 0.0;
  double t = 0.0;
  void validate() const;  // s, t >= 0, not both zero
};

struct VariationalResult {
  double value = 0.0;                // may be +inf
  std::vector<double> minimizers;    // rho*, or theta1 <= theta2, or theta*
  double residual = 0.0;
  int iterations = 0;
};

// M_mu(xi) = ln Gamma(mu - xi) - ln Gamma(mu) for xi < mu, +inf otherwise.
double lmgf_logY(double mu, double xi);

// p_mu(s,t) = inf_{0<rho<mu} { -s Psi0(rho) - t Psi0(mu-rho) }.
// Boundary directions (s=0 or t=0) return the closed form with no minimizer.
VariationalResult free_energy_pp(const PolymerParams& p, const Direction& d,
                                 const SolverConfig& cfg = {});

// p^theta(s,t) = -s Psi0(theta) - t Psi0(mu - theta), exact.
double free_energy_stationary(const PolymerParams& p, const Direction& d);

// Right-tail LDP rate I_{s,t}(r): f_r(theta2) - f_r(theta1) for r > p,
// 0 at r = p, +inf below p.  minimizers = [theta1, theta2].
VariationalResult rate_I(const PolymerParams& p, const Direction& d, double r,
                         const SolverConfig& cfg = {});

// J_{s,t}(r): 0 for r <= p, I_{s,t}(r) above; continuous at the joint.
double rate_J(const PolymerParams& p, const Direction& d, double r,
              const SolverConfig& cfg = {});

// J at the origin: 0 for r <= 0, mu*r for r >= 0.
double rate_J_origin(const PolymerParams& p, double r);

// J for any direction including the axes (i.i.d. Cramer case) and the origin.
double rate_J_general(const PolymerParams& p, const Direction& d, double r,
                      const SolverConfig& cfg = {});

// Cramer rate of log Y with Y^{-1} ~ Gamma(mu):
// I_mu(r) = -r Psi0^{-1}(-r) - ln Gamma(Psi0^{-1}(-r)) + mu r + ln Gamma(mu).
double cramer_logY(double mu, double r);

// Lambda_{s,t}(xi) per the three-branch formula: p*xi below 0, the
// variational infimum on [0, mu), +inf at and above mu.
VariationalResult lambda_iid(const PolymerParams& p, const Direction& d,
                             double xi, const SolverConfig& cfg = {});

// Evaluates both dual formulas for Lambda_{s,t}(xi) on xi in [0, mu) and
// checks their agreement and the minimizer relation rho* = mu + xi - theta*.
double lambda_iid_dual_check(const PolymerParams& p, const Direction& d,
                             double xi, const SolverConfig& cfg = {});

// Stationary l.m.g.f. Lambda_{theta,(s,t)}(xi) for xi >= 0.
double lambda_stationary(const PolymerParams& p, const Direction& d, double xi);

// Transition predicates, >= exactly as printed.
bool trans1_holds(const PolymerParams& p, const Direction& d);
bool trans2_holds(const PolymerParams& p, const Direction& d, double xi);

// Free energy and l.m.g.f. of the horizontal-first-step partition function,
// and the vertical analogue (s<->t, theta<->mu-theta).
double p_hor(const PolymerParams& p, const Direction& d,
             const SolverConfig& cfg = {});
double lambda_hor(const PolymerParams& p, const Direction& d, double xi,
                  const SolverConfig& cfg = {});
double lambda_ver(const PolymerParams& p, const Direction& d, double xi,
                  const SolverConfig& cfg = {});

// (s, t) = c * (Psi1(mu - theta), Psi1(theta)).
Direction characteristic_direction(const PolymerParams& p, double c);

// Right branch of the Cramer rate for the row sums, and its convex dual.
double R_s(const PolymerParams& p, double s, double r);
double R_s_dual(const PolymerParams& p, double s, double xi);

// Macroscopic exit vector: (0,-a) for a <= 0, (a,0) for a >= 0.
Direction vbar(double a, const Direction& d);

// kappa*_a per its three-branch closed form (discontinuous at a = 0).
double kappa_star(const PolymerParams& p, const Direction& d, double a,
                  double xi);

// kappa_a(r) = sup_{xi>=0} { xi r - kappa*_a(xi) }.
double kappa(const PolymerParams& p, const Direction& d, double a, double r,
             const SolverConfig& cfg = {});

// Rightmost zero of kappa_a (its law-of-large-numbers point); continuous in a.
double m_kappa(const PolymerParams& p, const Direction& d, double a);

// H^{a,b}(r): 0 below m_{kappa,a} + m_{J,b}, otherwise the infimal
// convolution of kappa_a and J_{(s,t)-vbar(b)} over the split point.
double inf_convolution_H(const PolymerParams& p, const Direction& d, double a,
                         double b, double r, const SolverConfig& cfg = {});

// sup over the sampled grid of { xi*x - f(x) }.  When `f` is provided the
// result is refined by golden-section search between the neighbors of the
// best grid point.
double legendre_transform(std::span<const double> xs,
                          std::span<const double> fs, double xi,
                          const std::function<double(double)>& f = nullptr,
                          const SolverConfig& cfg = {});

// Leading right-tail coefficient for the diagonal: (4/3)/sqrt(|Psi2(mu/2)|),
// so that I_{1,1}(p + eps) = C eps^{3/2} + o(eps^{3/2}).
double asymptotic_constant(const PolymerParams& p);

}  // namespace polymer
