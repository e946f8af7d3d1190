#include "polymer/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "polymer/specfun.hpp"

namespace polymer {

namespace {

// Unique root theta* of t*Psi1(theta) - s*Psi1(mu-theta), the peak of f_r'.
RootResult solve_theta_star(double mu, double s, double t,
                            const SolverConfig& cfg) {
  auto h = [&](double th) { return t * trigamma(th) - s * trigamma(mu - th); };
  // h is strictly decreasing with h(0+) = +inf, h(mu-) = -inf.
  const double hm = h(mu / 2.0);
  if (hm == 0.0) return {mu / 2.0, 0.0, 0};  // exact at s = t
  if (hm > 0.0)
    return bisect_root(h, mu / 2.0, expand_bracket_toward(h, mu / 2.0, mu, cfg),
                       cfg);
  return bisect_root(h, expand_bracket_toward(h, mu / 2.0, 0.0, cfg), mu / 2.0,
                     cfg);
}

// Lean evaluator for J_{s,t}(r) with the direction-dependent pieces
// (free energy and theta*) solved once.
struct RateJEvaluator {
  double mu, s, t;
  double p;
  double theta_star;  // only meaningful when s,t > 0
  SolverConfig cfg;

  static RateJEvaluator make(const PolymerParams& pp, const Direction& d,
                             const SolverConfig& cfg) {
    RateJEvaluator ev;
    ev.mu = pp.mu;
    ev.s = d.s;
    ev.t = d.t;
    ev.cfg = cfg;
    ev.p = free_energy_pp(pp, d, cfg).value;
    ev.theta_star =
        (d.s > 0.0 && d.t > 0.0) ? solve_theta_star(pp.mu, d.s, d.t, cfg).x
                                 : 0.0;
    return ev;
  }

  double f(double r, double th) const {
    return r * th + t * log_gamma(th) - s * log_gamma(mu - th);
  }

  double eval(double r) const {
    if (r <= p) return 0.0;
    if (s == 0.0 && t == 0.0) return (r <= 0.0) ? 0.0 : mu * r;
    if (s == 0.0) return t * cramer_logY(mu, r / t);
    if (t == 0.0) return s * cramer_logY(mu, r / s);
    auto fp = [&](double th) {
      return r + t * digamma(th) + s * digamma(mu - th);
    };
    auto dfp = [&](double th) {
      return t * trigamma(th) - s * trigamma(mu - th);
    };
    if (fp(theta_star) <= 0.0) return 0.0;  // r == p up to roundoff
    double lo = expand_bracket_toward(fp, theta_star, 0.0, cfg);
    double hi = expand_bracket_toward(fp, theta_star, mu, cfg);
    double th1 = newton_bisect_root(fp, dfp, lo, theta_star, cfg).x;
    double th2 = newton_bisect_root(fp, dfp, theta_star, hi, cfg).x;
    return f(r, th2) - f(r, th1);
  }
};

double p_mu_value(const PolymerParams& p, const Direction& d,
                  const SolverConfig& cfg) {
  return free_energy_pp(p, d, cfg).value;
}

void require_interior(const Direction& d) {
  if (!(d.s > 0.0) || !(d.t > 0.0))
    throw std::invalid_argument("operation requires s > 0 and t > 0");
}

}  // namespace

void PolymerParams::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("PolymerParams: mu must be finite and > 0");
  if (theta && (!(*theta > 0.0) || !(*theta < mu)))
    throw std::invalid_argument("PolymerParams: theta must lie in (0, mu)");
}

double PolymerParams::require_theta() const {
  validate();
  if (!theta)
    throw std::invalid_argument("operation requires the boundary parameter theta");
  return *theta;
}

void Direction::validate() const {
  if (!(s >= 0.0) || !(t >= 0.0) || !std::isfinite(s) || !std::isfinite(t))
    throw std::invalid_argument("Direction: s and t must be finite and >= 0");
}

double lmgf_logY(double mu, double xi) {
  if (!(mu > 0.0)) throw std::invalid_argument("lmgf_logY: mu must be > 0");
  if (xi >= mu) return kInf;
  return log_gamma(mu - xi) - log_gamma(mu);
}

VariationalResult free_energy_pp(const PolymerParams& p, const Direction& d,
                                 const SolverConfig& cfg) {
  p.validate();
  d.validate();
  const double mu = p.mu, s = d.s, t = d.t;
  if (s == 0.0 && t == 0.0) return {0.0, {}, 0.0, 0};
  if (s == 0.0) return {-t * digamma(mu), {}, 0.0, 0};
  if (t == 0.0) return {-s * digamma(mu), {}, 0.0, 0};
  // objective -s Psi0(rho) - t Psi0(mu - rho) is strictly convex; its
  // derivative g is strictly increasing from -inf to +inf.
  auto g = [&](double rho) {
    return -s * trigamma(rho) + t * trigamma(mu - rho);
  };
  const double gm = g(mu / 2.0);
  RootResult root;
  if (gm == 0.0) {
    root = {mu / 2.0, 0.0, 0};  // exact at s = t
  } else if (gm < 0.0) {
    root = bisect_root(g, mu / 2.0, expand_bracket_toward(g, mu / 2.0, mu, cfg),
                       cfg);
  } else {
    root = bisect_root(g, expand_bracket_toward(g, mu / 2.0, 0.0, cfg), mu / 2.0,
                       cfg);
  }
  double value = -s * digamma(root.x) - t * digamma(mu - root.x);
  return {value, {root.x}, root.residual, root.iterations};
}

double free_energy_stationary(const PolymerParams& p, const Direction& d) {
  const double theta = p.require_theta();
  d.validate();
  return -d.s * digamma(theta) - d.t * digamma(p.mu - theta);
}

VariationalResult rate_I(const PolymerParams& p, const Direction& d, double r,
                         const SolverConfig& cfg) {
  p.validate();
  require_interior(d);
  const double mu = p.mu, s = d.s, t = d.t;
  const double pval = p_mu_value(p, d, cfg);
  if (r < pval) return {kInf, {}, 0.0, 0};
  RootResult star = solve_theta_star(mu, s, t, cfg);
  if (r == pval) return {0.0, {star.x, star.x}, star.residual, star.iterations};
  auto fp = [&](double th) {
    return r + t * digamma(th) + s * digamma(mu - th);
  };
  if (fp(star.x) <= 0.0) return {0.0, {star.x, star.x}, star.residual, star.iterations};
  auto dfp = [&](double th) {
    return t * trigamma(th) - s * trigamma(mu - th);
  };
  double lo = expand_bracket_toward(fp, star.x, 0.0, cfg);
  double hi = expand_bracket_toward(fp, star.x, mu, cfg);
  RootResult r1 = newton_bisect_root(fp, dfp, lo, star.x, cfg);
  RootResult r2 = newton_bisect_root(fp, dfp, star.x, hi, cfg);
  auto f = [&](double th) {
    return r * th + t * log_gamma(th) - s * log_gamma(mu - th);
  };
  double value = f(r2.x) - f(r1.x);
  if (value < 0.0) value = 0.0;
  return {value,
          {r1.x, r2.x},
          std::fmax(std::fabs(r1.residual), std::fabs(r2.residual)),
          r1.iterations + r2.iterations};
}

double rate_J(const PolymerParams& p, const Direction& d, double r,
              const SolverConfig& cfg) {
  p.validate();
  require_interior(d);
  const double pval = p_mu_value(p, d, cfg);
  if (r <= pval) return 0.0;
  return rate_I(p, d, r, cfg).value;
}

double rate_J_origin(const PolymerParams& p, double r) {
  p.validate();
  return (r <= 0.0) ? 0.0 : p.mu * r;
}

double rate_J_general(const PolymerParams& p, const Direction& d, double r,
                      const SolverConfig& cfg) {
  p.validate();
  d.validate();
  return RateJEvaluator::make(p, d, cfg).eval(r);
}

double cramer_logY(double mu, double r) {
  if (!(mu > 0.0)) throw std::invalid_argument("cramer_logY: mu must be > 0");
  const double x = inv_digamma(-r);
  const double v = -r * x - log_gamma(x) + mu * r + log_gamma(mu);
  return std::fmax(v, 0.0);
}

VariationalResult lambda_iid(const PolymerParams& p, const Direction& d,
                             double xi, const SolverConfig& cfg) {
  p.validate();
  require_interior(d);
  const double mu = p.mu, s = d.s, t = d.t;
  if (xi < 0.0) return {p_mu_value(p, d, cfg) * xi, {}, 0.0, 0};
  if (xi == 0.0) return {0.0, {}, 0.0, 0};
  if (xi >= mu) return {kInf, {}, 0.0, 0};
  // strictly convex objective on (xi, mu); strictly increasing derivative
  auto dg = [&](double th) {
    return t * (digamma(th - xi) - digamma(th)) +
           s * (digamma(mu - th + xi) - digamma(mu - th));
  };
  const double mid = 0.5 * (xi + mu);
  const double dmid = dg(mid);
  RootResult root;
  if (dmid == 0.0) {
    root = {mid, 0.0, 0};  // exact at s = t by symmetry
  } else if (dmid < 0.0) {
    root = bisect_root(dg, mid, expand_bracket_toward(dg, mid, mu, cfg), cfg);
  } else {
    root = bisect_root(dg, expand_bracket_toward(dg, mid, xi, cfg), mid, cfg);
  }
  double value = t * lmgf_logY(root.x, xi) - s * lmgf_logY(mu - root.x, -xi);
  return {value, {root.x}, root.residual, root.iterations};
}

double lambda_iid_dual_check(const PolymerParams& p, const Direction& d,
                             double xi, const SolverConfig& cfg) {
  p.validate();
  require_interior(d);
  if (xi < 0.0 || xi >= p.mu)
    throw std::invalid_argument("lambda_iid_dual_check: xi must lie in [0, mu)");
  VariationalResult a = lambda_iid(p, d, xi, cfg);
  VariationalResult b = lambda_iid(p, {d.t, d.s}, xi, cfg);
  const double tol = 10.0 * cfg.opt_tol;
  if (std::fabs(a.value - b.value) > tol)
    throw NumericError("lambda_iid_dual_check: dual formulas disagree",
                       std::fabs(a.value - b.value), a.iterations + b.iterations);
  if (xi > 0.0) {
    // rho* of the (t,s) form must equal mu + xi - theta* of the (s,t) form
    double rel = std::fabs(b.minimizers[0] - (p.mu + xi - a.minimizers[0]));
    if (rel > 1e-6)
      throw NumericError("lambda_iid_dual_check: minimizer relation violated",
                         rel, a.iterations + b.iterations);
  }
  return 0.5 * (a.value + b.value);
}

double lambda_stationary(const PolymerParams& p, const Direction& d, double xi) {
  const double theta = p.require_theta();
  d.validate();
  if (xi < 0.0)
    throw std::invalid_argument("lambda_stationary: xi must be >= 0");
  const double mu = p.mu, s = d.s, t = d.t;
  if (xi >= std::fmin(theta, mu - theta)) return kInf;
  const double hor = s * lmgf_logY(theta, xi) - t * lmgf_logY(mu - theta, -xi);
  const double ver = t * lmgf_logY(mu - theta, xi) - s * lmgf_logY(theta, -xi);
  return std::fmax(hor, ver);
}

bool trans1_holds(const PolymerParams& p, const Direction& d) {
  const double theta = p.require_theta();
  d.validate();
  return d.s * trigamma(theta) >= d.t * trigamma(p.mu - theta);
}

bool trans2_holds(const PolymerParams& p, const Direction& d, double xi) {
  const double theta = p.require_theta();
  d.validate();
  if (xi < 0.0 || xi >= theta)
    throw std::invalid_argument("trans2_holds: xi must lie in [0, theta)");
  const double mu = p.mu;
  return d.s * (digamma(theta) - digamma(theta - xi)) >=
         d.t * (digamma(mu - theta + xi) - digamma(mu - theta));
}

double p_hor(const PolymerParams& p, const Direction& d,
             const SolverConfig& cfg) {
  p.require_theta();
  d.validate();
  return trans1_holds(p, d) ? free_energy_stationary(p, d)
                            : p_mu_value(p, d, cfg);
}

double lambda_hor(const PolymerParams& p, const Direction& d, double xi,
                  const SolverConfig& cfg) {
  const double theta = p.require_theta();
  d.validate();
  if (xi < 0.0 || xi >= theta)
    throw std::invalid_argument("lambda_hor: xi must lie in [0, theta)");
  if (trans2_holds(p, d, xi))
    return d.s * lmgf_logY(theta, xi) - d.t * lmgf_logY(p.mu - theta, -xi);
  return lambda_iid(p, d, xi, cfg).value;
}

double lambda_ver(const PolymerParams& p, const Direction& d, double xi,
                  const SolverConfig& cfg) {
  const double theta = p.require_theta();
  d.validate();
  if (xi < 0.0 || xi >= p.mu - theta)
    throw std::invalid_argument("lambda_ver: xi must lie in [0, mu - theta)");
  PolymerParams swapped{p.mu, p.mu - theta};
  Direction dsw{d.t, d.s};
  if (trans2_holds(swapped, dsw, xi))
    return d.t * lmgf_logY(p.mu - theta, xi) - d.s * lmgf_logY(theta, -xi);
  return lambda_iid(p, d, xi, cfg).value;
}

Direction characteristic_direction(const PolymerParams& p, double c) {
  const double theta = p.require_theta();
  if (!(c > 0.0)) throw std::invalid_argument("characteristic_direction: c must be > 0");
  return {c * trigamma(p.mu - theta), c * trigamma(theta)};
}

double R_s(const PolymerParams& p, double s, double r) {
  const double theta = p.require_theta();
  if (!(s >= 0.0)) throw std::invalid_argument("R_s: s must be >= 0");
  if (s == 0.0) return (r <= 0.0) ? 0.0 : kInf;
  if (r < -s * digamma(theta)) return 0.0;
  return s * cramer_logY(theta, r / s);
}

double R_s_dual(const PolymerParams& p, double s, double xi) {
  const double theta = p.require_theta();
  if (!(s >= 0.0)) throw std::invalid_argument("R_s_dual: s must be >= 0");
  if (xi < 0.0 || xi >= theta) return kInf;
  return s * (log_gamma(theta - xi) - log_gamma(theta));
}

Direction vbar(double a, const Direction& d) {
  d.validate();
  if (a < -d.t || a > d.s)
    throw std::invalid_argument("vbar: a must lie in [-t, s]");
  return (a <= 0.0) ? Direction{0.0, -a} : Direction{a, 0.0};
}

double kappa_star(const PolymerParams& p, const Direction& d, double a,
                  double xi) {
  const double theta = p.require_theta();
  d.validate();
  if (a < -d.t || a > d.s)
    throw std::invalid_argument("kappa_star: a must lie in [-t, s]");
  const double mu = p.mu, t = d.t;
  if (a <= 0.0) {
    if (xi < 0.0) return kInf;
    return (t + a) * (log_gamma(mu - theta + xi) - log_gamma(mu - theta));
  }
  if (xi < 0.0 || xi >= theta) return kInf;
  return t * (log_gamma(mu - theta + xi) - log_gamma(mu - theta)) +
         a * (log_gamma(theta - xi) - log_gamma(theta));
}

double m_kappa(const PolymerParams& p, const Direction& d, double a) {
  const double theta = p.require_theta();
  d.validate();
  if (a < -d.t || a > d.s)
    throw std::invalid_argument("m_kappa: a must lie in [-t, s]");
  if (a <= 0.0) return (d.t + a) * digamma(p.mu - theta);
  return d.t * digamma(p.mu - theta) - a * digamma(theta);
}

double kappa(const PolymerParams& p, const Direction& d, double a, double r,
             const SolverConfig& cfg) {
  const double theta = p.require_theta();
  const double mu = p.mu, t = d.t;
  const double m = m_kappa(p, d, a);
  if (r <= m) return 0.0;
  if (a <= 0.0) {
    if (t + a <= 0.0) return kInf;  // kappa*_{-t} vanishes identically
    // stationarity: Psi0(mu - theta + xi) = r / (t + a), closed form
    const double xs = inv_digamma(r / (t + a)) - (mu - theta);
    if (xs <= 0.0) return 0.0;
    return xs * r - kappa_star(p, d, a, xs);
  }
  // concave objective on [0, theta); decreasing derivative
  auto hp = [&](double xi) {
    return r - t * digamma(mu - theta + xi) + a * digamma(theta - xi);
  };
  double hi = expand_bracket_toward(hp, 0.0, theta, cfg);
  RootResult root = bisect_root(hp, 0.0, hi, cfg);
  return root.x * r - kappa_star(p, d, a, root.x);
}

double inf_convolution_H(const PolymerParams& p, const Direction& d, double a,
                         double b, double r, const SolverConfig& cfg) {
  p.require_theta();
  d.validate();
  if (a < -d.t || a > d.s || b < -d.t || b > d.s)
    throw std::invalid_argument("inf_convolution_H: a, b must lie in [-t, s]");
  const Direction vb = vbar(b, d);
  const Direction dir2{d.s - vb.s, d.t - vb.t};
  RateJEvaluator jev = RateJEvaluator::make(p, dir2, cfg);
  const double m1 = m_kappa(p, d, a);
  const double mJ = jev.p;
  if (r <= m1 + mJ) return 0.0;
  auto obj = [&](double x) { return kappa(p, d, a, x, cfg) + jev.eval(r - x); };
  return golden_minimize(obj, m1, r - mJ, cfg).value;
}

double legendre_transform(std::span<const double> xs,
                          std::span<const double> fs, double xi,
                          const std::function<double(double)>& f,
                          const SolverConfig& cfg) {
  if (xs.empty() || xs.size() != fs.size())
    throw std::invalid_argument("legendre_transform: empty or mismatched grid");
  size_t best = 0;
  double best_v = -kInf;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(fs[i])) continue;
    double v = xi * xs[i] - fs[i];
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  if (!f) return best_v;
  double lo = xs[best > 0 ? best - 1 : 0];
  double hi = xs[best + 1 < xs.size() ? best + 1 : xs.size() - 1];
  if (lo == hi) return best_v;
  auto neg = [&](double x) { return f(x) - xi * x; };
  MinResult m = golden_minimize(neg, lo, hi, cfg);
  return std::fmax(best_v, -m.value);
}

double asymptotic_constant(const PolymerParams& p) {
  p.validate();
  return (4.0 / 3.0) / std::sqrt(-tetragamma(p.mu / 2.0));
}

}  // namespace polymer
