#include "polymer/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polymer/lattice.hpp"
#include "polymer/specfun.hpp"

namespace polymer {

namespace {

std::vector<int> parse_int_list(const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

ExperimentPlan ExperimentPlan::parse(std::istream& in) {
  ExperimentPlan plan;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (val.empty()) continue;
    if (key == "mu")
      plan.params.mu = std::stod(val);
    else if (key == "theta")
      plan.params.theta = std::stod(val);
    else if (key == "s")
      plan.dir.s = std::stod(val);
    else if (key == "t")
      plan.dir.t = std::stod(val);
    else if (key == "sizes")
      plan.sizes = parse_int_list(val);
    else if (key == "replicas")
      plan.replicas = std::stoi(val);
    else if (key == "seed")
      plan.master_seed = std::stoull(val);
    else if (key == "estimator")
      plan.estimator = val;
    else if (key == "output")
      plan.output = val;
    else
      throw std::invalid_argument("ExperimentPlan: unknown key '" + key + "'");
  }
  return plan;
}

void ExperimentPlan::validate() const {
  params.validate();
  dir.validate();
  if (replicas < 2)
    throw std::invalid_argument("ExperimentPlan: replicas must be >= 2");
  if (sizes.empty())
    throw std::invalid_argument("ExperimentPlan: sizes must be nonempty");
  for (int n : sizes)
    if (n < 0) throw std::invalid_argument("ExperimentPlan: sizes must be >= 0");
}

std::vector<double> run_replicas(int count,
                                 const std::function<double(int)>& task) {
  std::vector<double> out(count);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < count; ++r) out[r] = task(r);
  return out;
}

std::vector<double> run_replicas_serial(
    int count, const std::function<double(int)>& task) {
  std::vector<double> out(count);
  for (int r = 0; r < count; ++r) out[r] = task(r);
  return out;
}

SampleStats mc_mean_logZ(double mu, std::optional<double> theta, int m, int n,
                         int replicas, std::uint64_t seed,
                         std::uint64_t stream) {
  if (replicas < 1)
    throw std::invalid_argument("mc_mean_logZ: replicas must be >= 1");
  auto vals = run_replicas(replicas, [&](int r) {
    EnvironmentGrid env = build_env(m, n, mu, theta, seed, stream * 1000003 + r);
    return dp_logZ_last(env);
  });
  RunningStats acc;
  for (double v : vals) acc.add(v);
  return acc.stats();
}

std::vector<LlnRow> mc_lln_gap(const ExperimentPlan& plan) {
  plan.validate();
  std::vector<LlnRow> rows;
  const double mu = plan.params.mu;
  double p;
  if (plan.params.theta)
    p = free_energy_stationary(plan.params, {1.0, 1.0});
  else
    p = free_energy_pp(plan.params, {1.0, 1.0}).value;
  for (std::size_t k = 0; k < plan.sizes.size(); ++k) {
    const int n = plan.sizes[k];
    SampleStats st = mc_mean_logZ(mu, plan.params.theta, n, n, plan.replicas,
                                  plan.master_seed, k);
    LlnRow row;
    row.n = n;
    row.mean = n > 0 ? st.mean / n : 0.0;
    row.se = n > 0 ? st.stderr_mean / n : 0.0;
    row.formula = p;
    row.gap = row.mean - p;
    rows.push_back(row);
  }
  return rows;
}

TestReport burke_ks_test(double mu, double theta, int m, int n, int n_seeds,
                         std::uint64_t master_seed) {
  if (m < 50)
    throw std::invalid_argument("burke_ks_test: m must be >= 50 for power");
  if (n_seeds < 1)
    throw std::invalid_argument("burke_ks_test: need at least one seed");

  std::vector<double> pu(n_seeds), pv(n_seeds);
  std::vector<double> rho(n_seeds);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < n_seeds; ++s) {
    EnvironmentGrid env = build_env(m, n, mu, theta, master_seed, s);
    BurkeRatios r = burke_ratios(env);
    std::vector<double> invU(m), invV(n), logU(m);
    for (int i = 1; i <= m; ++i) {
      invU[i - 1] = std::exp(-r.u(i, n));
      logU[i - 1] = r.u(i, n);
    }
    for (int j = 1; j <= n; ++j) invV[j - 1] = std::exp(-r.v(m, j));
    pu[s] = ks_test(invU, [&](double x) { return gamma_cdf(x, theta); }).p_value;
    pv[s] =
        ks_test(invV, [&](double x) { return gamma_cdf(x, mu - theta); }).p_value;
    rho[s] = autocorr_lag1(logU);
  }

  std::vector<double> all_p;
  all_p.insert(all_p.end(), pu.begin(), pu.end());
  all_p.insert(all_p.end(), pv.begin(), pv.end());
  const double med = median(all_p);
  int small = 0;
  for (double p : all_p)
    if (p <= 0.01) ++small;
  const double bound = 3.0 / std::sqrt(static_cast<double>(m));
  double max_rho = 0.0;
  for (double x : rho) max_rho = std::fmax(max_rho, std::fabs(x));

  TestReport rep;
  rep.name = "burke_ks";
  rep.statistic = med;
  rep.p_value = med;
  rep.pass = med > 0.05 &&
             small <= static_cast<int>(0.15 * all_p.size()) && max_rho <= bound;
  rep.metadata = {{"median_p", med},
                  {"frac_p_below_0.01", static_cast<double>(small) / all_p.size()},
                  {"max_abs_autocorr", max_rho},
                  {"autocorr_bound", bound},
                  {"seeds", static_cast<double>(n_seeds)},
                  {"m", static_cast<double>(m)},
                  {"n", static_cast<double>(n)}};
  return rep;
}

std::vector<LmgfRow> mc_lmgf(const ExperimentPlan& plan, double xi) {
  plan.validate();
  const double mu = plan.params.mu;
  if (!(xi >= 0.0) || xi > mu / 4.0)
    throw std::invalid_argument("mc_lmgf: xi must lie in [0, mu/4]");
  std::vector<LmgfRow> rows;
  for (std::size_t k = 0; k < plan.sizes.size(); ++k) {
    const int n = plan.sizes[k];
    const int m = static_cast<int>(std::lround(plan.dir.s * n));
    const int n2 = static_cast<int>(std::lround(plan.dir.t * n));
    auto lz = run_replicas(plan.replicas, [&](int r) {
      return dp_logZ_last(
          build_env(m, n2, mu, plan.params.theta, plan.master_seed,
                    (k + 1) * 1000003 + r));
    });
    std::vector<double> tilted(lz.size());
    for (std::size_t i = 0; i < lz.size(); ++i) tilted[i] = xi * lz[i];
    const double lse = logsumexp(tilted);
    double w2 = 0.0;
    for (double t : tilted) {
      const double w = std::exp(t - lse);
      w2 += w * w;
    }
    LmgfRow row;
    row.n = n;
    row.estimate =
        n > 0 ? (lse - std::log(static_cast<double>(lz.size()))) / n : 0.0;
    row.formula = plan.params.theta
                      ? lambda_stationary(plan.params, plan.dir, xi)
                      : lambda_iid(plan.params, plan.dir, xi).value;
    row.ess = 1.0 / w2;
    row.low_ess = row.ess < 100.0;
    rows.push_back(row);
  }
  return rows;
}

TestReport variance_exponent_scan(double mu, double theta,
                                  const std::vector<int>& sizes, int replicas,
                                  std::uint64_t master_seed) {
  PolymerParams params{mu, theta};
  params.validate();
  params.require_theta();
  if (replicas < 2)
    throw std::invalid_argument("variance_exponent_scan: replicas must be >= 2");
  if (sizes.size() < 3)
    throw std::invalid_argument("variance_exponent_scan: need >= 3 sizes");

  // characteristic direction normalized so that t = 1 (n indexes rows)
  const double ratio = trigamma(mu - theta) / trigamma(theta);
  // off-characteristic: stretch the row count well away from characteristic
  const double off_ratio = 2.5 * ratio;

  auto slope_for = [&](double srat, std::uint64_t stream0, double& se) {
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const int n = sizes[k];
      const int m = std::max(1, static_cast<int>(std::lround(srat * n)));
      auto lz = run_replicas(replicas, [&](int r) {
        return dp_logZ_last(
            build_env(m, n, mu, theta, master_seed, stream0 + k * 1000003 + r));
      });
      RunningStats acc;
      for (double v : lz) acc.add(v);
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(acc.stats().variance));
    }
    FitLine fit = least_squares(lx, ly);
    se = fit.slope_se;
    return fit.slope;
  };

  double se_char = 0.0, se_off = 0.0;
  const double slope_char = slope_for(ratio, 1, se_char);
  const double slope_off = slope_for(off_ratio, 1u << 20, se_off);

  TestReport rep;
  rep.name = "variance_exponent_scan";
  rep.statistic = slope_off - slope_char;
  rep.p_value = 1.0;
  rep.pass = slope_char < slope_off;
  rep.metadata = {{"slope_characteristic", slope_char},
                  {"slope_characteristic_se", se_char},
                  {"slope_off", slope_off},
                  {"slope_off_se", se_off},
                  {"direction_ratio", ratio},
                  {"off_direction_ratio", off_ratio}};
  return rep;
}

TailEstimate right_tail_estimate(double mu, double r, int n, int replicas,
                                 std::uint64_t seed) {
  if (n < 1 || n > 64)
    throw std::invalid_argument("right_tail_estimate: n must be in [1, 64]");
  if (replicas < 2)
    throw std::invalid_argument("right_tail_estimate: replicas must be >= 2");
  auto lz = run_replicas(replicas, [&](int k) {
    return dp_logZ_last(build_env(n, n, mu, {}, seed, k));
  });
  TailEstimate out;
  out.trials = lz.size();
  for (double v : lz)
    if (v >= n * r) ++out.hits;
  Interval w = wilson_interval(out.hits, out.trials, 1.96);
  if (out.hits == 0) {
    out.one_sided = true;
    out.estimate = -std::log(w.hi) / n;  // lower bound on the rate
    out.rate_interval = {out.estimate, kInf};
  } else {
    out.estimate =
        -std::log(static_cast<double>(out.hits) / out.trials) / n;
    out.rate_interval = {-std::log(w.hi) / n, -std::log(std::fmax(w.lo, 1e-300)) / n};
  }
  out.formula = rate_J_general({mu, {}}, {1.0, 1.0}, r);
  return out;
}

}  // namespace polymer
