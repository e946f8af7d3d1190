#pragma once

// Replica orchestration and statistical tests confronting simulated
// lattices with the closed-form predictions: exact-mean identity, LLN,
// Burke ratio tests, moment-based l.m.g.f. convergence, variance-exponent
// scans and right-tail estimates.
//
// Replicas draw from disjoint RNG streams keyed by (seed, stream, replica)
// and results are stored by replica index, so output is identical for any
// worker count.

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polymer/rates.hpp"
#include "polymer/stats.hpp"

namespace polymer {

struct ExperimentPlan {
  PolymerParams params{1.0, {}};
  Direction dir{1.0, 1.0};
  std::vector<int> sizes;
  int replicas = 0;
  std::uint64_t master_seed = 0;
  std::string estimator;
  std::string output;

  // flat key=value lines: mu, theta, s, t, sizes (comma list), replicas,
  // seed, estimator, output; '#' starts a comment
  static ExperimentPlan parse(std::istream& in);
  void validate() const;
};

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> metadata;
};

// OpenMP map over replica indices; out[r] = task(r).  The serial variant
// is the reference implementation the parallel one is tested against.
std::vector<double> run_replicas(int count,
                                 const std::function<double(int)>& task);
std::vector<double> run_replicas_serial(int count,
                                        const std::function<double(int)>& task);

// Replica mean/SE of log Z_{m,n} (stationary when theta is present).
SampleStats mc_mean_logZ(double mu, std::optional<double> theta, int m, int n,
                         int replicas, std::uint64_t seed,
                         std::uint64_t stream = 0);

struct LlnRow {
  int n = 0;
  double mean = 0.0;   // of lz[n][n]/n
  double se = 0.0;
  double gap = 0.0;    // mean - formula
  double formula = 0.0;
};

// Gap table mean lz/n - p along the plan's sizes (square lattices).
std::vector<LlnRow> mc_lln_gap(const ExperimentPlan& plan);

// KS of the last-row ratios {1/U_{i,n}} against Gamma(theta) and the
// last-column ratios against Gamma(mu-theta), over n_seeds independent
// grids, plus the lag-1 autocorrelation of {log U_{i,n}}.
// pass: median p > 0.05, at least 85% of seeds have p > 0.01, and the
// autocorrelation stays within 3/sqrt(m) for every seed.
// Throws std::invalid_argument when m < 50.
TestReport burke_ks_test(double mu, double theta, int m, int n, int n_seeds,
                         std::uint64_t master_seed);

struct LmgfRow {
  int n = 0;
  double estimate = 0.0;  // n^{-1} log mean e^{xi lz}
  double formula = 0.0;
  double ess = 0.0;       // effective sample size of the tilted weights
  bool low_ess = false;   // ess < 100
};

// Moment estimator of the l.m.g.f. along the plan's sizes.
// Requires 0 < xi <= mu/4.
std::vector<LmgfRow> mc_lmgf(const ExperimentPlan& plan, double xi);

// Least-squares slopes of log Var(lz) vs log n in the characteristic
// direction and an off-characteristic one; pass when the characteristic
// slope is strictly smaller.
TestReport variance_exponent_scan(double mu, double theta,
                                  const std::vector<int>& sizes, int replicas,
                                  std::uint64_t master_seed);

struct TailEstimate {
  std::size_t hits = 0, trials = 0;
  double estimate = 0.0;  // -log(hits/trials)/n; lower bound when hits = 0
  Interval rate_interval;  // Wilson interval mapped through -log(.)/n
  bool one_sided = false;
  double formula = 0.0;    // rate_J for reference
};

TailEstimate right_tail_estimate(double mu, double r, int n, int replicas,
                                 std::uint64_t seed);

}  // namespace polymer
