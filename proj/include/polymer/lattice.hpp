#pragma once

// Exact log-space dynamic programming over sampled log-gamma environments.
//
// Conventions: lattice points (i,j) with 0 <= i <= m, 0 <= j <= n; paths
// take steps +e1/+e2; the point-to-point partition function excludes the
// weight at the starting point, while the "square" variant includes it.

#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "polymer/rng.hpp"

namespace polymer {

// log(e^a + e^b) without overflow; -inf absorbing.
double logsumexp2(double a, double b);

enum class EnvVariant { kIID, kStationary };

struct EnvironmentGrid {
  int m = 0, n = 0;
  EnvVariant variant = EnvVariant::kIID;
  double mu = 0.0;
  double theta = 0.0;  // stationary only
  std::uint64_t seed = 0, stream_id = 0;
  std::vector<double> logw;  // (m+1)*(n+1), row-major in i

  double at(int i, int j) const { return logw[i * (n + 1) + j]; }
  double& at(int i, int j) { return logw[i * (n + 1) + j]; }
};

struct LogZField {
  int m = 0, n = 0;
  bool square = false;  // true: origin weight included
  std::vector<double> lz;

  double at(int i, int j) const { return lz[i * (n + 1) + j]; }
  double& at(int i, int j) { return lz[i * (n + 1) + j]; }
};

struct BurkeRatios {
  int m = 0, n = 0;
  std::vector<double> logU;  // (m+1)*(n+1); valid for i >= 1
  std::vector<double> logV;  // valid for j >= 1

  double u(int i, int j) const { return logU[i * (n + 1) + j]; }
  double v(int i, int j) const { return logV[i * (n + 1) + j]; }
};

struct ExitDecomposition {
  double log_hor = 0.0, log_ver = 0.0;
  std::vector<double> hor_terms;  // exit at (k,0), k = 1..m
  std::vector<double> ver_terms;  // exit at (0,l), l = 1..n
};

// One Gamma(shape, 1) variate by the Marsaglia-Tsang squeeze method,
// with the U^{1/shape} boost below shape 1.
double sample_gamma(double shape, RngStream& rng);

// Samples an environment.  theta present => stationary boundaries
// (x-axis Gamma(theta), y-axis Gamma(mu-theta), origin weight 1).
EnvironmentGrid build_env(int m, int n, double mu,
                          std::optional<double> theta, std::uint64_t seed,
                          std::uint64_t stream_id = 0);

// Full DP field; square=true shifts everything by the origin weight.
LogZField dp_logZ(const EnvironmentGrid& env, bool square = false);

// Two-row DP returning only log Z_{m,n}.
double dp_logZ_last(const EnvironmentGrid& env);

// d-dimensional DP to endpoint u over a flat row-major weight array of
// shape (u[0]+1) x ... x (u[d-1]+1).  Throws std::invalid_argument when
// d < 2, d > 4, or the lattice exceeds 1e7 points.
double dp_logZ_ddim(const std::vector<int>& u, const std::vector<double>& logw);

// Point-to-line: logsumexp of lz over the antidiagonal i + j = m.
double logZ_line(const EnvironmentGrid& env, int m);

// Ratio fields log U_{i,j} = lz[i][j]-lz[i-1][j], log V analogous.
// Requires a stationary environment.
BurkeRatios burke_ratios(const EnvironmentGrid& env);

// Per-exit-point terms of the boundary decomposition and their two
// logsumexp aggregates.  Requires a stationary environment with m,n >= 1.
ExitDecomposition exit_decomposition(const EnvironmentGrid& env);

// Backward sampling from the quenched polymer measure; returns the path
// (0,0), ..., (m,n) in order.
std::vector<std::pair<int, int>> sample_quenched_path(const LogZField& field,
                                                      RngStream& rng);

// CSV with header i,j,logw and 17-significant-digit values.
void write_env_csv(const EnvironmentGrid& env, std::ostream& os);

}  // namespace polymer
