#include "polymer/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polymer {

double logsumexp2(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::fmax(a, b);
  return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

double sample_gamma(double shape, RngStream& rng) {
  if (!(shape > 0.0))
    throw std::invalid_argument("sample_gamma: shape must be > 0");
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, rng);
    return g * std::pow(rng.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

EnvironmentGrid build_env(int m, int n, double mu,
                          std::optional<double> theta, std::uint64_t seed,
                          std::uint64_t stream_id) {
  if (m < 0 || n < 0)
    throw std::invalid_argument("build_env: m and n must be >= 0");
  if (!(mu > 0.0)) throw std::invalid_argument("build_env: mu must be > 0");
  if (theta && (!(*theta > 0.0) || !(*theta < mu)))
    throw std::invalid_argument("build_env: theta must lie in (0, mu)");

  EnvironmentGrid env;
  env.m = m;
  env.n = n;
  env.mu = mu;
  env.seed = seed;
  env.stream_id = stream_id;
  env.variant = theta ? EnvVariant::kStationary : EnvVariant::kIID;
  env.theta = theta.value_or(0.0);
  env.logw.resize(static_cast<std::size_t>(m + 1) * (n + 1));

  RngStream rng(seed, stream_id);
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= n; ++j) {
      // weight is Y with Y^{-1} gamma-distributed: logw = -log(draw)
      if (!theta) {
        env.at(i, j) = -std::log(sample_gamma(mu, rng));
      } else if (i == 0 && j == 0) {
        env.at(i, j) = 0.0;
      } else if (j == 0) {
        env.at(i, j) = -std::log(sample_gamma(*theta, rng));
      } else if (i == 0) {
        env.at(i, j) = -std::log(sample_gamma(mu - *theta, rng));
      } else {
        env.at(i, j) = -std::log(sample_gamma(mu, rng));
      }
    }
  }
  return env;
}

LogZField dp_logZ(const EnvironmentGrid& env, bool square) {
  const int m = env.m, n = env.n;
  LogZField f;
  f.m = m;
  f.n = n;
  f.square = square;
  f.lz.resize(static_cast<std::size_t>(m + 1) * (n + 1));
  f.at(0, 0) = square ? env.at(0, 0) : 0.0;
  for (int i = 1; i <= m; ++i) f.at(i, 0) = f.at(i - 1, 0) + env.at(i, 0);
  for (int j = 1; j <= n; ++j) f.at(0, j) = f.at(0, j - 1) + env.at(0, j);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      f.at(i, j) = env.at(i, j) + logsumexp2(f.at(i - 1, j), f.at(i, j - 1));
  return f;
}

double dp_logZ_last(const EnvironmentGrid& env) {
  const int m = env.m, n = env.n;
  std::vector<double> prev(n + 1), cur(n + 1);
  prev[0] = 0.0;
  for (int j = 1; j <= n; ++j) prev[j] = prev[j - 1] + env.at(0, j);
  for (int i = 1; i <= m; ++i) {
    cur[0] = prev[0] + env.at(i, 0);
    for (int j = 1; j <= n; ++j)
      cur[j] = env.at(i, j) + logsumexp2(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[n];
}

double dp_logZ_ddim(const std::vector<int>& u,
                    const std::vector<double>& logw) {
  const int d = static_cast<int>(u.size());
  if (d < 2 || d > 4)
    throw std::invalid_argument("dp_logZ_ddim: dimension must be in [2, 4]");
  std::size_t total = 1;
  for (int c : u) {
    if (c < 0)
      throw std::invalid_argument("dp_logZ_ddim: coordinates must be >= 0");
    total *= static_cast<std::size_t>(c) + 1;
    if (total > 10'000'000)
      throw std::invalid_argument("dp_logZ_ddim: lattice exceeds 1e7 points");
  }
  if (logw.size() != total)
    throw std::invalid_argument("dp_logZ_ddim: weight array size mismatch");

  // row-major strides: last coordinate fastest
  std::size_t stride[4] = {0, 0, 0, 0};
  stride[d - 1] = 1;
  for (int k = d - 2; k >= 0; --k)
    stride[k] = stride[k + 1] * (static_cast<std::size_t>(u[k + 1]) + 1);

  std::vector<double> lz(total);
  std::vector<int> idx(d, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (flat == 0) {
      lz[0] = 0.0;  // origin weight excluded
    } else {
      double acc = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < d; ++k)
        if (idx[k] > 0) acc = logsumexp2(acc, lz[flat - stride[k]]);
      lz[flat] = logw[flat] + acc;
    }
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] <= u[k]) break;
      idx[k] = 0;
    }
  }
  return lz[total - 1];
}

double logZ_line(const EnvironmentGrid& env, int m) {
  if (m < 0 || m > env.m || m > env.n)
    throw std::invalid_argument(
        "logZ_line: antidiagonal must fit inside the grid");
  LogZField f = dp_logZ(env);
  double acc = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= m; ++i) acc = logsumexp2(acc, f.at(i, m - i));
  return acc;
}

BurkeRatios burke_ratios(const EnvironmentGrid& env) {
  if (env.variant != EnvVariant::kStationary)
    throw std::invalid_argument("burke_ratios: stationary environment required");
  LogZField f = dp_logZ(env);
  const int m = env.m, n = env.n;
  BurkeRatios r;
  r.m = m;
  r.n = n;
  r.logU.assign(f.lz.size(), 0.0);
  r.logV.assign(f.lz.size(), 0.0);
  for (int i = 1; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      r.logU[i * (n + 1) + j] = f.at(i, j) - f.at(i - 1, j);
  for (int i = 0; i <= m; ++i)
    for (int j = 1; j <= n; ++j)
      r.logV[i * (n + 1) + j] = f.at(i, j) - f.at(i, j - 1);
  return r;
}

ExitDecomposition exit_decomposition(const EnvironmentGrid& env) {
  if (env.variant != EnvVariant::kStationary)
    throw std::invalid_argument(
        "exit_decomposition: stationary environment required");
  const int m = env.m, n = env.n;
  if (m < 1 || n < 1)
    throw std::invalid_argument("exit_decomposition: m and n must be >= 1");

  // backward square field over the bulk: W[i][j] = log Z^sq_{(i,j),(m,n)}
  std::vector<double> W(static_cast<std::size_t>(m + 1) * (n + 1));
  auto w = [&](int i, int j) -> double& { return W[i * (n + 1) + j]; };
  for (int i = m; i >= 1; --i)
    for (int j = n; j >= 1; --j) {
      if (i == m && j == n)
        w(i, j) = env.at(i, j);
      else if (i == m)
        w(i, j) = env.at(i, j) + w(i, j + 1);
      else if (j == n)
        w(i, j) = env.at(i, j) + w(i + 1, j);
      else
        w(i, j) = env.at(i, j) + logsumexp2(w(i + 1, j), w(i, j + 1));
    }

  ExitDecomposition out;
  out.hor_terms.resize(m);
  out.ver_terms.resize(n);
  const double ninf = -std::numeric_limits<double>::infinity();
  double hor = ninf, ver = ninf, prefix = 0.0;
  for (int k = 1; k <= m; ++k) {
    prefix += env.at(k, 0);  // boundary weights telescope into log U
    out.hor_terms[k - 1] = prefix + w(k, 1);
    hor = logsumexp2(hor, out.hor_terms[k - 1]);
  }
  prefix = 0.0;
  for (int l = 1; l <= n; ++l) {
    prefix += env.at(0, l);
    out.ver_terms[l - 1] = prefix + w(1, l);
    ver = logsumexp2(ver, out.ver_terms[l - 1]);
  }
  out.log_hor = hor;
  out.log_ver = ver;
  return out;
}

std::vector<std::pair<int, int>> sample_quenched_path(const LogZField& field,
                                                      RngStream& rng) {
  int i = field.m, j = field.n;
  std::vector<std::pair<int, int>> rev;
  rev.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double a = field.at(i - 1, j);
      const double b = field.at(i, j - 1);
      const double p_up = std::exp(a - logsumexp2(a, b));
      if (rng.uniform() < p_up)
        --i;
      else
        --j;
    }
    rev.emplace_back(i, j);
  }
  return {rev.rbegin(), rev.rend()};
}

void write_env_csv(const EnvironmentGrid& env, std::ostream& os) {
  os << "i,j,logw\n";
  char buf[64];
  for (int i = 0; i <= env.m; ++i)
    for (int j = 0; j <= env.n; ++j) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", i, j, env.at(i, j));
      os << buf;
    }
}

}  // namespace polymer
