#include "fraclattice/lightcone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraclattice/errors.hpp"
#include "fraclattice/rng.hpp"

namespace fraclattice {

namespace {

constexpr std::int64_t kMCacheMaxDepth = std::int64_t{1} << 22;

bool is_half(double hurst) { return std::fabs(hurst - 0.5) < 1e-12; }

// Noise std shared by all levels away from the H = 1/2 boundary:
// sigma/2 * sqrt(H |2H-1| / Gamma(1-H)).
double gamma_level_std(double hurst, double sigma) {
  return 0.5 * sigma *
         std::sqrt(hurst * std::fabs(2.0 * hurst - 1.0) /
                   std::tgamma(1.0 - hurst));
}

void validate_grid(const GridSpec& g) {
  if (g.n_steps < 1 || !(g.eps > 0.0) || !(g.sigma > 0.0) ||
      !(g.hurst > 0.0 && g.hurst < 1.0) || g.depth < 0)
    throw DomainError("coeff_table: invalid grid");
}

}  // namespace

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double CoefficientTable::log_cumulative(std::int64_t n) const {
  if (n <= 0) return 0.0;
  const double h = grid.hurst;
  return 0.5 * (2.0 * h * std::log(grid.eps) +
                (h - 2.0) * std::log(static_cast<double>(n)) -
                log_binomial(2 * n, n));
}

double CoefficientTable::cumulative_m(std::int64_t n) const {
  return std::exp(log_cumulative(n));
}

double CoefficientTable::m_at(std::int64_t n) const {
  if (!m_cache.empty()) return m_cache[static_cast<std::size_t>(n)];
  return std::exp(log_cumulative(n + 1) - log_cumulative(n));
}

std::vector<double> raw_lag_profile(const CoefficientTable& table) {
  const int n_out = table.grid.n_steps;
  const std::int64_t depth = table.grid.depth;
  std::vector<double> prof(static_cast<std::size_t>(n_out), 0.0);
  const double h = table.grid.hurst;
  const double eps2h = std::pow(table.grid.eps, 2.0 * h);
  const double us2 = table.upper_std * table.upper_std;
  if (us2 > 0.0) {
    for (std::int64_t n = 1; n <= depth; ++n) {
      // cum(n)^2 C(2n, n-d): the d = 0 term collapses to eps^{2H} n^{H-2};
      // successive lags follow from C(2n,n-d)/C(2n,n-d+1) = (n-d+1)/(n+d).
      double term = eps2h * std::pow(static_cast<double>(n), h - 2.0);
      prof[0] += term;
      const std::int64_t dmax = std::min<std::int64_t>(n, n_out - 1);
      for (std::int64_t d = 1; d <= dmax; ++d) {
        term *= static_cast<double>(n - d + 1) / static_cast<double>(n + d);
        prof[static_cast<std::size_t>(d)] += term;
      }
    }
    for (auto& p : prof) p *= us2;
  }
  prof[0] += table.level0_std * table.level0_std;
  return prof;
}

CoefficientTable coeff_table(const GridSpec& grid, std::int64_t work_budget) {
  validate_grid(grid);
  if (static_cast<double>(grid.n_steps) * static_cast<double>(grid.depth) >
      static_cast<double>(work_budget))
    throw ResourceError("coeff_table: n_steps * depth exceeds the work budget");

  CoefficientTable t;
  t.grid = grid;
  if (is_half(grid.hurst)) {
    // Boundary: the Gamma-based level std vanishes; all variance sits in
    // the level-0 noise and the outputs are exact Brownian increments.
    t.level0_std = std::sqrt(grid.eps) * grid.sigma;
    t.upper_std = 0.0;
  } else {
    t.level0_std = t.upper_std = gamma_level_std(grid.hurst, grid.sigma);
  }
  if (grid.depth <= kMCacheMaxDepth) {
    t.m_cache.resize(static_cast<std::size_t>(grid.depth));
    double log_prev = 0.0;
    for (std::int64_t n = 0; n < grid.depth; ++n) {
      const double log_next = t.log_cumulative(n + 1);
      t.m_cache[static_cast<std::size_t>(n)] = std::exp(log_next - log_prev);
      log_prev = log_next;
    }
  }

  // Output rescaling: pin the model's horizon variance
  // sum_{i,j} cov(i,j) to the exact Var(B_T) = sigma^2 T^{2H}. The raw
  // network is correct in shape but carries an unnormalized amplitude.
  const auto prof = raw_lag_profile(t);
  double total = static_cast<double>(grid.n_steps) * prof[0];
  for (int d = 1; d < grid.n_steps; ++d)
    total += 2.0 * static_cast<double>(grid.n_steps - d) * prof[static_cast<std::size_t>(d)];
  const double target = grid.sigma * grid.sigma *
                        std::pow(grid.horizon(), 2.0 * grid.hurst);
  t.output_rescale = std::sqrt(target / total);
  return t;
}

Eigen::MatrixXd model_cov(const CoefficientTable& table) {
  const auto prof = raw_lag_profile(table);
  const int n = table.grid.n_steps;
  const double r2 = table.output_rescale * table.output_rescale;
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c(i, j) = r2 * prof[static_cast<std::size_t>(std::abs(i - j))];
  return c;
}

Eigen::MatrixXd model_cov(const GridSpec& grid) {
  return model_cov(coeff_table(grid));
}

double NoiseField::unit(std::int64_t level, std::int64_t pos) const {
  const std::uint64_t counter =
      (static_cast<std::uint64_t>(level) << 32) | static_cast<std::uint64_t>(pos);
  return rng::normal(key, counter);
}

NoiseField noise_field(std::uint64_t seed, std::uint64_t sample_index) {
  return NoiseField{rng::stream_key(seed, rng::kTagLightconeNoise, sample_index)};
}

IncrementSeries sample_increments(const CoefficientTable& table,
                                  std::uint64_t seed,
                                  std::uint64_t sample_index,
                                  std::int64_t cell_budget) {
  const GridSpec& g = table.grid;
  if (!(g.hurst > 0.5 && g.hurst < 1.0))
    throw DomainError(
        "sample_increments: the light-cone sampler requires hurst in (1/2, 1); "
        "use the baseline samplers for other H");
  const double cells =
      static_cast<double>(g.depth + 1) * static_cast<double>(g.n_steps) +
      0.5 * static_cast<double>(g.depth) * static_cast<double>(g.depth + 1);
  if (cells > static_cast<double>(cell_budget))
    throw ResourceError("sample_increments: depth*(n_steps+depth) exceeds the cell budget");

  const NoiseField nf = noise_field(seed, sample_index);
  const std::size_t top_width = static_cast<std::size_t>(table.width_at(g.depth));
  std::vector<double> cur(top_width), nxt(top_width);
  const double top_std = table.level_std(g.depth);
  for (std::size_t k = 0; k < top_width; ++k)
    cur[k] = top_std * nf.unit(g.depth, static_cast<std::int64_t>(k));
  for (std::int64_t n = g.depth - 1; n >= 0; --n) {
    const std::size_t w = static_cast<std::size_t>(table.width_at(n));
    const double m = table.m_at(n);
    const double s = table.level_std(n);
    for (std::size_t k = 0; k < w; ++k)
      nxt[k] = m * (cur[k] + cur[k + 1]) +
               s * nf.unit(n, static_cast<std::int64_t>(k));
    std::swap(cur, nxt);
  }

  IncrementSeries out;
  out.eps = g.eps;
  out.increments.resize(static_cast<std::size_t>(g.n_steps));
  for (int j = 0; j < g.n_steps; ++j)
    out.increments[static_cast<std::size_t>(j)] =
        table.output_rescale * cur[static_cast<std::size_t>(j)];
  fill_path(out);
  return out;
}

IncrementSeries sample_increments(const GridSpec& grid, std::uint64_t seed) {
  return sample_increments(coeff_table(grid), seed);
}

double weight(const CoefficientTable& table, std::int64_t j, std::int64_t k,
              std::int64_t n) {
  if (k < j || k > j + n) return 0.0;
  return std::exp(table.log_cumulative(n) + log_binomial(n, k - j));
}

std::vector<double> reconstruct_from_weights(const CoefficientTable& table,
                                             std::uint64_t seed,
                                             std::uint64_t sample_index) {
  const GridSpec& g = table.grid;
  const NoiseField nf = noise_field(seed, sample_index);
  std::vector<double> out(static_cast<std::size_t>(g.n_steps));
  for (int j = 0; j < g.n_steps; ++j) {
    double acc = 0.0;
    for (std::int64_t n = 0; n <= g.depth; ++n) {
      const double s = table.level_std(n);
      for (std::int64_t k = j; k <= j + n; ++k)
        acc += weight(table, j, k, n) * s * nf.unit(n, k);
    }
    out[static_cast<std::size_t>(j)] = table.output_rescale * acc;
  }
  return out;
}

VandermondeCheck verify_vandermonde(int q, int n) {
  if (n < 0 || n > q || q > 60)
    throw DomainError("verify_vandermonde: need 0 <= n <= q <= 60");
  auto binom_row = [](int m) {
    std::vector<unsigned __int128> row(static_cast<std::size_t>(m) + 1);
    row[0] = 1;
    for (int i = 1; i <= m; ++i)
      row[static_cast<std::size_t>(i)] =
          row[static_cast<std::size_t>(i - 1)] *
          static_cast<unsigned __int128>(m - i + 1) /
          static_cast<unsigned __int128>(i);
    return row;
  };
  const auto cq = binom_row(q);
  const auto c2q = binom_row(2 * q);
  unsigned __int128 lhs = 0;
  for (int j = n; j <= q; ++j)
    lhs += cq[static_cast<std::size_t>(j)] * cq[static_cast<std::size_t>(j - n)];
  return VandermondeCheck{lhs, c2q[static_cast<std::size_t>(q - n)]};
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

StirlingRatio verify_stirling_ratio(std::int64_t q, std::int64_t n) {
  if (q < 1 || n < 0 || n > q)
    throw DomainError("verify_stirling_ratio: need q >= 1 and 0 <= n <= q");
  StirlingRatio r;
  r.exact = std::exp(log_binomial(2 * q, q - n) - log_binomial(2 * q, q));
  r.approx = std::exp(-static_cast<double>(n) * static_cast<double>(n) /
                      static_cast<double>(q));
  return r;
}

double verify_gamma_limit(std::int64_t n, std::int64_t depth, double hurst) {
  if (n < 1) throw DomainError("verify_gamma_limit: n must be >= 1");
  if (!(hurst > 0.0 && hurst < 1.0))
    throw DomainError("verify_gamma_limit: hurst out of (0,1)");
  if (depth < n * n)
    throw DomainError("verify_gamma_limit: depth must be >= n^2");

  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const std::int64_t direct_end = std::min(depth, n + std::int64_t{2'000'000});
  long double acc = 0.0L;
  for (std::int64_t q = n; q <= direct_end; ++q) {
    const double gamma = static_cast<double>(q) / n2;
    acc += std::exp(-1.0 / gamma) * std::pow(gamma, hurst - 2.0) / n2;
  }
  if (direct_end < depth) {
    // Midpoint-corrected integral tail: sum_{q>q0} f(q) ~ integral of
    // e^{-1/g} g^{H-2} dg with g = q/n^2, evaluated through u = 1/g and
    // v = log u, where the integrand e^{-e^v} e^{v(1-H)} is smooth.
    const double ga = (static_cast<double>(direct_end) + 0.5) / n2;
    const double gb = (static_cast<double>(depth) + 0.5) / n2;
    const double va = std::log(1.0 / gb);
    const double vb = std::log(1.0 / ga);
    const int k = 4000;
    const double step = (vb - va) / k;
    auto f = [hurst](double v) {
      return std::exp(-std::exp(v)) * std::exp(v * (1.0 - hurst));
    };
    double s = f(va) + f(vb);
    for (int i = 1; i < k; ++i)
      s += f(va + i * step) * ((i & 1) ? 4.0 : 2.0);
    acc += static_cast<long double>(s * step / 3.0);
  }
  return static_cast<double>(acc);
}

}  // namespace fraclattice
