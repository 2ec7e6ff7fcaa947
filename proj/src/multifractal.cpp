#include "fraclattice/multifractal.hpp"

#include <cmath>

#include "fraclattice/errors.hpp"
#include "fraclattice/lightcone.hpp"
#include "fraclattice/rng.hpp"

namespace fraclattice {

namespace {

void validate_proc(const MultiplierProcess& p) {
  if (!(p.base_scale > 0.0) || !std::isfinite(p.base_scale))
    throw DomainError("multiplier process: base_scale must be positive");
  if (!(p.virtual_decay_exponent > 0.0))
    throw DomainError("multiplier process: virtual_decay_exponent must be positive");
  switch (p.kind) {
    case MultiplierKind::kLognormal:
      if (!(p.vol >= 0.0) || !std::isfinite(p.vol))
        throw DomainError("lognormal multiplier: vol must be a finite nonnegative real");
      break;
    case MultiplierKind::kBinomialCascade:
      if (!(p.m0 > 0.0 && p.m0 < 1.0))
        throw DomainError("binomial cascade: m0 must lie in (0,1)");
      if (p.levels < 1 || p.levels > 30)
        throw DomainError("binomial cascade: levels must lie in [1, 30]");
      break;
  }
}

void validate_grid(const GridSpec& g) {
  if (g.n_steps < 1 || !(g.eps > 0.0) || !(g.sigma > 0.0) || g.depth < 1)
    throw DomainError("multifractal: invalid grid");
}

// Dyadic cascade level nearest scale ratio r, capped at the cascade depth.
int dyadic_level(double r, int levels) {
  const double j = std::abs(std::log2(r));
  const int jj = static_cast<int>(std::llround(j));
  return std::min(jj, levels);
}

// Random mean-one cascade multiplier 2 m_eta along a random address.
double cascade_multiplier(const MultiplierProcess& p, int j, std::uint64_t key,
                          std::uint64_t counter_base) {
  double m = 1.0;
  for (int i = 0; i < j; ++i) {
    const bool right = (rng::bits_at(key, counter_base + static_cast<std::uint64_t>(i)) & 1u) != 0;
    m *= 2.0 * (right ? (1.0 - p.m0) : p.m0);
  }
  return m;
}

}  // namespace

MultiplierProcess lognormal_process(double vol, double base_scale) {
  MultiplierProcess p;
  p.kind = MultiplierKind::kLognormal;
  p.vol = vol;
  p.base_scale = base_scale;
  validate_proc(p);
  return p;
}

MultiplierProcess cascade_process(double m0, int levels, double base_scale) {
  MultiplierProcess p;
  p.kind = MultiplierKind::kBinomialCascade;
  p.m0 = m0;
  p.levels = levels;
  p.base_scale = base_scale;
  validate_proc(p);
  return p;
}

double MultiplierPath::at(std::int64_t n) const {
  if (n < 1 || n > static_cast<std::int64_t>(values.size()))
    throw RangeError("MultiplierPath::at: level index out of range");
  return values[static_cast<std::size_t>(n - 1)];
}

MultiplierPath sample_multiplier_path(const MultiplierProcess& proc,
                                      const GridSpec& grid,
                                      std::uint64_t seed,
                                      std::uint64_t sample_index) {
  validate_proc(proc);
  if (grid.depth < 1) throw DomainError("sample_multiplier_path: empty grid");
  MultiplierPath path;
  path.seed = rng::stream_key(seed, rng::kTagMultiplier, sample_index);
  path.values.resize(static_cast<std::size_t>(grid.depth));
  if (proc.kind == MultiplierKind::kLognormal) {
    // s_n = log(tau_n / tau_1) = log sqrt(n); W accumulates independent
    // increments on the log-scale grid, so M(tau_1) = 1 exactly.
    double w = 0.0, s_prev = 0.0;
    path.values[0] = 1.0;
    for (std::int64_t n = 2; n <= grid.depth; ++n) {
      const double s = 0.5 * std::log(static_cast<double>(n));
      w += std::sqrt(s - s_prev) * rng::normal(path.seed, static_cast<std::uint64_t>(n));
      s_prev = s;
      path.values[static_cast<std::size_t>(n - 1)] =
          std::exp(proc.vol * w - 0.5 * proc.vol * proc.vol * s);
    }
  } else {
    // One random dyadic address per path; level n reads the product of
    // mean-one multipliers down to the dyadic resolution nearest tau_n.
    const int j_max = dyadic_level(std::sqrt(static_cast<double>(grid.depth)),
                                   proc.levels);
    std::vector<double> prefix(static_cast<std::size_t>(j_max) + 1, 1.0);
    for (int i = 0; i < j_max; ++i) {
      const bool right = (rng::bits_at(path.seed, static_cast<std::uint64_t>(i)) & 1u) != 0;
      prefix[static_cast<std::size_t>(i) + 1] =
          prefix[static_cast<std::size_t>(i)] * 2.0 * (right ? (1.0 - proc.m0) : proc.m0);
    }
    for (std::int64_t n = 1; n <= grid.depth; ++n) {
      const int j = dyadic_level(std::sqrt(static_cast<double>(n)), j_max);
      path.values[static_cast<std::size_t>(n - 1)] = prefix[static_cast<std::size_t>(j)];
    }
  }
  return path;
}

std::vector<double> binomial_cascade_measure(double m0, int levels) {
  if (!(m0 > 0.0 && m0 < 1.0))
    throw DomainError("binomial_cascade_measure: m0 must lie in (0,1)");
  if (levels < 1 || levels > 30)
    throw DomainError("binomial_cascade_measure: levels must lie in [1, 30]");
  const double m1 = 1.0 - m0;
  std::vector<double> mass(std::size_t{1} << levels);
  for (std::size_t cell = 0; cell < mass.size(); ++cell) {
    double m = 1.0;
    for (int b = levels - 1; b >= 0; --b)
      m *= ((cell >> b) & 1u) ? m1 : m0;  // address bits read left to right
    mass[cell] = m;
  }
  return mass;
}

double draw_scale_multiplier(const MultiplierProcess& proc, double scale_ratio,
                             std::uint64_t seed, std::uint64_t sample_index) {
  validate_proc(proc);
  if (!(scale_ratio > 0.0) || !std::isfinite(scale_ratio))
    throw DomainError("draw_scale_multiplier: scale_ratio must be positive");
  const std::uint64_t key = rng::stream_key(seed, rng::kTagScaleShift, sample_index);
  if (proc.kind == MultiplierKind::kLognormal) {
    const double s = std::abs(std::log(scale_ratio));
    return std::exp(proc.vol * std::sqrt(s) * rng::normal(key, 0) -
                    0.5 * proc.vol * proc.vol * s);
  }
  return cascade_multiplier(proc, dyadic_level(scale_ratio, proc.levels), key, 0);
}

double scale_multiplier_moment(const MultiplierProcess& proc,
                               double scale_ratio, int order) {
  validate_proc(proc);
  if (!(scale_ratio > 0.0)) throw DomainError("scale_multiplier_moment: bad ratio");
  if (order < 1) throw DomainError("scale_multiplier_moment: order must be >= 1");
  if (proc.kind == MultiplierKind::kLognormal) {
    const double s = std::abs(std::log(scale_ratio));
    return std::exp(0.5 * proc.vol * proc.vol * s *
                    static_cast<double>(order) * static_cast<double>(order - 1));
  }
  const int j = dyadic_level(scale_ratio, proc.levels);
  const double per = std::pow(2.0, order - 1) *
                     (std::pow(proc.m0, order) + std::pow(1.0 - proc.m0, order));
  return std::pow(per, j);
}

MultifractalTable multifractal_table(const GridSpec& grid,
                                     const MultiplierProcess& proc) {
  validate_grid(grid);
  validate_proc(proc);
  MultifractalTable t;
  t.grid = grid;
  t.proc = proc;
  t.det_m.resize(static_cast<std::size_t>(grid.depth));
  // Deterministic cumulative coefficient
  //   cum_det(n)^2 = tau_n^{-a} / (eps * n * C(2n, n)),
  // so each level feeds sigma^2 eps^{-a-1} n^{-a/2-1} into the output
  // variance before the multiplier modulation.
  const double a = proc.virtual_decay_exponent;
  auto log_cum = [&](std::int64_t n) {
    const double nn = static_cast<double>(n);
    return 0.5 * (-a * std::log(grid.virtual_time(n)) - std::log(grid.eps) -
                  std::log(nn) - log_binomial(2 * n, n));
  };
  double prev = 0.0;
  for (std::int64_t n = 0; n < grid.depth; ++n) {
    const double next = log_cum(n + 1);
    t.det_m[static_cast<std::size_t>(n)] = std::exp(next - prev);
    prev = next;
  }
  return t;
}

IncrementSeries sample_with_multiplier_path(const MultifractalTable& table,
                                            const MultiplierPath& mpath,
                                            std::uint64_t noise_seed,
                                            std::uint64_t sample_index,
                                            double scale_shift) {
  const GridSpec& g = table.grid;
  if (static_cast<std::int64_t>(mpath.values.size()) < g.depth)
    throw DimensionError("sample_with_multiplier_path: multiplier path shorter than depth");
  if (!(scale_shift > 0.0) || !std::isfinite(scale_shift))
    throw DomainError("sample_with_multiplier_path: scale_shift must be positive");
  for (double v : mpath.values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("sample_with_multiplier_path: multiplier path must be positive");

  // Same pairing recursion as the unifractal network, with level noise
  // fixed at sigma and the multiplier entering through coefficient ratios:
  // m[0] picks up scale_shift * M(tau_1), m[n] the ratio M(tau_{n+1})/M(tau_n).
  const NoiseField nf{rng::stream_key(noise_seed, rng::kTagMultifractalNoise,
                                      sample_index)};
  const std::size_t top_width =
      static_cast<std::size_t>(g.n_steps + g.depth);
  std::vector<double> cur(top_width), nxt(top_width);
  const double s = g.sigma;
  for (std::size_t k = 0; k < top_width; ++k)
    cur[k] = s * nf.unit(g.depth, static_cast<std::int64_t>(k));
  for (std::int64_t n = g.depth - 1; n >= 0; --n) {
    const std::size_t w = static_cast<std::size_t>(g.n_steps + n);
    double m = table.det_m[static_cast<std::size_t>(n)];
    if (n == 0)
      m *= scale_shift * mpath.at(1);
    else
      m *= mpath.at(n + 1) / mpath.at(n);
    for (std::size_t k = 0; k < w; ++k)
      nxt[k] = m * (cur[k] + cur[k + 1]) + s * nf.unit(n, static_cast<std::int64_t>(k));
    std::swap(cur, nxt);
  }

  IncrementSeries out;
  out.eps = g.eps;
  out.increments.assign(cur.begin(), cur.begin() + g.n_steps);
  fill_path(out);
  return out;
}

IncrementSeries sample_multifractal_increments(const MultifractalTable& table,
                                               std::uint64_t seed,
                                               std::uint64_t sample_index,
                                               double scale_shift) {
  const MultiplierPath mpath =
      sample_multiplier_path(table.proc, table.grid, seed, sample_index);
  return sample_with_multiplier_path(table, mpath, seed, sample_index, scale_shift);
}

IncrementSeries sample_multifractal_increments(const GridSpec& grid,
                                               const MultiplierProcess& proc,
                                               std::uint64_t seed) {
  return sample_multifractal_increments(multifractal_table(grid, proc), seed);
}

MomentScaling moment_scaling_check(const GridSpec& grid,
                                   const MultiplierProcess& proc, double c,
                                   int order, int n_samples,
                                   std::uint64_t seed) {
  if (order != 2 && order != 4)
    throw DomainError("moment_scaling_check: order must be 2 or 4");
  if (n_samples < 10'000)
    throw DomainError("moment_scaling_check: need at least 10,000 samples");
  if (!(c > 0.0 && c < 1.0))
    throw DomainError("moment_scaling_check: c must lie in (0,1)");
  const double ct_steps = c * static_cast<double>(grid.n_steps);
  if (std::abs(ct_steps - std::llround(ct_steps)) > 1e-9 || std::llround(ct_steps) < 1)
    throw DomainError("moment_scaling_check: cT is not a grid time");

  const MultifractalTable table = multifractal_table(grid, proc);
  auto pow_ord = [order](double y) {
    const double y2 = y * y;
    return order == 2 ? y2 : y2 * y2;
  };
  auto mean_var = [](const std::vector<double>& v, double& mean, double& var) {
    mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size() - 1);
  };

  // Left side: each sample scales a fresh multiplier path by an
  // independent M_c draw (multiplicative property), applied as scale_shift.
  std::vector<double> lhs_v(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double mc = draw_scale_multiplier(proc, c, seed, static_cast<std::uint64_t>(i));
    const IncrementSeries y = sample_multifractal_increments(
        table, seed, static_cast<std::uint64_t>(i), mc);
    lhs_v[static_cast<std::size_t>(i)] = pow_ord(y.path.back());
  }

  // Right side: independent streams for the plain samples and the M draws.
  const std::uint64_t seed_y = rng::mix64(seed + 0x517cc1b727220a95ULL);
  const std::uint64_t seed_m = rng::mix64(seed + 0x2545f4914f6cdd1dULL);
  std::vector<double> y_v(static_cast<std::size_t>(n_samples));
  std::vector<double> m_v(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const IncrementSeries y =
        sample_multifractal_increments(table, seed_y, static_cast<std::uint64_t>(i));
    y_v[static_cast<std::size_t>(i)] = pow_ord(y.path.back());
    m_v[static_cast<std::size_t>(i)] =
        pow_ord(draw_scale_multiplier(proc, c, seed_m, static_cast<std::uint64_t>(i)));
  }

  MomentScaling r;
  double var_lhs = 0.0, a_mean = 0.0, var_a = 0.0, b_mean = 0.0, var_b = 0.0;
  mean_var(lhs_v, r.lhs, var_lhs);
  mean_var(m_v, a_mean, var_a);
  mean_var(y_v, b_mean, var_b);
  r.rhs = a_mean * b_mean;
  const double n = static_cast<double>(n_samples);
  const double var_rhs = (b_mean * b_mean * var_a + a_mean * a_mean * var_b) / n;
  r.se = std::sqrt(var_lhs / n + var_rhs);
  return r;
}

}  // namespace fraclattice
