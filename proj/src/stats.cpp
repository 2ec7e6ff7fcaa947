#include "fraclattice/stats.hpp"

#include <algorithm>
#include <cmath>

#include "fraclattice/errors.hpp"

namespace fraclattice {

namespace {

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) throw DimensionError("empirical_cov: need at least 2 samples");
  const auto d = rows.front().size();
  if (d == 0) throw DimensionError("empirical_cov: empty observation vectors");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw DimensionError("empirical_cov: ragged sample rows");
    for (std::size_t j = 0; j < d; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return x;
}

CovEstimate cov_from_matrix(Eigen::MatrixXd x) {
  const auto n = x.rows();
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  CovEstimate out;
  out.n_samples = static_cast<int>(n);
  out.cov = (x.transpose() * x) / static_cast<double>(n - 1);
  const auto d = out.cov.rows();
  out.se.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out.se(i, j) = std::sqrt((out.cov(i, i) * out.cov(j, j) + out.cov(i, j) * out.cov(i, j)) /
                               static_cast<double>(n));
  return out;
}

Eigen::MatrixXd series_to_matrix(const std::vector<IncrementSeries>& samples, bool use_path) {
  if (samples.size() < 2) throw DimensionError("empirical_cov: need at least 2 samples");
  const auto d = use_path ? samples.front().path.size() : samples.front().increments.size();
  if (d == 0) throw DimensionError("empirical_cov: empty series");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& v = use_path ? samples[i].path : samples[i].increments;
    if (v.size() != d) throw DimensionError("empirical_cov: ragged sample rows");
    for (std::size_t j = 0; j < d; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[j];
  }
  return x;
}

}  // namespace

CovEstimate empirical_cov(const std::vector<std::vector<double>>& rows) {
  return cov_from_matrix(rows_to_matrix(rows));
}

CovEstimate empirical_increment_cov(const std::vector<IncrementSeries>& samples) {
  return cov_from_matrix(series_to_matrix(samples, /*use_path=*/false));
}

CovEstimate empirical_path_cov(const std::vector<IncrementSeries>& samples) {
  return cov_from_matrix(series_to_matrix(samples, /*use_path=*/true));
}

SlopeFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("ols: x and y lengths differ");
  const int n = static_cast<int>(x.size());
  if (n < 2) throw DimensionError("ols: need at least 2 points");
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) throw DomainError("ols: degenerate abscissa");
  SlopeFit fit;
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    rss += r * r;
  }
  fit.se = (n > 2) ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  return fit;
}

SlopeFit variance_growth_fit(const std::vector<IncrementSeries>& paths,
                             double t_min, double t_max) {
  if (paths.empty()) throw DimensionError("variance_growth_fit: no samples");
  const auto n = paths.front().path.size();
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = paths.front().time_at(k);
    if (t < t_min || t > t_max) continue;
    double v = 0;
    for (const auto& p : paths) {
      if (p.path.size() != n) throw DimensionError("variance_growth_fit: ragged samples");
      v += p.path[k] * p.path[k];
    }
    v /= static_cast<double>(paths.size());
    lx.push_back(std::log(t));
    ly.push_back(std::log(v));
  }
  if (lx.size() < 4) throw RangeError("variance_growth_fit: fewer than 4 grid times in range");
  return ols(lx, ly);
}

std::vector<double> structure_function(const std::vector<IncrementSeries>& paths,
                                       double q, const std::vector<int>& lags) {
  if (paths.empty()) throw DimensionError("structure_function: no samples");
  const int n = static_cast<int>(paths.front().path.size());
  // Small integer q dominates in practice; sidestep pow() for it.
  const int qi = (q == std::floor(q) && q >= 1.0 && q <= 4.0) ? static_cast<int>(q) : 0;
  auto powq = [q, qi](double d) {
    switch (qi) {
      case 1: return d;
      case 2: return d * d;
      case 3: return d * d * d;
      case 4: return (d * d) * (d * d);
      default: return std::pow(d, q);
    }
  };
  std::vector<double> out;
  out.reserve(lags.size());
  for (int lag : lags) {
    if (lag < 1 || lag > n) throw RangeError("structure_function: lag outside [1, n]");
    double acc = 0;
    std::size_t count = 0;
    for (const auto& p : paths) {
      if (static_cast<int>(p.path.size()) != n)
        throw DimensionError("structure_function: ragged samples");
      // Path differences B_{t+lag} - B_t including the B_0 = 0 start.
      for (int a = 0; a + lag <= n; ++a) {
        const double left = (a > 0) ? p.path[a - 1] : 0.0;
        acc += powq(std::abs(p.path[a + lag - 1] - left));
        ++count;
      }
    }
    out.push_back(acc / static_cast<double>(count));
  }
  return out;
}

std::vector<ZetaEstimate> zeta_estimates(const std::vector<IncrementSeries>& paths,
                                         const std::vector<double>& qs,
                                         const std::vector<int>& lags,
                                         int n_batches) {
  if (lags.size() < 2) throw DimensionError("zeta_estimates: need at least 2 lags");
  if (n_batches < 2) throw DomainError("zeta_estimates: need at least 2 batches");
  if (paths.size() < static_cast<std::size_t>(n_batches))
    throw DimensionError("zeta_estimates: fewer samples than batches");
  std::vector<double> lx;
  lx.reserve(lags.size());
  for (int lag : lags) lx.push_back(std::log(static_cast<double>(lag)));

  std::vector<ZetaEstimate> out;
  out.reserve(qs.size());
  const std::size_t batch = paths.size() / static_cast<std::size_t>(n_batches);
  for (double q : qs) {
    const std::vector<double> s_all = structure_function(paths, q, lags);
    std::vector<double> ly;
    ly.reserve(s_all.size());
    for (double s : s_all) ly.push_back(std::log(s));
    ZetaEstimate z;
    z.q = q;
    z.zeta = ols(lx, ly).slope;

    double bm = 0, bs = 0;
    std::vector<double> slopes;
    slopes.reserve(static_cast<std::size_t>(n_batches));
    for (int b = 0; b < n_batches; ++b) {
      std::vector<IncrementSeries> part(paths.begin() + static_cast<std::ptrdiff_t>(b * batch),
                                        paths.begin() + static_cast<std::ptrdiff_t>((b + 1) * batch));
      const std::vector<double> s_b = structure_function(part, q, lags);
      std::vector<double> ly_b;
      ly_b.reserve(s_b.size());
      for (double s : s_b) ly_b.push_back(std::log(s));
      slopes.push_back(ols(lx, ly_b).slope);
    }
    for (double s : slopes) bm += s;
    bm /= static_cast<double>(n_batches);
    for (double s : slopes) bs += (s - bm) * (s - bm);
    z.se = std::sqrt(bs / (n_batches - 1) / n_batches);
    out.push_back(z);
  }
  return out;
}

double stochastic_integral(const IncrementSeries& path,
                           const std::function<double(double)>& f) {
  double acc = 0;
  for (std::size_t k = 0; k < path.increments.size(); ++k)
    acc += f(path.time_at(k)) * path.increments[k];
  return acc;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DimensionError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0;
  while (ia < a.size() && ib < b.size()) {
    const double va = a[ia], vb = b[ib];
    if (va <= vb) ++ia;
    if (vb <= va) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  KsResult r;
  r.statistic = d;
  const double ne = std::sqrt(na * nb / (na + nb));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  // Asymptotic Kolmogorov tail Q(lambda) = 2 sum_k (-1)^{k-1} exp(-2 k^2 lambda^2).
  // The alternating series does not converge numerically as lambda -> 0, but
  // Q(0.2) = 1 - 4e-7, so below that the tail is 1 to working precision.
  if (lambda < 0.2) {
    r.p_value = 1.0;
    return r;
  }
  double p = 0, sign = 1;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    p += 2.0 * sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  r.p_value = std::min(1.0, std::max(0.0, p));
  return r;
}

MomentSummary moment_summary(const std::vector<double>& x, int n_batches) {
  if (x.size() < 4) throw DimensionError("moment_summary: need at least 4 values");
  if (n_batches < 2) throw DomainError("moment_summary: need at least 2 batches");
  if (x.size() < static_cast<std::size_t>(2 * n_batches))
    throw DimensionError("moment_summary: fewer than 2 values per batch");
  const auto n = x.size();
  MomentSummary s;
  s.n = static_cast<int>(n);
  for (double v : x) s.mean += v;
  s.mean /= static_cast<double>(n);
  double m2 = 0, m4 = 0;
  for (double v : x) {
    const double c = v - s.mean;
    m2 += c * c;
    m4 += c * c * c * c;
  }
  s.variance = m2 / static_cast<double>(n - 1);
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  s.kurtosis = m4 / (m2 * m2);
  s.se_mean = std::sqrt(s.variance / static_cast<double>(n));

  const std::size_t batch = n / static_cast<std::size_t>(n_batches);
  std::vector<double> kb;
  kb.reserve(static_cast<std::size_t>(n_batches));
  for (int b = 0; b < n_batches; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * batch;
    const std::size_t hi = lo + batch;
    double mean_b = 0;
    for (std::size_t i = lo; i < hi; ++i) mean_b += x[i];
    mean_b /= static_cast<double>(batch);
    double m2b = 0, m4b = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double c = x[i] - mean_b;
      m2b += c * c;
      m4b += c * c * c * c;
    }
    m2b /= static_cast<double>(batch);
    m4b /= static_cast<double>(batch);
    kb.push_back(m4b / (m2b * m2b));
  }
  double km = 0, ks = 0;
  for (double v : kb) km += v;
  km /= static_cast<double>(n_batches);
  for (double v : kb) ks += (v - km) * (v - km);
  s.se_kurtosis = std::sqrt(ks / (n_batches - 1) / n_batches);
  return s;
}

}  // namespace fraclattice
