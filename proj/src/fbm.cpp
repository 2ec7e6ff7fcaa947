#include "fraclattice/fbm.hpp"

#include <cmath>
#include <string>

#include "fraclattice/errors.hpp"

namespace fraclattice {

void fill_path(IncrementSeries& s) {
  s.path.resize(s.increments.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < s.increments.size(); ++k) {
    acc += s.increments[k];
    s.path[k] = acc;
  }
}

double path_cov(double s, double t, double hurst, double sigma) {
  if (s < 0.0 || t < 0.0) throw DomainError("path_cov: negative time");
  if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("path_cov: hurst out of (0,1)");
  const double h2 = 2.0 * hurst;
  return 0.5 * sigma * sigma *
         (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::fabs(t - s), h2));
}

double increment_cov(std::int64_t lag, double eps, double hurst, double sigma) {
  if (!(eps > 0.0)) throw DomainError("increment_cov: eps must be positive");
  const double k = static_cast<double>(lag < 0 ? -lag : lag);
  const double h2 = 2.0 * hurst;
  const double second_diff =
      std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) +
      (k > 0.0 ? std::pow(k - 1.0, h2) : std::pow(1.0, h2));
  return 0.5 * sigma * sigma * std::pow(eps, h2) * second_diff;
}

double increment_cov_asymptote(std::int64_t lag, double eps, double hurst,
                               double sigma) {
  if (lag == 0) throw DomainError("increment_cov_asymptote: lag 0 diverges");
  const double t = std::fabs(static_cast<double>(lag)) * eps;
  return sigma * sigma * eps * eps * hurst * (2.0 * hurst - 1.0) *
         std::pow(t, 2.0 * hurst - 2.0);
}

Eigen::MatrixXd increment_cov_matrix(const GridSpec& grid) {
  const int n = grid.n_steps;
  Eigen::MatrixXd c(n, n);
  std::vector<double> lagv(n);
  for (int d = 0; d < n; ++d)
    lagv[d] = increment_cov(d, grid.eps, grid.hurst, grid.sigma);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = lagv[std::abs(i - j)];
  return c;
}

Eigen::MatrixXd path_cov_matrix(const GridSpec& grid) {
  const int n = grid.n_steps;
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i) {
    const double ti = (i + 1.0) * grid.eps;
    for (int j = 0; j <= i; ++j) {
      const double tj = (j + 1.0) * grid.eps;
      const double v = path_cov(ti, tj, grid.hurst, grid.sigma);
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return p;
}

double truncation_error(const Eigen::MatrixXd& model_cov, const GridSpec& grid) {
  const int n = grid.n_steps;
  if (model_cov.rows() != n || model_cov.cols() != n)
    throw DimensionError("truncation_error: model covariance is " +
                         std::to_string(model_cov.rows()) + "x" +
                         std::to_string(model_cov.cols()) + ", grid has N = " +
                         std::to_string(n));
  // partial(i,j) = sum_{a<=i, b<=j} model_cov(a,b) via 2-D running sums.
  Eigen::MatrixXd partial(n, n);
  for (int i = 0; i < n; ++i) {
    double row_acc = 0.0;
    for (int j = 0; j < n; ++j) {
      row_acc += model_cov(i, j);
      partial(i, j) = row_acc + (i > 0 ? partial(i - 1, j) : 0.0);
    }
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ti = (i + 1.0) * grid.eps;
    for (int j = i; j < n; ++j) {
      const double tj = (j + 1.0) * grid.eps;
      const double gap =
          std::fabs(path_cov(ti, tj, grid.hurst, grid.sigma) - partial(i, j));
      if (gap > worst) worst = gap;
    }
  }
  return worst;
}

void check_psd(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.rows() != m.cols()) throw DimensionError("check_psd: matrix not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo < -rel_tol * std::max(hi, 0.0))
    throw FactorizationError("check_psd: smallest eigenvalue " +
                             std::to_string(lo) + " below tolerance");
}

}  // namespace fraclattice
