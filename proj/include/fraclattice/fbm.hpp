#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fraclattice/grid.hpp"

namespace fraclattice {

// One sampled path: increments[k] covers (t_k, t_{k+1}] with
// t_k = k*eps, and path[k] = sum_{j<=k} increments[j] = B_{t_{k+1}}.
struct IncrementSeries {
  std::vector<double> increments;
  std::vector<double> path;
  double eps = 1.0;

  // Time of the right endpoint of increment k.
  double time_at(std::size_t k) const { return (static_cast<double>(k) + 1.0) * eps; }
};

// Fills `path` with the running sums of `increments`.
void fill_path(IncrementSeries& s);

// Exact fBm path covariance E[B_s B_t] = sigma^2/2 (s^{2H}+t^{2H}-|s-t|^{2H}).
double path_cov(double s, double t, double hurst, double sigma);

// Exact stationary increment covariance at integer lag k:
// sigma^2/2 eps^{2H} (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double increment_cov(std::int64_t lag, double eps, double hurst, double sigma);

// Large-lag asymptote sigma^2 eps^2 H(2H-1) (k*eps)^{2H-2}; exposed for
// tests of the decay law only (it diverges at lag 0).
double increment_cov_asymptote(std::int64_t lag, double eps, double hurst,
                               double sigma);

// Toeplitz matrix C[i][j] = increment_cov(|i-j|).
Eigen::MatrixXd increment_cov_matrix(const GridSpec& grid);

// Exact path covariance matrix P[i][j] = path_cov(t_{i+1}, t_{j+1}).
Eigen::MatrixXd path_cov_matrix(const GridSpec& grid);

// Truncation error: max over grid pairs i <= j of
// |path_cov(t_{i+1}, t_{j+1}) - sum_{a<=i, b<=j} model_cov(a,b)|.
// Throws DimensionError when model_cov is not n_steps x n_steps.
double truncation_error(const Eigen::MatrixXd& model_cov, const GridSpec& grid);

// Smallest eigenvalue must be >= -rel_tol * largest; throws
// FactorizationError otherwise.
void check_psd(const Eigen::MatrixXd& m, double rel_tol = 1e-10);

}  // namespace fraclattice
