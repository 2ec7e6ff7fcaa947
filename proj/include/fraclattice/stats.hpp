#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fraclattice/fbm.hpp"

namespace fraclattice {

struct CovEstimate {
  Eigen::MatrixXd cov;
  Eigen::MatrixXd se;  // per-entry standard error
  int n_samples = 0;
};

// Unbiased sample covariance of the observation vectors in `rows`, with
// per-entry standard errors from the Gaussian fourth-moment formula
// se_ij = sqrt((C_ii C_jj + C_ij^2)/n). The formula is exact for Gaussian
// data and approximate otherwise (use batch estimates for heavy tails).
CovEstimate empirical_cov(const std::vector<std::vector<double>>& rows);
CovEstimate empirical_increment_cov(const std::vector<IncrementSeries>& samples);
CovEstimate empirical_path_cov(const std::vector<IncrementSeries>& samples);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double se = 0.0;  // residual-based stderr of the slope
  int n_points = 0;
};

// Plain ordinary least squares y ~ intercept + slope * x.
SlopeFit ols(const std::vector<double>& x, const std::vector<double>& y);

// OLS slope of log mean(B_t^2) vs log t over the grid times inside
// [t_min, t_max]; throws RangeError with fewer than 4 points in range.
SlopeFit variance_growth_fit(const std::vector<IncrementSeries>& paths,
                             double t_min, double t_max);

// S_q(lag) = mean over samples and window starts of |B_{t+lag} - B_t|^q.
std::vector<double> structure_function(const std::vector<IncrementSeries>& paths,
                                       double q, const std::vector<int>& lags);

struct ZetaEstimate {
  double q = 0.0;
  double zeta = 0.0;  // slope of log S_q vs log lag
  double se = 0.0;    // spread of per-batch slopes
};

std::vector<ZetaEstimate> zeta_estimates(const std::vector<IncrementSeries>& paths,
                                         const std::vector<double>& qs,
                                         const std::vector<int>& lags,
                                         int n_batches = 32);

// Riemann sum sum_j f(t_j) X_j with t_j the right endpoint of increment j.
double stochastic_integral(const IncrementSeries& path,
                           const std::function<double(double)>& f);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;   // unbiased
  double kurtosis = 0.0;   // m4 / m2^2 (3 for a Gaussian)
  double se_mean = 0.0;
  double se_kurtosis = 0.0;  // from per-batch kurtosis spread
  int n = 0;
};

MomentSummary moment_summary(const std::vector<double>& x, int n_batches = 32);

}  // namespace fraclattice
