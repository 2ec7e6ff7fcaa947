#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fraclattice/fbm.hpp"
#include "fraclattice/grid.hpp"

// Hierarchical Gaussian sampler: a binary tree of linear layers. A node at
// level l (0 = leaves, L = root) is built from its level-(l+1) parents as
//   child[i] = pass(l) * parent[i/2] + mix(l) * parent[i/2 -+ 1] + noise_std(l) * xi,
// with the mixing term reaching the nearest parent across the sibling
// boundary (open ends, no wraparound). Sampling costs O(N) and the exact
// covariance is a Gram sum over layers, which is what calibration fits to
// the target fBm increment covariance.

namespace fraclattice {

struct TreeLayerParams {
  int level = 0;
  double pass_coeff = 0.0;
  double mix_coeff = 0.0;
  double noise_std = 1.0;
};

struct TreeParams {
  int n_leaves = 0;  // power of two, 2^depth
  double hurst = 0.5;
  double sigma = 1.0;
  double eps = 1.0;
  double frobenius_rel_error = 0.0;  // filled in by calibrate
  std::vector<TreeLayerParams> levels;  // depth+1 entries, level 0 first

  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

struct CalibrationReport {
  Eigen::MatrixXd target;
  Eigen::MatrixXd achieved;
  double frobenius_rel_error = 0.0;
  int iterations = 0;  // completed coordinate-descent sweeps
  bool converged = false;
};

// Starting parameters for calibration: above the Brownian point the noise
// profile follows the fractal scaling sigma eps^H 2^{l(H-1)} with plain
// pass-through couplings; at H <= 1/2 couplings start at zero with unit
// noise. Non-power-of-two n_steps are padded up to the next power of two.
TreeParams tree_init_params(const GridSpec& grid);

// Exact leaf covariance sum_l noise_std(l)^2 A_l A_l^T with A_l the
// composed parent-to-leaf map; O(N^2 log N), PSD by construction.
Eigen::MatrixXd tree_model_cov(const TreeParams& params);

// Coordinate descent over (pass_coeff, mix_coeff, noise_std) per level
// with a golden-section line search, minimizing the relative Frobenius
// distance to increment_cov_matrix(grid). Steps that fail to improve are
// reverted, so the objective is non-increasing; non-convergence within
// max_iter is reported, not thrown. ConvergenceError signals a broken
// line search (accepted objective rising), which should be unreachable.
std::pair<TreeParams, CalibrationReport> calibrate(const GridSpec& grid,
                                                   int max_iter = 200,
                                                   double tol = 1e-4);

// Top-down sampling pass; n_leaves = 0 means the tree's own width, smaller
// values truncate the output. op_count, when given, receives the number of
// fused multiply-accumulate operations for the cost-scaling checks.
IncrementSeries tree_sample(const TreeParams& params, std::uint64_t seed,
                            std::uint64_t sample_index = 0, int n_leaves = 0,
                            std::uint64_t* op_count = nullptr);

struct HurstFit {
  double exponent = 0.0;
  double se = 0.0;
};

// Monte Carlo fit of the growth exponent of E(B_t^2): dyadic times
// {T/8, T/4, T/2, T}, OLS in log-log, stderr from per-batch slopes.
HurstFit hurst_fit_from_tree(const TreeParams& params, int n_leaves,
                             int n_samples, std::uint64_t seed,
                             int n_batches = 32);

// Noise-free variant reading Var(B_t) off tree_model_cov partial sums.
double hurst_fit_from_cov(const TreeParams& params);

// JSON persistence; doubles survive a round trip bit for bit.
std::string tree_params_to_json(const TreeParams& params);
TreeParams tree_params_from_json(const std::string& text);
void save_tree_params(const TreeParams& params, const std::string& path);
TreeParams load_tree_params(const std::string& path);

}  // namespace fraclattice
