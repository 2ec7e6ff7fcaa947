#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fraclattice/fbm.hpp"
#include "fraclattice/grid.hpp"

// Light-cone network sampler. Each output increment X_j is the root of a
// pairing recursion over a trapezoidal field of independent Gaussian cells
// xi(n, k): level n couples into level n-1 through
//   value(n-1, k) = m[n-1] * (value(n, k) + value(n, k+1)) + noise(n-1, k),
// so the cells influencing X_j form a cone of binomial path counts. The
// cumulative pair coefficients follow the closed form
//   cum(n)^2 = eps^{2H} * n^{H-2} / C(2n, n),
// which makes the stationary covariance of the outputs a binomial
// transform of the level profile, decaying like |lag|^{2H-2}.

namespace fraclattice {

// log C(n, k) via log-Gamma; returns -inf for k outside [0, n].
double log_binomial(std::int64_t n, std::int64_t k);

struct CoefficientTable {
  GridSpec grid;
  double level0_std = 0.0;     // noise std at level 0
  double upper_std = 0.0;      // noise std at every level n >= 1
  double output_rescale = 1.0; // overall factor applied to sampled increments

  // Pair coefficient coupling level n+1 into level n, 0 <= n < depth.
  double m_at(std::int64_t n) const;
  // log prod_{q<n} m_q; log_cumulative(0) = 0.
  double log_cumulative(std::int64_t n) const;
  double cumulative_m(std::int64_t n) const;
  double level_std(std::int64_t n) const { return n == 0 ? level0_std : upper_std; }
  std::int64_t width_at(std::int64_t n) const { return grid.n_steps + n; }

  // Populated for moderate depths so Monte Carlo loops avoid per-level
  // log-Gamma evaluations; empty means "use the closed form".
  std::vector<double> m_cache;
};

// Builds the coefficient table, including the output rescaling that pins
// the model's horizon variance to the exact sigma^2 T^{2H} (see
// raw_lag_profile). work_budget caps the O(n_steps * depth) profile sweep.
CoefficientTable coeff_table(const GridSpec& grid,
                             std::int64_t work_budget = std::int64_t{1} << 31);

// Stationary covariance of the unrescaled network outputs by lag:
//   profile[0] = level0_std^2 + upper_std^2 * sum_n cum(n)^2 C(2n, n)
//   profile[d] =                upper_std^2 * sum_n cum(n)^2 C(2n, n-d)
// (the d = 0 binomial cancellation makes each term eps^{2H} n^{H-2}).
std::vector<double> raw_lag_profile(const CoefficientTable& table);

// Exact covariance of the truncated network outputs (rescaled), a Toeplitz
// matrix assembled from raw_lag_profile.
Eigen::MatrixXd model_cov(const CoefficientTable& table);
Eigen::MatrixXd model_cov(const GridSpec& grid);

// Lazy field of unit normals xi(level, pos), reproducible in any
// evaluation order.
struct NoiseField {
  std::uint64_t key = 0;
  double unit(std::int64_t level, std::int64_t pos) const;
};

NoiseField noise_field(std::uint64_t seed, std::uint64_t sample_index = 0);

// Runs the pairing recursion top-down with rolling level buffers.
// Restricted to hurst in (1/2, 1); throws ResourceError when the cone
// holds more than cell_budget cells.
IncrementSeries sample_increments(const CoefficientTable& table,
                                  std::uint64_t seed,
                                  std::uint64_t sample_index = 0,
                                  std::int64_t cell_budget = std::int64_t{1} << 31);
IncrementSeries sample_increments(const GridSpec& grid, std::uint64_t seed);

// Closed-form weight of noise cell (level n, position k) in output j:
// cumulative_m(n) * C(n, k-j) inside the cone, 0 outside.
double weight(const CoefficientTable& table, std::int64_t j, std::int64_t k,
              std::int64_t n);

// Rebuilds the increments of sample_increments(table, seed, sample_index)
// from the weight table and the same noise field; used as the closed-form
// oracle for the recursion. Cost grows with depth^2, so keep grids small.
std::vector<double> reconstruct_from_weights(const CoefficientTable& table,
                                             std::uint64_t seed,
                                             std::uint64_t sample_index = 0);

// --- numeric identity checks -------------------------------------------

struct VandermondeCheck {
  unsigned __int128 lhs;  // sum_j C(q,j) C(q,j-n)
  unsigned __int128 rhs;  // C(2q, q-n)
};

// Exact 128-bit integer evaluation; valid for 0 <= n <= q <= 60.
VandermondeCheck verify_vandermonde(int q, int n);

std::string u128_to_string(unsigned __int128 v);

struct StirlingRatio {
  double exact;   // C(2q, q-n) / C(2q, q), log-Gamma evaluation
  double approx;  // exp(-n^2/q)
};

StirlingRatio verify_stirling_ratio(std::int64_t q, std::int64_t n);

// Discrete sum sum_{q=n}^{depth} n^{-2} exp(-n^2/q) (q/n^2)^{H-2}, which
// approaches Gamma(1-H) for large n and depth >> n^2. Large depths switch
// to an integral tail so depth = 1e9 stays cheap.
double verify_gamma_limit(std::int64_t n, std::int64_t depth, double hurst);

}  // namespace fraclattice
