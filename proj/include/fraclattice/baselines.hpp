#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "fraclattice/fbm.hpp"
#include "fraclattice/grid.hpp"

// Exact-covariance reference samplers, valid for every H in (0,1):
// dense Cholesky factorization (O(N^3) setup, O(N^2) per draw) and
// circulant embedding (O(N log N) per draw). Construction performs the
// expensive setup once; instances are immutable afterwards and safe to
// share across threads.

namespace fraclattice {

class CholeskySampler {
 public:
  explicit CholeskySampler(const GridSpec& grid);
  IncrementSeries sample(std::uint64_t seed, std::uint64_t sample_index = 0) const;
  const Eigen::MatrixXd& factor() const { return lower_; }
  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  Eigen::MatrixXd lower_;
};

class CirculantSampler {
 public:
  explicit CirculantSampler(const GridSpec& grid);
  // One transform yields two independent exact paths (real and imaginary
  // parts of the complex synthesis).
  std::pair<IncrementSeries, IncrementSeries> sample_pair(
      std::uint64_t seed, std::uint64_t sample_index = 0) const;
  IncrementSeries sample(std::uint64_t seed, std::uint64_t sample_index = 0) const;
  const std::vector<double>& eigenvalues() const { return eig_; }
  std::size_t embedding_size() const { return m_; }
  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  std::size_t m_ = 0;
  std::vector<double> eig_;       // circulant eigenvalues (transform of row 0)
  std::vector<double> synth_;     // sqrt(eig / m), the synthesis amplitudes
};

// One-shot conveniences (setup + single draw).
IncrementSeries cholesky_sample(const GridSpec& grid, std::uint64_t seed);
IncrementSeries circulant_sample(const GridSpec& grid, std::uint64_t seed);

}  // namespace fraclattice
