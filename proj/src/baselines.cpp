#include "fraclattice/baselines.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "fraclattice/errors.hpp"
#include "fraclattice/fft.hpp"
#include "fraclattice/rng.hpp"

namespace fraclattice {

CholeskySampler::CholeskySampler(const GridSpec& grid) : grid_(grid) {
  Eigen::LLT<Eigen::MatrixXd> llt(increment_cov_matrix(grid));
  if (llt.info() != Eigen::Success)
    throw FactorizationError(
        "CholeskySampler: increment covariance failed Cholesky factorization "
        "(matrix not positive definite)");
  lower_ = llt.matrixL();
}

IncrementSeries CholeskySampler::sample(std::uint64_t seed,
                                        std::uint64_t sample_index) const {
  const int n = grid_.n_steps;
  const std::uint64_t key =
      rng::stream_key(seed, rng::kTagCholesky, sample_index);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z(i) = rng::normal(key, static_cast<std::uint64_t>(i));
  const Eigen::VectorXd x = lower_.triangularView<Eigen::Lower>() * z;
  IncrementSeries out;
  out.eps = grid_.eps;
  out.increments.assign(x.data(), x.data() + n);
  fill_path(out);
  return out;
}

CirculantSampler::CirculantSampler(const GridSpec& grid) : grid_(grid) {
  const int n = grid.n_steps;
  m_ = next_pow2(static_cast<std::size_t>(std::max(2, 2 * (n - 1))));
  // First row of the circulant extension of the Toeplitz covariance; the
  // stationary fGn covariance is valid at every lag, so the wrapped row
  // c_k = cov(min(k, m-k)) is a genuine covariance on the cycle.
  std::vector<std::complex<double>> row(m_);
  for (std::size_t k = 0; k < m_; ++k) {
    const std::size_t lag = std::min(k, m_ - k);
    row[k] = increment_cov(static_cast<std::int64_t>(lag), grid.eps,
                           grid.hurst, grid.sigma);
  }
  fft(row);
  eig_.resize(m_);
  synth_.resize(m_);
  double max_eig = 0.0;
  for (std::size_t j = 0; j < m_; ++j) {
    eig_[j] = row[j].real();
    max_eig = std::max(max_eig, eig_[j]);
  }
  const double tol = 1e-9 * max_eig;
  for (std::size_t j = 0; j < m_; ++j) {
    if (eig_[j] < -tol)
      throw EmbeddingError(
          "CirculantSampler: embedding eigenvalue " + std::to_string(eig_[j]) +
          " is materially negative; refusing to clip");
    synth_[j] = std::sqrt(std::max(eig_[j], 0.0) / static_cast<double>(m_));
  }
}

std::pair<IncrementSeries, IncrementSeries> CirculantSampler::sample_pair(
    std::uint64_t seed, std::uint64_t sample_index) const {
  const std::uint64_t key =
      rng::stream_key(seed, rng::kTagCirculant, sample_index);
  std::vector<std::complex<double>> w(m_);
  for (std::size_t j = 0; j < m_; ++j)
    w[j] = synth_[j] * std::complex<double>(
                           rng::normal(key, 2 * j), rng::normal(key, 2 * j + 1));
  fft(w);
  const int n = grid_.n_steps;
  IncrementSeries a, b;
  a.eps = b.eps = grid_.eps;
  a.increments.resize(static_cast<std::size_t>(n));
  b.increments.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    a.increments[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k)].real();
    b.increments[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k)].imag();
  }
  fill_path(a);
  fill_path(b);
  return {std::move(a), std::move(b)};
}

IncrementSeries CirculantSampler::sample(std::uint64_t seed,
                                         std::uint64_t sample_index) const {
  return sample_pair(seed, sample_index).first;
}

IncrementSeries cholesky_sample(const GridSpec& grid, std::uint64_t seed) {
  return CholeskySampler(grid).sample(seed);
}

IncrementSeries circulant_sample(const GridSpec& grid, std::uint64_t seed) {
  return CirculantSampler(grid).sample(seed);
}

}  // namespace fraclattice
