#include <doctest.h>

#include <cmath>
#include <vector>

#include "fraclattice/baselines.hpp"
#include "fraclattice/errors.hpp"
#include "fraclattice/fbm.hpp"
#include "fraclattice/grid.hpp"
#include "fraclattice/rng.hpp"
#include "fraclattice/stats.hpp"

using namespace fraclattice;

TEST_CASE("empirical_cov on a tiny hand case") {
  // Two observations of a 2-vector: (1,2) and (3,6). Sample covariance with
  // the n-1 denominator is [[2,4],[4,8]].
  const std::vector<std::vector<double>> rows = {{1.0, 2.0}, {3.0, 6.0}};
  const CovEstimate est = empirical_cov(rows);
  CHECK(est.n_samples == 2);
  CHECK(est.cov(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(est.cov(0, 1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(est.cov(1, 1) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(est.se(0, 0) == doctest::Approx(std::sqrt(2.0 * 4.0 / 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(empirical_cov({{1.0}}), DimensionError);
  CHECK_THROWS_AS(empirical_cov({{1.0, 2.0}, {3.0}}), DimensionError);
}

TEST_CASE("increment and path covariance wrappers agree with the raw rows") {
  const GridSpec g = make_grid(6, 1.0, 0.7, 1.0);
  const CholeskySampler chol(g);
  std::vector<IncrementSeries> samples;
  std::vector<std::vector<double>> inc_rows, path_rows;
  for (int s = 0; s < 50; ++s) {
    samples.push_back(chol.sample(3, static_cast<std::uint64_t>(s)));
    inc_rows.push_back(samples.back().increments);
    path_rows.push_back(samples.back().path);
  }
  const CovEstimate a = empirical_increment_cov(samples);
  const CovEstimate b = empirical_cov(inc_rows);
  CHECK((a.cov - b.cov).cwiseAbs().maxCoeff() < 1e-14);
  const CovEstimate c = empirical_path_cov(samples);
  const CovEstimate d = empirical_cov(path_rows);
  CHECK((c.cov - d.cov).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("ols recovers an exact line") {
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y = {1.0, 3.5, 6.0, 8.5, 11.0};
  const SlopeFit fit = ols(x, y);
  CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(fit.se == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(fit.n_points == 5);
  CHECK_THROWS_AS(ols({1.0}, {2.0}), DimensionError);
  CHECK_THROWS_AS(ols({1.0, 2.0}, {2.0}), DimensionError);
}

TEST_CASE("variance growth of the deterministic path B_t = t has slope 2") {
  std::vector<IncrementSeries> paths;
  for (int s = 0; s < 3; ++s) {
    IncrementSeries p;
    p.eps = 0.5;
    p.increments.assign(16, 0.5);
    fill_path(p);
    paths.push_back(p);
  }
  const SlopeFit fit = variance_growth_fit(paths, 0.5, 8.0);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(variance_growth_fit(paths, 7.9, 8.0), RangeError);
}

TEST_CASE("structure function hand case with a virtual zero start") {
  // One path with increments {1, 2}: B = (1, 3) with B_0 = 0 implied.
  // Lag 1 differences: |1-0|, |3-1| -> S_1(1) = 1.5.
  // Lag 2 differences: |3-0|       -> S_1(2) = 3.
  IncrementSeries p;
  p.eps = 1.0;
  p.increments = {1.0, 2.0};
  fill_path(p);
  const std::vector<double> s1 = structure_function({p}, 1.0, {1, 2});
  CHECK(s1[0] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(s1[1] == doctest::Approx(3.0).epsilon(1e-14));
  const std::vector<double> s2 = structure_function({p}, 2.0, {1, 2});
  CHECK(s2[0] == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(s2[1] == doctest::Approx(9.0).epsilon(1e-14));
  // Non-integer q goes through pow and stays consistent.
  const std::vector<double> sh = structure_function({p}, 0.5, {1});
  CHECK(sh[0] == doctest::Approx(0.5 * (1.0 + std::sqrt(2.0))).epsilon(1e-13));
  CHECK_THROWS_AS(structure_function({p}, 1.0, {0}), RangeError);
  CHECK_THROWS_AS(structure_function({p}, 1.0, {3}), RangeError);
}

TEST_CASE("zeta estimates recover qH on exact fBm") {
  const GridSpec g = make_grid(64, 1.0, 0.7, 1.0);
  const CirculantSampler circ(g);
  std::vector<IncrementSeries> paths;
  const int m = 4'000;
  paths.reserve(m);
  for (int s = 0; s < m; ++s)
    paths.push_back(circ.sample(19, static_cast<std::uint64_t>(s)));
  const std::vector<int> lags = {2, 4, 8};
  const std::vector<ZetaEstimate> z = zeta_estimates(paths, {1.0, 2.0}, lags);
  REQUIRE(z.size() == 2);
  CHECK(z[0].q == 1.0);
  CHECK(std::abs(z[0].zeta - 0.7) < std::max(4.0 * z[0].se, 0.02));
  CHECK(std::abs(z[1].zeta - 1.4) < std::max(4.0 * z[1].se, 0.04));
  CHECK(z[0].se > 0.0);
  CHECK(z[0].se < 0.05);
}

TEST_CASE("stochastic integral basics") {
  IncrementSeries p;
  p.eps = 0.5;
  p.increments = {0.3, -0.1, 0.4};
  fill_path(p);
  // f = 1 telescopes to the terminal value, f = 0 kills everything.
  CHECK(stochastic_integral(p, [](double) { return 1.0; }) ==
        doctest::Approx(p.path.back()).epsilon(1e-14));
  CHECK(stochastic_integral(p, [](double) { return 0.0; }) == 0.0);
  // Linearity in f.
  const auto f = [](double t) { return t * t; };
  const auto g = [](double t) { return 1.0 - t; };
  const double lhs = stochastic_integral(p, [&](double t) { return 2.0 * f(t) + g(t); });
  const double rhs = 2.0 * stochastic_integral(p, f) + stochastic_integral(p, g);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  // Hand value: sum f(t_j) X_j with t_j = (j+1)*eps.
  const double hand = f(0.5) * 0.3 + f(1.0) * (-0.1) + f(1.5) * 0.4;
  CHECK(stochastic_integral(p, f) == doctest::Approx(hand).epsilon(1e-14));
}

TEST_CASE("integral variance matches the covariance quadratic form") {
  const GridSpec g = make_grid(8, 0.5, 0.7, 1.0);
  const CirculantSampler circ(g);
  const auto f = [](double t) { return std::sin(t); };
  const int m = 40'000;
  double s2 = 0.0;
  for (int s = 0; s < m; ++s) {
    const double v = stochastic_integral(circ.sample(29, static_cast<std::uint64_t>(s)), f);
    s2 += v * v;
  }
  const double mc = s2 / m;
  double expect = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      expect += f(g.real_time(i + 1)) * f(g.real_time(j + 1)) *
                increment_cov(i - j, g.eps, g.hurst, g.sigma);
  CHECK(std::abs(mc - expect) < 4.0 * expect * std::sqrt(2.0 / m));
}

TEST_CASE("KS test separates what it should and accepts what it should") {
  const std::uint64_t key = rng::stream_key(101, 1);
  std::vector<double> a, b, c;
  for (int i = 0; i < 2'000; ++i) {
    a.push_back(rng::normal(key, static_cast<std::uint64_t>(4 * i)));
    b.push_back(rng::normal(key, static_cast<std::uint64_t>(4 * i + 1)));
    c.push_back(3.0 + rng::normal(key, static_cast<std::uint64_t>(4 * i + 2)));
  }
  const KsResult same = ks_two_sample(a, b);
  CHECK(same.p_value > 0.01);
  CHECK(same.statistic < 0.1);
  const KsResult shifted = ks_two_sample(a, c);
  CHECK(shifted.p_value < 1e-6);
  CHECK(shifted.statistic > 0.5);
  // Identical samples give statistic 0, p ~ 1.
  const KsResult self = ks_two_sample(a, a);
  CHECK(self.statistic == 0.0);
  CHECK(self.p_value > 0.99);
  CHECK_THROWS_AS(ks_two_sample({}, a), DimensionError);
}

TEST_CASE("moment summary on a standard normal stream") {
  const std::uint64_t key = rng::stream_key(103, 1);
  std::vector<double> x;
  const int n = 100'000;
  x.reserve(n);
  for (int i = 0; i < n; ++i) x.push_back(rng::normal(key, static_cast<std::uint64_t>(i)));
  const MomentSummary m = moment_summary(x);
  CHECK(m.n == n);
  CHECK(std::abs(m.mean) < 4.0 * m.se_mean);
  CHECK(m.variance == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(m.kurtosis - 3.0) < 4.0 * m.se_kurtosis);
  CHECK(m.se_kurtosis > 0.0);
  CHECK_THROWS_AS(moment_summary({}), DimensionError);
}

TEST_CASE("batch zeta errors shrink with more data") {
  const GridSpec g = make_grid(32, 1.0, 0.5, 1.0);
  const CirculantSampler circ(g);
  std::vector<IncrementSeries> small, large;
  for (int s = 0; s < 512; ++s)
    small.push_back(circ.sample(7, static_cast<std::uint64_t>(s)));
  for (int s = 0; s < 4'096; ++s)
    large.push_back(circ.sample(7, static_cast<std::uint64_t>(s)));
  const std::vector<int> lags = {2, 4, 8};
  const auto zs = zeta_estimates(small, {2.0}, lags);
  const auto zl = zeta_estimates(large, {2.0}, lags);
  CHECK(zl[0].se < zs[0].se);
  CHECK(std::abs(zl[0].zeta - 1.0) < std::max(4.0 * zl[0].se, 0.02));
}
