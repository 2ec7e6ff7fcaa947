// Acceptance harness: eight statistical and structural criteria, each
// printed as a single [PASS]/[FAIL] line with its measured numbers and
// wall time. Tolerances and runtime caps are fixed constants below. All
// criteria run even when earlier ones fail; the exit code is 1 if any
// line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fraclattice/baselines.hpp"
#include "fraclattice/fbm.hpp"
#include "fraclattice/grid.hpp"
#include "fraclattice/lightcone.hpp"
#include "fraclattice/multifractal.hpp"
#include "fraclattice/stats.hpp"
#include "fraclattice/tree.hpp"

using namespace fraclattice;

namespace {

using steady = std::chrono::steady_clock;

double elapsed(steady::time_point t0) {
  return std::chrono::duration<double>(steady::now() - t0).count();
}

struct Criterion {
  std::string name;
  double cap_seconds = 0.0;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------------
// C1: Cholesky and circulant-embedding samplers reproduce the exact fBm
// path covariance entrywise within 4 Monte Carlo standard errors, for
// H in {0.3, 0.5, 0.7} at N = 64 with 50,000 paths per configuration.
// The six configs test 12,480 distinct entries, so under the null ~0.8
// entries stray past 4 se by chance alone; the pass rule keeps the 4-se
// threshold per entry and requires the exceedance count to stay within
// chance (cap 5, false-fail < 1e-5), which any systematic covariance
// error of order one se trips immediately (~17 expected exceedances).
Criterion criterion1() {
  Criterion c;
  c.name = "C1 baseline path covariance (cholesky+circulant, H=0.3/0.5/0.7)";
  c.cap_seconds = 6 * 120.0;
  const int n = 64;
  const int m = 50'000;
  const double z_allowed = 4.0;      // entrywise |estimate - exact| / stderr
  const int exceed_cap = 5;          // chance expectation is 0.8 of 12,480
  const double config_cap = 120.0;   // seconds per (method, H) configuration

  double worst_z = 0.0, worst_config_s = 0.0;
  int n_exceed = 0, n_entries = 0;
  std::string worst_at = "-";
  for (const double hurst : {0.3, 0.5, 0.7}) {
    for (const int method : {0, 1}) {
      const auto t0 = steady::now();
      const GridSpec g = make_grid(n, 1.0, hurst, 1.0);
      const std::uint64_t seed = 2024 + 10 * static_cast<std::uint64_t>(method) +
                                 static_cast<std::uint64_t>(hurst * 10);
      std::vector<IncrementSeries> samples;
      samples.reserve(static_cast<std::size_t>(m));
      if (method == 0) {
        const CholeskySampler s(g);
        for (int i = 0; i < m; ++i)
          samples.push_back(s.sample(seed, static_cast<std::uint64_t>(i)));
      } else {
        const CirculantSampler s(g);
        for (int i = 0; i < m; i += 2) {
          auto pair = s.sample_pair(seed, static_cast<std::uint64_t>(i / 2));
          samples.push_back(std::move(pair.first));
          samples.push_back(std::move(pair.second));
        }
      }
      const CovEstimate est = empirical_path_cov(samples);
      const Eigen::MatrixXd expect = path_cov_matrix(g);
      double z = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const double zij = std::abs(est.cov(i, j) - expect(i, j)) / est.se(i, j);
          z = std::max(z, zij);
          if (zij > z_allowed) ++n_exceed;
          ++n_entries;
        }
      const double dt = elapsed(t0);
      worst_config_s = std::max(worst_config_s, dt);
      if (z > worst_z) {
        worst_z = z;
        worst_at = (method == 0 ? "cholesky H=" : "circulant H=") + fmt(hurst, 2);
      }
    }
  }
  c.pass = n_exceed <= exceed_cap && worst_config_s <= config_cap;
  c.detail = "entries past 4 se: " + std::to_string(n_exceed) + " of " +
             std::to_string(n_entries) + " (chance ~0.8, cap " +
             std::to_string(exceed_cap) + "), max|z|=" + fmt(worst_z, 3) +
             " at " + worst_at + ", m=50000/config, slowest config " +
             fmt(worst_config_s, 3) + "s (cap " + fmt(config_cap, 3) + "s)";
  return c;
}

// ---------------------------------------------------------------------
// C2: the light-cone network's truncation error at N = 16, H = 0.7 is at
// most 5% of sigma^2 T^{2H} once depth reaches N^2, and decreases
// monotonically over depths {N, N^2, 4N^2}.
Criterion criterion2() {
  Criterion c;
  c.name = "C2 light-cone truncation error decays with depth (N=16, H=0.7)";
  c.cap_seconds = 300.0;
  const int n = 16;
  const double max_mid = 0.05;  // relative error cap at depth = N^2
  const double target = std::pow(16.0, 1.4);
  std::vector<double> deltas;
  for (const std::int64_t depth : {std::int64_t{16}, std::int64_t{256}, std::int64_t{1024}}) {
    const GridSpec g = make_grid(n, 1.0, depth, 0.7, 1.0);
    deltas.push_back(truncation_error(model_cov(g), g) / target);
  }
  const bool mono = deltas[0] > deltas[1] && deltas[1] > deltas[2];
  c.pass = deltas[1] <= max_mid && mono;
  c.detail = "delta_rel(depth=16,256,1024) = " + fmt(deltas[0], 4) + ", " +
             fmt(deltas[1], 4) + ", " + fmt(deltas[2], 4) + "; mid cap " +
             fmt(max_mid, 2) + ", monotone=" + (mono ? "yes" : "no");
  return c;
}

// ---------------------------------------------------------------------
// C3: the pairing recursion agrees with the closed-form binomial weight
// reconstruction to 1e-10 on every increment, across small grids and 25
// seeds per configuration.
Criterion criterion3() {
  Criterion c;
  c.name = "C3 recursion equals closed-form weights (N=4/8, depth=8/12, 25 seeds)";
  c.cap_seconds = 10.0;
  const double tol = 1e-10;
  double worst = 0.0;
  int runs = 0;
  for (const int n : {4, 8})
    for (const std::int64_t depth : {std::int64_t{8}, std::int64_t{12}}) {
      const CoefficientTable table = coeff_table(make_grid(n, 0.5, depth, 0.7, 1.0));
      for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const IncrementSeries s = sample_increments(table, seed);
        const std::vector<double> w = reconstruct_from_weights(table, seed);
        for (std::size_t k = 0; k < w.size(); ++k)
          worst = std::max(worst, std::abs(s.increments[k] - w[k]));
        ++runs;
      }
    }
  c.pass = worst <= tol;
  c.detail = "max|recursion - weights| = " + fmt(worst, 3) + " over " +
             std::to_string(runs) + " runs (tol " + fmt(tol, 2) + ")";
  return c;
}

// ---------------------------------------------------------------------
// C4: combinatorial identities behind the covariance calculus. The
// Vandermonde convolution holds exactly in 128-bit integers for all
// q <= 60; the central-binomial ratio matches exp(-n^2/q) within 2% at
// (q,n) = (1000,5); the level sum reaches Gamma(1-H) within 1% at
// n = 1000 for H in {0.25, 0.7} once depth >> n^2.
Criterion criterion4() {
  Criterion c;
  c.name = "C4 binomial identities (Vandermonde, Stirling, Gamma limit)";
  c.cap_seconds = 10.0;
  int mismatches = 0;
  for (int q = 0; q <= 60; ++q)
    for (int n = 0; n <= q; ++n) {
      const VandermondeCheck v = verify_vandermonde(q, n);
      if (v.lhs != v.rhs) ++mismatches;
    }
  const StirlingRatio sr = verify_stirling_ratio(1000, 5);
  const double stirling_rel = std::abs(sr.exact - sr.approx) / sr.exact;
  double gamma_worst = 0.0;
  for (const double hurst : {0.25, 0.7}) {
    const double got = verify_gamma_limit(1000, std::int64_t{1'000'000'000'000'000}, hurst);
    const double want = std::tgamma(1.0 - hurst);
    gamma_worst = std::max(gamma_worst, std::abs(got - want) / want);
  }
  c.pass = mismatches == 0 && stirling_rel <= 0.02 && gamma_worst <= 0.01;
  c.detail = "vandermonde mismatches=" + std::to_string(mismatches) +
             " (of 1891), stirling rel=" + fmt(stirling_rel, 3) +
             " (cap 0.02), gamma rel=" + fmt(gamma_worst, 3) + " (cap 0.01)";
  return c;
}

// ---------------------------------------------------------------------
// C5: a tree calibrated to H = 0.83 produces sample paths whose variance
// growth exponent, fitted from 100,000 draws at N = 64, lands within
// +-0.08 of 2H = 1.66.
Criterion criterion5() {
  Criterion c;
  c.name = "C5 calibrated tree recovers the variance exponent (H=0.83, N=64)";
  c.cap_seconds = 300.0;
  const double target = 1.66;
  const double tol = 0.08;
  const GridSpec g = make_grid(64, 1.0, 0.83, 1.0);
  const auto [params, report] = calibrate(g);
  const HurstFit fit = hurst_fit_from_tree(params, 64, 100'000, 510);
  c.pass = std::abs(fit.exponent - target) <= tol;
  c.detail = "exponent=" + fmt(fit.exponent, 4) + " (target " + fmt(target, 3) +
             " +-" + fmt(tol, 2) + ", mc se " + fmt(fit.se, 2) +
             "), calibration frob=" + fmt(report.frobenius_rel_error, 3);
  return c;
}

// ---------------------------------------------------------------------
// C6: cost scaling from cold timings (construction + one draw, median of
// 3 after a discarded warm-up). Dense Cholesky must scale like a cubic
// (fitted exponent >= 2.5 over N = 512..4096); circulant embedding and
// the tree must stay quasi-linear (exponent <= 1.3 over N = 1024..65536).
Criterion criterion6() {
  Criterion c;
  c.name = "C6 cost exponents (cholesky cubic, circulant/tree quasi-linear)";
  c.cap_seconds = 900.0;
  const double min_chol = 2.5;
  const double max_fast = 1.3;
  const int reps = 3;

  auto median_cold = [&](auto&& run) {
    run(std::uint64_t{0});  // warm-up, discarded
    std::vector<double> t;
    for (int r = 1; r <= reps; ++r) {
      const auto t0 = steady::now();
      run(static_cast<std::uint64_t>(r));
      t.push_back(elapsed(t0));
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
  };
  auto slope_of = [](const std::vector<int>& sizes, const std::vector<double>& times) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      lx.push_back(std::log(static_cast<double>(sizes[i])));
      ly.push_back(std::log(std::max(times[i], 1e-9)));
    }
    return ols(lx, ly).slope;
  };

  const std::vector<int> chol_sizes = {512, 1024, 2048, 4096};
  std::vector<double> chol_t;
  for (const int n : chol_sizes)
    chol_t.push_back(median_cold([&](std::uint64_t rep) {
      const CholeskySampler s(make_grid(n, 1.0, 0.7, 1.0));
      s.sample(61, rep);
    }));
  const double chol_slope = slope_of(chol_sizes, chol_t);

  const std::vector<int> fast_sizes = {1024, 4096, 16384, 65536};
  std::vector<double> circ_t, tree_t;
  for (const int n : fast_sizes) {
    circ_t.push_back(median_cold([&](std::uint64_t rep) {
      const CirculantSampler s(make_grid(n, 1.0, 0.7, 1.0));
      s.sample(62, rep);
    }));
    tree_t.push_back(median_cold([&](std::uint64_t rep) {
      const TreeParams p = tree_init_params(make_grid(n, 1.0, 0.7, 1.0));
      tree_sample(p, 63, rep);
    }));
  }
  const double circ_slope = slope_of(fast_sizes, circ_t);
  const double tree_slope = slope_of(fast_sizes, tree_t);

  c.pass = chol_slope >= min_chol && circ_slope <= max_fast && tree_slope <= max_fast;
  c.detail = "cholesky slope=" + fmt(chol_slope, 3) + " (min " + fmt(min_chol, 2) +
             "), circulant=" + fmt(circ_slope, 3) + ", tree=" + fmt(tree_slope, 3) +
             " (max " + fmt(max_fast, 2) + ")";
  return c;
}

// ---------------------------------------------------------------------
// C7: multiplier moments. Cascade cell masses are exact; the lognormal
// multiplier is mean-one within 4 se from 100,000 draws; the moment
// identity E(Y_cT^2) = E(M_c^2) E(Y_T^2) holds within 4 se at
// lambda = 0.3, c = 1/2 with 100,000 samples per side; and lambda = 0.5
// output is leptokurtic (kurtosis above 3 by more than 4 se). The tau^{-4}
// profile keeps most of the variance at the anchored level, so the pooled
// excess is only ~+0.05 and the kurtosis check pools 1.6M increments from
// a small grid to resolve it (expected z ~ 10).
Criterion criterion7() {
  Criterion c;
  c.name = "C7 multiplier moments (cascade, mean-one, scaling identity, kurtosis)";
  c.cap_seconds = 600.0;

  const auto masses = binomial_cascade_measure(0.6, 2);
  const double want[4] = {0.36, 0.24, 0.24, 0.16};
  double mass_err = 0.0;
  for (int i = 0; i < 4; ++i) mass_err = std::max(mass_err, std::abs(masses[static_cast<std::size_t>(i)] - want[i]));

  const MultiplierProcess logn3 = lognormal_process(0.3);
  const int m_draws = 100'000;
  std::vector<double> draws(static_cast<std::size_t>(m_draws));
  for (int i = 0; i < m_draws; ++i)
    draws[static_cast<std::size_t>(i)] =
        draw_scale_multiplier(logn3, std::exp(1.0), 71, static_cast<std::uint64_t>(i));
  const MomentSummary dm = moment_summary(draws);
  const double mean_z = std::abs(dm.mean - 1.0) / dm.se_mean;

  const GridSpec g = make_grid(8, 0.25, 128, 0.7, 1.0);
  const MomentScaling ms = moment_scaling_check(g, logn3, 0.5, 2, 100'000);
  const double ms_z = std::abs(ms.lhs - ms.rhs) / ms.se;

  const GridSpec gk = make_grid(4, 0.25, 64, 0.7, 1.0);
  const MultifractalTable table = multifractal_table(gk, lognormal_process(0.5));
  const int m_kurt = 400'000;
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(m_kurt) * 4);
  for (int s = 0; s < m_kurt; ++s) {
    const IncrementSeries y =
        sample_multifractal_increments(table, 73, static_cast<std::uint64_t>(s));
    pooled.insert(pooled.end(), y.increments.begin(), y.increments.end());
  }
  const MomentSummary km = moment_summary(pooled, 64);
  const double kurt_z = (km.kurtosis - 3.0) / km.se_kurtosis;

  c.pass = mass_err <= 1e-12 && mean_z <= 4.0 && ms_z <= 4.0 && kurt_z > 4.0;
  c.detail = "cascade err=" + fmt(mass_err, 2) + " (cap 1e-12), mean-one z=" +
             fmt(mean_z, 3) + ", identity z=" + fmt(ms_z, 3) +
             " (both cap 4), kurtosis=" + fmt(km.kurtosis, 4) + " above 3 by z=" +
             fmt(kurt_z, 3) + " (min 4)";
  return c;
}

// ---------------------------------------------------------------------
// C8: the scaling spectrum. For exact fBm (circulant, H = 0.7) the ratios
// zeta(q)/q for q = 1, 2, 3 must share a common value (overlapping 95%
// confidence intervals); for the lambda = 0.5 multifractal the q = 1 and
// q = 3 intervals must be disjoint, showing a genuinely nonlinear
// spectrum. With the default tau^{-4} coefficient profile the variance
// weight concentrates at the anchored level and the lag spectrum stays
// flat to ~1e-3 per q unit, below joint-CI resolution at any budget that
// fits the cap, so the multifractal run lowers the decay-exponent knob to
// 1: that moves the cascade randomness into the lag window and separates
// q = 1 from q = 3 by ~13 se. Lags {2, 4, 8} at N = 64.
Criterion criterion8() {
  Criterion c;
  c.name = "C8 zeta(q)/q constant for fBm, nonconstant for the multifractal";
  c.cap_seconds = 300.0;
  const std::vector<double> qs = {1.0, 2.0, 3.0};
  const std::vector<int> lags = {2, 4, 8};
  const double z95 = 1.96;

  auto ratios = [&](const std::vector<IncrementSeries>& paths) {
    const auto zs = zeta_estimates(paths, qs, lags);
    std::vector<double> lo, hi, r;
    for (const auto& z : zs) {
      r.push_back(z.zeta / z.q);
      lo.push_back(z.zeta / z.q - z95 * z.se / z.q);
      hi.push_back(z.zeta / z.q + z95 * z.se / z.q);
    }
    return std::tuple(r, lo, hi);
  };

  const int m_fbm = 40'000;
  const GridSpec gf = make_grid(64, 1.0, 0.7, 1.0);
  const CirculantSampler circ(gf);
  std::vector<IncrementSeries> fbm_paths;
  fbm_paths.reserve(static_cast<std::size_t>(m_fbm));
  for (int i = 0; i < m_fbm; i += 2) {
    auto pair = circ.sample_pair(81, static_cast<std::uint64_t>(i / 2));
    fbm_paths.push_back(std::move(pair.first));
    fbm_paths.push_back(std::move(pair.second));
  }
  const auto [rf, lof, hif] = ratios(fbm_paths);
  const double max_lo = std::max({lof[0], lof[1], lof[2]});
  const double min_hi = std::min({hif[0], hif[1], hif[2]});
  const bool fbm_constant = max_lo <= min_hi;

  const int m_mf = 20'000;
  const GridSpec gm = make_grid(64, 0.25, 256, 0.7, 1.0);
  MultiplierProcess proc = lognormal_process(0.5);
  proc.virtual_decay_exponent = 1.0;
  const MultifractalTable table = multifractal_table(gm, proc);
  std::vector<IncrementSeries> mf_paths;
  mf_paths.reserve(static_cast<std::size_t>(m_mf));
  for (int i = 0; i < m_mf; ++i)
    mf_paths.push_back(sample_multifractal_increments(table, 83, static_cast<std::uint64_t>(i)));
  const auto [rm, lom, him] = ratios(mf_paths);
  const bool mf_nonconstant = lom[0] > him[2] || lom[2] > him[0];

  c.pass = fbm_constant && mf_nonconstant;
  c.detail = "fbm zeta/q=" + fmt(rf[0], 4) + "/" + fmt(rf[1], 4) + "/" + fmt(rf[2], 4) +
             " (CIs overlap=" + (fbm_constant ? "yes" : "no") + "), mf(decay=1) zeta/q=" +
             fmt(rm[0], 4) + "/" + fmt(rm[1], 4) + "/" + fmt(rm[2], 4) +
             " (q=1 vs q=3 disjoint=" + (mf_nonconstant ? "yes" : "no") + ")";
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion (*)()> runners = {criterion1, criterion2, criterion3,
                                          criterion4, criterion5, criterion6,
                                          criterion7, criterion8};
  bool all_pass = true;
  int passed = 0;
  for (auto* runner : runners) {
    const auto t0 = steady::now();
    Criterion c;
    try {
      c = runner();
    } catch (const std::exception& e) {
      c.name = "criterion threw";
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = elapsed(t0);
    if (c.cap_seconds > 0.0 && c.seconds > c.cap_seconds) {
      c.pass = false;
      c.detail += " [exceeded time cap " + fmt(c.cap_seconds, 3) + "s]";
    }
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail
              << " [" << fmt(c.seconds, 3) << "s]" << std::endl;
    all_pass = all_pass && c.pass;
    passed += c.pass ? 1 : 0;
  }
  std::cout << "acceptance: " << passed << "/" << runners.size()
            << (all_pass ? " criteria passed" : " criteria passed, FAILURES above")
            << std::endl;
  return all_pass ? 0 : 1;
}
