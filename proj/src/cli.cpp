#include "fraclattice/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fraclattice/baselines.hpp"
#include "fraclattice/errors.hpp"
#include "fraclattice/fbm.hpp"
#include "fraclattice/grid.hpp"
#include "fraclattice/io.hpp"
#include "fraclattice/lightcone.hpp"
#include "fraclattice/multifractal.hpp"
#include "fraclattice/rng.hpp"
#include "fraclattice/stats.hpp"
#include "fraclattice/tree.hpp"

namespace fraclattice {

namespace {

constexpr const char* kVersion = "0.1.0";

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("FRACLATTICE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

// Runs make(i) for i in [0, count) across a worker pool; results land in
// index order, so the output does not depend on the thread count.
template <class Fn>
std::vector<IncrementSeries> generate_ordered(int count, int threads, Fn make) {
  std::vector<IncrementSeries> out(static_cast<std::size_t>(count));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = make(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        out[static_cast<std::size_t>(i)] = make(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

struct SampleArgs {
  std::string method;
  int n = 64;
  double eps = 1.0;
  double hurst = 0.7;
  double sigma = 1.0;
  std::int64_t depth = 0;  // 0 means n^2
  std::uint64_t seed = 1;
  int count = 1;
  int threads = 0;
  std::string out;
  std::string params_file;
  std::string multiplier = "lognormal";
  double lambda = 0.5;
  double m0 = 0.6;
  int levels = 16;
  double decay = 4.0;
};

struct VerifyArgs {
  std::string suite;
  int n = 0;  // suite-specific default when 0
  double eps = 0.0;
  double hurst = 0.7;
  double sigma = 1.0;
  std::int64_t depth = 0;
  int samples = 0;
  std::uint64_t seed = 7;
  std::string out;
};

struct CalibrateArgs {
  int n = 64;
  double eps = 1.0;
  double hurst = 0.7;
  double sigma = 1.0;
  double tol = 1e-4;
  int max_iter = 200;
  bool strict = false;
  std::string out = "params.json";
};

struct BenchArgs {
  std::vector<std::string> methods = {"cholesky", "circulant", "tree"};
  std::vector<int> sizes = {256, 512, 1024, 2048};
  int reps = 5;
  std::int64_t depth = 0;  // lightcone/multifractal only; 0 means n
  std::uint64_t seed = 3;
  std::string out;
};

struct CheckRow {
  std::string name;
  std::string param;
  double value = 0.0;
  double stderr_value = 0.0;
  std::string threshold;
  bool pass = false;
};

void print_checks(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows)
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ' ' << r.param
              << " value=" << format_double(r.value) << " " << r.threshold << '\n';
}

void maybe_write_stats(const std::string& path, const std::vector<CheckRow>& rows) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw IoError("verify: cannot open " + path);
  std::vector<StatRow> stat;
  stat.reserve(rows.size());
  for (const auto& r : rows)
    stat.push_back(StatRow{r.name, r.param, r.value, r.stderr_value});
  write_stats_csv(f, stat);
}

int cmd_sample(const SampleArgs& a, const std::vector<std::string>& argv_tail) {
  if (a.method == "lightcone" && !(a.hurst > 0.5 && a.hurst < 1.0)) {
    std::cerr << "error: --method lightcone requires --hurst in the open interval "
                 "(0.5, 1); use cholesky or circulant for other H\n";
    return 2;
  }
  const std::int64_t depth =
      a.depth > 0 ? a.depth
                  : static_cast<std::int64_t>(a.n) * static_cast<std::int64_t>(a.n);
  const int threads = resolve_threads(a.threads);
  double rescale = 1.0;
  std::uint64_t multiplier_seed = 0;
  std::vector<IncrementSeries> samples;

  if (a.method == "cholesky") {
    const CholeskySampler s(make_grid(a.n, a.eps, depth, a.hurst, a.sigma));
    samples = generate_ordered(a.count, threads, [&](int i) {
      return s.sample(a.seed, static_cast<std::uint64_t>(i));
    });
  } else if (a.method == "circulant") {
    const CirculantSampler s(make_grid(a.n, a.eps, depth, a.hurst, a.sigma));
    samples = generate_ordered(a.count, threads, [&](int i) {
      auto pair = s.sample_pair(a.seed, static_cast<std::uint64_t>(i / 2));
      return (i % 2 == 0) ? std::move(pair.first) : std::move(pair.second);
    });
  } else if (a.method == "lightcone") {
    const CoefficientTable table =
        coeff_table(make_grid(a.n, a.eps, depth, a.hurst, a.sigma));
    rescale = table.output_rescale;
    samples = generate_ordered(a.count, threads, [&](int i) {
      return sample_increments(table, a.seed, static_cast<std::uint64_t>(i));
    });
  } else if (a.method == "multifractal") {
    const MultiplierProcess proc =
        a.multiplier == "cascade" ? cascade_process(a.m0, a.levels)
                                  : lognormal_process(a.lambda);
    MultiplierProcess proc2 = proc;
    proc2.virtual_decay_exponent = a.decay;
    const MultifractalTable table =
        multifractal_table(make_grid(a.n, a.eps, depth, a.hurst, a.sigma), proc2);
    multiplier_seed = rng::stream_key(a.seed, rng::kTagMultiplier, 0);
    samples = generate_ordered(a.count, threads, [&](int i) {
      return sample_multifractal_increments(table, a.seed, static_cast<std::uint64_t>(i));
    });
  } else if (a.method == "tree") {
    TreeParams params;
    if (!a.params_file.empty())
      params = load_tree_params(a.params_file);
    else
      params = tree_init_params(make_grid(a.n, a.eps, a.hurst, a.sigma));
    const int n_out = std::min(a.n, params.n_leaves);
    samples = generate_ordered(a.count, threads, [&](int i) {
      return tree_sample(params, a.seed, static_cast<std::uint64_t>(i), n_out);
    });
  } else {
    std::cerr << "error: unknown method " << a.method << '\n';
    return 2;
  }

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw IoError("sample: cannot open " + a.out);
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  if (a.method == "multifractal")
    os << "# multiplier_seed=" << multiplier_seed << '\n';
  write_paths_csv(os, samples);

  if (!a.out.empty()) {
    nlohmann::json meta;
    meta["version"] = kVersion;
    meta["command"] = "sample";
    meta["argv"] = argv_tail;
    meta["method"] = a.method;
    meta["n"] = a.n;
    meta["eps"] = a.eps;
    meta["hurst"] = a.hurst;
    meta["sigma"] = a.sigma;
    meta["depth"] = depth;
    meta["seed"] = a.seed;
    meta["count"] = a.count;
    meta["rescale"] = rescale;
    if (a.method == "multifractal") {
      meta["multiplier"] = a.multiplier;
      meta["lambda"] = a.lambda;
      meta["m0"] = a.m0;
      meta["levels"] = a.levels;
      meta["virtual_decay_exponent"] = a.decay;
      meta["multiplier_seed"] = multiplier_seed;
    }
    if (a.method == "tree" && !a.params_file.empty())
      meta["params_file"] = a.params_file;
    std::ofstream mf(a.out + ".meta.json");
    if (!mf) throw IoError("sample: cannot open " + a.out + ".meta.json");
    mf << meta.dump(2) << '\n';
  }
  return 0;
}

std::vector<CheckRow> suite_identities() {
  std::vector<CheckRow> rows;
  int mismatches = 0;
  for (int q = 0; q <= 60; ++q)
    for (int n = 0; n <= q; ++n) {
      const auto c = verify_vandermonde(q, n);
      if (c.lhs != c.rhs) ++mismatches;
    }
  rows.push_back({"vandermonde_mismatches", "q<=60", static_cast<double>(mismatches),
                  0.0, "expect=0", mismatches == 0});

  const auto sr = verify_stirling_ratio(1000, 5);
  const double srel = std::abs(sr.exact - sr.approx) / sr.exact;
  rows.push_back({"stirling_rel_error", "q=1000;n=5", srel, 0.0, "max=0.02",
                  srel <= 0.02});

  // Depth must dwarf n^2 for the slow gamma tail (mass ~ (n^2/depth)^{1-H})
  // to drop below the 1% gate; the integral fallback keeps this cheap.
  for (double h : {0.25, 0.7}) {
    const double got = verify_gamma_limit(1000, std::int64_t{1'000'000'000'000'000}, h);
    const double want = std::tgamma(1.0 - h);
    const double rel = std::abs(got - want) / want;
    std::ostringstream p;
    p << "n=1000;H=" << h;
    rows.push_back({"gamma_limit_rel_error", p.str(), rel, 0.0, "max=0.01",
                    rel <= 0.01});
  }
  return rows;
}

std::vector<CheckRow> suite_covariance(const VerifyArgs& a) {
  const int n = a.n > 0 ? a.n : 16;
  const double eps = a.eps > 0 ? a.eps : 1.0;
  const std::int64_t d =
      a.depth > 0 ? a.depth : static_cast<std::int64_t>(n) * n;
  std::vector<CheckRow> rows;
  const double target =
      a.sigma * a.sigma * std::pow(n * eps, 2.0 * a.hurst);
  std::vector<double> deltas;
  for (std::int64_t depth : {static_cast<std::int64_t>(n), d, 4 * d}) {
    const GridSpec g = make_grid(n, eps, depth, a.hurst, a.sigma);
    const double delta = truncation_error(model_cov(g), g);
    deltas.push_back(delta);
    std::ostringstream p;
    p << "depth=" << depth;
    rows.push_back({"truncation_delta_rel", p.str(), delta / target, 0.0,
                    "report", true});
  }
  rows[1].threshold = "max=0.05";
  rows[1].pass = rows[1].value <= 0.05;
  const bool mono = deltas[0] > deltas[1] && deltas[1] > deltas[2];
  rows.push_back({"truncation_delta_monotone", "depths=n,d,4d", mono ? 1.0 : 0.0,
                  0.0, "expect=1", mono});
  return rows;
}

std::vector<CheckRow> suite_scaling(const VerifyArgs& a) {
  const int n = a.n > 0 ? a.n : 256;
  const double eps = a.eps > 0 ? a.eps : 1.0;
  const int m = a.samples > 0 ? a.samples : 20'000;
  const GridSpec g = make_grid(n, eps, a.hurst, a.sigma);
  const CirculantSampler sampler(g);
  std::vector<IncrementSeries> paths(static_cast<std::size_t>(m));
  for (int i = 0; i < m; i += 2) {
    auto pair = sampler.sample_pair(a.seed, static_cast<std::uint64_t>(i / 2));
    paths[static_cast<std::size_t>(i)] = std::move(pair.first);
    if (i + 1 < m) paths[static_cast<std::size_t>(i + 1)] = std::move(pair.second);
  }

  std::vector<CheckRow> rows;
  const SlopeFit fit =
      variance_growth_fit(paths, g.horizon() / 8.0, g.horizon());
  std::ostringstream p;
  p << "H=" << a.hurst << ";n=" << n << ";m=" << m;
  rows.push_back({"variance_growth_exponent", p.str(), fit.slope, fit.se,
                  "target=" + format_double(2.0 * a.hurst) + ";tol=0.05",
                  std::abs(fit.slope - 2.0 * a.hurst) <= 0.05});

  std::vector<int> lags;
  for (int lag = 2; lag <= n / 8; lag *= 2) lags.push_back(lag);
  const auto zetas = zeta_estimates(paths, {1.0, 2.0, 3.0}, lags);
  for (const auto& z : zetas) {
    std::ostringstream zp;
    zp << "q=" << z.q;
    rows.push_back({"zeta_exponent", zp.str(), z.zeta, z.se,
                    "target=" + format_double(z.q * a.hurst) + ";tol=0.05",
                    std::abs(z.zeta - z.q * a.hurst) <= 0.05});
  }
  return rows;
}

std::vector<CheckRow> suite_multifractal(const VerifyArgs& a) {
  std::vector<CheckRow> rows;

  const auto masses = binomial_cascade_measure(0.6, 2);
  const std::vector<double> want = {0.36, 0.24, 0.24, 0.16};
  double worst = 0.0;
  for (std::size_t i = 0; i < want.size(); ++i)
    worst = std::max(worst, std::abs(masses[i] - want[i]));
  rows.push_back({"cascade_mass_error", "m0=0.6;levels=2", worst, 0.0,
                  "max=1e-12", worst <= 1e-12});

  const MultiplierProcess logn = lognormal_process(0.3);
  const int m_draws = 100'000;
  double mean = 0.0, var = 0.0;
  std::vector<double> draws(static_cast<std::size_t>(m_draws));
  for (int i = 0; i < m_draws; ++i) {
    draws[static_cast<std::size_t>(i)] = draw_scale_multiplier(
        logn, std::exp(1.0), a.seed, static_cast<std::uint64_t>(i));
    mean += draws[static_cast<std::size_t>(i)];
  }
  mean /= m_draws;
  for (double d : draws) var += (d - mean) * (d - mean);
  var /= (m_draws - 1);
  const double se = std::sqrt(var / m_draws);
  rows.push_back({"lognormal_mean", "lambda=0.3;scale=e", mean, se,
                  "target=1;tol=4se", std::abs(mean - 1.0) <= 4.0 * se});

  const int n = a.n > 0 ? a.n : 16;
  const double eps = a.eps > 0 ? a.eps : 0.25;
  const std::int64_t depth = a.depth > 0 ? a.depth : 256;
  const int m = std::max(10'000, a.samples);
  const GridSpec g = make_grid(n, eps, depth, 0.7, a.sigma);
  const MomentScaling ms = moment_scaling_check(g, logn, 0.5, 2, m, a.seed);
  std::ostringstream p;
  p << "lambda=0.3;c=0.5;order=2;m=" << m;
  rows.push_back({"moment_scaling_gap", p.str(), ms.lhs - ms.rhs, ms.se,
                  "tol=4se", std::abs(ms.lhs - ms.rhs) <= 4.0 * ms.se});
  return rows;
}

int cmd_verify(const VerifyArgs& a) {
  std::vector<CheckRow> rows;
  if (a.suite == "identities")
    rows = suite_identities();
  else if (a.suite == "covariance")
    rows = suite_covariance(a);
  else if (a.suite == "scaling")
    rows = suite_scaling(a);
  else if (a.suite == "multifractal")
    rows = suite_multifractal(a);
  else {
    std::cerr << "error: unknown suite " << a.suite << '\n';
    return 2;
  }
  print_checks(rows);
  maybe_write_stats(a.out, rows);
  const bool all = std::all_of(rows.begin(), rows.end(),
                               [](const CheckRow& r) { return r.pass; });
  return all ? 0 : 1;
}

int cmd_calibrate(const CalibrateArgs& a) {
  if (a.n < 2 || (a.n & (a.n - 1)) != 0) {
    std::cerr << "error: --n must be a power of two (got " << a.n << ")\n";
    return 2;
  }
  const GridSpec g = make_grid(a.n, a.eps, a.hurst, a.sigma);
  auto [params, report] = calibrate(g, a.max_iter, a.tol);
  save_tree_params(params, a.out);
  std::cout << "calibrate n=" << a.n << " hurst=" << a.hurst
            << " frobenius_rel_error=" << format_double(report.frobenius_rel_error)
            << " iterations=" << report.iterations
            << " converged=" << (report.converged ? "true" : "false") << '\n'
            << "params written to " << a.out << '\n';
  if (a.strict && !report.converged) return 1;
  return 0;
}

int cmd_bench(const BenchArgs& a) {
  using clock = std::chrono::steady_clock;
  struct Row {
    std::string method;
    int n;
    double median;
  };
  std::vector<Row> rows;

  for (const auto& method : a.methods) {
    for (int n : a.sizes) {
      const std::int64_t depth =
          a.depth > 0 ? a.depth : static_cast<std::int64_t>(n);
      auto cold_run = [&](std::uint64_t rep) {
        if (method == "cholesky") {
          const CholeskySampler s(make_grid(n, 1.0, n, 0.7, 1.0));
          s.sample(a.seed, rep);
        } else if (method == "circulant") {
          const CirculantSampler s(make_grid(n, 1.0, n, 0.7, 1.0));
          s.sample(a.seed, rep);
        } else if (method == "tree") {
          const TreeParams p = tree_init_params(make_grid(n, 1.0, n, 0.7, 1.0));
          tree_sample(p, a.seed, rep);
        } else if (method == "lightcone") {
          const CoefficientTable t = coeff_table(make_grid(n, 1.0, depth, 0.7, 1.0));
          sample_increments(t, a.seed, rep);
        } else if (method == "multifractal") {
          const MultifractalTable t = multifractal_table(
              make_grid(n, 1.0, depth, 0.7, 1.0), lognormal_process(0.3));
          sample_multifractal_increments(t, a.seed, rep);
        } else {
          throw DomainError("bench: unknown method " + method);
        }
      };
      cold_run(0);  // warm-up, discarded
      std::vector<double> times;
      times.reserve(static_cast<std::size_t>(a.reps));
      for (int r = 0; r < a.reps; ++r) {
        const auto t0 = clock::now();
        cold_run(static_cast<std::uint64_t>(r) + 1);
        const auto t1 = clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      rows.push_back({method, n, times[times.size() / 2]});
    }
  }

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw IoError("bench: cannot open " + a.out);
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  os << "method,n,median_seconds\n";
  for (const auto& r : rows)
    os << r.method << ',' << r.n << ',' << format_double(r.median) << '\n';

  // Fitted cost exponents; left empty when a single size gives no slope.
  std::cout << "method,slope\n";
  for (const auto& method : a.methods) {
    std::vector<double> lx, ly;
    for (const auto& r : rows)
      if (r.method == method) {
        lx.push_back(std::log(static_cast<double>(r.n)));
        ly.push_back(std::log(std::max(r.median, 1e-9)));
      }
    std::cout << method << ',';
    if (lx.size() >= 2) std::cout << format_double(ols(lx, ly).slope);
    std::cout << '\n';
  }
  return 0;
}

std::string check_open_unit_interval(const std::string& s) {
  try {
    const double v = std::stod(s);
    if (!(v > 0.0 && v < 1.0))
      return "hurst must lie in the open interval (0,1)";
  } catch (const std::exception&) {
    return "hurst must be a real number in the open interval (0,1)";
  }
  return {};
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"fraclattice: fractional Brownian motion and multifractal "
               "cascade sampling with statistical verification"};
  app.footer(
      "Defaults may come from --config (key=value lines, [subcommand] "
      "sections); explicit flags override the config file. When --threads is "
      "absent, the FRACLATTICE_THREADS environment variable is consulted.\n"
      "Exit codes: 0 success, 1 verification failure, 2 usage error, 3 "
      "runtime/sampler error.");
  app.set_config("--config", "", "Read option defaults from a key=value file");
  app.require_subcommand(0, 1);
  const CLI::Validator hurst_check(check_open_unit_interval, "HURST");

  SampleArgs sa;
  CLI::App* sample = app.add_subcommand("sample", "Draw paths and write CSV");
  sample->add_option("--method", sa.method, "Sampler backend")
      ->required()
      ->check(CLI::IsMember({"lightcone", "cholesky", "circulant", "tree",
                             "multifractal"}));
  sample->add_option("--n", sa.n, "Number of increments")->check(CLI::PositiveNumber);
  sample->add_option("--eps", sa.eps, "Time step")->check(CLI::PositiveNumber);
  sample->add_option("--hurst", sa.hurst, "Hurst index in (0,1)")->check(hurst_check);
  sample->add_option("--sigma", sa.sigma, "Scale")->check(CLI::PositiveNumber);
  sample->add_option("--depth", sa.depth, "Virtual-axis truncation (default n^2)");
  sample->add_option("--seed", sa.seed, "Random seed");
  sample->add_option("--count", sa.count, "Number of paths")->check(CLI::PositiveNumber);
  sample->add_option("--threads", sa.threads, "Worker threads (0 = env/1)");
  sample->add_option("--out", sa.out, "Output CSV path (default stdout)");
  sample->add_option("--params", sa.params_file, "Tree parameter JSON (method tree)");
  sample->add_option("--multiplier", sa.multiplier, "Multiplier process")
      ->check(CLI::IsMember({"lognormal", "cascade"}));
  sample->add_option("--lambda", sa.lambda, "Lognormal volatility");
  sample->add_option("--m0", sa.m0, "Cascade left-cell mass");
  sample->add_option("--levels", sa.levels, "Cascade depth");
  sample->add_option("--decay-exponent", sa.decay,
                     "Deterministic tau^{-a} profile exponent");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", va.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"identities", "covariance", "scaling", "multifractal"}));
  verify->add_option("--n", va.n, "Grid size override");
  verify->add_option("--eps", va.eps, "Time step override");
  verify->add_option("--hurst", va.hurst, "Hurst index in (0,1)")->check(hurst_check);
  verify->add_option("--sigma", va.sigma, "Scale")->check(CLI::PositiveNumber);
  verify->add_option("--depth", va.depth, "Virtual-axis truncation");
  verify->add_option("--samples", va.samples, "Monte Carlo sample count");
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_option("--out", va.out, "Also write rows as stats CSV");

  CalibrateArgs ca;
  CLI::App* calib = app.add_subcommand("calibrate", "Fit tree parameters to fBm");
  calib->add_option("--n", ca.n, "Leaf count (power of two)")->required();
  calib->add_option("--eps", ca.eps, "Time step")->check(CLI::PositiveNumber);
  calib->add_option("--hurst", ca.hurst, "Hurst index in (0,1)")
      ->required()
      ->check(hurst_check);
  calib->add_option("--sigma", ca.sigma, "Scale")->check(CLI::PositiveNumber);
  calib->add_option("--tol", ca.tol, "Relative Frobenius target");
  calib->add_option("--max-iter", ca.max_iter, "Coordinate-descent sweep cap");
  calib->add_flag("--strict", ca.strict, "Exit 1 when not converged");
  calib->add_option("--out", ca.out, "Parameter JSON path");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Time cold setup + one draw");
  bench->add_option("--methods", ba.methods, "Methods to time")->delimiter(',');
  bench->add_option("--sizes", ba.sizes, "Grid sizes")->delimiter(',');
  bench->add_option("--reps", ba.reps, "Timed repetitions (median reported)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--depth", ba.depth, "Truncation for lightcone/multifractal");
  bench->add_option("--seed", ba.seed, "Random seed");
  bench->add_option("--out", ba.out, "Output CSV path (default stdout)");

  std::vector<std::string> argv_tail;
  for (int i = 1; i < argc; ++i) argv_tail.emplace_back(argv[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sample->parsed()) return cmd_sample(sa, argv_tail);
    if (verify->parsed()) return cmd_verify(va);
    if (calib->parsed()) return cmd_calibrate(ca);
    if (bench->parsed()) return cmd_bench(ba);
    std::cout << app.help();
    return 0;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace fraclattice
