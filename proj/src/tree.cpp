#include "fraclattice/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fraclattice/errors.hpp"
#include "fraclattice/fft.hpp"
#include "fraclattice/rng.hpp"
#include "fraclattice/stats.hpp"

namespace fraclattice {

namespace {

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int log2_int(int n) {
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

void validate_params(const TreeParams& p) {
  if (!is_pow2(p.n_leaves)) throw DimensionError("tree: n_leaves must be a power of two");
  if (static_cast<int>(p.levels.size()) != log2_int(p.n_leaves) + 1)
    throw DimensionError("tree: need log2(n_leaves)+1 levels");
  for (const auto& l : p.levels)
    if (!(l.noise_std > 0.0) || !std::isfinite(l.noise_std) ||
        !std::isfinite(l.pass_coeff) || !std::isfinite(l.mix_coeff))
      throw DomainError("tree: layer parameters must be finite with noise_std > 0");
}

// Parent-to-child map at child level lev: (n_child x n_child/2).
Eigen::MatrixXd child_map(int n_child, double pass, double mix) {
  const int n_par = n_child / 2;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_child, n_par);
  for (int i = 0; i < n_child; ++i) {
    const int p = i / 2;
    m(i, p) = pass;
    const int nb = (i % 2 == 0) ? p - 1 : p + 1;
    if (nb >= 0 && nb < n_par) m(i, nb) = mix;
  }
  return m;
}

double frob_rel(const TreeParams& p, const Eigen::MatrixXd& target) {
  return (tree_model_cov(p) - target).norm() / target.norm();
}

// Golden-section minimum of f on [a, b]; returns the bracket midpoint.
template <class F>
double golden_min(F f, double a, double b, double tol = 1e-4, int iters = 40) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a >= tol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TreeParams tree_init_params(const GridSpec& grid) {
  if (grid.n_steps < 1 || !(grid.eps > 0.0) || !(grid.sigma > 0.0) ||
      !(grid.hurst > 0.0 && grid.hurst < 1.0))
    throw DomainError("tree_init_params: invalid grid");
  TreeParams p;
  p.n_leaves = static_cast<int>(next_pow2(static_cast<std::size_t>(grid.n_steps)));
  p.hurst = grid.hurst;
  p.sigma = grid.sigma;
  p.eps = grid.eps;
  const int depth = log2_int(p.n_leaves);
  p.levels.resize(static_cast<std::size_t>(depth) + 1);
  for (int l = 0; l <= depth; ++l) {
    auto& layer = p.levels[static_cast<std::size_t>(l)];
    layer.level = l;
    if (grid.hurst > 0.5) {
      layer.pass_coeff = 1.0;
      layer.mix_coeff = 0.0;
      layer.noise_std = grid.sigma * std::pow(grid.eps, grid.hurst) *
                        std::pow(2.0, static_cast<double>(l) * (grid.hurst - 1.0));
    } else {
      layer.pass_coeff = 0.0;
      layer.mix_coeff = 0.0;
      layer.noise_std = 1.0;
    }
  }
  return p;
}

Eigen::MatrixXd tree_model_cov(const TreeParams& params) {
  validate_params(params);
  const int n = params.n_leaves;
  const int depth = params.depth();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (int lev = 0; lev <= depth; ++lev) {
    const double s = params.levels[static_cast<std::size_t>(lev)].noise_std;
    cov.noalias() += s * s * (a * a.transpose());
    if (lev < depth)
      a = a * child_map(n >> lev, params.levels[static_cast<std::size_t>(lev)].pass_coeff,
                        params.levels[static_cast<std::size_t>(lev)].mix_coeff);
  }
  return cov;
}

std::pair<TreeParams, CalibrationReport> calibrate(const GridSpec& grid,
                                                   int max_iter, double tol) {
  if (max_iter < 0) throw DomainError("calibrate: max_iter must be >= 0");
  TreeParams params = tree_init_params(grid);
  const int depth = params.depth();
  const Eigen::MatrixXd target = increment_cov_matrix(
      GridSpec{params.n_leaves, grid.eps, grid.depth, grid.hurst, grid.sigma});

  double best = frob_rel(params, target);
  int sweeps = 0;
  int rises = 0;
  while (sweeps < max_iter && !(best <= tol)) {
    ++sweeps;
    bool improved = false;
    for (int lev = 0; lev <= depth; ++lev) {
      // Coordinates with no effect on the covariance are skipped: the
      // root has no parent link and mixing needs at least two parents.
      for (int pi = 0; pi < 3; ++pi) {
        if (pi == 0 && lev > depth - 1) continue;
        if (pi == 1 && lev > depth - 2) continue;
        auto& layer = params.levels[static_cast<std::size_t>(lev)];
        double* coord = pi == 0 ? &layer.pass_coeff
                        : pi == 1 ? &layer.mix_coeff
                                  : &layer.noise_std;
        const double cur = *coord;
        const double span = std::max(0.5, std::abs(cur));
        const double lo = (pi == 2) ? std::max(1e-9, cur - span) : cur - span;
        const double hi = cur + span;
        auto f = [&](double x) {
          *coord = x;
          return frob_rel(params, target);
        };
        const double x = golden_min(f, lo, hi);
        *coord = x;
        const double e = frob_rel(params, target);
        if (e < best - 1e-12) {
          if (e > best + 1e-9 && ++rises > 5)
            throw ConvergenceError("calibrate: accepted objective increased repeatedly");
          best = e;
          improved = true;
        } else {
          *coord = cur;
        }
      }
    }
    if (!improved) break;
  }

  CalibrationReport report;
  report.target = target;
  report.achieved = tree_model_cov(params);
  report.frobenius_rel_error = best;
  report.iterations = sweeps;
  report.converged = best <= tol;
  params.frobenius_rel_error = best;
  return {std::move(params), std::move(report)};
}

IncrementSeries tree_sample(const TreeParams& params, std::uint64_t seed,
                            std::uint64_t sample_index, int n_leaves,
                            std::uint64_t* op_count) {
  validate_params(params);
  if (n_leaves == 0) n_leaves = params.n_leaves;
  if (n_leaves < 1 || n_leaves > params.n_leaves)
    throw DimensionError("tree_sample: n_leaves outside [1, tree width]");
  const int depth = params.depth();
  const std::uint64_t key = rng::stream_key(seed, rng::kTagTree, sample_index);
  std::uint64_t ops = 0;

  std::vector<double> par(1), cur;
  par[0] = params.levels[static_cast<std::size_t>(depth)].noise_std *
           rng::normal(key, static_cast<std::uint64_t>(depth) << 32);
  ++ops;
  for (int lev = depth - 1; lev >= 0; --lev) {
    const auto& layer = params.levels[static_cast<std::size_t>(lev)];
    const int n = params.n_leaves >> lev;
    const int n_par = n / 2;
    cur.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const int p = i / 2;
      const int nb = (i % 2 == 0) ? p - 1 : p + 1;
      double v = layer.pass_coeff * par[static_cast<std::size_t>(p)];
      if (nb >= 0 && nb < n_par) v += layer.mix_coeff * par[static_cast<std::size_t>(nb)];
      v += layer.noise_std *
           rng::normal(key, (static_cast<std::uint64_t>(lev) << 32) |
                                static_cast<std::uint64_t>(i));
      cur[static_cast<std::size_t>(i)] = v;
      ops += 3;
    }
    std::swap(par, cur);
  }

  if (op_count) *op_count = ops;
  IncrementSeries out;
  out.eps = params.eps;
  out.increments.assign(par.begin(), par.begin() + n_leaves);
  fill_path(out);
  return out;
}

HurstFit hurst_fit_from_tree(const TreeParams& params, int n_leaves,
                             int n_samples, std::uint64_t seed, int n_batches) {
  if (n_leaves == 0) n_leaves = params.n_leaves;
  if (n_leaves < 8) throw DimensionError("hurst_fit_from_tree: need at least 8 leaves");
  if (n_batches < 2 || n_samples < 2 * n_batches)
    throw DomainError("hurst_fit_from_tree: need at least 2 samples per batch");
  const std::vector<int> ks = {n_leaves / 8, n_leaves / 4, n_leaves / 2, n_leaves};
  std::vector<double> lx;
  lx.reserve(ks.size());
  for (int k : ks) lx.push_back(std::log(static_cast<double>(k) * params.eps));

  const int per_batch = n_samples / n_batches;
  std::vector<std::vector<double>> batch_v(
      static_cast<std::size_t>(n_batches), std::vector<double>(ks.size(), 0.0));
  for (int b = 0; b < n_batches; ++b)
    for (int i = 0; i < per_batch; ++i) {
      const IncrementSeries s = tree_sample(
          params, seed, static_cast<std::uint64_t>(b) * per_batch + i, n_leaves);
      for (std::size_t j = 0; j < ks.size(); ++j) {
        const double v = s.path[static_cast<std::size_t>(ks[j] - 1)];
        batch_v[static_cast<std::size_t>(b)][j] += v * v;
      }
    }

  std::vector<double> slopes;
  slopes.reserve(static_cast<std::size_t>(n_batches));
  std::vector<double> pooled(ks.size(), 0.0);
  for (int b = 0; b < n_batches; ++b) {
    std::vector<double> ly(ks.size());
    for (std::size_t j = 0; j < ks.size(); ++j) {
      pooled[j] += batch_v[static_cast<std::size_t>(b)][j];
      ly[j] = std::log(batch_v[static_cast<std::size_t>(b)][j] / per_batch);
    }
    slopes.push_back(ols(lx, ly).slope);
  }
  std::vector<double> ly(ks.size());
  for (std::size_t j = 0; j < ks.size(); ++j)
    ly[j] = std::log(pooled[j] / (static_cast<double>(per_batch) * n_batches));

  HurstFit fit;
  fit.exponent = ols(lx, ly).slope;
  double m = 0, v = 0;
  for (double s : slopes) m += s;
  m /= static_cast<double>(n_batches);
  for (double s : slopes) v += (s - m) * (s - m);
  fit.se = std::sqrt(v / (n_batches - 1) / n_batches);
  return fit;
}

double hurst_fit_from_cov(const TreeParams& params) {
  const int n = params.n_leaves;
  if (n < 8) throw DimensionError("hurst_fit_from_cov: need at least 8 leaves");
  const Eigen::MatrixXd cov = tree_model_cov(params);
  std::vector<double> lx, ly;
  for (int k : {n / 8, n / 4, n / 2, n}) {
    lx.push_back(std::log(static_cast<double>(k) * params.eps));
    ly.push_back(std::log(cov.topLeftCorner(k, k).sum()));
  }
  return ols(lx, ly).slope;
}

std::string tree_params_to_json(const TreeParams& params) {
  nlohmann::json j;
  j["hurst"] = params.hurst;
  j["n_leaves"] = params.n_leaves;
  j["eps"] = params.eps;
  j["sigma"] = params.sigma;
  j["frobenius_rel_error"] = params.frobenius_rel_error;
  j["levels"] = nlohmann::json::array();
  for (const auto& l : params.levels)
    j["levels"].push_back({{"level", l.level},
                           {"pass_coeff", l.pass_coeff},
                           {"mix_coeff", l.mix_coeff},
                           {"noise_std", l.noise_std}});
  return j.dump(2);
}

TreeParams tree_params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("tree params: invalid JSON: ") + e.what());
  }
  TreeParams p;
  try {
    p.hurst = j.at("hurst").get<double>();
    p.n_leaves = j.at("n_leaves").get<int>();
    p.eps = j.at("eps").get<double>();
    p.sigma = j.at("sigma").get<double>();
    p.frobenius_rel_error = j.value("frobenius_rel_error", 0.0);
    for (const auto& jl : j.at("levels")) {
      TreeLayerParams l;
      l.level = jl.at("level").get<int>();
      l.pass_coeff = jl.at("pass_coeff").get<double>();
      l.mix_coeff = jl.at("mix_coeff").get<double>();
      l.noise_std = jl.at("noise_std").get<double>();
      p.levels.push_back(l);
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("tree params: missing or malformed field: ") + e.what());
  }
  validate_params(p);
  return p;
}

void save_tree_params(const TreeParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_tree_params: cannot open " + path);
  out << tree_params_to_json(params) << '\n';
  if (!out) throw IoError("save_tree_params: write failed for " + path);
}

TreeParams load_tree_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_tree_params: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return tree_params_from_json(ss.str());
}

}  // namespace fraclattice
