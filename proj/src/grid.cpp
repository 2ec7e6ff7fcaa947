#include "fraclattice/grid.hpp"

#include <cmath>
#include <string>

#include "fraclattice/errors.hpp"

namespace fraclattice {

double GridSpec::virtual_time(std::int64_t n) const {
  return eps * std::sqrt(static_cast<double>(n));
}

GridSpec make_grid(int n_steps, double eps, std::int64_t depth, double hurst,
                   double sigma) {
  if (n_steps < 1) throw DomainError("make_grid: n_steps must be >= 1");
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw DomainError("make_grid: eps must be finite and positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError("make_grid: sigma must be finite and positive");
  if (!(hurst > 0.0 && hurst < 1.0))
    throw DomainError("make_grid: hurst must lie in the open interval (0,1)");
  if (depth < n_steps)
    throw DomainError("make_grid: depth " + std::to_string(depth) +
                      " < n_steps " + std::to_string(n_steps) +
                      " (circuit shallower than the sample length)");
  return GridSpec{n_steps, eps, depth, hurst, sigma};
}

GridSpec make_grid(int n_steps, double eps, double hurst, double sigma) {
  const std::int64_t depth =
      static_cast<std::int64_t>(n_steps) * static_cast<std::int64_t>(n_steps);
  return make_grid(n_steps, eps, depth, hurst, sigma);
}

}  // namespace fraclattice
