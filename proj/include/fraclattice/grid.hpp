#pragma once

#include <cstdint>

namespace fraclattice {

// Discretization shared by every sampler: n_steps real-time increments of
// width eps, plus a virtual-time axis tau_n = eps*sqrt(n) truncated at
// `depth` levels. The squared virtual times are uniformly spaced:
// tau_n^2 - tau_{n-1}^2 = eps^2.
struct GridSpec {
  int n_steps = 0;          // N, number of increments
  double eps = 0.0;         // real-time step
  std::int64_t depth = 0;   // truncation level of the virtual axis
  double hurst = 0.0;       // H in (0,1)
  double sigma = 0.0;       // overall scale

  double horizon() const { return n_steps * eps; }
  double real_time(std::int64_t k) const { return static_cast<double>(k) * eps; }
  double virtual_time(std::int64_t n) const;
};

// Validates and returns a GridSpec; throws DomainError on bad input
// (hurst outside (0,1), nonpositive eps/sigma/n_steps, depth < n_steps).
GridSpec make_grid(int n_steps, double eps, std::int64_t depth, double hurst,
                   double sigma);

// Same with the default truncation depth = n_steps^2.
GridSpec make_grid(int n_steps, double eps, double hurst, double sigma);

}  // namespace fraclattice
