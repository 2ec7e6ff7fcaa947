#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fraclattice {

// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 transform; a.size() must be a power of two.
// forward uses kernel exp(-2*pi*i*jk/n); inverse applies the conjugate
// kernel and divides by n, so inverse(forward(a)) == a.
void fft(std::vector<std::complex<double>>& a, bool inverse = false);

}  // namespace fraclattice
