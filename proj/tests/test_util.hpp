#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

// Helpers shared by the test suites. Everything here recomputes results
// through a route independent of the library code it checks.

namespace testutil {

// Schoolbook double-and-add product mod m; no 128-bit intermediates, so it
// cross-checks the library's reduction path.
inline uint64_t peasant_mulmod(uint64_t a, uint64_t b, uint64_t m) {
  uint64_t acc = 0;
  a %= m;
  while (b > 0) {
    if (b & 1) {
      acc += a;
      if (acc >= m) acc -= m;
    }
    a += a;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return acc;
}

// |count - n*p| <= sigmas * sqrt(n*p*(1-p)) for a binomial count.
inline bool within_sigma(uint64_t count, uint64_t n, double p, double sigmas) {
  double mean = static_cast<double>(n) * p;
  double sigma = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  return std::abs(static_cast<double>(count) - mean) <= sigmas * sigma;
}

}  // namespace testutil
