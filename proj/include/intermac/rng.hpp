#pragma once

#include <cstdint>
#include <random>

namespace intermac {

// Deterministic 64-bit generator with explicit, single-owner state. Every
// randomized operation in the library takes one of these by reference;
// nothing reads global RNG state. mt19937_64 is fully specified by the
// standard, so a seed pins the byte-exact output on every platform.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : seed_(seed), gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  uint64_t seed() const { return seed_; }

  // Child generator for an independent stream (e.g. one per Monte Carlo
  // trial). Children of distinct stream ids do not share state with the
  // parent or with each other.
  SeededRng fork(uint64_t stream) const {
    uint64_t x = seed_ ^ (0x9E3779B97F4A7C15ull * (stream + 1));
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    x = x ^ (x >> 31);
    return SeededRng(x);
  }

 private:
  uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace intermac
