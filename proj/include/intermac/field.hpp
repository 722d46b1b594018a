#pragma once

#include <cstdint>

#include "intermac/rng.hpp"

namespace intermac {

// Largest supported modulus is < 2^62 so that any product of two canonical
// values fits a 128-bit intermediate.
inline constexpr uint64_t kMaxModulusBits = 62;

// 2^61 - 1, the production default.
inline constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

bool is_prime_u64(uint64_t n);

// Prime modulus q, carried by value next to every element. Primality is
// checked once at construction (deterministic Miller-Rabin, exact for all
// 64-bit inputs).
class FieldModulus {
 public:
  explicit FieldModulus(uint64_t q);

  uint64_t q() const { return q_; }

  friend bool operator==(FieldModulus a, FieldModulus b) { return a.q_ == b.q_; }
  friend bool operator!=(FieldModulus a, FieldModulus b) { return a.q_ != b.q_; }

 private:
  uint64_t q_;
};

// A canonical representative of GF(q): 0 <= value < q always. Mixing
// elements of different moduli throws; nothing is ever coerced.
class FieldElement {
 public:
  FieldElement(uint64_t value, FieldModulus mod) : value_(value % mod.q()), mod_(mod) {}

  uint64_t value() const { return value_; }
  FieldModulus modulus() const { return mod_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement operator+(FieldElement rhs) const;
  FieldElement operator-(FieldElement rhs) const;
  FieldElement operator*(FieldElement rhs) const;
  FieldElement operator-() const;

  friend bool operator==(FieldElement a, FieldElement b);
  friend bool operator!=(FieldElement a, FieldElement b) { return !(a == b); }

 private:
  uint64_t value_;
  FieldModulus mod_;
};

// Multiplicative inverse of a nonzero element, via Fermat (a^(q-2)).
FieldElement inv(FieldElement a);

// Square-and-multiply; pow(a, 0) = 1 for every a, including 0.
FieldElement pow(FieldElement a, uint64_t e);

// Uniform draw over [0, q-1] by rejection sampling on the generator's
// 64-bit output: draws >= floor(2^64 / q) * q are discarded, so no
// modulo bias reaches the forgery-probability tests.
FieldElement sample_uniform(FieldModulus mod, SeededRng& rng);

// Uniform index in [0, n), rejection-sampled like sample_uniform.
uint64_t sample_index(uint64_t n, SeededRng& rng);

}  // namespace intermac
