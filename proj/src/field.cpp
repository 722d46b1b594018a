#include "intermac/field.hpp"

#include <stdexcept>
#include <string>

namespace intermac {
namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t acc = 1 % m;
  uint64_t base = a % m;
  while (e > 0) {
    if (e & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return acc;
}

void require_same_modulus(FieldModulus a, FieldModulus b) {
  if (a != b) {
    throw std::invalid_argument("field: operands have different moduli (" +
                                std::to_string(a.q()) + " vs " + std::to_string(b.q()) + ")");
  }
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This witness set is exact for every n < 3.3 * 10^24, so for all 64-bit n.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldModulus::FieldModulus(uint64_t q) : q_(q) {
  if (q < 2 || q >= (uint64_t{1} << kMaxModulusBits)) {
    throw std::invalid_argument("field: modulus must satisfy 2 <= q < 2^62, got " + std::to_string(q));
  }
  if (!is_prime_u64(q)) {
    throw std::invalid_argument("field: modulus " + std::to_string(q) + " is not prime");
  }
}

FieldElement FieldElement::operator+(FieldElement rhs) const {
  require_same_modulus(mod_, rhs.mod_);
  uint64_t q = mod_.q();
  uint64_t s = value_ + rhs.value_;  // both < 2^62, no overflow
  if (s >= q) s -= q;
  return FieldElement(s, mod_);
}

FieldElement FieldElement::operator-(FieldElement rhs) const {
  require_same_modulus(mod_, rhs.mod_);
  uint64_t q = mod_.q();
  uint64_t s = value_ >= rhs.value_ ? value_ - rhs.value_ : value_ + q - rhs.value_;
  return FieldElement(s, mod_);
}

FieldElement FieldElement::operator*(FieldElement rhs) const {
  require_same_modulus(mod_, rhs.mod_);
  return FieldElement(mulmod(value_, rhs.value_, mod_.q()), mod_);
}

FieldElement FieldElement::operator-() const {
  return FieldElement(value_ == 0 ? 0 : mod_.q() - value_, mod_);
}

bool operator==(FieldElement a, FieldElement b) {
  require_same_modulus(a.mod_, b.mod_);
  return a.value_ == b.value_;
}

FieldElement inv(FieldElement a) {
  if (a.is_zero()) {
    throw std::invalid_argument("field: cannot invert zero");
  }
  return pow(a, a.modulus().q() - 2);
}

FieldElement pow(FieldElement a, uint64_t e) {
  return FieldElement(powmod(a.value(), e, a.modulus().q()), a.modulus());
}

FieldElement sample_uniform(FieldModulus mod, SeededRng& rng) {
  uint64_t q = mod.q();
  // 2^64 mod q; when it is 0 (q = 2), every draw is accepted.
  uint64_t rem = (UINT64_MAX % q + 1) % q;
  uint64_t threshold = 0 - rem;  // floor(2^64 / q) * q, mod 2^64
  for (;;) {
    uint64_t x = rng.next_u64();
    if (rem == 0 || x < threshold) return FieldElement(x % q, mod);
  }
}

uint64_t sample_index(uint64_t n, SeededRng& rng) {
  if (n == 0) throw std::invalid_argument("sample_index: empty range");
  uint64_t rem = (UINT64_MAX % n + 1) % n;
  uint64_t threshold = 0 - rem;
  for (;;) {
    uint64_t x = rng.next_u64();
    if (rem == 0 || x < threshold) return x % n;
  }
}

}  // namespace intermac
