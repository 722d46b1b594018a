#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "intermac/field.hpp"

namespace intermac::prf {

// Context bytes keep the three PRF roles on disjoint input spaces: the same
// key would otherwise evaluate a 16-byte random nonce and a 16-byte index
// pair on colliding inputs.
inline constexpr uint8_t kDomainNonce = 0x01;      // per-transmission nonce r
inline constexpr uint8_t kDomainIndexPair = 0x02;  // storage index (u || v)
inline constexpr uint8_t kDomainCounter = 0x03;    // key-generation counter x

// 32-byte PRF secret. Keys come from the seeded RNG (four successive 64-bit
// draws, each stored big-endian) or verbatim from a key file.
struct PrfKey {
  std::array<uint8_t, 32> bytes{};

  static PrfKey random(SeededRng& rng);

  friend bool operator==(const PrfKey& a, const PrfKey& b) { return a.bytes == b.bytes; }
};

struct PrfInput {
  std::vector<uint8_t> bytes;
};

using Nonce16 = std::array<uint8_t, 16>;

// Fresh 16-byte nonce: two 64-bit draws, each stored big-endian.
Nonce16 random_nonce(SeededRng& rng);

// Injective fixed-width index encoding: 8-byte big-endian u followed by
// 8-byte big-endian v. Indices are 1-based; zero is rejected.
std::array<uint8_t, 16> encode_index_pair(uint64_t u, uint64_t v);

// f(key, input) in GF(q). Instantiation (normative, bit-exact):
// HMAC-SHA256(key, input), then rejection sampling over the four 8-byte
// big-endian windows of the digest with the same acceptance rule as
// sample_uniform; if all four windows are rejected the digest is recomputed
// over input || counter for counter bytes 0x01, 0x02, ...
FieldElement eval(const PrfKey& key, const PrfInput& input, FieldModulus mod);

// eval over kDomainNonce || r.
FieldElement eval_nonce(const PrfKey& key, const Nonce16& r, FieldModulus mod);

// eval over kDomainIndexPair || encode_index_pair(u, v).
FieldElement eval_index_pair(const PrfKey& key, uint64_t u, uint64_t v, FieldModulus mod);

// eval over kDomainCounter || 8-byte big-endian x; houses the r_x stream of
// orthogonal key generation. x is 1-based.
FieldElement eval_counter(const PrfKey& key, uint64_t x, FieldModulus mod);

}  // namespace intermac::prf
