#include "intermac/prf.hpp"

#include <openssl/hmac.h>

#include <stdexcept>

#include "intermac/bytes.hpp"

namespace intermac::prf {
namespace {

std::array<uint8_t, 32> hmac_sha256(const PrfKey& key, const uint8_t* data, size_t len) {
  std::array<uint8_t, 32> digest{};
  unsigned int digest_len = 0;
  if (HMAC(EVP_sha256(), key.bytes.data(), static_cast<int>(key.bytes.size()), data, len,
           digest.data(), &digest_len) == nullptr ||
      digest_len != digest.size()) {
    throw std::runtime_error("prf: HMAC-SHA256 failed");
  }
  return digest;
}

}  // namespace

PrfKey PrfKey::random(SeededRng& rng) {
  PrfKey key;
  for (int i = 0; i < 4; ++i) store_be64(rng.next_u64(), key.bytes.data() + 8 * i);
  return key;
}

Nonce16 random_nonce(SeededRng& rng) {
  Nonce16 r{};
  store_be64(rng.next_u64(), r.data());
  store_be64(rng.next_u64(), r.data() + 8);
  return r;
}

std::array<uint8_t, 16> encode_index_pair(uint64_t u, uint64_t v) {
  if (u == 0 || v == 0) throw std::invalid_argument("prf: indices are 1-based, got 0");
  std::array<uint8_t, 16> out{};
  store_be64(u, out.data());
  store_be64(v, out.data() + 8);
  return out;
}

FieldElement eval(const PrfKey& key, const PrfInput& input, FieldModulus mod) {
  uint64_t q = mod.q();
  uint64_t rem = (UINT64_MAX % q + 1) % q;
  uint64_t threshold = 0 - rem;

  std::vector<uint8_t> msg;
  for (uint32_t counter = 0;; ++counter) {
    std::array<uint8_t, 32> digest{};
    if (counter == 0) {
      digest = hmac_sha256(key, input.bytes.data(), input.bytes.size());
    } else {
      // All four windows rejected (probability < 2^-8 per digest): rehash
      // with a counter byte appended, first 0x01, then 0x02, ...
      msg = input.bytes;
      msg.push_back(static_cast<uint8_t>(counter));
      digest = hmac_sha256(key, msg.data(), msg.size());
    }
    for (int w = 0; w < 4; ++w) {
      uint64_t x = load_be64(digest.data() + 8 * w);
      if (rem == 0 || x < threshold) return FieldElement(x % q, mod);
    }
  }
}

FieldElement eval_nonce(const PrfKey& key, const Nonce16& r, FieldModulus mod) {
  PrfInput in;
  in.bytes.reserve(1 + r.size());
  in.bytes.push_back(kDomainNonce);
  in.bytes.insert(in.bytes.end(), r.begin(), r.end());
  return eval(key, in, mod);
}

FieldElement eval_index_pair(const PrfKey& key, uint64_t u, uint64_t v, FieldModulus mod) {
  auto pair = encode_index_pair(u, v);
  PrfInput in;
  in.bytes.reserve(1 + pair.size());
  in.bytes.push_back(kDomainIndexPair);
  in.bytes.insert(in.bytes.end(), pair.begin(), pair.end());
  return eval(key, in, mod);
}

FieldElement eval_counter(const PrfKey& key, uint64_t x, FieldModulus mod) {
  if (x == 0) throw std::invalid_argument("prf: counter is 1-based, got 0");
  PrfInput in;
  in.bytes.reserve(9);
  in.bytes.push_back(kDomainCounter);
  append_be64(x, in.bytes);
  return eval(key, in, mod);
}

}  // namespace intermac::prf
