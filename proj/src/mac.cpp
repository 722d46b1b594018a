#include "intermac/mac.hpp"

namespace intermac::mac {
namespace {

// A zero mask would make k1'' = k1 and hand the tagging key to the
// verifier, so keygen redraws the coefficient key a bounded number of
// times (the zero draw has probability q^-nullity).
constexpr int kMaxMaskRetries = 8;

const prf::PrfKey& require_prf_key(const KeySet& ks) {
  if (!ks.prf_key) throw std::invalid_argument("mac: key set has no PRF key");
  return *ks.prf_key;
}

const prf::Nonce16& require_nonce(const TagValue& tag) {
  if (!tag.nonce) throw std::invalid_argument("mac: tag carries no nonce");
  return *tag.nonce;
}

struct MaskResult {
  FieldVector mask;
  prf::PrfKey k_prf;
};

MaskResult gen_mask_with_retry(const std::vector<FieldVector>& messages, SeededRng& rng) {
  for (int attempt = 0; attempt <= kMaxMaskRetries; ++attempt) {
    prf::PrfKey k_prf = prf::PrfKey::random(rng);
    FieldVector mask = orthogonal_gen(messages, k_prf);
    if (!mask.is_zero()) return MaskResult{std::move(mask), k_prf};
  }
  throw KeygenError("mac: orthogonal mask came out zero on every retry");
}

}  // namespace

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::InnerProduct: return "inner-product";
    case SchemeId::CarterWegman: return "carter-wegman";
    case SchemeId::Inter: return "inter";
    case SchemeId::InterCW: return "intercw";
  }
  throw std::invalid_argument("mac: unknown scheme id");
}

std::optional<SchemeId> scheme_from_name(std::string_view name) {
  if (name == "inner-product") return SchemeId::InnerProduct;
  if (name == "carter-wegman") return SchemeId::CarterWegman;
  if (name == "inter") return SchemeId::Inter;
  if (name == "intercw") return SchemeId::InterCW;
  return std::nullopt;
}

KeySet ip_keygen(size_t dim, FieldModulus mod, SeededRng& rng) {
  if (dim == 0) throw std::invalid_argument("mac: key dimension must be positive");
  return KeySet{FieldVector::random(mod, dim, rng), {}, {}, {}, {}};
}

TagValue ip_tag(const FieldVector& m, const KeySet& ks) {
  return TagValue{dot(m, ks.k1), std::nullopt};
}

bool ip_verify(const FieldVector& m, const TagValue& tag, const KeySet& ks) {
  return tag.t == dot(m, ks.k1);
}

KeySet cw_keygen(size_t dim, FieldModulus mod, SeededRng& rng) {
  if (dim == 0) throw std::invalid_argument("mac: key dimension must be positive");
  FieldVector k1 = FieldVector::random(mod, dim, rng);
  prf::PrfKey k_prime = prf::PrfKey::random(rng);
  return KeySet{std::move(k1), {}, {}, k_prime, {}};
}

TagValue cw_tag(const FieldVector& m, const KeySet& ks, SeededRng& rng) {
  const prf::PrfKey& key = require_prf_key(ks);
  prf::Nonce16 r = prf::random_nonce(rng);
  FieldElement t = dot(m, ks.k1) + prf::eval_nonce(key, r, m.modulus());
  return TagValue{t, r};
}

bool cw_verify(const FieldVector& m, const TagValue& tag, const KeySet& ks) {
  const prf::PrfKey& key = require_prf_key(ks);
  const prf::Nonce16& r = require_nonce(tag);
  return tag.t == dot(m, ks.k1) + prf::eval_nonce(key, r, m.modulus());
}

KeySet inter_keygen(const std::vector<FieldVector>& messages, SeededRng& rng) {
  if (messages.empty()) throw std::invalid_argument("mac: need at least one message");
  FieldVector k1 = FieldVector::random(messages.front().modulus(), messages.front().dim(), rng);
  MaskResult mr = gen_mask_with_retry(messages, rng);
  FieldVector verifier = vec_add(k1, mr.mask);
  return KeySet{std::move(k1), std::move(mr.mask), std::move(verifier), {}, mr.k_prf};
}

TagValue inter_tag(const FieldVector& m, const KeySet& ks) {
  return TagValue{dot(m, ks.k1), std::nullopt};
}

bool inter_verify(const FieldVector& m, const TagValue& tag, const FieldVector& verifier_key) {
  return tag.t == dot(m, verifier_key);
}

KeySet intercw_keygen(const std::vector<FieldVector>& messages, SeededRng& rng) {
  KeySet ks = inter_keygen(messages, rng);
  ks.prf_key = prf::PrfKey::random(rng);
  return ks;
}

TagValue intercw_tag(const FieldVector& m, const KeySet& ks, SeededRng& rng) {
  const prf::PrfKey& key = require_prf_key(ks);
  prf::Nonce16 r = prf::random_nonce(rng);
  FieldElement t = dot(m, ks.k1) + prf::eval_nonce(key, r, m.modulus());
  return TagValue{t, r};
}

bool intercw_verify(const FieldVector& m, const TagValue& tag, const FieldVector& verifier_key,
                    const prf::PrfKey& prf_key) {
  const prf::Nonce16& r = require_nonce(tag);
  return tag.t == dot(m, verifier_key) + prf::eval_nonce(prf_key, r, m.modulus());
}

FieldVector orthogonal_gen(const std::vector<FieldVector>& messages, const prf::PrfKey& k_prf) {
  if (messages.empty()) throw std::invalid_argument("mac: need at least one message");
  FieldMatrix m(std::vector<FieldVector>(messages.begin(), messages.end()));
  if (messages.size() >= m.col_count()) {
    throw std::invalid_argument("mac: messages must leave a nontrivial null space (need m < dim)");
  }
  auto rr = rref(m);
  if (rr.rank < messages.size()) {
    throw std::invalid_argument("mac: messages must be linearly independent");
  }

  auto basis = null_space_basis(m);
  FieldVector k1_mask = FieldVector::zero(m.modulus(), m.col_count());
  for (size_t x = 1; x <= basis.size(); ++x) {
    FieldElement r_x = prf::eval_counter(k_prf, x, m.modulus());
    k1_mask = vec_add(k1_mask, scalar_mul(r_x, basis[x - 1]));
  }
  return k1_mask;
}

}  // namespace intermac::mac
