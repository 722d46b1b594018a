#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "intermac/linalg.hpp"
#include "intermac/prf.hpp"

namespace intermac::mac {

enum class SchemeId { InnerProduct, CarterWegman, Inter, InterCW };

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> scheme_from_name(std::string_view name);

// Thrown when key generation cannot produce a usable key set (e.g. every
// orthogonal-mask retry came out zero).
struct KeygenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Role-separated secrets for all four schemes.
//
//   k1          tagging key (all schemes)
//   k1_mask     orthogonal part k1', Inter/InterCW only
//   k1_verifier k1'' = k1 + k1_mask, the verifier's key, Inter/InterCW only
//   prf_key     tag-permuting key (k' for Carter-Wegman, k2 for InterCW)
//   mask_prf_key seed key for the mask's coefficient stream; retained so the
//               client key file can persist it
struct KeySet {
  FieldVector k1;
  std::optional<FieldVector> k1_mask;
  std::optional<FieldVector> k1_verifier;
  std::optional<prf::PrfKey> prf_key;
  std::optional<prf::PrfKey> mask_prf_key;
};

// A tag plus, for the PRF-masked schemes, the nonce it was computed under.
struct TagValue {
  FieldElement t;
  std::optional<prf::Nonce16> nonce;
};

// --- inner-product MAC -------------------------------------------------

KeySet ip_keygen(size_t dim, FieldModulus mod, SeededRng& rng);
TagValue ip_tag(const FieldVector& m, const KeySet& ks);
bool ip_verify(const FieldVector& m, const TagValue& tag, const KeySet& ks);

// --- Carter-Wegman MAC --------------------------------------------------

KeySet cw_keygen(size_t dim, FieldModulus mod, SeededRng& rng);
// Draws a fresh nonce r and returns t = m . k1 + f_{k'}(r).
TagValue cw_tag(const FieldVector& m, const KeySet& ks, SeededRng& rng);
// Checks the tag against its own nonce. Replay detection is the receiver's
// job: it re-binds the wire tag to the nonce it expects for the current
// transmission before calling this (see audit::adversary_replay).
bool cw_verify(const FieldVector& m, const TagValue& tag, const KeySet& ks);

// --- Inter MAC -----------------------------------------------------------

// Keys are generated against a fixed family of linearly independent
// messages; the mask is orthogonal to exactly their span, so verification
// is only guaranteed on that span.
KeySet inter_keygen(const std::vector<FieldVector>& messages, SeededRng& rng);
TagValue inter_tag(const FieldVector& m, const KeySet& ks);
// Callable with only the verifier key k1''; never sees k1.
bool inter_verify(const FieldVector& m, const TagValue& tag, const FieldVector& verifier_key);

// --- InterCW MAC ----------------------------------------------------------

KeySet intercw_keygen(const std::vector<FieldVector>& messages, SeededRng& rng);
TagValue intercw_tag(const FieldVector& m, const KeySet& ks, SeededRng& rng);
// Callable with only (k1'', k2).
bool intercw_verify(const FieldVector& m, const TagValue& tag, const FieldVector& verifier_key,
                    const prf::PrfKey& prf_key);

// --- orthogonal key generation ---------------------------------------------

// k1' = sum_x f(k_prf, x) * b_x over the canonical null-space basis of the
// message matrix; orthogonal to every message by construction. Requires the
// messages to be linearly independent and to leave a nontrivial null space.
FieldVector orthogonal_gen(const std::vector<FieldVector>& messages, const prf::PrfKey& k_prf);

}  // namespace intermac::mac
