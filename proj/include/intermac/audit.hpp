#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intermac/mac.hpp"
#include "intermac/netcode.hpp"

namespace intermac::audit {

// What the client keeps after setup. Never handed to servers or verifier.
struct ClientSecrets {
  FieldVector k1;
  FieldVector k1_mask;
  prf::PrfKey mask_prf_key;
};

// Everything the third-party verifier is given: k1'' and k2, nothing else.
// Keeping k1/k1_mask out of this type is what enforces the key separation.
struct VerifierKeys {
  FieldVector k1_verifier;
  prf::PrfKey prf_key;
};

struct TaggedBlock {
  netcode::CodedBlock block;
  mac::TagValue tag;
};

// Server u's storage: slot v (1-based) holds the block tagged as (u, v).
struct ServerState {
  uint32_t server_id = 0;
  std::vector<TaggedBlock> slots;
};

// Verifier-chosen coefficients beta_{u1}..beta_{ud}; never all zero (an
// all-zero challenge verifies vacuously and audits nothing).
struct Challenge {
  uint32_t server_id = 0;
  std::vector<FieldElement> coefficients;
};

// The server's aggregate answer (c_{S_u}, t_{S_u}).
struct AuditResponse {
  FieldVector combined_block;
  FieldElement combined_tag;
};

struct SetupResult {
  ClientSecrets client;
  VerifierKeys verifier;
  std::vector<ServerState> servers;
};

// --- transcript ----------------------------------------------------------

enum class EventKind {
  Transmit,
  Capture,
  Drop,
  Replay,
  Corrupt,
  ChallengeIssued,
  ResponseReceived,
  VerifyOutcome,
};

struct TranscriptEvent {
  uint64_t seq = 0;
  EventKind kind = EventKind::Transmit;
  std::string scheme;
  std::optional<bool> accepted;  // set for VerifyOutcome only
};

// Append-only event log; exported as one line per event:
//   <seq> <KIND> <scheme> <ACCEPT|REJECT|->
class Transcript {
 public:
  void record(EventKind kind, std::string scheme);
  void record_verify(std::string scheme, bool accepted);

  const std::vector<TranscriptEvent>& events() const { return events_; }
  std::optional<bool> last_outcome() const;
  std::string to_text() const;

 private:
  std::vector<TranscriptEvent> events_;
};

// --- protocol operations ---------------------------------------------------

// Storage tag t_uv = c_uv . k1 + f_{k2}(u || v)  (index-bound, no nonce).
FieldElement tag_coded_block(const FieldVector& coded, uint64_t u, uint64_t v,
                             const FieldVector& k1, const prf::PrfKey& k2);

// Full protocol setup: augment the file, run InterCW keygen over the
// augmented family, encode and tag d blocks per server. The verifier gets
// exactly (k1'', k2); the client keeps (k1, k1'), plus the mask seed key.
SetupResult setup(const netcode::SourceFile& f, uint32_t n, uint32_t d, SeededRng& rng);

// Uniform coefficients, resampled as a whole while all zero.
Challenge make_challenge(uint32_t server_id, uint32_t d, FieldModulus mod, SeededRng& rng);

// Honest aggregation of the server's stored blocks and tags.
AuditResponse respond(const ServerState& server, const Challenge& ch);

// t_{S_u} =? c_{S_u} . k1'' + sum_v beta_uv f_{k2}(u || v). PRF terms are
// recomputed from k2 on demand; the verifier stores nothing per slot.
bool verify_server(const AuditResponse& resp, const Challenge& ch, const VerifierKeys& vk);

// --- adversaries -----------------------------------------------------------

enum class CorruptTarget { Block, Tag };

// Replaces one uniformly chosen field element of the stored block (or the
// tag) in the given slot with a fresh uniform value different from the
// original. Slot is 1-based.
void adversary_corrupt(ServerState& server, uint32_t slot, CorruptTarget target, SeededRng& rng);

// Plays the two-transmission replay narrative for one scheme: transmit,
// capture, verify; transmit, drop, replay the captured pair, verify. The
// final VERIFY line is the scheme's replay verdict. For the PRF-masked
// schemes the receiver checks against the nonce of the current
// transmission, which it gets out of band.
Transcript adversary_replay(mac::SchemeId scheme, FieldModulus mod, size_t dim, SeededRng& rng);

// --- key-search experiment ---------------------------------------------------

// One (message, tag, index) triple the searcher may use as a constraint:
// any candidate k1 must satisfy message . k1 = tag - f_{k2}(u || v).
struct TagObservation {
  FieldVector message;
  FieldElement tag;
  uint64_t server = 0;
  uint64_t slot = 0;
};

struct KeySearchResult {
  uint64_t consistent_count = 0;
  bool true_key_consistent = false;
};

// Enumerates the first `budget` candidate tagging keys in lexicographic
// order (last coordinate fastest) and counts those consistent with the
// verifier's view. With no observations every candidate is consistent:
// k1'' alone gives the verifier nothing. Throws when budget exceeds the
// q^dim candidate space.
KeySearchResult key_search_experiment(const VerifierKeys& vk, const ClientSecrets& truth,
                                      uint64_t budget,
                                      std::span<const TagObservation> observations = {});

}  // namespace intermac::audit
