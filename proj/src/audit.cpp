#include "intermac/audit.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace intermac::audit {
namespace {

std::string_view kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Transmit: return "TRANSMIT";
    case EventKind::Capture: return "CAPTURE";
    case EventKind::Drop: return "DROP";
    case EventKind::Replay: return "REPLAY";
    case EventKind::Corrupt: return "CORRUPT";
    case EventKind::ChallengeIssued: return "CHALLENGE";
    case EventKind::ResponseReceived: return "RESPONSE";
    case EventKind::VerifyOutcome: return "VERIFY";
  }
  return "?";
}

// Saturating q^dim, for the key-search budget check.
uint64_t candidate_space(uint64_t q, size_t dim) {
  uint64_t space = 1;
  for (size_t i = 0; i < dim; ++i) {
    if (space > UINT64_MAX / q) return UINT64_MAX;
    space *= q;
  }
  return space;
}

// idx -> candidate vector, lexicographic with the last coordinate fastest.
FieldVector candidate_at(uint64_t idx, uint64_t q, size_t dim, FieldModulus mod) {
  std::vector<uint64_t> v(dim, 0);
  for (size_t i = dim; i-- > 0;) {
    v[i] = idx % q;
    idx /= q;
  }
  return FieldVector(mod, std::move(v));
}

}  // namespace

void Transcript::record(EventKind kind, std::string scheme) {
  events_.push_back(TranscriptEvent{events_.size() + 1, kind, std::move(scheme), std::nullopt});
}

void Transcript::record_verify(std::string scheme, bool accepted) {
  events_.push_back(
      TranscriptEvent{events_.size() + 1, EventKind::VerifyOutcome, std::move(scheme), accepted});
}

std::optional<bool> Transcript::last_outcome() const {
  for (auto it = events_.rbegin(); it != events_.rend(); ++it) {
    if (it->accepted.has_value()) return it->accepted;
  }
  return std::nullopt;
}

std::string Transcript::to_text() const {
  std::ostringstream out;
  for (const auto& e : events_) {
    out << e.seq << ' ' << kind_name(e.kind) << ' ' << e.scheme << ' ';
    if (e.accepted.has_value()) {
      out << (*e.accepted ? "ACCEPT" : "REJECT");
    } else {
      out << '-';
    }
    out << '\n';
  }
  return out.str();
}

FieldElement tag_coded_block(const FieldVector& coded, uint64_t u, uint64_t v,
                             const FieldVector& k1, const prf::PrfKey& k2) {
  return dot(coded, k1) + prf::eval_index_pair(k2, u, v, coded.modulus());
}

SetupResult setup(const netcode::SourceFile& f, uint32_t n, uint32_t d, SeededRng& rng) {
  if (n == 0 || d == 0) throw std::invalid_argument("audit: need n >= 1 servers and d >= 1 slots");

  auto augmented = netcode::augment(f);
  std::vector<FieldVector> messages;
  messages.reserve(augmented.size());
  for (const auto& w : augmented) messages.push_back(w.vector);

  mac::KeySet ks = mac::intercw_keygen(messages, rng);

  std::vector<ServerState> servers;
  servers.reserve(n);
  for (uint32_t u = 1; u <= n; ++u) {
    ServerState state;
    state.server_id = u;
    state.slots.reserve(d);
    for (uint32_t v = 1; v <= d; ++v) {
      netcode::CodedBlock cb = netcode::encode(augmented, rng);
      cb.server = u;
      cb.slot = v;
      FieldElement t = tag_coded_block(cb.vector, u, v, ks.k1, *ks.prf_key);
      state.slots.push_back(TaggedBlock{std::move(cb), mac::TagValue{t, std::nullopt}});
    }
    servers.push_back(std::move(state));
  }

  return SetupResult{
      ClientSecrets{ks.k1, *ks.k1_mask, *ks.mask_prf_key},
      VerifierKeys{*ks.k1_verifier, *ks.prf_key},
      std::move(servers),
  };
}

Challenge make_challenge(uint32_t server_id, uint32_t d, FieldModulus mod, SeededRng& rng) {
  if (d == 0) throw std::invalid_argument("audit: challenge needs d >= 1 coefficients");
  for (;;) {
    std::vector<FieldElement> beta;
    beta.reserve(d);
    for (uint32_t v = 0; v < d; ++v) beta.push_back(sample_uniform(mod, rng));
    bool all_zero = std::all_of(beta.begin(), beta.end(),
                                [](const FieldElement& e) { return e.is_zero(); });
    if (!all_zero) return Challenge{server_id, std::move(beta)};
  }
}

AuditResponse respond(const ServerState& server, const Challenge& ch) {
  if (ch.server_id != server.server_id) {
    throw std::invalid_argument("audit: challenge targets a different server");
  }
  if (ch.coefficients.size() != server.slots.size()) {
    throw std::invalid_argument("audit: coefficient count does not match slot count");
  }
  FieldVector combined = scalar_mul(ch.coefficients[0], server.slots[0].block.vector);
  FieldElement tag = ch.coefficients[0] * server.slots[0].tag.t;
  for (size_t v = 1; v < server.slots.size(); ++v) {
    combined = vec_add(combined, scalar_mul(ch.coefficients[v], server.slots[v].block.vector));
    tag = tag + ch.coefficients[v] * server.slots[v].tag.t;
  }
  return AuditResponse{std::move(combined), tag};
}

bool verify_server(const AuditResponse& resp, const Challenge& ch, const VerifierKeys& vk) {
  FieldModulus mod = resp.combined_block.modulus();
  FieldElement rhs = dot(resp.combined_block, vk.k1_verifier);
  for (size_t v = 0; v < ch.coefficients.size(); ++v) {
    rhs = rhs + ch.coefficients[v] * prf::eval_index_pair(vk.prf_key, ch.server_id, v + 1, mod);
  }
  return resp.combined_tag == rhs;
}

void adversary_corrupt(ServerState& server, uint32_t slot, CorruptTarget target, SeededRng& rng) {
  if (slot == 0 || slot > server.slots.size()) {
    throw std::invalid_argument("audit: slot index out of range");
  }
  TaggedBlock& tb = server.slots[slot - 1];
  FieldModulus mod = tb.block.vector.modulus();
  if (target == CorruptTarget::Tag) {
    FieldElement old = tb.tag.t;
    FieldElement fresh = sample_uniform(mod, rng);
    while (fresh == old) fresh = sample_uniform(mod, rng);
    tb.tag.t = fresh;
    return;
  }
  uint64_t idx = sample_index(tb.block.vector.dim(), rng);
  FieldElement old = tb.block.vector[idx];
  FieldElement fresh = sample_uniform(mod, rng);
  while (fresh == old) fresh = sample_uniform(mod, rng);
  std::vector<uint64_t> values = tb.block.vector.values();
  values[idx] = fresh.value();
  tb.block.vector = FieldVector(mod, std::move(values));
}

Transcript adversary_replay(mac::SchemeId scheme, FieldModulus mod, size_t dim, SeededRng& rng) {
  using mac::SchemeId;
  if (dim < 2) throw std::invalid_argument("audit: replay script needs dim >= 2");
  std::string name(mac::scheme_name(scheme));
  bool keyed_on_messages = scheme == SchemeId::Inter || scheme == SchemeId::InterCW;
  bool masked = scheme == SchemeId::CarterWegman || scheme == SchemeId::InterCW;

  // Two distinct messages; the Inter-family keygen additionally needs them
  // linearly independent so both transmissions verify.
  FieldVector m1 = FieldVector::random(mod, dim, rng);
  FieldVector m2 = FieldVector::random(mod, dim, rng);
  for (;;) {
    bool ok = keyed_on_messages ? rank(FieldMatrix({m1, m2})) == 2 : m1 != m2;
    if (ok) break;
    m2 = FieldVector::random(mod, dim, rng);
  }

  mac::KeySet ks = [&] {
    switch (scheme) {
      case SchemeId::InnerProduct: return mac::ip_keygen(dim, mod, rng);
      case SchemeId::CarterWegman: return mac::cw_keygen(dim, mod, rng);
      case SchemeId::Inter: return mac::inter_keygen({m1, m2}, rng);
      case SchemeId::InterCW: return mac::intercw_keygen({m1, m2}, rng);
    }
    throw std::invalid_argument("audit: unknown scheme");
  }();

  auto tag_message = [&](const FieldVector& m) -> mac::TagValue {
    switch (scheme) {
      case SchemeId::InnerProduct: return mac::ip_tag(m, ks);
      case SchemeId::CarterWegman: return mac::cw_tag(m, ks, rng);
      case SchemeId::Inter: return mac::inter_tag(m, ks);
      case SchemeId::InterCW: return mac::intercw_tag(m, ks, rng);
    }
    throw std::invalid_argument("audit: unknown scheme");
  };

  // The receiver verifies the wire pair (m, t) against its own view of the
  // current transmission: the expected nonce arrives out of band, so a
  // replayed tag is checked against the nonce of the *current* transmission.
  auto receiver_verify = [&](const FieldVector& m, const FieldElement& t,
                             const std::optional<prf::Nonce16>& current_nonce) -> bool {
    switch (scheme) {
      case SchemeId::InnerProduct: return mac::ip_verify(m, mac::TagValue{t, std::nullopt}, ks);
      case SchemeId::CarterWegman: return mac::cw_verify(m, mac::TagValue{t, current_nonce}, ks);
      case SchemeId::Inter:
        return mac::inter_verify(m, mac::TagValue{t, std::nullopt}, *ks.k1_verifier);
      case SchemeId::InterCW:
        return mac::intercw_verify(m, mac::TagValue{t, current_nonce}, *ks.k1_verifier,
                                   *ks.prf_key);
    }
    throw std::invalid_argument("audit: unknown scheme");
  };

  Transcript tr;

  // First transmission: honest delivery; the attacker captures the pair.
  mac::TagValue t1 = tag_message(m1);
  tr.record(EventKind::Transmit, name);
  tr.record(EventKind::Capture, name);
  tr.record_verify(name, receiver_verify(m1, t1.t, t1.nonce));

  // Second transmission: the attacker drops the fresh pair and replays the
  // captured one; the receiver's nonce state has moved on.
  mac::TagValue t2 = tag_message(m2);
  tr.record(EventKind::Transmit, name);
  tr.record(EventKind::Drop, name);
  tr.record(EventKind::Replay, name);
  tr.record_verify(name, receiver_verify(m1, t1.t, masked ? t2.nonce : std::nullopt));

  return tr;
}

KeySearchResult key_search_experiment(const VerifierKeys& vk, const ClientSecrets& truth,
                                      uint64_t budget,
                                      std::span<const TagObservation> observations) {
  FieldModulus mod = vk.k1_verifier.modulus();
  size_t dim = vk.k1_verifier.dim();
  uint64_t space = candidate_space(mod.q(), dim);
  if (budget > space) {
    throw std::invalid_argument("audit: key-search budget exceeds the candidate space");
  }

  // Precompute what each observed tag pins down: message . k1 must equal
  // tag - f_{k2}(u || v). The searcher holds k2, so this is computable.
  std::vector<std::pair<const FieldVector*, FieldElement>> constraints;
  constraints.reserve(observations.size());
  for (const auto& obs : observations) {
    constraints.emplace_back(&obs.message,
                             obs.tag - prf::eval_index_pair(vk.prf_key, obs.server, obs.slot, mod));
  }

  KeySearchResult result;
  for (uint64_t idx = 0; idx < budget; ++idx) {
    FieldVector candidate = candidate_at(idx, mod.q(), dim, mod);
    bool consistent = true;
    for (const auto& [message, expected] : constraints) {
      if (dot(*message, candidate) != expected) {
        consistent = false;
        break;
      }
    }
    if (consistent) {
      ++result.consistent_count;
      if (candidate == truth.k1) result.true_key_consistent = true;
    }
  }
  return result;
}

}  // namespace intermac::audit
