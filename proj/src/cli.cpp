#include "intermac/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <vector>

#include "intermac/artifacts.hpp"
#include "intermac/audit.hpp"

namespace intermac::cli {
namespace {

namespace fs = std::filesystem;
using artifacts::Manifest;

constexpr char kManifestName[] = "manifest.txt";
constexpr char kClientKeyName[] = "client.key";
constexpr char kVerifierKeyName[] = "verifier.key";
constexpr char kSourceName[] = "source.imc";
constexpr int kReconstructAttempts = 16;

std::vector<uint8_t> read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
}

void record_digest(Manifest& manifest, const fs::path& dir, const std::string& name) {
  manifest.digests[name] = artifacts::sha256_file_hex(dir / name);
}

// Everything below runs under this guard so that command-level failures all
// land on the documented exit codes instead of escaping as exceptions.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const SingularMatrixError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoRank;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace

int cmd_keygen(const KeygenOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    FieldModulus mod(opt.q);
    if (artifacts::bytes_per_element(mod) == 0) {
      err << "error: modulus " << opt.q << " is too small to pack file bytes (need q > 2^8)\n";
      return kExitError;
    }
    std::vector<uint8_t> data = read_file_bytes(opt.file);
    auto elements = artifacts::pack_bytes(data, mod);
    netcode::SourceFile source = artifacts::to_source_file(elements, opt.m, mod);
    auto xi = static_cast<uint32_t>(source.block_dim());
    auto m = static_cast<uint32_t>(source.block_count());

    // One generator drives the whole keygen, so a (seed, input) pair pins
    // every output byte.
    SeededRng rng(opt.seed);
    auto augmented = netcode::augment(source);
    std::vector<FieldVector> messages;
    for (const auto& w : augmented) messages.push_back(w.vector);
    mac::KeySet ks = mac::intercw_keygen(messages, rng);

    fs::create_directories(opt.out_dir);
    fs::path dir(opt.out_dir);
    artifacts::write_client_key(dir / kClientKeyName,
                                audit::ClientSecrets{ks.k1, *ks.k1_mask, *ks.mask_prf_key}, xi, m);
    artifacts::write_verifier_key(dir / kVerifierKeyName,
                                  audit::VerifierKeys{*ks.k1_verifier, *ks.prf_key}, xi, m);
    artifacts::write_source(dir / kSourceName, source);

    Manifest manifest;
    manifest.q = opt.q;
    manifest.xi = xi;
    manifest.m = m;
    manifest.seed = opt.seed;
    manifest.file_length = data.size();
    record_digest(manifest, dir, kClientKeyName);
    record_digest(manifest, dir, kVerifierKeyName);
    record_digest(manifest, dir, kSourceName);
    manifest.save(dir / kManifestName);

    out << "keygen: q=" << opt.q << " xi=" << xi << " m=" << m << " file_length=" << data.size()
        << '\n';
    return kExitOk;
  });
}

int cmd_distribute(const DistributeOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.n == 0 || opt.d == 0) {
      err << "error: need --n >= 1 and --d >= 1\n";
      return kExitError;
    }
    fs::path dir(opt.out_dir);
    Manifest manifest = Manifest::load(dir / kManifestName);
    audit::ClientSecrets client = artifacts::read_client_key(dir / kClientKeyName, manifest);
    audit::VerifierKeys verifier = artifacts::read_verifier_key(dir / kVerifierKeyName, manifest);
    netcode::SourceFile source = artifacts::read_source(dir / kSourceName, manifest);
    auto augmented = netcode::augment(source);

    SeededRng rng(opt.seed);
    for (uint32_t u = 1; u <= opt.n; ++u) {
      audit::ServerState state;
      state.server_id = u;
      state.slots.reserve(opt.d);
      for (uint32_t v = 1; v <= opt.d; ++v) {
        netcode::CodedBlock cb = netcode::encode(augmented, rng);
        cb.server = u;
        cb.slot = v;
        FieldElement t = audit::tag_coded_block(cb.vector, u, v, client.k1, verifier.prf_key);
        state.slots.push_back(audit::TaggedBlock{std::move(cb), mac::TagValue{t, std::nullopt}});
      }
      artifacts::write_server(dir / artifacts::server_file_name(u), state, manifest.xi,
                              manifest.m);
    }

    manifest.n = opt.n;
    manifest.d = opt.d;
    for (uint32_t u = 1; u <= opt.n; ++u) record_digest(manifest, dir, artifacts::server_file_name(u));
    manifest.save(dir / kManifestName);

    out << "distribute: n=" << opt.n << " d=" << opt.d << " blocks=" << opt.n * opt.d << '\n';
    return kExitOk;
  });
}

namespace {

bool audit_one_server(const fs::path& dir, const Manifest& manifest,
                      const audit::VerifierKeys& vk, uint32_t u, SeededRng& rng,
                      audit::Transcript& tr) {
  audit::ServerState server =
      artifacts::read_server(dir / artifacts::server_file_name(u), manifest, u);
  FieldModulus mod(manifest.q);
  audit::Challenge ch = audit::make_challenge(u, manifest.d, mod, rng);
  tr.record(audit::EventKind::ChallengeIssued, std::string(mac::scheme_name(mac::SchemeId::InterCW)));
  audit::AuditResponse resp = audit::respond(server, ch);
  tr.record(audit::EventKind::ResponseReceived,
            std::string(mac::scheme_name(mac::SchemeId::InterCW)));
  bool ok = audit::verify_server(resp, ch, vk);
  tr.record_verify(std::string(mac::scheme_name(mac::SchemeId::InterCW)), ok);
  return ok;
}

}  // namespace

int cmd_audit(const AuditOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    fs::path dir(opt.out_dir);
    Manifest manifest = Manifest::load(dir / kManifestName);
    if (manifest.n == 0) {
      err << "error: no distributed state (run distribute first)\n";
      return kExitError;
    }
    audit::VerifierKeys vk = artifacts::read_verifier_key(dir / kVerifierKeyName, manifest);

    std::vector<uint32_t> targets;
    if (opt.server == "all") {
      for (uint32_t u = 1; u <= manifest.n; ++u) targets.push_back(u);
    } else {
      unsigned long u = 0;
      try {
        size_t pos = 0;
        u = std::stoul(opt.server, &pos);
        if (pos != opt.server.size()) throw std::invalid_argument(opt.server);
      } catch (const std::exception&) {
        err << "error: --server must be a server id or 'all'\n";
        return kExitError;
      }
      if (u == 0 || u > manifest.n) {
        err << "error: unknown server id " << opt.server << " (have 1.." << manifest.n << ")\n";
        return kExitError;
      }
      targets.push_back(static_cast<uint32_t>(u));
    }

    SeededRng rng(opt.seed);
    audit::Transcript tr;
    bool all_ok = true;
    for (uint32_t u : targets) {
      all_ok = audit_one_server(dir, manifest, vk, u, rng, tr) && all_ok;
    }
    out << tr.to_text();
    return all_ok ? kExitOk : kExitReject;
  });
}

int cmd_corrupt(const CorruptOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    audit::CorruptTarget target;
    if (opt.target == "block") {
      target = audit::CorruptTarget::Block;
    } else if (opt.target == "tag") {
      target = audit::CorruptTarget::Tag;
    } else {
      err << "error: --target must be 'block' or 'tag'\n";
      return kExitError;
    }
    fs::path dir(opt.out_dir);
    Manifest manifest = Manifest::load(dir / kManifestName);
    if (opt.server == 0 || opt.server > manifest.n) {
      err << "error: unknown server id " << opt.server << '\n';
      return kExitError;
    }
    audit::ServerState server =
        artifacts::read_server(dir / artifacts::server_file_name(opt.server), manifest, opt.server);

    SeededRng rng(opt.seed);
    audit::adversary_corrupt(server, opt.slot, target, rng);
    artifacts::write_server(dir / artifacts::server_file_name(opt.server), server, manifest.xi,
                            manifest.m);
    // The adversary controls its own storage, so the manifest digest moves
    // with it; audits catch the tampering through tags, not digests.
    record_digest(manifest, dir, artifacts::server_file_name(opt.server));
    manifest.save(dir / kManifestName);

    audit::Transcript tr;
    tr.record(audit::EventKind::Corrupt, std::string(mac::scheme_name(mac::SchemeId::InterCW)));
    out << tr.to_text();
    return kExitOk;
  });
}

int cmd_replay(const ReplayOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto scheme = mac::scheme_from_name(opt.scheme);
    if (!scheme) {
      err << "error: unknown scheme '" << opt.scheme
          << "' (expected inner-product, carter-wegman, inter, or intercw)\n";
      return kExitError;
    }
    FieldModulus mod(opt.q);
    SeededRng rng(opt.seed);
    audit::Transcript tr = audit::adversary_replay(*scheme, mod, opt.xi, rng);
    out << tr.to_text();
    return kExitOk;
  });
}

int cmd_reconstruct(const ReconstructOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    fs::path dir(opt.out_dir);
    Manifest manifest = Manifest::load(dir / kManifestName);
    if (manifest.n == 0 || manifest.d == 0) {
      err << "error: no distributed state (run distribute first)\n";
      return kExitError;
    }
    FieldModulus mod(manifest.q);

    std::vector<audit::TaggedBlock> pool;
    for (uint32_t u = 1; u <= manifest.n; ++u) {
      audit::ServerState server =
          artifacts::read_server(dir / artifacts::server_file_name(u), manifest, u);
      for (auto& slot : server.slots) pool.push_back(std::move(slot));
    }
    if (pool.size() < manifest.m) {
      err << "error: only " << pool.size() << " stored blocks but m=" << manifest.m << '\n';
      return kExitError;
    }

    SeededRng rng(opt.seed);
    for (int attempt = 0; attempt < kReconstructAttempts; ++attempt) {
      // m distinct slots drawn across all servers.
      std::set<uint64_t> picked;
      while (picked.size() < manifest.m) picked.insert(sample_index(pool.size(), rng));
      std::vector<netcode::CodedBlock> chosen;
      chosen.reserve(manifest.m);
      for (uint64_t idx : picked) chosen.push_back(pool[idx].block);
      try {
        netcode::SourceFile decoded = netcode::decode(chosen);
        std::vector<uint64_t> elements;
        for (const auto& block : decoded.blocks()) {
          elements.insert(elements.end(), block.values().begin(), block.values().end());
        }
        std::vector<uint8_t> bytes = artifacts::unpack_bytes(elements, mod, manifest.file_length);
        std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + opt.out + " for writing");
        f.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
        if (!f) throw std::runtime_error("short write to " + opt.out);
        out << "reconstruct: wrote " << bytes.size() << " bytes after " << attempt + 1
            << " attempt(s)\n";
        return kExitOk;
      } catch (const SingularMatrixError&) {
        // dependent tails; draw a different block set
      }
    }
    err << "error: no full-rank block set in " << kReconstructAttempts << " attempts\n";
    return kExitNoRank;
  });
}

int cmd_full_rank_rate(const FullRankRateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    FieldModulus mod(opt.q);
    SeededRng rng(opt.seed);
    double rate = netcode::full_rank_rate(mod, opt.m, opt.trials, rng);
    double expected = 1.0;
    for (uint32_t i = 1; i <= opt.m; ++i) {
      expected *= 1.0 - std::pow(static_cast<double>(opt.q), -static_cast<double>(i));
    }
    out << "full-rank-rate: q=" << opt.q << " m=" << opt.m << " trials=" << opt.trials
        << " empirical=" << rate << " closed_form=" << expected << '\n';
    return kExitOk;
  });
}

int cmd_stat_check(const StatCheckOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    FieldModulus mod(opt.q);
    if (opt.trials == 0) {
      err << "error: need --trials >= 1\n";
      return kExitError;
    }
    if (opt.q > (uint64_t{1} << 20)) {
      err << "error: stat-check keeps one counter per residue; use q <= 2^20\n";
      return kExitError;
    }
    uint64_t q = opt.q;
    double n = static_cast<double>(opt.trials);
    double p = 1.0 / static_cast<double>(q);
    double sigma = std::sqrt(n * p * (1.0 - p));
    bool ok = true;

    // Residue histogram of the uniform sampler.
    {
      SeededRng rng(opt.seed);
      std::vector<uint64_t> counts(q, 0);
      for (uint64_t i = 0; i < opt.trials; ++i) ++counts[sample_uniform(mod, rng).value()];
      double worst = 0;
      for (uint64_t r = 0; r < q; ++r) {
        worst = std::max(worst, std::abs(static_cast<double>(counts[r]) - n * p));
      }
      bool pass = worst <= 5.0 * sigma;
      ok = ok && pass;
      out << "stat-check sampler: max residue deviation " << worst << " (5 sigma = " << 5.0 * sigma
          << ") " << (pass ? "OK" : "BIASED") << '\n';
    }

    // Residue histogram of the PRF over distinct counter inputs.
    {
      SeededRng rng(opt.seed);
      prf::PrfKey key = prf::PrfKey::random(rng);
      std::vector<uint64_t> counts(q, 0);
      for (uint64_t i = 1; i <= opt.trials; ++i) {
        ++counts[prf::eval_counter(key, i, mod).value()];
      }
      double worst = 0;
      for (uint64_t r = 0; r < q; ++r) {
        worst = std::max(worst, std::abs(static_cast<double>(counts[r]) - n * p));
      }
      bool pass = worst <= 5.0 * sigma;
      ok = ok && pass;
      out << "stat-check prf: max residue deviation " << worst << " (5 sigma = " << 5.0 * sigma
          << ") " << (pass ? "OK" : "BIASED") << '\n';
    }

    return ok ? kExitOk : kExitReject;
  });
}

}  // namespace intermac::cli
