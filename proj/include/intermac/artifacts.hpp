#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "intermac/audit.hpp"
#include "intermac/netcode.hpp"

namespace intermac::artifacts {

// Every binary artifact starts with the same 32-byte header:
//
//   [0,8)   magic, ASCII
//   [8,12)  format version, u32 big-endian (currently 1)
//   [12,20) q, u64 big-endian
//   [20,24) xi, u32 big-endian
//   [24,28) m, u32 big-endian
//   [28,32) server id, u32 big-endian (0 where not applicable)
//
// followed by 8-byte big-endian field elements in row-major order; PRF keys
// are appended as raw 32 bytes.
inline constexpr uint32_t kFormatVersion = 1;
inline constexpr size_t kHeaderSize = 32;
inline constexpr char kMagicClient[9] = "IMACKEYC";
inline constexpr char kMagicVerifier[9] = "IMACKEYV";
inline constexpr char kMagicServer[9] = "IMACSRVB";
inline constexpr char kMagicSource[9] = "IMACSRCF";

struct MalformedArtifact : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Human-readable key/value companion; decoding any artifact needs only this
// plus the artifact itself.
struct Manifest {
  uint32_t version = kFormatVersion;
  uint64_t q = 0;
  uint32_t xi = 0;
  uint32_t m = 0;
  uint32_t n = 0;
  uint32_t d = 0;
  uint64_t seed = 0;
  uint64_t file_length = 0;
  std::map<std::string, std::string> digests;  // file name -> SHA-256 hex

  void save(const std::filesystem::path& path) const;
  static Manifest load(const std::filesystem::path& path);
};

// --- byte <-> field element packing -----------------------------------------

// Bytes per element: floor((bitlen(q) - 1) / 8). Zero means the modulus is
// too small to pack whole bytes (the CLI rejects such moduli for file
// commands; desk-scale fields still work for everything else).
size_t bytes_per_element(FieldModulus mod);

// Big-endian groups of bytes_per_element bytes, the last group zero-padded.
// Injective given the original length, which the manifest records.
std::vector<uint64_t> pack_bytes(const std::vector<uint8_t>& data, FieldModulus mod);
std::vector<uint8_t> unpack_bytes(const std::vector<uint64_t>& elements, FieldModulus mod,
                                  uint64_t original_length);

// Splits packed elements into m blocks of dimension xi = ceil(count / m)
// (minimum 1), zero-padding the tail.
netcode::SourceFile to_source_file(const std::vector<uint64_t>& elements, uint32_t m,
                                   FieldModulus mod);

// --- artifact I/O ------------------------------------------------------------

void write_client_key(const std::filesystem::path& path, const audit::ClientSecrets& secrets,
                      uint32_t xi, uint32_t m);
audit::ClientSecrets read_client_key(const std::filesystem::path& path, const Manifest& manifest);

void write_verifier_key(const std::filesystem::path& path, const audit::VerifierKeys& keys,
                        uint32_t xi, uint32_t m);
audit::VerifierKeys read_verifier_key(const std::filesystem::path& path, const Manifest& manifest);

void write_source(const std::filesystem::path& path, const netcode::SourceFile& f);
netcode::SourceFile read_source(const std::filesystem::path& path, const Manifest& manifest);

void write_server(const std::filesystem::path& path, const audit::ServerState& server, uint32_t xi,
                  uint32_t m);
audit::ServerState read_server(const std::filesystem::path& path, const Manifest& manifest,
                               uint32_t expected_server);

std::string sha256_file_hex(const std::filesystem::path& path);

std::string server_file_name(uint32_t server_id);

}  // namespace intermac::artifacts
