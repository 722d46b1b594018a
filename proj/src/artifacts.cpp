#include "intermac/artifacts.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "intermac/bytes.hpp"

namespace intermac::artifacts {
namespace {

std::vector<uint8_t> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedArtifact("cannot open " + path.string());
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

void write_all(const std::filesystem::path& path, const std::vector<uint8_t>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

void append_header(std::vector<uint8_t>& out, const char* magic, uint64_t q, uint32_t xi,
                   uint32_t m, uint32_t server_id) {
  size_t base = out.size();
  out.resize(base + kHeaderSize, 0);
  std::memcpy(out.data() + base, magic, 8);
  store_be32(kFormatVersion, out.data() + base + 8);
  store_be64(q, out.data() + base + 12);
  store_be32(xi, out.data() + base + 20);
  store_be32(m, out.data() + base + 24);
  store_be32(server_id, out.data() + base + 28);
}

struct Header {
  uint64_t q = 0;
  uint32_t xi = 0;
  uint32_t m = 0;
  uint32_t server_id = 0;
};

Header parse_header(const std::vector<uint8_t>& data, const char* magic,
                    const std::filesystem::path& path) {
  if (data.size() < kHeaderSize) throw MalformedArtifact(path.string() + ": truncated header");
  if (std::memcmp(data.data(), magic, 8) != 0) {
    throw MalformedArtifact(path.string() + ": wrong magic");
  }
  if (load_be32(data.data() + 8) != kFormatVersion) {
    throw MalformedArtifact(path.string() + ": unsupported format version");
  }
  Header h;
  h.q = load_be64(data.data() + 12);
  h.xi = load_be32(data.data() + 20);
  h.m = load_be32(data.data() + 24);
  h.server_id = load_be32(data.data() + 28);
  return h;
}

void check_dims(const Header& h, const Manifest& manifest, const std::filesystem::path& path) {
  if (h.q != manifest.q || h.xi != manifest.xi || h.m != manifest.m) {
    throw MalformedArtifact(path.string() + ": header disagrees with manifest");
  }
}

void append_elements(std::vector<uint8_t>& out, const FieldVector& v) {
  for (uint64_t value : v.values()) append_be64(value, out);
}

FieldVector read_elements(const std::vector<uint8_t>& data, size_t& offset, size_t count,
                          FieldModulus mod, const std::filesystem::path& path) {
  if (data.size() < offset + 8 * count) {
    throw MalformedArtifact(path.string() + ": truncated element block");
  }
  std::vector<uint64_t> values;
  values.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    uint64_t v = load_be64(data.data() + offset);
    if (v >= mod.q()) throw MalformedArtifact(path.string() + ": element out of field range");
    values.push_back(v);
    offset += 8;
  }
  return FieldVector(mod, std::move(values));
}

prf::PrfKey read_prf_key(const std::vector<uint8_t>& data, size_t& offset,
                         const std::filesystem::path& path) {
  if (data.size() < offset + 32) throw MalformedArtifact(path.string() + ": truncated PRF key");
  prf::PrfKey key;
  std::memcpy(key.bytes.data(), data.data() + offset, 32);
  offset += 32;
  return key;
}

void expect_end(const std::vector<uint8_t>& data, size_t offset,
                const std::filesystem::path& path) {
  if (offset != data.size()) throw MalformedArtifact(path.string() + ": trailing bytes");
}

}  // namespace

void Manifest::save(const std::filesystem::path& path) const {
  std::ostringstream out;
  out << "version = " << version << '\n'
      << "q = " << q << '\n'
      << "xi = " << xi << '\n'
      << "m = " << m << '\n'
      << "n = " << n << '\n'
      << "d = " << d << '\n'
      << "seed = " << seed << '\n'
      << "file_length = " << file_length << '\n';
  for (const auto& [name, digest] : digests) {
    out << "digest:" << name << " = " << digest << '\n';
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << out.str();
  if (!f) throw std::runtime_error("short write to " + path.string());
}

Manifest Manifest::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw MalformedArtifact("cannot open manifest " + path.string());
  Manifest m;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    size_t sep = line.find(" = ");
    if (sep == std::string::npos) throw MalformedArtifact("manifest: malformed line: " + line);
    std::string key = line.substr(0, sep);
    std::string value = line.substr(sep + 3);
    try {
      if (key == "version") m.version = static_cast<uint32_t>(std::stoul(value));
      else if (key == "q") m.q = std::stoull(value);
      else if (key == "xi") m.xi = static_cast<uint32_t>(std::stoul(value));
      else if (key == "m") m.m = static_cast<uint32_t>(std::stoul(value));
      else if (key == "n") m.n = static_cast<uint32_t>(std::stoul(value));
      else if (key == "d") m.d = static_cast<uint32_t>(std::stoul(value));
      else if (key == "seed") m.seed = std::stoull(value);
      else if (key == "file_length") m.file_length = std::stoull(value);
      else if (key.rfind("digest:", 0) == 0) m.digests[key.substr(7)] = value;
      else throw MalformedArtifact("manifest: unknown key: " + key);
    } catch (const std::invalid_argument&) {
      throw MalformedArtifact("manifest: bad value for " + key);
    } catch (const std::out_of_range&) {
      throw MalformedArtifact("manifest: value out of range for " + key);
    }
  }
  if (m.version != kFormatVersion) throw MalformedArtifact("manifest: unsupported version");
  return m;
}

size_t bytes_per_element(FieldModulus mod) {
  int bits = 64 - std::countl_zero(mod.q());
  return static_cast<size_t>((bits - 1) / 8);
}

std::vector<uint64_t> pack_bytes(const std::vector<uint8_t>& data, FieldModulus mod) {
  size_t bpe = bytes_per_element(mod);
  if (bpe == 0) {
    throw std::invalid_argument("artifacts: modulus too small to pack bytes (need q > 2^8)");
  }
  std::vector<uint64_t> elements;
  elements.reserve((data.size() + bpe - 1) / bpe);
  for (size_t i = 0; i < data.size(); i += bpe) {
    uint64_t v = 0;
    for (size_t j = 0; j < bpe; ++j) {
      v = (v << 8) | (i + j < data.size() ? data[i + j] : 0);
    }
    elements.push_back(v);
  }
  return elements;
}

std::vector<uint8_t> unpack_bytes(const std::vector<uint64_t>& elements, FieldModulus mod,
                                  uint64_t original_length) {
  size_t bpe = bytes_per_element(mod);
  if (bpe == 0) {
    throw std::invalid_argument("artifacts: modulus too small to pack bytes (need q > 2^8)");
  }
  if (elements.size() * bpe < original_length) {
    throw MalformedArtifact("artifacts: fewer packed elements than the recorded length needs");
  }
  std::vector<uint8_t> data;
  data.reserve(elements.size() * bpe);
  for (uint64_t v : elements) {
    for (size_t j = bpe; j-- > 0;) {
      data.push_back(static_cast<uint8_t>((v >> (8 * j)) & 0xFF));
    }
  }
  data.resize(original_length);
  return data;
}

netcode::SourceFile to_source_file(const std::vector<uint64_t>& elements, uint32_t m,
                                   FieldModulus mod) {
  if (m == 0) throw std::invalid_argument("artifacts: m must be positive");
  size_t xi = std::max<size_t>(1, (elements.size() + m - 1) / m);
  std::vector<FieldVector> blocks;
  blocks.reserve(m);
  for (uint32_t i = 0; i < m; ++i) {
    std::vector<uint64_t> v(xi, 0);
    for (size_t j = 0; j < xi; ++j) {
      size_t idx = static_cast<size_t>(i) * xi + j;
      if (idx < elements.size()) v[j] = elements[idx];
    }
    blocks.emplace_back(mod, std::move(v));
  }
  return netcode::SourceFile(std::move(blocks));
}

void write_client_key(const std::filesystem::path& path, const audit::ClientSecrets& secrets,
                      uint32_t xi, uint32_t m) {
  std::vector<uint8_t> out;
  append_header(out, kMagicClient, secrets.k1.modulus().q(), xi, m, 0);
  append_elements(out, secrets.k1);
  append_elements(out, secrets.k1_mask);
  out.insert(out.end(), secrets.mask_prf_key.bytes.begin(), secrets.mask_prf_key.bytes.end());
  write_all(path, out);
}

audit::ClientSecrets read_client_key(const std::filesystem::path& path, const Manifest& manifest) {
  auto data = read_all(path);
  Header h = parse_header(data, kMagicClient, path);
  check_dims(h, manifest, path);
  FieldModulus mod(h.q);
  size_t dim = static_cast<size_t>(h.xi) + h.m;
  size_t offset = kHeaderSize;
  FieldVector k1 = read_elements(data, offset, dim, mod, path);
  FieldVector mask = read_elements(data, offset, dim, mod, path);
  prf::PrfKey mask_key = read_prf_key(data, offset, path);
  expect_end(data, offset, path);
  return audit::ClientSecrets{std::move(k1), std::move(mask), mask_key};
}

void write_verifier_key(const std::filesystem::path& path, const audit::VerifierKeys& keys,
                        uint32_t xi, uint32_t m) {
  std::vector<uint8_t> out;
  append_header(out, kMagicVerifier, keys.k1_verifier.modulus().q(), xi, m, 0);
  append_elements(out, keys.k1_verifier);
  out.insert(out.end(), keys.prf_key.bytes.begin(), keys.prf_key.bytes.end());
  write_all(path, out);
}

audit::VerifierKeys read_verifier_key(const std::filesystem::path& path,
                                      const Manifest& manifest) {
  auto data = read_all(path);
  Header h = parse_header(data, kMagicVerifier, path);
  check_dims(h, manifest, path);
  FieldModulus mod(h.q);
  size_t dim = static_cast<size_t>(h.xi) + h.m;
  size_t offset = kHeaderSize;
  FieldVector verifier = read_elements(data, offset, dim, mod, path);
  prf::PrfKey k2 = read_prf_key(data, offset, path);
  expect_end(data, offset, path);
  return audit::VerifierKeys{std::move(verifier), k2};
}

void write_source(const std::filesystem::path& path, const netcode::SourceFile& f) {
  std::vector<uint8_t> out;
  append_header(out, kMagicSource, f.modulus().q(), static_cast<uint32_t>(f.block_dim()),
                static_cast<uint32_t>(f.block_count()), 0);
  for (const auto& block : f.blocks()) append_elements(out, block);
  write_all(path, out);
}

netcode::SourceFile read_source(const std::filesystem::path& path, const Manifest& manifest) {
  auto data = read_all(path);
  Header h = parse_header(data, kMagicSource, path);
  check_dims(h, manifest, path);
  FieldModulus mod(h.q);
  size_t offset = kHeaderSize;
  std::vector<FieldVector> blocks;
  blocks.reserve(h.m);
  for (uint32_t i = 0; i < h.m; ++i) {
    blocks.push_back(read_elements(data, offset, h.xi, mod, path));
  }
  expect_end(data, offset, path);
  return netcode::SourceFile(std::move(blocks));
}

void write_server(const std::filesystem::path& path, const audit::ServerState& server, uint32_t xi,
                  uint32_t m) {
  if (server.slots.empty()) throw std::invalid_argument("artifacts: server has no slots");
  std::vector<uint8_t> out;
  append_header(out, kMagicServer, server.slots.front().block.vector.modulus().q(), xi, m,
                server.server_id);
  for (const auto& slot : server.slots) {
    append_elements(out, slot.block.vector);
    append_be64(slot.tag.t.value(), out);
  }
  write_all(path, out);
}

audit::ServerState read_server(const std::filesystem::path& path, const Manifest& manifest,
                               uint32_t expected_server) {
  auto data = read_all(path);
  Header h = parse_header(data, kMagicServer, path);
  check_dims(h, manifest, path);
  if (h.server_id != expected_server) {
    throw MalformedArtifact(path.string() + ": server id mismatch");
  }
  FieldModulus mod(h.q);
  size_t dim = static_cast<size_t>(h.xi) + h.m;
  size_t record = 8 * (dim + 1);
  size_t payload = data.size() - kHeaderSize;
  if (payload % record != 0 || payload / record != manifest.d) {
    throw MalformedArtifact(path.string() + ": slot count disagrees with manifest");
  }

  audit::ServerState state;
  state.server_id = h.server_id;
  size_t offset = kHeaderSize;
  for (uint32_t v = 1; v <= manifest.d; ++v) {
    FieldVector vec = read_elements(data, offset, dim, mod, path);
    FieldVector tag = read_elements(data, offset, 1, mod, path);
    netcode::CodedBlock cb{std::move(vec), h.server_id, v};
    state.slots.push_back(
        audit::TaggedBlock{std::move(cb), mac::TagValue{tag[0], std::nullopt}});
  }
  expect_end(data, offset, path);
  return state;
}

std::string sha256_file_hex(const std::filesystem::path& path) {
  auto data = read_all(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("artifacts: SHA-256 failed");
  }
  return to_hex(digest, len);
}

std::string server_file_name(uint32_t server_id) {
  return "server_" + std::to_string(server_id) + ".imc";
}

}  // namespace intermac::artifacts
