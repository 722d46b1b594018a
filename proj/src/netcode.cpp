#include "intermac/netcode.hpp"

#include <string>
#include <utility>

namespace intermac::netcode {

SourceFile::SourceFile(std::vector<FieldVector> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("netcode: file needs at least one block");
  for (const auto& b : blocks_) {
    if (b.modulus() != blocks_.front().modulus()) {
      throw std::invalid_argument("netcode: blocks must share one modulus");
    }
    if (b.dim() != blocks_.front().dim()) {
      throw std::invalid_argument("netcode: blocks must share one dimension");
    }
  }
}

std::vector<AugmentedBlock> augment(const SourceFile& f) {
  size_t m = f.block_count();
  size_t xi = f.block_dim();
  std::vector<AugmentedBlock> out;
  out.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    std::vector<uint64_t> v = f.blocks()[i].values();
    v.resize(xi + m, 0);
    v[xi + i] = 1;
    out.push_back(AugmentedBlock{FieldVector(f.modulus(), std::move(v)), i + 1});
  }
  return out;
}

CodedBlock combine(const std::vector<AugmentedBlock>& blocks,
                   const std::vector<FieldElement>& coefficients) {
  if (blocks.empty()) throw std::invalid_argument("netcode: nothing to combine");
  if (coefficients.size() != blocks.size()) {
    throw std::invalid_argument("netcode: need one coefficient per block");
  }
  FieldVector acc = scalar_mul(coefficients[0], blocks[0].vector);
  for (size_t i = 1; i < blocks.size(); ++i) {
    acc = vec_add(acc, scalar_mul(coefficients[i], blocks[i].vector));
  }
  return CodedBlock{std::move(acc)};
}

CodedBlock encode(const std::vector<AugmentedBlock>& blocks, SeededRng& rng) {
  if (blocks.empty()) throw std::invalid_argument("netcode: nothing to encode");
  FieldModulus mod = blocks.front().vector.modulus();
  std::vector<FieldElement> alphas;
  alphas.reserve(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i) alphas.push_back(sample_uniform(mod, rng));
  return combine(blocks, alphas);
}

SourceFile decode(const std::vector<CodedBlock>& coded) {
  size_t m = coded.size();
  if (m == 0) throw std::invalid_argument("netcode: nothing to decode");
  FieldModulus mod = coded.front().vector.modulus();
  size_t full_dim = coded.front().vector.dim();
  if (full_dim <= m) {
    throw std::invalid_argument("netcode: coded blocks of dimension " + std::to_string(full_dim) +
                                " cannot carry " + std::to_string(m) + " coefficients");
  }
  size_t xi = full_dim - m;
  for (const auto& c : coded) {
    if (c.vector.modulus() != mod || c.vector.dim() != full_dim) {
      throw std::invalid_argument("netcode: coded blocks must share modulus and dimension");
    }
  }

  // Coefficient matrix from the tails; right-hand rows are the blocks.
  std::vector<FieldVector> tails;
  std::vector<FieldVector> rhs;
  tails.reserve(m);
  rhs.reserve(m);
  for (const auto& c : coded) {
    const auto& v = c.vector.values();
    tails.emplace_back(mod, std::vector<uint64_t>(v.begin() + xi, v.end()));
    rhs.push_back(c.vector);
  }
  std::vector<FieldVector> augmented = solve(FieldMatrix(std::move(tails)), rhs);

  std::vector<FieldVector> blocks;
  blocks.reserve(m);
  for (const auto& w : augmented) {
    blocks.emplace_back(mod, std::vector<uint64_t>(w.values().begin(), w.values().begin() + xi));
  }
  return SourceFile(std::move(blocks));
}

double full_rank_rate(FieldModulus q, size_t m, size_t trials, SeededRng& rng) {
  if (m == 0) throw std::invalid_argument("netcode: m must be positive");
  if (trials == 0) throw std::invalid_argument("netcode: need at least one trial");
  size_t full = 0;
  for (size_t t = 0; t < trials; ++t) {
    std::vector<FieldVector> rows;
    rows.reserve(m);
    for (size_t i = 0; i < m; ++i) rows.push_back(FieldVector::random(q, m, rng));
    if (rank(FieldMatrix(std::move(rows))) == m) ++full;
  }
  return static_cast<double>(full) / static_cast<double>(trials);
}

}  // namespace intermac::netcode
