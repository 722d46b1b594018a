#pragma once

#include <cstdint>
#include <vector>

#include "intermac/linalg.hpp"

namespace intermac::netcode {

// The original file F = v_1 || ... || v_m: m blocks, each a vector of
// dimension xi over one modulus.
class SourceFile {
 public:
  explicit SourceFile(std::vector<FieldVector> blocks);

  const std::vector<FieldVector>& blocks() const { return blocks_; }
  size_t block_count() const { return blocks_.size(); }   // m
  size_t block_dim() const { return blocks_.front().dim(); }  // xi
  FieldModulus modulus() const { return blocks_.front().modulus(); }

  friend bool operator==(const SourceFile& a, const SourceFile& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<FieldVector> blocks_;
};

// w_i = (v_i, e_i): the source block followed by the i-th unit vector of
// length m. The unit tails make the augmented family linearly independent
// and let every coded block carry its own coefficients.
struct AugmentedBlock {
  FieldVector vector;  // dimension xi + m
  size_t index;        // 1-based position i
};

// A random linear combination of augmented blocks. The last m coordinates
// are the accumulated coefficients. server/slot are 0 until the block is
// placed by audit::setup or the distribute command.
struct CodedBlock {
  FieldVector vector;
  uint32_t server = 0;
  uint32_t slot = 0;
};

std::vector<AugmentedBlock> augment(const SourceFile& f);

// c = sum_i alpha_i w_i for explicit coefficients.
CodedBlock combine(const std::vector<AugmentedBlock>& blocks,
                   const std::vector<FieldElement>& coefficients);

// combine() under fresh uniform coefficients (zero included; rank problems
// surface in decode, not here).
CodedBlock encode(const std::vector<AugmentedBlock>& blocks, SeededRng& rng);

// Recovers the file from exactly m coded blocks: reads the coefficient
// matrix off the tails, solves for the augmented blocks, strips the tails.
// Throws SingularMatrixError when the tails are dependent; the caller picks
// different blocks and tries again.
SourceFile decode(const std::vector<CodedBlock>& coded);

// Empirical probability that m uniform coefficient vectors in GF(q)^m are
// linearly independent; compared against prod_{i=1..m} (1 - q^-i) in tests.
double full_rank_rate(FieldModulus q, size_t m, size_t trials, SeededRng& rng);

}  // namespace intermac::netcode
