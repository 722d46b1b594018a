#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "intermac/field.hpp"

namespace intermac {

// Thrown when a linear system has no unique solution. Callers that feed
// random coded blocks in (netcode::decode, the reconstruct command) catch
// this and retry with different blocks.
struct SingularMatrixError : std::runtime_error {
  SingularMatrixError() : std::runtime_error("matrix is singular") {}
};

// Fixed-dimension vector over GF(q). All entries share one modulus and the
// value is immutable after construction.
class FieldVector {
 public:
  FieldVector(FieldModulus mod, std::vector<uint64_t> values);
  explicit FieldVector(const std::vector<FieldElement>& values);

  static FieldVector zero(FieldModulus mod, size_t dim);
  static FieldVector random(FieldModulus mod, size_t dim, SeededRng& rng);

  size_t dim() const { return values_.size(); }
  FieldModulus modulus() const { return mod_; }
  FieldElement operator[](size_t i) const { return FieldElement(values_[i], mod_); }
  const std::vector<uint64_t>& values() const { return values_; }
  bool is_zero() const;

  friend bool operator==(const FieldVector& a, const FieldVector& b);
  friend bool operator!=(const FieldVector& a, const FieldVector& b) { return !(a == b); }

 private:
  FieldModulus mod_;
  std::vector<uint64_t> values_;
};

FieldElement dot(const FieldVector& a, const FieldVector& b);
FieldVector vec_add(const FieldVector& a, const FieldVector& b);
FieldVector vec_sub(const FieldVector& a, const FieldVector& b);
FieldVector scalar_mul(FieldElement s, const FieldVector& a);

// Dense row-major matrix: a nonempty rectangular stack of FieldVectors.
class FieldMatrix {
 public:
  explicit FieldMatrix(std::vector<FieldVector> rows);

  static FieldMatrix identity(FieldModulus mod, size_t n);

  size_t row_count() const { return rows_.size(); }
  size_t col_count() const { return rows_.front().dim(); }
  FieldModulus modulus() const { return rows_.front().modulus(); }
  const FieldVector& row(size_t i) const { return rows_[i]; }
  const std::vector<FieldVector>& rows() const { return rows_; }
  FieldElement at(size_t r, size_t c) const { return rows_[r][c]; }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

 private:
  std::vector<FieldVector> rows_;
};

struct RrefResult {
  FieldMatrix matrix;
  size_t rank;
  std::vector<size_t> pivot_cols;
};

// Reduced row echelon form with a deterministic pivot rule: the pivot for
// the leftmost unresolved column is the first row, top-down, with a nonzero
// entry there. Determinism makes every downstream basis golden-testable.
RrefResult rref(const FieldMatrix& m);

size_t rank(const FieldMatrix& m);

// Canonical basis of { u : M u^T = 0 }: one vector per free column of the
// RREF, with the free variable set to 1 and the other free variables 0,
// ordered by free-column index. Returns exactly (cols - rank) vectors.
std::vector<FieldVector> null_space_basis(const FieldMatrix& m);

// Solves M X = RHS for square invertible M, where the i-th entry of `rhs`
// is row i of RHS and row i of X is returned. Throws SingularMatrixError
// when M is not invertible.
std::vector<FieldVector> solve(const FieldMatrix& m, const std::vector<FieldVector>& rhs);

}  // namespace intermac
