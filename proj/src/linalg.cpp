#include "intermac/linalg.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace intermac {
namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  uint64_t s = a + b;
  if (s >= m) s -= m;
  return s;
}

uint64_t submod(uint64_t a, uint64_t b, uint64_t m) { return a >= b ? a - b : a + m - b; }

uint64_t invmod(uint64_t a, uint64_t q) {
  uint64_t acc = 1 % q;
  uint64_t base = a;
  uint64_t e = q - 2;
  while (e > 0) {
    if (e & 1) acc = mulmod(acc, base, q);
    base = mulmod(base, base, q);
    e >>= 1;
  }
  return acc;
}

void require_same_modulus(FieldModulus a, FieldModulus b) {
  if (a != b) throw std::invalid_argument("linalg: operands have different moduli");
}

void require_same_dim(size_t a, size_t b) {
  if (a != b) {
    throw std::invalid_argument("linalg: dimension mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

// Row-reduce `work` in place; returns pivot columns. Pivots are only chosen
// among the first `pivot_col_limit` columns, so an augmented system never
// pivots inside its right-hand block. `work` holds canonical representatives
// mod q.
std::vector<size_t> reduce(std::vector<std::vector<uint64_t>>& work, uint64_t q,
                           size_t pivot_col_limit) {
  size_t rows = work.size();
  size_t cols = work.front().size();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t col = 0; col < pivot_col_limit && r < rows; ++col) {
    size_t pivot_row = r;
    while (pivot_row < rows && work[pivot_row][col] == 0) ++pivot_row;
    if (pivot_row == rows) continue;
    std::swap(work[r], work[pivot_row]);
    uint64_t scale = invmod(work[r][col], q);
    for (size_t j = col; j < cols; ++j) work[r][j] = mulmod(work[r][j], scale, q);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || work[i][col] == 0) continue;
      uint64_t factor = work[i][col];
      for (size_t j = col; j < cols; ++j) {
        work[i][j] = submod(work[i][j], mulmod(factor, work[r][j], q), q);
      }
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

FieldVector::FieldVector(FieldModulus mod, std::vector<uint64_t> values)
    : mod_(mod), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("FieldVector: dimension must be positive");
  for (auto& v : values_) v %= mod_.q();
}

FieldVector::FieldVector(const std::vector<FieldElement>& values)
    : mod_(values.empty() ? throw std::invalid_argument("FieldVector: dimension must be positive")
                          : values.front().modulus()) {
  values_.reserve(values.size());
  for (const auto& e : values) {
    require_same_modulus(mod_, e.modulus());
    values_.push_back(e.value());
  }
}

FieldVector FieldVector::zero(FieldModulus mod, size_t dim) {
  return FieldVector(mod, std::vector<uint64_t>(dim, 0));
}

FieldVector FieldVector::random(FieldModulus mod, size_t dim, SeededRng& rng) {
  std::vector<uint64_t> v;
  v.reserve(dim);
  for (size_t i = 0; i < dim; ++i) v.push_back(sample_uniform(mod, rng).value());
  return FieldVector(mod, std::move(v));
}

bool FieldVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](uint64_t v) { return v == 0; });
}

bool operator==(const FieldVector& a, const FieldVector& b) {
  require_same_modulus(a.mod_, b.mod_);
  return a.values_ == b.values_;
}

FieldElement dot(const FieldVector& a, const FieldVector& b) {
  require_same_modulus(a.modulus(), b.modulus());
  require_same_dim(a.dim(), b.dim());
  uint64_t q = a.modulus().q();
  uint64_t acc = 0;
  for (size_t i = 0; i < a.dim(); ++i) {
    acc = addmod(acc, mulmod(a.values()[i], b.values()[i], q), q);
  }
  return FieldElement(acc, a.modulus());
}

FieldVector vec_add(const FieldVector& a, const FieldVector& b) {
  require_same_modulus(a.modulus(), b.modulus());
  require_same_dim(a.dim(), b.dim());
  uint64_t q = a.modulus().q();
  std::vector<uint64_t> out(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) out[i] = addmod(a.values()[i], b.values()[i], q);
  return FieldVector(a.modulus(), std::move(out));
}

FieldVector vec_sub(const FieldVector& a, const FieldVector& b) {
  require_same_modulus(a.modulus(), b.modulus());
  require_same_dim(a.dim(), b.dim());
  uint64_t q = a.modulus().q();
  std::vector<uint64_t> out(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) out[i] = submod(a.values()[i], b.values()[i], q);
  return FieldVector(a.modulus(), std::move(out));
}

FieldVector scalar_mul(FieldElement s, const FieldVector& a) {
  require_same_modulus(s.modulus(), a.modulus());
  uint64_t q = a.modulus().q();
  std::vector<uint64_t> out(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) out[i] = mulmod(s.value(), a.values()[i], q);
  return FieldVector(a.modulus(), std::move(out));
}

FieldMatrix::FieldMatrix(std::vector<FieldVector> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw std::invalid_argument("FieldMatrix: must have at least one row");
  for (const auto& r : rows_) {
    require_same_modulus(rows_.front().modulus(), r.modulus());
    require_same_dim(rows_.front().dim(), r.dim());
  }
}

FieldMatrix FieldMatrix::identity(FieldModulus mod, size_t n) {
  std::vector<FieldVector> rows;
  rows.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint64_t> v(n, 0);
    v[i] = 1 % mod.q();
    rows.emplace_back(mod, std::move(v));
  }
  return FieldMatrix(std::move(rows));
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.row_count() != b.row_count()) return false;
  for (size_t i = 0; i < a.row_count(); ++i) {
    if (a.row(i) != b.row(i)) return false;
  }
  return true;
}

RrefResult rref(const FieldMatrix& m) {
  uint64_t q = m.modulus().q();
  std::vector<std::vector<uint64_t>> work;
  work.reserve(m.row_count());
  for (const auto& r : m.rows()) work.push_back(r.values());
  auto pivots = reduce(work, q, m.col_count());

  std::vector<FieldVector> out_rows;
  out_rows.reserve(work.size());
  for (auto& r : work) out_rows.emplace_back(m.modulus(), std::move(r));
  return RrefResult{FieldMatrix(std::move(out_rows)), pivots.size(), std::move(pivots)};
}

size_t rank(const FieldMatrix& m) { return rref(m).rank; }

std::vector<FieldVector> null_space_basis(const FieldMatrix& m) {
  auto rr = rref(m);
  size_t cols = m.col_count();
  uint64_t q = m.modulus().q();

  std::vector<bool> is_pivot(cols, false);
  for (size_t c : rr.pivot_cols) is_pivot[c] = true;

  std::vector<FieldVector> basis;
  basis.reserve(cols - rr.rank);
  for (size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<uint64_t> u(cols, 0);
    u[free_col] = 1 % q;
    // Back-substitution: pivot row i fixes coordinate pivot_cols[i].
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
      uint64_t coeff = rr.matrix.at(i, free_col).value();
      u[rr.pivot_cols[i]] = coeff == 0 ? 0 : q - coeff;
    }
    basis.emplace_back(m.modulus(), std::move(u));
  }
  return basis;
}

std::vector<FieldVector> solve(const FieldMatrix& m, const std::vector<FieldVector>& rhs) {
  size_t n = m.row_count();
  if (m.col_count() != n) throw std::invalid_argument("solve: matrix must be square");
  if (rhs.size() != n) throw std::invalid_argument("solve: need one right-hand row per matrix row");
  size_t k = rhs.front().dim();
  uint64_t q = m.modulus().q();
  for (const auto& r : rhs) {
    require_same_modulus(m.modulus(), r.modulus());
    require_same_dim(k, r.dim());
  }

  std::vector<std::vector<uint64_t>> work(n);
  for (size_t i = 0; i < n; ++i) {
    work[i].reserve(n + k);
    work[i] = m.row(i).values();
    work[i].insert(work[i].end(), rhs[i].values().begin(), rhs[i].values().end());
  }
  auto pivots = reduce(work, q, n);
  if (pivots.size() < n) throw SingularMatrixError();

  std::vector<FieldVector> x;
  x.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    x.emplace_back(m.modulus(), std::vector<uint64_t>(work[i].begin() + n, work[i].end()));
  }
  return x;
}

}  // namespace intermac
