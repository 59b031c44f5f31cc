#pragma once

#include "koz/field.hpp"
#include "koz/word.hpp"

#include <map>
#include <utility>
#include <vector>

namespace koz {

/// Sparse vector: (index, coefficient) pairs, sorted by index, no zeros.
using SparseVec = std::vector<std::pair<WordIndex, Scalar>>;

SparseVec sv_scale(const Field& F, const SparseVec& v, const Scalar& c);
/// v + c*w
SparseVec sv_axpy(const Field& F, const SparseVec& v, const Scalar& c, const SparseVec& w);
Scalar sv_get(const SparseVec& v, WordIndex idx);
/// Dot product of coefficient vectors (word-to-dual-word pairing).
Scalar sv_dot(const Field& F, const SparseVec& a, const SparseVec& b);
SparseVec sv_normalized(const Field& F, std::map<WordIndex, Scalar>&& acc);

/// Sparse matrix over the field, row-major. Maps column vectors:
/// (M x)_r = sum_c M[r][c] x_c, i.e. columns index the domain.
struct SparseMatrix {
  WordIndex rows = 0;
  WordIndex cols = 0;
  std::vector<SparseVec> row;

  SparseMatrix() = default;
  SparseMatrix(WordIndex r, WordIndex c) : rows(r), cols(c), row(static_cast<size_t>(r)) {}

  static SparseMatrix identity(const Field& F, WordIndex n);
  void set(const Field& F, WordIndex r, WordIndex c, const Scalar& v);
  Scalar get(WordIndex r, WordIndex c) const;
  bool is_zero() const;
};

SparseMatrix sm_mul(const Field& F, const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sm_add(const Field& F, const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sm_scale(const Field& F, const SparseMatrix& a, const Scalar& c);
SparseMatrix sm_transpose(const SparseMatrix& a);
SparseVec sm_apply(const Field& F, const SparseMatrix& a, const SparseVec& x);
bool sm_equal(const Field& F, const SparseMatrix& a, const SparseMatrix& b);

/// Incremental reduced-row-echelon container. Rows are normalized (pivot 1),
/// the pivot is the smallest-index nonzero entry, and pivot columns are zero
/// in every other row; the stored basis is the unique RREF of the row space.
class Echelon {
 public:
  explicit Echelon(const Field& F) : F_(F) {}

  /// Fully reduce v against the current rows.
  SparseVec reduce(SparseVec v) const;

  /// Reduce and insert if independent. Returns true when the rank grew.
  bool insert(SparseVec v);

  long rank() const { return static_cast<long>(rows_.size()); }
  const std::map<WordIndex, SparseVec>& rows() const { return rows_; }
  bool is_pivot(WordIndex c) const { return rows_.count(c) != 0; }

  /// Rows sorted by pivot column.
  std::vector<SparseVec> basis() const;
  std::vector<WordIndex> pivots() const;

 private:
  const Field& F_;
  std::map<WordIndex, SparseVec> rows_;  // pivot column -> row
};

struct RrefResult {
  SparseMatrix m;  // RREF rows (only the nonzero ones), same cols
  std::vector<WordIndex> pivots;
  long rank = 0;
};

RrefResult rref(const Field& F, const SparseMatrix& m);
long rank_of(const Field& F, const SparseMatrix& m);

/// Basis of {x : M x = 0}, echelonized, one vector per row.
SparseMatrix kernel(const Field& F, const SparseMatrix& m);

/// Exact inverse; throws PreconditionError when singular.
SparseMatrix sm_inverse(const Field& F, const SparseMatrix& m);

/// Solve M x = b; returns false when inconsistent. When solvable, x is the
/// particular solution with free variables set to zero.
bool sm_solve(const Field& F, const SparseMatrix& m, const SparseVec& b, SparseVec& x_out);

}  // namespace koz
