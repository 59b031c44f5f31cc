#pragma once

// Test-only reference implementations. The rank / membership routines here are
// a dense fraction-free elimination (Bareiss) kept deliberately independent of
// the sparse echelon code in the library, so the two can cross-check each
// other on random instances.

#include "koz/linalg.hpp"

#include <random>
#include <vector>

namespace koz_test {

using koz::BigInt;
using koz::Field;
using koz::Scalar;
using koz::SparseMatrix;
using koz::SparseVec;
using koz::WordIndex;

using DenseMat = std::vector<std::vector<Scalar>>;

inline DenseMat dense_of(const SparseMatrix& m) {
  DenseMat a(static_cast<size_t>(m.rows),
             std::vector<Scalar>(static_cast<size_t>(m.cols), Scalar(0)));
  for (WordIndex r = 0; r < m.rows; ++r)
    for (const auto& [c, v] : m.row[static_cast<size_t>(r)])
      a[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
  return a;
}

inline DenseMat dense_of_rows(const std::vector<SparseVec>& rows, WordIndex cols) {
  DenseMat a(rows.size(), std::vector<Scalar>(static_cast<size_t>(cols), Scalar(0)));
  for (size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : rows[r]) a[r][static_cast<size_t>(c)] = v;
  return a;
}

/// Clear denominators row by row so the rational case runs on integers and
/// every intermediate division in the elimination below is exact.
inline void clear_denominators(const Field& F, DenseMat& a) {
  if (!F.is_rational()) return;
  for (auto& row : a) {
    BigInt l = 1;
    for (const auto& x : row)
      l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    if (l != 1)
      for (auto& x : row) x *= Scalar(l);
  }
}

/// Rank by dense fraction-free (Bareiss) elimination with column pivoting.
inline long bareiss_rank(const Field& F, DenseMat a) {
  clear_denominators(F, a);
  const long rows = static_cast<long>(a.size());
  const long cols = rows ? static_cast<long>(a[0].size()) : 0;
  Scalar prev = F.from_int(1);
  long rank = 0;
  for (long col = 0; col < cols && rank < rows; ++col) {
    long piv = -1;
    for (long r = rank; r < rows; ++r) {
      if (!F.is_zero(a[static_cast<size_t>(r)][static_cast<size_t>(col)])) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[static_cast<size_t>(rank)], a[static_cast<size_t>(piv)]);
    const auto& prow = a[static_cast<size_t>(rank)];
    for (long r = rank + 1; r < rows; ++r) {
      auto& row = a[static_cast<size_t>(r)];
      Scalar head = row[static_cast<size_t>(col)];
      for (long c = col + 1; c < cols; ++c) {
        row[static_cast<size_t>(c)] =
            F.div(F.sub(F.mul(prow[static_cast<size_t>(col)], row[static_cast<size_t>(c)]),
                        F.mul(head, prow[static_cast<size_t>(c)])),
                  prev);
      }
      row[static_cast<size_t>(col)] = F.from_int(0);
    }
    prev = prow[static_cast<size_t>(col)];
    ++rank;
  }
  return rank;
}

inline long oracle_rank(const Field& F, const SparseMatrix& m) {
  return bareiss_rank(F, dense_of(m));
}

inline long oracle_rank_rows(const Field& F, const std::vector<SparseVec>& rows,
                             WordIndex cols) {
  return bareiss_rank(F, dense_of_rows(rows, cols));
}

/// Membership of v in the row space of m, decided by rank comparison.
inline bool oracle_in_rowspace(const Field& F, const SparseMatrix& m, const SparseVec& v) {
  DenseMat a = dense_of(m);
  DenseMat b = a;
  b.push_back(std::vector<Scalar>(static_cast<size_t>(m.cols), Scalar(0)));
  for (const auto& [c, x] : v) b.back()[static_cast<size_t>(c)] = x;
  return bareiss_rank(F, a) == bareiss_rank(F, b);
}

/// Same row space, decided by ranks of the stacked matrices.
inline bool oracle_same_rowspace(const Field& F, const SparseMatrix& a,
                                 const SparseMatrix& b) {
  DenseMat da = dense_of(a), db = dense_of(b);
  DenseMat stacked = da;
  stacked.insert(stacked.end(), db.begin(), db.end());
  long ra = bareiss_rank(F, da);
  long rb = bareiss_rank(F, db);
  long rs = bareiss_rank(F, stacked);
  return ra == rb && rb == rs;
}

/// Deterministic random scalar with small integer value in [-3, 3].
inline Scalar random_scalar(const Field& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-3, 3);
  return F.from_int(dist(rng));
}

inline SparseMatrix random_matrix(const Field& F, std::mt19937_64& rng, WordIndex rows,
                                  WordIndex cols, double density = 0.6) {
  SparseMatrix m(rows, cols);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (WordIndex r = 0; r < rows; ++r)
    for (WordIndex c = 0; c < cols; ++c)
      if (coin(rng) < density) m.set(F, r, c, random_scalar(F, rng));
  return m;
}

inline SparseVec random_vector(const Field& F, std::mt19937_64& rng, WordIndex dim,
                               double density = 0.6) {
  SparseVec v;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (WordIndex c = 0; c < dim; ++c) {
    if (coin(rng) < density) {
      Scalar s = random_scalar(F, rng);
      if (!F.is_zero(s)) v.emplace_back(c, s);
    }
  }
  return v;
}

}  // namespace koz_test
