#include "koz/linalg.hpp"

#include <algorithm>

namespace koz {

SparseVec sv_scale(const Field& F, const SparseVec& v, const Scalar& c) {
  if (F.is_zero(c)) return {};
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, a] : v) {
    Scalar x = F.mul(a, c);
    if (!F.is_zero(x)) out.emplace_back(i, std::move(x));
  }
  return out;
}

SparseVec sv_axpy(const Field& F, const SparseVec& v, const Scalar& c, const SparseVec& w) {
  if (F.is_zero(c)) return v;
  SparseVec out;
  out.reserve(v.size() + w.size());
  size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j >= w.size() || (i < v.size() && v[i].first < w[j].first)) {
      out.push_back(v[i++]);
    } else if (i >= v.size() || w[j].first < v[i].first) {
      Scalar x = F.mul(c, w[j].second);
      if (!F.is_zero(x)) out.emplace_back(w[j].first, std::move(x));
      ++j;
    } else {
      Scalar x = F.add(v[i].second, F.mul(c, w[j].second));
      if (!F.is_zero(x)) out.emplace_back(v[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  return out;
}

Scalar sv_get(const SparseVec& v, WordIndex idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx,
                             [](const auto& p, WordIndex k) { return p.first < k; });
  if (it != v.end() && it->first == idx) return it->second;
  return Scalar(0);
}

Scalar sv_dot(const Field& F, const SparseVec& a, const SparseVec& b) {
  Scalar acc(0);
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (b[j].first < a[i].first) ++j;
    else acc = F.add(acc, F.mul(a[i++].second, b[j++].second));
  }
  return acc;
}

SparseVec sv_normalized(const Field& F, std::map<WordIndex, Scalar>&& acc) {
  SparseVec out;
  out.reserve(acc.size());
  for (auto& [i, c] : acc) {
    Scalar x = F.canon(c);
    if (!F.is_zero(x)) out.emplace_back(i, std::move(x));
  }
  return out;
}

SparseMatrix SparseMatrix::identity(const Field& F, WordIndex n) {
  SparseMatrix m(n, n);
  for (WordIndex i = 0; i < n; ++i) m.row[i].emplace_back(i, F.from_int(1));
  return m;
}

void SparseMatrix::set(const Field& F, WordIndex r, WordIndex c, const Scalar& v) {
  auto& rw = row[static_cast<size_t>(r)];
  auto it = std::lower_bound(rw.begin(), rw.end(), c,
                             [](const auto& p, WordIndex k) { return p.first < k; });
  Scalar x = F.canon(v);
  if (it != rw.end() && it->first == c) {
    if (F.is_zero(x)) rw.erase(it);
    else it->second = x;
  } else if (!F.is_zero(x)) {
    rw.insert(it, {c, x});
  }
}

Scalar SparseMatrix::get(WordIndex r, WordIndex c) const {
  return sv_get(row[static_cast<size_t>(r)], c);
}

bool SparseMatrix::is_zero() const {
  for (const auto& r : row)
    if (!r.empty()) return false;
  return true;
}

SparseMatrix sm_mul(const Field& F, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw DimensionMismatchError("matrix product shape mismatch");
  SparseMatrix c(a.rows, b.cols);
  for (WordIndex i = 0; i < a.rows; ++i) {
    std::map<WordIndex, Scalar> acc;
    for (const auto& [k, av] : a.row[static_cast<size_t>(i)]) {
      for (const auto& [j, bv] : b.row[static_cast<size_t>(k)]) {
        acc[j] += av * bv;
      }
    }
    c.row[static_cast<size_t>(i)] = sv_normalized(F, std::move(acc));
  }
  return c;
}

SparseMatrix sm_add(const Field& F, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatchError("matrix sum shape mismatch");
  SparseMatrix c(a.rows, a.cols);
  for (WordIndex i = 0; i < a.rows; ++i) {
    c.row[static_cast<size_t>(i)] =
        sv_axpy(F, a.row[static_cast<size_t>(i)], F.from_int(1), b.row[static_cast<size_t>(i)]);
  }
  return c;
}

SparseMatrix sm_scale(const Field& F, const SparseMatrix& a, const Scalar& c) {
  SparseMatrix out(a.rows, a.cols);
  for (WordIndex i = 0; i < a.rows; ++i)
    out.row[static_cast<size_t>(i)] = sv_scale(F, a.row[static_cast<size_t>(i)], c);
  return out;
}

SparseMatrix sm_transpose(const SparseMatrix& a) {
  SparseMatrix t(a.cols, a.rows);
  for (WordIndex i = 0; i < a.rows; ++i)
    for (const auto& [j, v] : a.row[static_cast<size_t>(i)])
      t.row[static_cast<size_t>(j)].emplace_back(i, v);
  return t;  // rows built in increasing column order: already sorted
}

SparseVec sm_apply(const Field& F, const SparseMatrix& a, const SparseVec& x) {
  std::map<WordIndex, Scalar> acc;
  for (WordIndex i = 0; i < a.rows; ++i) {
    Scalar v = sv_dot(F, a.row[static_cast<size_t>(i)], x);
    if (!F.is_zero(v)) acc[i] = v;
  }
  return sv_normalized(F, std::move(acc));
}

bool sm_equal(const Field& F, const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (WordIndex i = 0; i < a.rows; ++i) {
    SparseVec diff = sv_axpy(F, a.row[static_cast<size_t>(i)], F.from_int(-1),
                             b.row[static_cast<size_t>(i)]);
    if (!diff.empty()) return false;
  }
  return true;
}

SparseVec Echelon::reduce(SparseVec v) const {
  // rows have their pivot as smallest index, so a single left-to-right pass
  // suffices: subtracting a pivot row only touches columns >= the pivot.
  size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    v = sv_axpy(F_, v, F_.neg(v[pos].second), it->second);
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Scalar lead = v.front().second;
  if (!F_.eq(lead, F_.from_int(1))) v = sv_scale(F_, v, F_.inv(lead));
  WordIndex p = v.front().first;
  for (auto& [q, row] : rows_) {
    Scalar c = sv_get(row, p);
    if (!F_.is_zero(c)) row = sv_axpy(F_, row, F_.neg(c), v);
  }
  rows_.emplace(p, std::move(v));
  return true;
}

std::vector<SparseVec> Echelon::basis() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& [p, r] : rows_) out.push_back(r);
  return out;
}

std::vector<WordIndex> Echelon::pivots() const {
  std::vector<WordIndex> out;
  out.reserve(rows_.size());
  for (const auto& [p, r] : rows_) out.push_back(p);
  return out;
}

RrefResult rref(const Field& F, const SparseMatrix& m) {
  Echelon e(F);
  for (const auto& r : m.row) e.insert(r);
  RrefResult out;
  out.rank = e.rank();
  out.pivots = e.pivots();
  out.m = SparseMatrix(out.rank, m.cols);
  auto rows = e.basis();
  for (long i = 0; i < out.rank; ++i) out.m.row[static_cast<size_t>(i)] = std::move(rows[i]);
  return out;
}

long rank_of(const Field& F, const SparseMatrix& m) {
  Echelon e(F);
  for (const auto& r : m.row) e.insert(r);
  return e.rank();
}

SparseMatrix kernel(const Field& F, const SparseMatrix& m) {
  RrefResult r = rref(F, m);
  std::map<WordIndex, size_t> pivot_row;
  for (size_t i = 0; i < r.pivots.size(); ++i) pivot_row[r.pivots[i]] = i;
  Echelon e(F);
  for (WordIndex c = 0; c < m.cols; ++c) {
    if (pivot_row.count(c)) continue;
    std::map<WordIndex, Scalar> acc;
    acc[c] = F.from_int(1);
    for (const auto& [p, i] : pivot_row) {
      Scalar v = sv_get(r.m.row[i], c);
      if (!F.is_zero(v)) acc[p] = F.neg(v);
    }
    e.insert(sv_normalized(F, std::move(acc)));
  }
  SparseMatrix out(e.rank(), m.cols);
  auto rows = e.basis();
  for (size_t i = 0; i < rows.size(); ++i) out.row[i] = std::move(rows[i]);
  return out;
}

SparseMatrix sm_inverse(const Field& F, const SparseMatrix& m) {
  if (m.rows != m.cols) throw PreconditionError("inverse of non-square matrix");
  WordIndex n = m.rows;
  SparseMatrix aug(n, 2 * n);
  for (WordIndex i = 0; i < n; ++i) {
    aug.row[static_cast<size_t>(i)] = m.row[static_cast<size_t>(i)];
    aug.row[static_cast<size_t>(i)].emplace_back(n + i, F.from_int(1));
  }
  RrefResult r = rref(F, aug);
  if (r.rank != n) throw PreconditionError("matrix is singular");
  SparseMatrix inv(n, n);
  for (WordIndex i = 0; i < n; ++i) {
    if (r.pivots[static_cast<size_t>(i)] != i) throw PreconditionError("matrix is singular");
    for (const auto& [c, v] : r.m.row[static_cast<size_t>(i)]) {
      if (c >= n) inv.row[static_cast<size_t>(i)].emplace_back(c - n, v);
    }
  }
  return inv;
}

bool sm_solve(const Field& F, const SparseMatrix& m, const SparseVec& b, SparseVec& x_out) {
  // rref of [M | b] using column index m.cols for b
  SparseMatrix aug(m.rows, m.cols + 1);
  for (WordIndex i = 0; i < m.rows; ++i) {
    aug.row[static_cast<size_t>(i)] = m.row[static_cast<size_t>(i)];
    Scalar bi = sv_get(b, i);
    if (!F.is_zero(bi)) aug.row[static_cast<size_t>(i)].emplace_back(m.cols, bi);
  }
  RrefResult r = rref(F, aug);
  std::map<WordIndex, Scalar> acc;
  for (long i = 0; i < r.rank; ++i) {
    WordIndex p = r.pivots[static_cast<size_t>(i)];
    if (p == m.cols) return false;  // row (0 ... 0 | 1): inconsistent
    Scalar v = sv_get(r.m.row[static_cast<size_t>(i)], m.cols);
    if (!F.is_zero(v)) acc[p] = v;
  }
  x_out = sv_normalized(F, std::move(acc));
  return true;
}

}  // namespace koz
