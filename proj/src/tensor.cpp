#include "koz/tensor.hpp"

namespace koz {

TensorElement te_scale(const Field& F, const TensorElement& t, const Scalar& c) {
  return {t.d, t.degree, sv_scale(F, t.coords, c)};
}

TensorElement te_add(const Field& F, const TensorElement& a, const TensorElement& b) {
  if (a.d != b.d || a.degree != b.degree)
    throw DimensionMismatchError("tensor sum degree mismatch");
  return {a.d, a.degree, sv_axpy(F, a.coords, F.from_int(1), b.coords)};
}

TensorElement te_tensor(const Field& F, const TensorElement& a, const TensorElement& b) {
  if (a.d != b.d) throw DimensionMismatchError("tensor product over different E");
  word_count(a.d, a.degree + b.degree);
  std::map<WordIndex, Scalar> acc;
  for (const auto& [wa, ca] : a.coords)
    for (const auto& [wb, cb] : b.coords)
      acc[word_concat(wa, wb, a.d, b.degree)] += ca * cb;
  return {a.d, a.degree + b.degree, sv_normalized(F, std::move(acc))};
}

bool te_equal(const Field& F, const TensorElement& a, const TensorElement& b) {
  if (a.d != b.d || a.degree != b.degree) return false;
  return sv_axpy(F, a.coords, F.from_int(-1), b.coords).empty();
}

TensorSubspace::TensorSubspace(const Field& F, int d, int degree,
                               const std::vector<SparseVec>& spanning)
    : d_(d), degree_(degree), ambient_(word_count(d, degree)) {
  Echelon e(F);
  for (const auto& r : spanning) e.insert(r);
  basis_ = e.basis();
  pivots_ = e.pivots();
}

TensorSubspace TensorSubspace::zero(const Field& F, int d, int degree) {
  return TensorSubspace(F, d, degree, {});
}

TensorSubspace TensorSubspace::full(const Field& F, int d, int degree) {
  WordIndex n = word_count(d, degree);
  std::vector<SparseVec> rows;
  rows.reserve(static_cast<size_t>(n));
  for (WordIndex w = 0; w < n; ++w) rows.push_back(SparseVec{{w, F.from_int(1)}});
  return TensorSubspace(F, d, degree, rows);
}

TensorElement TensorSubspace::reduce(const Field& F, const TensorElement& t) const {
  if (t.degree != degree_ || t.d != d_)
    throw DimensionMismatchError("reduce: degree mismatch");
  SparseVec v = t.coords;
  size_t pos = 0;
  while (pos < v.size()) {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), v[pos].first);
    if (it == pivots_.end() || *it != v[pos].first) {
      ++pos;
      continue;
    }
    size_t ri = static_cast<size_t>(it - pivots_.begin());
    v = sv_axpy(F, v, F.neg(v[pos].second), basis_[ri]);
  }
  return {d_, degree_, v};
}

bool TensorSubspace::contains(const Field& F, const TensorElement& t) const {
  return reduce(F, t).is_zero();
}

SparseVec TensorSubspace::coords(const Field& F, const TensorElement& t) const {
  if (t.degree != degree_ || t.d != d_)
    throw DimensionMismatchError("coords: degree mismatch");
  SparseVec c;
  SparseVec residual = t.coords;
  for (size_t i = 0; i < pivots_.size(); ++i) {
    Scalar v = sv_get(t.coords, pivots_[i]);
    if (!F.is_zero(v)) {
      c.emplace_back(static_cast<WordIndex>(i), v);
      residual = sv_axpy(F, residual, F.neg(v), basis_[i]);
    }
  }
  if (!residual.empty()) throw PreconditionError("coords: element not in subspace");
  return c;
}

bool TensorSubspace::same_space(const Field& F, const TensorSubspace& other) const {
  if (degree_ != other.degree_ || d_ != other.d_ || dim() != other.dim()) return false;
  for (size_t i = 0; i < basis_.size(); ++i) {
    if (pivots_[i] != other.pivots_[i]) return false;
    if (!sv_axpy(F, basis_[i], F.from_int(-1), other.basis_[i]).empty()) return false;
  }
  return true;
}

TensorSubspace subspace_sum(const Field& F, const TensorSubspace& u, const TensorSubspace& v) {
  if (u.degree() != v.degree() || u.d() != v.d())
    throw DimensionMismatchError("subspace sum: degree mismatch");
  std::vector<SparseVec> rows = u.basis();
  for (const auto& r : v.basis()) rows.push_back(r);
  return TensorSubspace(F, u.d(), u.degree(), rows);
}

TensorSubspace intersect(const Field& F, const TensorSubspace& u, const TensorSubspace& v) {
  if (u.degree() != v.degree() || u.d() != v.d())
    throw DimensionMismatchError("intersect: degree mismatch");
  long ru = u.dim(), rv = v.dim();
  // columns = coefficients (a, b) with sum a_i u_i - sum b_j v_j = 0
  SparseMatrix m(u.ambient_dim(), ru + rv);
  for (long i = 0; i < ru; ++i)
    for (const auto& [w, c] : u.basis()[static_cast<size_t>(i)]) m.set(F, w, i, c);
  for (long j = 0; j < rv; ++j)
    for (const auto& [w, c] : v.basis()[static_cast<size_t>(j)])
      m.set(F, w, ru + j, F.neg(c));
  SparseMatrix k = kernel(F, m);
  std::vector<SparseVec> rows;
  for (WordIndex r = 0; r < k.rows; ++r) {
    std::map<WordIndex, Scalar> acc;
    for (const auto& [c, coef] : k.row[static_cast<size_t>(r)]) {
      if (c >= ru) break;
      for (const auto& [w, uc] : u.basis()[static_cast<size_t>(c)]) acc[w] += coef * uc;
    }
    rows.push_back(sv_normalized(F, std::move(acc)));
  }
  return TensorSubspace(F, u.d(), u.degree(), rows);
}

TensorSubspace annihilator(const Field& F, const TensorSubspace& u) {
  SparseMatrix m(u.dim(), u.ambient_dim());
  for (long i = 0; i < u.dim(); ++i) m.row[static_cast<size_t>(i)] = u.basis()[static_cast<size_t>(i)];
  SparseMatrix k = kernel(F, m);
  std::vector<SparseVec> rows;
  for (WordIndex r = 0; r < k.rows; ++r) rows.push_back(k.row[static_cast<size_t>(r)]);
  return TensorSubspace(F, u.d(), u.degree(), rows);
}

TensorSubspace box_subspace(const Field& F, int r, const TensorSubspace& u, int s) {
  int d = u.d();
  int n = u.degree() + r + s;
  word_count(d, n);
  WordIndex nr = word_count(d, r), ns = word_count(d, s);
  WordIndex mid_s = 1;
  for (int i = 0; i < u.degree(); ++i) mid_s *= d;
  std::vector<SparseVec> rows;
  rows.reserve(static_cast<size_t>(nr * ns) * u.basis().size());
  for (WordIndex w1 = 0; w1 < nr; ++w1) {
    for (const auto& b : u.basis()) {
      for (WordIndex w2 = 0; w2 < ns; ++w2) {
        SparseVec row;
        row.reserve(b.size());
        for (const auto& [wb, c] : b) row.emplace_back((w1 * mid_s + wb) * ns + w2, c);
        rows.push_back(std::move(row));
      }
    }
  }
  return TensorSubspace(F, d, n, rows);
}

}  // namespace koz
