#pragma once

#include "koz/linalg.hpp"

#include <optional>

namespace koz {

/// Sparse element of E^(x)n over the word basis (degree-0 elements are
/// scalars on the empty word).
struct TensorElement {
  int d = 0;
  int degree = 0;
  SparseVec coords;

  bool is_zero() const { return coords.empty(); }

  static TensorElement zero(int d, int n) { return {d, n, {}}; }
  static TensorElement word(const Field& F, int d, int n, WordIndex w) {
    return {d, n, SparseVec{{w, F.from_int(1)}}};
  }
};

TensorElement te_scale(const Field& F, const TensorElement& t, const Scalar& c);
TensorElement te_add(const Field& F, const TensorElement& a, const TensorElement& b);
TensorElement te_tensor(const Field& F, const TensorElement& a, const TensorElement& b);
bool te_equal(const Field& F, const TensorElement& a, const TensorElement& b);

/// Echelonized subspace of a fixed tensor degree. Basis rows are the unique
/// RREF over the word basis in deglex column order.
class TensorSubspace {
 public:
  TensorSubspace() = default;
  TensorSubspace(const Field& F, int d, int degree, const std::vector<SparseVec>& spanning);

  static TensorSubspace zero(const Field& F, int d, int degree);
  static TensorSubspace full(const Field& F, int d, int degree);

  int d() const { return d_; }
  int degree() const { return degree_; }
  WordIndex ambient_dim() const { return ambient_; }
  long dim() const { return static_cast<long>(basis_.size()); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const std::vector<WordIndex>& pivots() const { return pivots_; }
  TensorElement basis_element(long i) const {
    return {d_, degree_, basis_[static_cast<size_t>(i)]};
  }

  /// Fully reduce t against the basis; the result has no support on pivots.
  TensorElement reduce(const Field& F, const TensorElement& t) const;
  bool contains(const Field& F, const TensorElement& t) const;

  /// Coordinates of t over the basis rows; throws when t is not a member.
  SparseVec coords(const Field& F, const TensorElement& t) const;

  bool same_space(const Field& F, const TensorSubspace& other) const;

 private:
  int d_ = 0;
  int degree_ = 0;
  WordIndex ambient_ = 1;
  std::vector<SparseVec> basis_;
  std::vector<WordIndex> pivots_;
};

TensorSubspace subspace_sum(const Field& F, const TensorSubspace& u, const TensorSubspace& v);
TensorSubspace intersect(const Field& F, const TensorSubspace& u, const TensorSubspace& v);

/// Annihilator in the dual tensor power under the word/dual-word pairing.
TensorSubspace annihilator(const Field& F, const TensorSubspace& u);

/// Echelonized span of E^(x)r (x) u (x) E^(x)s.
TensorSubspace box_subspace(const Field& F, int r, const TensorSubspace& u, int s);

}  // namespace koz
