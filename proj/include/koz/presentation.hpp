#pragma once

#include "koz/tensor.hpp"

#include <memory>
#include <string>

namespace koz {

/// N-homogeneous presentation A(E, R) = T(E)/(R).
struct HomogeneousPresentation {
  int d = 0;        // dim E
  int N = 2;        // homogeneity degree
  TensorSubspace R; // relation subspace, degree N
  std::string name;
  std::vector<std::string> generator_names;  // optional, for rendering

  void validate() const {
    if (d < 1) throw PreconditionError("presentation needs at least one generator");
    if (N < 2) throw PreconditionError("homogeneity degree must be >= 2");
    if (R.degree() != N || R.d() != d)
      throw DimensionMismatchError("relation subspace degree must equal N");
  }
};

/// Degree-n data of the graded algebra: dimension, the normal-word basis
/// (non-pivot words of the echelonized ideal component) and the reduction map.
struct GradedComponent {
  int n = 0;
  long dim = 0;
  std::vector<WordIndex> normal_words;  // sorted ascending (deglex)
};

/// Element of A_n in normal-word coordinates (indices are positions in the
/// normal-word list of the component).
struct AlgElem {
  int degree = 0;
  SparseVec coords;
  bool is_zero() const { return coords.empty(); }
};

/// A graded algebra T(E)/(R) with per-degree caches: components, normal-word
/// reduction, dual coalgebra components. All computation is exact and lazy.
class GradedAlgebra {
 public:
  GradedAlgebra(const Field& F, HomogeneousPresentation pres,
                WordIndex word_cap = kDefaultWordCap);

  const Field& field() const { return F_; }
  const HomogeneousPresentation& presentation() const { return pres_; }
  int d() const { return pres_.d; }
  int N() const { return pres_.N; }

  const GradedComponent& component(int n) const;
  long dim(int n) const { return component(n).dim; }

  /// Normal-word position of w in A_n, or nullopt when w is not normal.
  std::optional<long> normal_position(int n, WordIndex w) const;

  /// Reduce the word w of degree n to normal coordinates.
  const AlgElem& reduce_word(int n, WordIndex w) const;
  AlgElem reduce_tensor(const TensorElement& t) const;

  /// Lift normal coordinates back to a tensor representative (normal words as words).
  TensorElement lift(const AlgElem& a) const;

  AlgElem multiply(const AlgElem& a, const AlgElem& b) const;
  AlgElem scale(const AlgElem& a, const Scalar& c) const;
  AlgElem add(const AlgElem& a, const AlgElem& b) const;
  AlgElem one() const;
  AlgElem generator(int lambda) const;

  /// A^{!*}_n realized inside E^(x)n: E^(x)n below N, the intersection of
  /// all E^(x)r (x) R (x) E^(x)s above.
  const TensorSubspace& dual_component(int n) const;

  /// Echelonized ideal component Sum E^(x)r (x) R (x) E^(x)s (materialized on
  /// demand; subject to the word capacity guard).
  const TensorSubspace& ideal_component(int n) const;

 private:
  struct DegreeData {
    GradedComponent comp;
    // relation rows over the basis {lambda (x) u : u normal at n-1},
    // echelonized; pivot indices refer to that basis enumeration
    std::vector<SparseVec> rel_rows;
    std::vector<WordIndex> rel_pivots;
    // map from non-pivot basis index to normal-word position
    std::map<WordIndex, long> normal_pos_by_bindex;
    std::map<WordIndex, long> normal_pos_by_word;
  };

  const DegreeData& degree_data(int n) const;

  Field F_;
  HomogeneousPresentation pres_;
  WordIndex word_cap_;
  mutable std::map<int, DegreeData> degrees_;
  mutable std::map<int, std::map<WordIndex, AlgElem>> reduce_cache_;
  mutable std::map<int, TensorSubspace> dual_components_;
  mutable std::map<int, TensorSubspace> ideal_components_;
};

/// Koszul dual presentation A(E*, R^perp).
HomogeneousPresentation koszul_dual(const Field& F, const HomogeneousPresentation& pres);

/// nu_N: homological position -> tensor degree of the contraction slot.
inline int nu_N(int N, int i) {
  return (i % 2 == 0) ? N * (i / 2) : N * (i / 2) + 1;
}

}  // namespace koz
