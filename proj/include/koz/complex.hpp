#pragma once

#include "koz/presentation.hpp"

#include <functional>
#include <memory>

namespace koz {

enum class Side { left, right, bimodule };

/// Matrix with entries in the graded algebra, describing a map of free
/// modules: image of the j-th source generator is sum_i entry[j][i] (x) u_i
/// (left modules) or sum_i u_i (x) entry[j][i] acting by left multiplication
/// on the cofactor (right modules).
struct AMatrix {
  long src_dim = 0;
  long dst_dim = 0;
  int entry_degree = 0;  // all entries homogeneous of this degree
  std::vector<std::vector<AlgElem>> entry;  // [src][dst]

  AMatrix() = default;
  AMatrix(long s, long t, int deg)
      : src_dim(s), dst_dim(t), entry_degree(deg),
        entry(static_cast<size_t>(s), std::vector<AlgElem>(static_cast<size_t>(t))) {
    for (auto& row : entry)
      for (auto& e : row) e.degree = deg;
  }
};

/// g after f, for maps of free left modules written as above.
AMatrix am_compose(const GradedAlgebra& A, const AMatrix& f, const AMatrix& g);

/// Transpose of entries: the Hom(-, A) dual of a left-module map.
AMatrix am_dual(const AMatrix& f);

/// Per-(position, internal degree) scalar matrices of a complex, the uniform
/// input of the homology routine. Chain maps go (i,k) -> (i-1,k), cochain
/// maps (i,k) -> (i+1,k); internal degrees range over [kmin, kmax].
struct RealizedComplex {
  bool cochain = false;
  int positions = 0;
  int kmin = 0;
  int kmax = 0;
  // dims[i][k-kmin]
  std::vector<std::vector<long>> dims;
  // maps[i][k-kmin]: the differential out of (i,k) (chain: to i-1, absent at
  // i=0; cochain: to i+1, absent at the top position)
  std::vector<std::vector<SparseMatrix>> maps;
  // true when the component at position `positions` is known to vanish for
  // every internal degree in range (so homology at the boundary is determined)
  bool closed_top = true;

  long dim_at(int i, int k) const {
    if (i < 0 || i >= positions || k < kmin || k > kmax) return 0;
    return dims[static_cast<size_t>(i)][static_cast<size_t>(k - kmin)];
  }
};

/// Free complex over the graded algebra: slots V_i of fixed tensor degree,
/// with algebra-valued differentials. For bimodule complexes the scalar
/// realization is stored directly.
struct FreeComplex {
  Side side = Side::left;
  bool cochain = false;
  const GradedAlgebra* A = nullptr;
  std::vector<int> tdeg;                 // tensor degree of V_i
  std::vector<TensorSubspace> slots;
  // chain: diff[i] maps position i to i-1 (diff[0] unused);
  // cochain: diff[i] maps position i to i+1 (last position unused)
  std::vector<AMatrix> diff;
  int internal_cap = 0;
  std::optional<RealizedComplex> prerealized;  // bimodule complexes only

  int positions() const { return static_cast<int>(slots.size()); }
  RealizedComplex realize(int cap) const;
};

/// Split an element of V_t as sum_lambda e_lambda (x) (component in V_prev);
/// result[j] maps lambda to coordinates over the V_prev basis.
std::vector<std::map<int, SparseVec>> split_left(const Field& F, const TensorSubspace& vt,
                                                 const TensorSubspace& vprev);
/// Split as sum_lambda (component in V_prev) (x) e_lambda.
std::vector<std::map<int, SparseVec>> split_right(const Field& F, const TensorSubspace& vt,
                                                  const TensorSubspace& vprev);

/// One step of the contraction differential between arbitrary slot spaces
/// vt (tensor degree t) and vp (degree t-1) with vt inside E (x) vp resp.
/// vp (x) E; entries have degree 1.
AMatrix module_step(const GradedAlgebra& A, const TensorSubspace& vt, const TensorSubspace& vp,
                    Side side);

/// One-step contraction A (x) A^{!*}_t -> A (x) A^{!*}_{t-1} (entries of degree 1).
AMatrix koszul_step_left(const GradedAlgebra& A, int t);
AMatrix koszul_step_right(const GradedAlgebra& A, int t);

/// Slot provider: tensor degree -> generator space of the complex at that degree.
using SlotFn = std::function<TensorSubspace(int)>;

FreeComplex koszul_n_complex(const GradedAlgebra& A, int cap);
FreeComplex right_n_complex(const GradedAlgebra& A, int cap);
FreeComplex contraction_left(const GradedAlgebra& A, int cap);
FreeComplex contraction_bimodule(const GradedAlgebra& A, int cap);

/// Contraction complexes over custom slot spaces (positions are cut when the
/// slot tensor degree exceeds tdeg_limit; slots beyond the limit must vanish).
FreeComplex contraction_left_custom(const GradedAlgebra& A, int cap, int tdeg_limit,
                                    const SlotFn& slot);
FreeComplex contraction_bimodule_custom(const GradedAlgebra& A, int cap, int tdeg_limit,
                                        const SlotFn& slot);

/// Hom(-, A) dual of a chain complex of free left modules.
FreeComplex dualize(const FreeComplex& c);

struct HomologyReport {
  // (homological position, internal degree) -> dim H; only entries whose
  // incoming and outgoing differentials are fully known appear
  std::map<std::pair<int, int>, long> table;

  bool vanishes_in_positive_positions() const {
    for (const auto& [key, dim] : table)
      if (key.first >= 1 && dim != 0) return false;
    return true;
  }
  std::optional<std::pair<int, int>> first_nonzero_positive() const {
    for (const auto& [key, dim] : table)
      if (key.first >= 1 && dim != 0) return key;
    return std::nullopt;
  }
};

HomologyReport homology(const Field& F, const RealizedComplex& c);

}  // namespace koz
