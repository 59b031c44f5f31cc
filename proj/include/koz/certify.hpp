#pragma once

#include "koz/complex.hpp"

#include <memory>
#include <string>

namespace koz {

struct KoszulVerdict {
  bool koszul = false;
  int cap = 0;
  int bimodule_cap = 0;
  // first nonzero homology at position >= 1 of the one-sided contraction
  std::optional<std::pair<int, int>> witness;
  bool crosscheck_agree = false;  // bimodule contraction verdict matches
};

/// Koszulity test: the one-sided contraction complex must be acyclic in
/// positions >= 1 at all internal degrees <= cap; the bimodule contraction is
/// recomputed independently (at its own, usually smaller, cap) and compared.
KoszulVerdict is_koszul(const GradedAlgebra& A, int cap, int bimodule_cap = -1);

struct BettiData {
  // stages[s]: generator degree -> number of generators of E_s
  std::vector<std::map<int, long>> stages;
  std::optional<int> global_dimension;  // last stage with generators, if any window
  bool conclusive = false;              // enough room above D to trust the bound
  int cap = 0;

  long total(int s) const {
    if (s < 0 || s >= static_cast<int>(stages.size())) return 0;
    long t = 0;
    for (const auto& [deg, c] : stages[static_cast<size_t>(s)]) t += c;
    return t;
  }
};

/// Degree-by-degree minimal free resolution of the trivial module: at each
/// stage, new generators are a complement of the decomposable part of the
/// syzygy module, chosen greedily along the echelonized kernel basis.
BettiData minimal_resolution(const GradedAlgebra& A, int cap);

struct GorensteinVerdict {
  enum class Kind { gorenstein, fails, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<int> D;
  std::string reason;
  // nonzero cohomology entries of the dualized resolution: (position, degree) -> dim
  std::map<std::pair<int, int>, long> cohomology;
  BettiData betti;
};

/// Gorenstein test on a Koszul algebra: cohomology of the Hom(-, A) dual of
/// the contraction resolution must vanish except in one homological degree D,
/// where it is one-dimensional; Betti numbers must satisfy dim E_{D-n} = dim E_n.
GorensteinVerdict gorenstein_check(const GradedAlgebra& A, int cap);

/// Element of the Yoneda algebra: homological position plus a component of
/// the dual algebra in degree nu_N(position).
struct YonedaElem {
  int position = 0;
  AlgElem value;  // element of A^! in degree nu_N(position)
};

class YonedaAlgebra {
 public:
  YonedaAlgebra(const Field& F, const GradedAlgebra& A, int cap);

  const GradedAlgebra& dual() const { return *dual_; }
  int N() const { return N_; }
  int cap() const { return cap_; }
  long dim(int position) const;
  int max_position() const { return max_position_; }

  YonedaElem m2(const YonedaElem& x, const YonedaElem& y) const;
  YonedaElem mN(const std::vector<YonedaElem>& xs) const;

  YonedaElem basis_element(int position, long idx) const;
  YonedaElem unit() const { return {0, dual_->one()}; }

 private:
  std::shared_ptr<GradedAlgebra> dual_;
  int N_;
  int cap_;
  int max_position_;
};

/// Yoneda product structure for a Koszul algebra; throws PreconditionError
/// when the Koszulity check fails at the given cap.
YonedaAlgebra yoneda(const GradedAlgebra& A, int cap);

}  // namespace koz
