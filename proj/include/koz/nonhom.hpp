#pragma once

#include "koz/certify.hpp"

namespace koz {

/// Nonhomogeneous presentation T(E)/({r - phi(r)}) with phi = sum of
/// components phi_n : R -> E^(x)n for 0 <= n <= N-1, given on the echelon
/// basis of R.
struct NonhomogeneousPresentation {
  int d = 0;
  int N = 2;
  TensorSubspace R;
  std::vector<std::vector<TensorElement>> phi;  // phi[n][i] = phi_n(r_i)
  std::string name;

  void validate() const;
  HomogeneousPresentation homogeneous() const { return {d, N, R, name, {}}; }

  /// phi_n applied to an arbitrary element of R (by coordinates).
  TensorElement apply_phi(const Field& F, int n, const TensorElement& r) const;
};

/// V_{N+1} = (R (x) E) intersect (E (x) R).
TensorSubspace v_space(const Field& F, const NonhomogeneousPresentation& pres);

struct AbcReport {
  bool a = false;
  bool b = false;
  bool c = false;
  std::string failed;  // empty, or "a", "b:n", "c"
  std::optional<TensorElement> witness;
  bool ok() const { return a && b && c; }
};

AbcReport check_conditions_abc(const Field& F, const NonhomogeneousPresentation& pres);

struct FiltrationReport {
  int cap = 0;
  std::vector<long> filtration_dims;         // dim F^n, n = 0..cap
  std::vector<long> homogeneous_cumulative;  // sum of dim A_k, k <= n
  std::vector<long> gr_dims;                 // successive differences of filtration_dims
  std::vector<bool> pbw_per_degree;
  bool pbw = false;
  std::optional<int> first_failure;
  bool npbw_hypotheses = false;  // homogeneous part Koszul to cap and (a)(b)(c) hold
  bool inconsistency = false;    // the two routes of the PBW theorem disagree
};

FiltrationReport pbw_check(const Field& F, const NonhomogeneousPresentation& pres, int cap);

struct CurvedDGA {
  HomogeneousPresentation dual;  // presentation of A^!
  // representative tensors of delta(theta_mu) in (E*)^(x)2, one per generator
  std::vector<TensorElement> delta_rep;
  // representative of the curvature F in (E*)^(x)2, and its normal form
  TensorElement curv_rep;
  AlgElem curv;
  bool a_ok = false;  // delta descends to A^!
  bool b_ok = false;  // delta^2 x = [F, x] on generators
  bool c_ok = false;  // delta F = 0
  bool abc_agree = false;  // matches check_conditions_abc verdicts
  bool ok() const { return a_ok && b_ok && c_ok; }
};

CurvedDGA to_curved_dga(const Field& F, const NonhomogeneousPresentation& pres);
NonhomogeneousPresentation from_curved_dga(const Field& F, const CurvedDGA& c);

struct LiePrealgebra {
  NonhomogeneousPresentation base;
  KoszulVerdict koszul;
  GorensteinVerdict gorenstein;
  FiltrationReport pbw;
  bool certified = false;
  bool dual_frobenius = false;   // Prop-GF style test on the dual algebra
  std::vector<long> dual_dims;   // dim A^!_n, n = 0..D (when certified)
};

LiePrealgebra lie_prealgebra_certify(const Field& F, const NonhomogeneousPresentation& pres,
                                     int cap);

struct Representation {
  enum class Side { left, right };
  Side side = Side::left;
  long dimV = 0;
  std::vector<SparseMatrix> rho;  // action of each generator
};

/// Throws PreconditionError naming the violated relation when the matrices
/// do not satisfy the presentation.
void validate_representation(const Field& F, const NonhomogeneousPresentation& pres,
                             const Representation& rep);

struct CEComplex {
  std::vector<long> dims;  // component dims per position
  RealizedComplex rc;      // cochain for left representations, chain for right
  HomologyReport cohomology;
};

/// Generalized Chevalley-Eilenberg complex on V (x) A^! (left) or its chain
/// variant on the dual coalgebra slots (right representations).
CEComplex ce_complex(const Field& F, const NonhomogeneousPresentation& pres,
                     const Representation& rep, int cap);

}  // namespace koz
