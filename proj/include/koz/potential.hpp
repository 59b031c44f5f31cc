#pragma once

#include "koz/certify.hpp"

namespace koz {

/// Multilinear form w = sum w_{l1...lm} x^{l1} (x) ... (x) x^{lm}.
struct Potential {
  int d = 0;
  int m = 0;
  TensorElement w;  // degree m

  void validate() const {
    if (d < 1 || m < 1 || w.degree != m || w.d != d)
      throw PreconditionError("malformed potential");
    if (w.is_zero()) throw PreconditionError("zero potential");
  }
};

/// Invertible d x d matrix Q with entries Q.get(nu, lambda) = Q^nu_lambda.
struct Twist {
  SparseMatrix Q;
};

struct PreregularityReport {
  std::vector<bool> one_site;  // slot-by-slot nondegeneracy
  std::optional<Twist> twist;
  bool twist_unique = false;
  bool q_invariant = false;

  bool all_one_site() const {
    for (bool b : one_site)
      if (!b) return false;
    return !one_site.empty();
  }
  bool preregular() const { return all_one_site() && twist.has_value() && q_invariant; }
};

/// Apply the matrix M to one tensor slot: out_{..a..} = sum_r M^r_a t_{..r..}.
TensorElement te_apply_slot(const Field& F, const TensorElement& t, int slot,
                            const SparseMatrix& M);
/// Cyclic rotation moving the first `k` letters to the end.
TensorElement te_rotate_left(const Field& F, const TensorElement& t, int k);

std::vector<bool> check_one_site(const Field& F, const Potential& w);
PreregularityReport preregularity(const Field& F, const Potential& w);

/// Solve the twisted-cyclicity system for Q; absent when no invertible
/// solution exists. On success the report records uniqueness and Q-invariance.
std::optional<Twist> solve_twist(const Field& F, const Potential& w);

/// Twisted cyclic projector; requires Q-invariance and char not dividing m.
Potential pi_Q(const Field& F, const Potential& w, const Twist& t);

/// Relation span by (m-N)-fold left contraction, rotated by `start` first.
TensorSubspace potential_relations(const Field& F, const Potential& w, int N, int start);

/// The N-homogeneous algebra generated by the contractions of w.
HomogeneousPresentation potential_algebra(const Field& F, const Potential& w, int N);

struct WSpaces {
  std::vector<TensorSubspace> spaces;  // W_0 .. W_m
};

WSpaces w_spaces(const Field& F, const Potential& w, int N);

/// Sub-N-complex of the Koszul N-complex on the W slots.
FreeComplex w_n_complex(const GradedAlgebra& A, const Potential& w, int N, int cap);

/// Contraction subcomplexes W(A,K) and W(A,A); N >= 3 requires m = Np+1.
std::pair<FreeComplex, FreeComplex> w_contractions(const GradedAlgebra& A, const Potential& w,
                                                   int N, int cap);

/// Generator of the one-dimensional top dual slot of a Koszul AS-Gorenstein
/// algebra, normalized so the deglex-least nonzero coefficient is 1.
Potential extract_potential(const GradedAlgebra& A, int D);

struct Automorphisms {
  SparseMatrix Q;
  std::vector<SparseMatrix> sigma_dual;  // degree-n matrices on the dual algebra, 0..cap
  std::vector<SparseMatrix> sigma_alg;   // degree-n matrices on the algebra itself
};

/// The twist-induced automorphisms of A(w,N)^! and of A(w,N), with the
/// relation-preservation checks.
Automorphisms automorphisms(const Field& F, const Potential& w, int N, int cap);

struct FrobeniusQuotient {
  int m = 0;
  std::vector<long> dual_dims;      // dim A^!_n, n = 0..m
  std::vector<long> quotient_dims;  // dim F(w,N)_n = rank of the degree pairing
  std::vector<SparseMatrix> pairing;  // pairing[k](i,j) = omega(x_i y_j), x in deg k, y in m-k
  bool nondegenerate = false;         // induced pairing nondegenerate (rank symmetry)
  bool modular_identity = false;      // omega(xy) = omega(sigma(y) x) on basis pairs
  bool gf_criterion = false;          // top quotient degree 1-dim and pairing nondegenerate
};

FrobeniusQuotient frobenius_quotient(const Field& F, const Potential& w, int N, int cap);

/// Exact vanishing of the Hochschild boundary of 1 (x) w with twisted-module
/// coefficients (quadratic case only).
bool hochschild_cycle_check(const Field& F, const Potential& w);

struct EqRegVerdict {
  bool acyclic = false;  // W(A,K) acyclic in positions >= 1 up to cap
  std::optional<std::pair<int, int>> witness;
  bool slots_match = false;            // W slots equal the dual coalgebra slots
  bool koszul = false;                 // condition (i), first half
  GorensteinVerdict::Kind gorenstein = GorensteinVerdict::Kind::inconclusive;
  bool bimodule_acyclic = false;       // condition (iii)
  bool consistent = false;             // the three characterizations agree
};

EqRegVerdict eqreg_check(const Field& F, const Potential& w, int N, int cap);

}  // namespace koz
