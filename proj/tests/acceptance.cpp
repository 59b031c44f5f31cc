// Acceptance suite: thirteen end-to-end criteria, one pass/fail line each.
// Exit status is the number of failed criteria.

#include "oracle.hpp"

#include "koz/corpus.hpp"
#include "koz/nonhom.hpp"
#include "koz/potential.hpp"

#include <functional>
#include <iostream>
#include <random>

using namespace koz;
using namespace koz_test;

namespace {

const CorpusEntry& entry(const std::string& key) {
  for (const auto& e : builtin_corpus())
    if (e.key == key) return e;
  throw std::runtime_error("missing corpus entry " + key);
}

HomogeneousPresentation algebra_of(const CorpusEntry& e) {
  switch (e.kind) {
    case CorpusEntry::Kind::homogeneous:
      return parse_presentation(e.text).to_homogeneous();
    case CorpusEntry::Kind::nonhomogeneous:
      return parse_presentation(e.text).to_nonhomogeneous().homogeneous();
    case CorpusEntry::Kind::potential: {
      PotentialDocument doc = parse_potential(e.text);
      return potential_algebra(doc.field, doc.to_potential(), e.potential_N);
    }
  }
  throw std::runtime_error("unreachable");
}

NonhomogeneousPresentation nonhom(const std::string& key) {
  return parse_presentation(entry(key).text).to_nonhomogeneous();
}

Potential pot(const std::string& key) {
  return parse_potential(entry(key).text).to_potential();
}

bool amatrix_zero(const AMatrix& m) {
  for (const auto& row : m.entry)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

bool nth_power_vanishes(const GradedAlgebra& A, const FreeComplex& c, int N) {
  for (int t = N; t < c.positions(); ++t) {
    AMatrix comp = c.diff[static_cast<size_t>(t)];
    for (int j = 1; j < N; ++j) comp = am_compose(A, comp, c.diff[static_cast<size_t>(t - j)]);
    if (!amatrix_zero(comp)) return false;
  }
  return true;
}

bool realized_squares_to_zero(const Field& F, const RealizedComplex& r) {
  for (int i = 0; i < r.positions; ++i)
    for (int k = r.kmin; k <= r.kmax; ++k) {
      size_t ki = static_cast<size_t>(k - r.kmin);
      const SparseMatrix* first = nullptr;
      const SparseMatrix* second = nullptr;
      if (r.cochain) {
        if (i + 2 >= r.positions) continue;
        first = &r.maps[static_cast<size_t>(i)][ki];
        second = &r.maps[static_cast<size_t>(i + 1)][ki];
      } else {
        if (i < 2) continue;
        first = &r.maps[static_cast<size_t>(i)][ki];
        second = &r.maps[static_cast<size_t>(i - 1)][ki];
      }
      if (first->rows == 0 || first->cols == 0 || second->rows == 0) continue;
      if (!sm_mul(F, *second, *first).is_zero()) return false;
    }
  return true;
}

/// N-fold product of consecutive realized differentials at every internal degree.
bool realized_nth_power_vanishes(const Field& F, const RealizedComplex& r, int N) {
  for (int i = N; i < r.positions; ++i)
    for (int k = r.kmin; k <= r.kmax; ++k) {
      size_t ki = static_cast<size_t>(k - r.kmin);
      SparseMatrix comp = r.maps[static_cast<size_t>(i)][ki];
      for (int j = 1; j < N; ++j)
        comp = sm_mul(F, r.maps[static_cast<size_t>(i - j)][ki], comp);
      if (!comp.is_zero()) return false;
    }
  return true;
}

SparseMatrix dense(const Field& F, long n, std::initializer_list<long> vals) {
  SparseMatrix m(n, n);
  auto it = vals.begin();
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) m.set(F, r, c, F.from_int(*it++));
  return m;
}

std::vector<long> ce_cohomology_dims(const CEComplex& ce, int upto) {
  std::vector<long> out;
  for (int i = 0; i <= upto; ++i) {
    long dim = 0;
    for (const auto& [key, d] : ce.cohomology.table)
      if (key.first == i) dim += d;
    out.push_back(dim);
  }
  return out;
}

// ----- criteria -------------------------------------------------------------

bool criterion_1() {
  Field F = Field::rationals();
  for (const auto& e : builtin_corpus()) {
    HomogeneousPresentation p = algebra_of(e);
    GradedAlgebra A(F, p);
    int cap = p.d >= 4 ? 6 : 8;  // position count; entries are exact identities in A
    if (!nth_power_vanishes(A, koszul_n_complex(A, cap), p.N)) return false;
    // right-module maps are checked on their scalar realization, degree by degree
    if (!realized_nth_power_vanishes(F, right_n_complex(A, cap).realize(cap), p.N))
      return false;
  }
  return true;
}

bool criterion_2() {
  Field F = Field::rationals();
  for (const auto& e : builtin_corpus()) {
    GradedAlgebra A(F, algebra_of(e));
    if (!realized_squares_to_zero(F, contraction_left(A, 6).realize(6))) return false;
    if (!realized_squares_to_zero(F, contraction_bimodule(A, 6).realize(6))) return false;
  }
  return true;
}

bool criterion_3() {
  Field F = Field::rationals();
  for (const auto& e : builtin_corpus()) {
    HomogeneousPresentation p = algebra_of(e);
    if (!koszul_dual(F, koszul_dual(F, p)).R.same_space(F, p.R)) return false;
  }
  std::mt19937_64 rng(880);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 2;
    WordIndex dim = word_count(d, 2);
    std::vector<SparseVec> rows;
    for (int i = 0; i <= trial % 3; ++i) rows.push_back(random_vector(F, rng, dim));
    HomogeneousPresentation p{d, 2, TensorSubspace(F, d, 2, rows), "random", {}};
    if (!koszul_dual(F, koszul_dual(F, p)).R.same_space(F, p.R)) return false;
  }
  return true;
}

bool criterion_4() {
  Field F = Field::rationals();
  std::vector<HomogeneousPresentation> algebras = {
      algebra_of(entry("sym3")), algebra_of(entry("ext2")), algebra_of(entry("ext3")),
      algebra_of(entry("tensor2")), algebra_of(entry("cubic_monomial")),
      nonhom("twisted_su2").homogeneous()};
  for (const auto& p : algebras) {
    GradedAlgebra A(F, p);
    KoszulVerdict v = is_koszul(A, 8);
    if (!v.koszul || !v.crosscheck_agree) return false;
  }
  return true;
}

bool criterion_5() {
  Field F = Field::rationals();
  for (HomogeneousPresentation p : {algebra_of(entry("sym3")), nonhom("twisted_su2").homogeneous()}) {
    GradedAlgebra A(F, p);
    GorensteinVerdict g = gorenstein_check(A, 8);
    if (g.kind != GorensteinVerdict::Kind::gorenstein || !g.D || *g.D != 3) return false;
    std::vector<long> betti;
    for (int s = 0; s <= 4; ++s) betti.push_back(g.betti.total(s));
    if (betti != std::vector<long>{1, 3, 3, 1, 0}) return false;
    long total = 0;
    for (const auto& [pos_deg, dim] : g.cohomology) {
      if (pos_deg.first != 3) return false;  // Ext concentrated in position D
      total += dim;
    }
    if (total != 1) return false;
    for (int n = 0; n <= 3; ++n)
      if (g.betti.total(n) != g.betti.total(3 - n)) return false;
  }
  GradedAlgebra bad(F, algebra_of(entry("dual_tensor2")));
  return gorenstein_check(bad, 8).kind == GorensteinVerdict::Kind::fails;
}

bool criterion_6() {
  Field F = Field::rationals();
  GradedAlgebra A3(F, algebra_of(entry("sym3")));
  Potential w3 = extract_potential(A3, 3);
  if (!te_equal(F, w3.w, pot("levi3").w)) return false;
  PreregularityReport r3 = preregularity(F, w3);
  if (!r3.twist || !sm_equal(F, r3.twist->Q, SparseMatrix::identity(F, 3))) return false;
  if (!potential_algebra(F, w3, 2).R.same_space(F, A3.presentation().R)) return false;

  GradedAlgebra A2(F, algebra_of(entry("sym2")));
  Potential w2 = extract_potential(A2, 2);
  PreregularityReport r2 = preregularity(F, w2);
  SparseMatrix minus_id = sm_scale(F, SparseMatrix::identity(F, 2), F.from_int(-1));
  if (!r2.twist || !sm_equal(F, r2.twist->Q, minus_id)) return false;
  return potential_algebra(F, w2, 2).R.same_space(F, A2.presentation().R);
}

bool criterion_7() {
  Field F = Field::rationals();
  for (const char* key : {"levi2", "levi3"}) {
    EqRegVerdict v = eqreg_check(F, pot(key), 2, 6);
    if (!v.slots_match || !v.acyclic || !v.koszul || !v.consistent) return false;
    if (v.gorenstein != GorensteinVerdict::Kind::gorenstein || !v.bimodule_acyclic)
      return false;
  }
  return true;
}

bool criterion_8() {
  Field F = Field::rationals();
  for (const auto& e : builtin_corpus()) {
    if (e.kind != CorpusEntry::Kind::potential) continue;
    FrobeniusQuotient q = frobenius_quotient(F, pot(e.key), e.potential_N, 6);
    if (!q.modular_identity || !q.nondegenerate) return false;
  }
  FrobeniusQuotient q3 = frobenius_quotient(F, pot("levi3"), 2, 6);
  return q3.quotient_dims == std::vector<long>{1, 3, 3, 1} && q3.gf_criterion;
}

bool criterion_9() {
  Field F = Field::rationals();
  return hochschild_cycle_check(F, pot("levi2")) && hochschild_cycle_check(F, pot("levi3"));
}

bool criterion_10() {
  Field F = Field::rationals();
  FiltrationReport so3 = pbw_check(F, nonhom("u_so3"), 3);
  if (so3.filtration_dims != std::vector<long>{1, 4, 10, 20} || !so3.pbw) return false;
  FiltrationReport cl2 = pbw_check(F, nonhom("clifford2"), 3);
  if (cl2.filtration_dims != std::vector<long>{1, 3, 4, 4} || !cl2.pbw) return false;
  FiltrationReport ccr = pbw_check(F, nonhom("ccr1"), 3);
  if (ccr.filtration_dims != std::vector<long>{1, 3, 6, 10} || !ccr.pbw) return false;
  NonhomogeneousPresentation bad = nonhom("broken_jacobi");
  FiltrationReport fb = pbw_check(F, bad, 3);
  if (fb.pbw || !fb.first_failure || *fb.first_failure != 3) return false;
  AbcReport abc = check_conditions_abc(F, bad);
  return !abc.b && abc.failed == "b:1" && abc.witness.has_value();
}

bool criterion_11() {
  Field F = Field::rationals();
  // deformed enveloping algebra at mu = 2: the differential on the dual must
  // carry the coefficients mu^2(1+mu^2) = 20 and mu = 2 of the three
  // equations, with one global sign fixed by the parity convention of the
  // pairing (the two conventions differ by the automorphism w -> -w in odd
  // degree, which flips delta globally).
  CurvedDGA c = to_curved_dga(F, nonhom("twisted_su2"));
  if (!c.ok() || !c.abc_agree) return false;
  if (!c.curv_rep.is_zero()) return false;  // F = 0
  GradedAlgebra D(F, c.dual);
  auto prod = [&](int i, int j) {
    return D.multiply(D.generator(i), D.generator(j));
  };
  std::vector<AlgElem> expect = {D.scale(prod(0, 1), F.from_int(-20)),
                                 D.scale(prod(0, 2), F.from_int(-2)),
                                 D.scale(prod(1, 2), F.from_int(-20))};
  int sign = 0;
  for (int i = 0; i < 3; ++i) {
    AlgElem actual = D.reduce_tensor(c.delta_rep[static_cast<size_t>(i)]);
    const AlgElem& e = expect[static_cast<size_t>(i)];
    int found = 0;
    if (actual.coords == e.coords) found = 1;
    else if (actual.coords == D.scale(e, F.from_int(-1)).coords) found = -1;
    if (found == 0) return false;           // wrong coefficient
    if (sign == 0) sign = found;
    else if (sign != found) return false;   // the sign must be global
  }

  // canonical commutation relations: delta = 0 and F is the central volume
  // element -q* ^ p* (with the unit normalization i*hbar = 1)
  CurvedDGA ccr = to_curved_dga(F, nonhom("ccr1"));
  if (!ccr.ok() || !ccr.abc_agree) return false;
  for (const auto& t : ccr.delta_rep)
    if (!t.is_zero()) return false;
  GradedAlgebra Dc(F, ccr.dual);
  TensorElement vol = te_scale(F, TensorElement::word(F, 2, 2, 1), F.from_int(-1));
  if (ccr.curv.coords != Dc.reduce_tensor(vol).coords) return false;
  for (int g = 0; g < 2; ++g) {
    if (!Dc.multiply(ccr.curv, Dc.generator(g)).is_zero()) return false;
    if (!Dc.multiply(Dc.generator(g), ccr.curv).is_zero()) return false;
  }

  // checker agreement on every nonhomogeneous corpus entry
  for (const auto& e : builtin_corpus()) {
    if (e.kind != CorpusEntry::Kind::nonhomogeneous) continue;
    if (!to_curved_dga(F, nonhom(e.key)).abc_agree) return false;
  }
  return true;
}

bool criterion_12() {
  Field F = Field::rationals();
  NonhomogeneousPresentation sl2 = nonhom("u_sl2");
  Representation triv{Representation::Side::left, 1,
                      {SparseMatrix(1, 1), SparseMatrix(1, 1), SparseMatrix(1, 1)}};
  Representation triv_right = triv;
  triv_right.side = Representation::Side::right;
  Representation std2{Representation::Side::left, 2,
                      {dense(F, 2, {0, 1, 0, 0}), dense(F, 2, {0, 0, 1, 0}),
                       dense(F, 2, {1, 0, 0, -1})}};
  for (const Representation& rep : {triv, triv_right, std2}) {
    CEComplex ce = ce_complex(F, sl2, rep, 6);
    if (!realized_squares_to_zero(F, ce.rc)) return false;
    if (rep.dimV == 1 &&
        ce_cohomology_dims(ce, 4) != std::vector<long>{1, 0, 0, 1, 0})
      return false;
  }

  NonhomogeneousPresentation ab = parse_presentation(
      "name abelian\ngenerators x y\nN 2\nrelation x*y - y*x\n").to_nonhomogeneous();
  Representation triv2{Representation::Side::left, 1, {SparseMatrix(1, 1), SparseMatrix(1, 1)}};
  CEComplex ce = ce_complex(F, ab, triv2, 6);
  if (!realized_squares_to_zero(F, ce.rc)) return false;
  return ce_cohomology_dims(ce, 3) == std::vector<long>{1, 2, 1, 0};
}

bool criterion_13() {
  Field F = Field::rationals();
  std::mt19937_64 rng(13131313);
  for (int trial = 0; trial < 125; ++trial) {
    // rref: rank and row space against the dense oracle
    SparseMatrix m = random_matrix(F, rng, 5, 6);
    RrefResult r = rref(F, m);
    if (r.rank != oracle_rank(F, m)) return false;
    if (!oracle_same_rowspace(F, r.m, m)) return false;

    // kernel: solutions, dimension count, independence
    SparseMatrix k = kernel(F, m);
    for (const auto& row : k.row)
      if (!sm_apply(F, m, row).empty()) return false;
    if (k.rows + r.rank != m.cols) return false;
    if (oracle_rank(F, k) != k.rows) return false;

    // intersect: dimension formula against oracle ranks, membership both sides
    int d = 2 + trial % 2, degree = 2 + trial % 2;
    WordIndex dim = word_count(d, degree);
    std::vector<SparseVec> ru, rv;
    for (int i = 0; i < 3; ++i) {
      ru.push_back(random_vector(F, rng, dim));
      rv.push_back(random_vector(F, rng, dim));
    }
    TensorSubspace u(F, d, degree, ru), v(F, d, degree, rv);
    TensorSubspace i = intersect(F, u, v);
    std::vector<SparseVec> stacked = u.basis();
    stacked.insert(stacked.end(), v.basis().begin(), v.basis().end());
    long expected = u.dim() + v.dim() - oracle_rank_rows(F, stacked, dim);
    if (i.dim() != expected) return false;
    for (long b = 0; b < i.dim(); ++b)
      if (!u.contains(F, i.basis_element(b)) || !v.contains(F, i.basis_element(b)))
        return false;

    // annihilator: dimension, orthogonality, independence
    TensorSubspace a = annihilator(F, u);
    if (a.dim() + u.dim() != static_cast<long>(dim)) return false;
    if (oracle_rank_rows(F, a.basis(), dim) != a.dim()) return false;
    for (const auto& x : a.basis())
      for (const auto& y : u.basis())
        if (!F.is_zero(sv_dot(F, x, y))) return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    std::function<bool()> run;
  };
  std::vector<Criterion> cs = {
      {1, "N-th power of the Koszul differential vanishes on the corpus", criterion_1},
      {2, "contraction complexes square to zero on the corpus", criterion_2},
      {3, "double dual identity on the corpus and random presentations", criterion_3},
      {4, "Koszulity certificates with route agreement", criterion_4},
      {5, "Gorenstein certificates, Betti symmetry, and the negative case", criterion_5},
      {6, "potential extraction round trip with the expected twists", criterion_6},
      {7, "equivalence of the regularity characterizations", criterion_7},
      {8, "modular identity and Frobenius quotient dimensions", criterion_8},
      {9, "Hochschild boundary of the potentials vanishes", criterion_9},
      {10, "PBW filtration dimensions and the negative witness", criterion_10},
      {11, "curved dual coefficients, flat and central curvature, checker agreement",
       criterion_11},
      {12, "Chevalley-Eilenberg squares to zero with the expected cohomology", criterion_12},
      {13, "randomized linear algebra against the dense elimination oracle", criterion_13},
  };
  int failures = 0;
  for (const auto& c : cs) {
    bool ok = false;
    std::string err;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      err = e.what();
    }
    if (!ok) ++failures;
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " - " << c.what;
    if (!err.empty()) std::cout << " (error: " << err << ")";
    std::cout << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures;
}
