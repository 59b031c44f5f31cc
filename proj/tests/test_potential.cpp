#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "koz/corpus.hpp"
#include "koz/potential.hpp"

using namespace koz;

namespace {

const CorpusEntry& entry(const std::string& key) {
  for (const auto& e : builtin_corpus())
    if (e.key == key) return e;
  throw std::runtime_error("missing corpus entry " + key);
}

Potential load_pot(const std::string& key) {
  return parse_potential(entry(key).text).to_potential();
}

HomogeneousPresentation load_pres(const std::string& key) {
  return parse_presentation(entry(key).text).to_homogeneous();
}

}  // namespace

TEST_CASE("the trilinear antisymmetric form is preregular with identity twist") {
  Field F = Field::rationals();
  Potential w = load_pot("levi3");
  PreregularityReport r = preregularity(F, w);
  CHECK(r.preregular());
  CHECK(r.twist_unique);
  REQUIRE(r.twist.has_value());
  CHECK(sm_equal(F, r.twist->Q, SparseMatrix::identity(F, 3)));
}

TEST_CASE("the bilinear antisymmetric form has twist minus the identity") {
  Field F = Field::rationals();
  Potential w = load_pot("levi2");
  PreregularityReport r = preregularity(F, w);
  CHECK(r.preregular());
  REQUIRE(r.twist.has_value());
  SparseMatrix minus_id = sm_scale(F, SparseMatrix::identity(F, 2), F.from_int(-1));
  CHECK(sm_equal(F, r.twist->Q, minus_id));
}

TEST_CASE("potential algebras recover the symmetric algebra relations") {
  Field F = Field::rationals();
  CHECK(potential_algebra(F, load_pot("levi3"), 2).R.same_space(F, load_pres("sym3").R));
  CHECK(potential_algebra(F, load_pot("levi2"), 2).R.same_space(F, load_pres("sym2").R));
}

TEST_CASE("the relation span does not depend on the starting rotation") {
  Field F = Field::rationals();
  Potential w = load_pot("levi3");
  TensorSubspace base = potential_relations(F, w, 2, 0);
  for (int start = 1; start < w.m; ++start)
    CHECK(potential_relations(F, w, 2, start).same_space(F, base));
}

TEST_CASE("extracting the potential of the polynomial algebra round-trips") {
  Field F = Field::rationals();
  GradedAlgebra A3(F, load_pres("sym3"));
  Potential w3 = extract_potential(A3, 3);
  CHECK(w3.m == 3);
  CHECK(te_equal(F, w3.w, load_pot("levi3").w));  // normalized: least word has coefficient 1
  CHECK(potential_algebra(F, w3, 2).R.same_space(F, load_pres("sym3").R));

  GradedAlgebra A2(F, load_pres("sym2"));
  Potential w2 = extract_potential(A2, 2);
  CHECK(w2.m == 2);
  CHECK(te_equal(F, w2.w, load_pot("levi2").w));
  CHECK(potential_algebra(F, w2, 2).R.same_space(F, load_pres("sym2").R));
}

TEST_CASE("the twisted projector fixes a twisted-cyclic potential") {
  Field F = Field::rationals();
  for (const char* key : {"levi2", "levi3"}) {
    Potential w = load_pot(key);
    PreregularityReport r = preregularity(F, w);
    REQUIRE(r.twist.has_value());
    Potential p = pi_Q(F, w, *r.twist);
    CHECK(te_equal(F, p.w, w.w));
  }
}

TEST_CASE("contraction subspaces agree with the dual coalgebra slots") {
  Field F = Field::rationals();
  for (const char* key : {"levi2", "levi3"}) {
    Potential w = load_pot(key);
    HomogeneousPresentation p = potential_algebra(F, w, 2);
    GradedAlgebra A(F, p);
    WSpaces ws = w_spaces(F, w, 2);
    for (int n = 0; n <= w.m; ++n)
      CHECK(ws.spaces[static_cast<size_t>(n)].same_space(F, A.dual_component(n)));
  }
}

TEST_CASE("equivalence of the regularity characterizations") {
  Field F = Field::rationals();
  for (const char* key : {"levi2", "levi3"}) {
    EqRegVerdict v = eqreg_check(F, load_pot(key), 2, 6);
    CHECK(v.slots_match);
    CHECK(v.acyclic);
    CHECK(v.koszul);
    CHECK(v.gorenstein == GorensteinVerdict::Kind::gorenstein);
    CHECK(v.bimodule_acyclic);
    CHECK(v.consistent);
  }
}

TEST_CASE("Frobenius quotient of the dual algebra") {
  Field F = Field::rationals();
  FrobeniusQuotient q3 = frobenius_quotient(F, load_pot("levi3"), 2, 6);
  CHECK(q3.dual_dims == std::vector<long>{1, 3, 3, 1});
  CHECK(q3.quotient_dims == std::vector<long>{1, 3, 3, 1});
  CHECK(q3.nondegenerate);
  CHECK(q3.modular_identity);
  CHECK(q3.gf_criterion);

  FrobeniusQuotient q2 = frobenius_quotient(F, load_pot("levi2"), 2, 6);
  CHECK(q2.dual_dims == std::vector<long>{1, 2, 1});
  CHECK(q2.nondegenerate);
  CHECK(q2.modular_identity);
  CHECK(q2.gf_criterion);
}

TEST_CASE("twist-induced automorphisms preserve the relations") {
  Field F = Field::rationals();
  Potential w = load_pot("levi2");
  Automorphisms a = automorphisms(F, w, 2, 4);
  PreregularityReport r = preregularity(F, w);
  REQUIRE(r.twist.has_value());
  CHECK(sm_equal(F, a.Q, r.twist->Q));
  // degree-0 action is the identity, degree-1 actions are Q resp. its inverse
  CHECK(sm_equal(F, a.sigma_alg[0], SparseMatrix::identity(F, 1)));
  CHECK(sm_equal(F, a.sigma_dual[0], SparseMatrix::identity(F, 1)));
}

TEST_CASE("the Hochschild boundary of the potential vanishes") {
  Field F = Field::rationals();
  CHECK(hochschild_cycle_check(F, load_pot("levi2")));
  CHECK(hochschild_cycle_check(F, load_pot("levi3")));
}

TEST_CASE("degenerate potentials are rejected by the one-site test") {
  Field F = Field::rationals();
  // w = x (x) x on K^2 misses the second generator in every slot
  Potential w{2, 2, TensorElement::word(F, 2, 2, 0)};
  std::vector<bool> sites = check_one_site(F, w);
  for (bool b : sites) CHECK_FALSE(b);
  PreregularityReport r = preregularity(F, w);
  CHECK_FALSE(r.preregular());
}
