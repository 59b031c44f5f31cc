#include "koz/corpus.hpp"

namespace koz {

namespace {

std::vector<CorpusEntry> make_corpus() {
  using K = CorpusEntry::Kind;
  std::vector<CorpusEntry> c;

  c.push_back({"sym2", K::homogeneous, 2,
               "name symmetric algebra on 2 generators\n"
               "generators x y\nN 2\n"
               "relation x*y - y*x\n"});
  c.push_back({"sym3", K::homogeneous, 2,
               "name symmetric algebra on 3 generators\n"
               "generators x y z\nN 2\n"
               "relation x*y - y*x\nrelation x*z - z*x\nrelation y*z - z*y\n"});
  c.push_back({"ext2", K::homogeneous, 2,
               "name exterior algebra on 2 generators\n"
               "generators x y\nN 2\n"
               "relation x*x\nrelation x*y + y*x\nrelation y*y\n"});
  c.push_back({"ext3", K::homogeneous, 2,
               "name exterior algebra on 3 generators\n"
               "generators x y z\nN 2\n"
               "relation x*x\nrelation y*y\nrelation z*z\n"
               "relation x*y + y*x\nrelation x*z + z*x\nrelation y*z + z*y\n"});
  c.push_back({"tensor2", K::homogeneous, 2,
               "name free algebra on 2 generators\n"
               "generators x y\nN 2\n"});
  c.push_back({"dual_tensor2", K::homogeneous, 2,
               "name dual of the free algebra on 2 generators\n"
               "generators x y\nN 2\n"
               "relation x*x\nrelation x*y\nrelation y*x\nrelation y*y\n"});
  c.push_back({"cubic_monomial", K::homogeneous, 3,
               "name cubic monomial algebra\n"
               "generators x y\nN 3\n"
               "relation x*y*x\nrelation y*x*y\n"});
  c.push_back({"u_so3", K::nonhomogeneous, 2,
               "name enveloping algebra of so(3)\n"
               "generators x0 x1 x2\nN 2\n"
               "relation x0*x1 - x1*x0 = x2\n"
               "relation x1*x2 - x2*x1 = x0\n"
               "relation x2*x0 - x0*x2 = x1\n"});
  c.push_back({"u_sl2", K::nonhomogeneous, 2,
               "name enveloping algebra of sl(2)\n"
               "generators e f h\nN 2\n"
               "relation e*f - f*e = h\n"
               "relation h*e - e*h = 2*e\n"
               "relation h*f - f*h = -2*f\n"});
  c.push_back({"broken_jacobi", K::nonhomogeneous, 2,
               "name bracket violating the Jacobi identity\n"
               "generators x0 x1 x2\nN 2\n"
               "relation x0*x1 - x1*x0 = x2\n"
               "relation x1*x2 - x2*x1 = x0\n"
               "relation x2*x0 - x0*x2 = x0\n"});
  c.push_back({"clifford2", K::nonhomogeneous, 2,
               "name Clifford algebra C(2)\n"
               "generators g0 g1\nN 2\n"
               "relation g0*g0 = 1\nrelation g1*g1 = 1\n"
               "relation g0*g1 + g1*g0\n"});
  c.push_back({"clifford3", K::nonhomogeneous, 2,
               "name Clifford algebra C(3)\n"
               "generators g0 g1 g2\nN 2\n"
               "relation g0*g0 = 1\nrelation g1*g1 = 1\nrelation g2*g2 = 1\n"
               "relation g0*g1 + g1*g0\nrelation g0*g2 + g2*g0\nrelation g1*g2 + g2*g1\n"});
  c.push_back({"ccr1", K::nonhomogeneous, 2,
               "name canonical commutation relations, one degree of freedom\n"
               "generators q p\nN 2\n"
               "relation q*p - p*q = 1\n"});
  c.push_back({"ccr2", K::nonhomogeneous, 2,
               "name canonical commutation relations, two degrees of freedom\n"
               "generators q0 q1 p0 p1\nN 2\n"
               "relation q0*q1 - q1*q0\nrelation p0*p1 - p1*p0\n"
               "relation q0*p0 - p0*q0 = 1\nrelation q1*p1 - p1*q1 = 1\n"
               "relation q0*p1 - p1*q0\nrelation q1*p0 - p0*q1\n"});
  c.push_back({"twisted_su2", K::nonhomogeneous, 2,
               "name deformed enveloping algebra, mu = 2\n"
               "param mu = 2\n"
               "generators n0 n1 n2\nN 2\n"
               "relation mu^2*n2*n0 - n0*n2 = mu*n1\n"
               "relation mu^4*n1*n0 - n0*n1 = mu^2*n0 + mu^4*n0\n"
               "relation mu^4*n2*n1 - n1*n2 = mu^2*n2 + mu^4*n2\n"});
  c.push_back({"twisted_su2_dual", K::homogeneous, 2,
               "name quadratic dual of the deformed enveloping algebra, mu = 2\n"
               "param mu = 2\n"
               "generators w0 w1 w2\nN 2\n"
               "relation w0*w0\nrelation w1*w1\nrelation w2*w2\n"
               "relation w2*w0 + mu^2*w0*w2\n"
               "relation w1*w0 + mu^4*w0*w1\n"
               "relation w2*w1 + mu^4*w1*w2\n"});
  c.push_back({"levi2", K::potential, 2,
               "name antisymmetric bilinear potential on 2 generators\n"
               "generators x y\nm 2\n"
               "coef 0 1 = 1\ncoef 1 0 = -1\n"});
  c.push_back({"levi3", K::potential, 2,
               "name fully antisymmetric trilinear potential on 3 generators\n"
               "generators x y z\nm 3\n"
               "coef 0 1 2 = 1\ncoef 1 2 0 = 1\ncoef 2 0 1 = 1\n"
               "coef 0 2 1 = -1\ncoef 2 1 0 = -1\ncoef 1 0 2 = -1\n"});
  return c;
}

bool amatrix_zero(const AMatrix& m) {
  for (const auto& row : m.entry)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

void add(std::vector<CorpusCheck>& out, const std::string& entry, const std::string& check,
         bool passed, const std::string& detail = "") {
  out.push_back({entry, check, passed, detail});
}

void homogeneous_suite(std::vector<CorpusCheck>& out, const CorpusEntry& e,
                       const HomogeneousPresentation& pres, const Field& F, int cap) {
  GradedAlgebra A(F, pres);
  int N = pres.N;
  int tmax = std::min(cap, 6);

  bool dpow = true;
  for (int t = N; t <= tmax; ++t) {
    AMatrix comp = koszul_step_left(A, t);
    for (int k = 1; k < N; ++k) comp = am_compose(A, comp, koszul_step_left(A, t - k));
    dpow = dpow && amatrix_zero(comp);
  }
  add(out, e.key, "d^N=0", dpow);

  FreeComplex bc = contraction_bimodule(A, std::min(cap, 4));
  const RealizedComplex& rc = *bc.prerealized;
  bool sq = true;
  for (int i = 2; i < rc.positions; ++i)
    for (int k = rc.kmin; k <= rc.kmax; ++k)
      sq = sq && sm_mul(F, rc.maps[static_cast<size_t>(i) - 1][static_cast<size_t>(k - rc.kmin)],
                        rc.maps[static_cast<size_t>(i)][static_cast<size_t>(k - rc.kmin)])
                     .is_zero();
  add(out, e.key, "bimodule d'^2=0", sq);

  HomogeneousPresentation dd = koszul_dual(F, koszul_dual(F, pres));
  add(out, e.key, "double dual", dd.R.same_space(F, pres.R));
}

void nonhomogeneous_suite(std::vector<CorpusCheck>& out, const CorpusEntry& e,
                          const NonhomogeneousPresentation& pres, const Field& F, int cap) {
  GradedAlgebra A(F, pres.homogeneous());
  add(out, e.key, "V = dual component",
      v_space(F, pres).same_space(F, A.dual_component(pres.N + 1)));
  if (pres.N == 2) {
    CurvedDGA cd = to_curved_dga(F, pres);
    add(out, e.key, "condition checkers agree", cd.abc_agree);
  }
  FiltrationReport fr = pbw_check(F, pres, std::min(cap, 5));
  add(out, e.key, "pbw route consistency", !fr.inconsistency);
}

void potential_suite(std::vector<CorpusCheck>& out, const CorpusEntry& e, const Potential& w,
                     const Field& F, int N) {
  PreregularityReport pr = preregularity(F, w);
  add(out, e.key, "preregular", pr.preregular());
  if (pr.preregular()) {
    TensorSubspace r0 = potential_relations(F, w, N, 0);
    bool indep = true;
    for (int s = 1; s < w.m; ++s)
      indep = indep && potential_relations(F, w, N, s).same_space(F, r0);
    add(out, e.key, "relation span start-independence", indep);
  }
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = make_corpus();
  return corpus;
}

std::vector<CorpusCheck> run_corpus_suite(int cap) {
  std::vector<CorpusCheck> out;
  const NonhomogeneousPresentation* tsu2 = nullptr;
  const HomogeneousPresentation* tsu2_dual = nullptr;
  NonhomogeneousPresentation tsu2_store;
  HomogeneousPresentation tsu2_dual_store;

  for (const auto& e : builtin_corpus()) {
    try {
      if (e.kind == CorpusEntry::Kind::potential) {
        PotentialDocument doc = parse_potential(e.text);
        add(out, e.key, "parse", true);
        add(out, e.key, "print round trip",
            print_potential(parse_potential(print_potential(doc))) == print_potential(doc));
        Potential w = doc.to_potential();
        w.validate();
        potential_suite(out, e, w, doc.field, e.potential_N);
      } else {
        PresentationDocument doc = parse_presentation(e.text);
        add(out, e.key, "parse", true);
        add(out, e.key, "print round trip",
            print_presentation(parse_presentation(print_presentation(doc))) ==
                print_presentation(doc));
        if (e.kind == CorpusEntry::Kind::homogeneous) {
          HomogeneousPresentation pres = doc.to_homogeneous();
          homogeneous_suite(out, e, pres, doc.field, cap);
          if (e.key == "twisted_su2_dual") {
            tsu2_dual_store = pres;
            tsu2_dual = &tsu2_dual_store;
          }
        } else {
          NonhomogeneousPresentation pres = doc.to_nonhomogeneous();
          nonhomogeneous_suite(out, e, pres, doc.field, cap);
          if (e.key == "twisted_su2") {
            tsu2_store = pres;
            tsu2 = &tsu2_store;
          }
        }
      }
    } catch (const std::exception& ex) {
      add(out, e.key, "suite", false, ex.what());
    }
  }

  if (tsu2 && tsu2_dual) {
    Field F = Field::rationals();
    CurvedDGA cd = to_curved_dga(F, *tsu2);
    add(out, "twisted_su2", "dual matches tsu2_dual relations", cd.dual.R.same_space(F, tsu2_dual->R));
    add(out, "twisted_su2", "curvature vanishes", cd.curv.is_zero());
  }
  return out;
}

}  // namespace koz
