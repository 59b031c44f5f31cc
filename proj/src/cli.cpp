#include "koz/cli.hpp"

#include "koz/corpus.hpp"
#include "koz/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace koz {

namespace {

struct Opts {
  std::string input;
  std::string rep_file;
  int cap = 8;
  int N = 2;
  std::string field;   // "", "rational", or "prime:p"
  std::string output;  // "" = no machine report, "-" = stdout
  bool witnesses = false;
  bool quiet = false;
  std::string raw_text;    // input file contents, for the digest
  std::string field_used;  // effective field of the computation
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::optional<Field> field_override(const Opts& o) {
  if (o.field.empty()) return std::nullopt;
  if (o.field == "rational") return Field::rationals();
  if (o.field.rfind("prime:", 0) == 0)
    return Field::prime(std::stoll(o.field.substr(6)));
  throw PreconditionError("--field expects 'rational' or 'prime:<p>'");
}

SparseVec recanon(const Field& F, const SparseVec& v) {
  std::map<WordIndex, Scalar> acc;
  for (const auto& [w, c] : v) {
    Scalar cc = F.canon(c);
    if (!F.is_zero(cc)) acc[w] = cc;
  }
  return sv_normalized(F, std::move(acc));
}

TensorElement recanon_te(const Field& F, const TensorElement& t) {
  return {t.d, t.degree, recanon(F, t.coords)};
}

PresentationDocument load_presentation(Opts& o) {
  o.raw_text = read_file(o.input);
  PresentationDocument doc = parse_presentation(o.raw_text);
  if (auto F = field_override(o)) {
    doc.field = *F;
    for (auto& r : doc.relations) {
      r.top = recanon_te(*F, r.top);
      if (r.top.is_zero())
        throw PreconditionError("a relation top vanishes over the requested field");
      for (auto& lo : r.lower) lo = recanon_te(*F, lo);
    }
  }
  o.field_used = doc.field.describe();
  return doc;
}

PotentialDocument load_potential(Opts& o) {
  o.raw_text = read_file(o.input);
  PotentialDocument doc = parse_potential(o.raw_text);
  if (auto F = field_override(o)) {
    doc.field = *F;
    doc.w = recanon_te(*F, doc.w);
    if (doc.w.is_zero())
      throw PreconditionError("the potential vanishes over the requested field");
  }
  o.field_used = doc.field.describe();
  return doc;
}

HomogeneousPresentation homogeneous_part(const PresentationDocument& doc) {
  if (doc.is_homogeneous()) return doc.to_homogeneous();
  return doc.to_nonhomogeneous().homogeneous();
}

Json dims_json(const GradedAlgebra& A, int cap) {
  Json d = Json::array();
  for (int n = 0; n <= cap; ++n) d.push_back(A.dim(n));
  return d;
}

Json homology_json(const HomologyReport& h) {
  Json out = Json::array();
  for (const auto& [key, dim] : h.table)
    out.push_back({{"position", key.first}, {"internal_degree", key.second}, {"dim", dim}});
  return out;
}

Json matrix_json(const Field& F, const SparseMatrix& m) {
  Json rows = Json::array();
  for (WordIndex r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (WordIndex c = 0; c < m.cols; ++c) row.push_back(scalar_str(F, m.get(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json betti_json(const BettiData& b) {
  Json stages = Json::array();
  for (size_t s = 0; s < b.stages.size(); ++s) {
    Json gens = Json::array();
    for (const auto& [deg, count] : b.stages[s])
      gens.push_back({{"degree", deg}, {"count", count}});
    stages.push_back({{"stage", static_cast<int>(s)},
                      {"generators", gens},
                      {"total", b.total(static_cast<int>(s))}});
  }
  Json out{{"stages", stages}, {"conclusive", b.conclusive}, {"cap", b.cap}};
  if (b.global_dimension) out["global_dimension"] = *b.global_dimension;
  return out;
}

std::vector<std::string> star_names(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(n + "_star");
  return out;
}

PresentationDocument presentation_of(const Field& F, const HomogeneousPresentation& p,
                                     const std::vector<std::string>& names) {
  PresentationDocument doc;
  doc.field = F;
  doc.generators = names;
  doc.N = p.N;
  doc.name = p.name;
  for (long i = 0; i < p.R.dim(); ++i) {
    PresentationDocument::Relation rel;
    rel.top = p.R.basis_element(i);
    rel.lower.assign(static_cast<size_t>(p.N), TensorElement::zero(p.d, 0));
    for (int k = 0; k < p.N; ++k) rel.lower[static_cast<size_t>(k)].degree = k;
    doc.relations.push_back(rel);
  }
  return doc;
}

std::string gorenstein_kind(GorensteinVerdict::Kind k) {
  switch (k) {
    case GorensteinVerdict::Kind::gorenstein: return "gorenstein";
    case GorensteinVerdict::Kind::fails: return "fails";
    default: return "inconclusive";
  }
}

Json gorenstein_json(const GorensteinVerdict& g, bool witnesses) {
  Json out{{"kind", gorenstein_kind(g.kind)}, {"reason", g.reason}};
  if (g.D) out["D"] = *g.D;
  if (witnesses || g.kind != GorensteinVerdict::Kind::gorenstein) {
    Json coh = Json::array();
    for (const auto& [key, dim] : g.cohomology)
      coh.push_back({{"position", key.first}, {"internal_degree", key.second}, {"dim", dim}});
    out["cohomology"] = coh;
  }
  out["betti"] = betti_json(g.betti);
  return out;
}

// ---- subcommand handlers ----

Json run_hilbert(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  HomogeneousPresentation hp = homogeneous_part(doc);
  GradedAlgebra A(doc.field, hp);
  return {{"name", doc.name},
          {"homogeneous", doc.is_homogeneous()},
          {"dims", dims_json(A, o.cap)}};
}

Json run_dual(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  HomogeneousPresentation hp = homogeneous_part(doc);
  HomogeneousPresentation dual = koszul_dual(doc.field, hp);
  GradedAlgebra D(doc.field, dual);
  return {{"name", doc.name},
          {"presentation",
           print_presentation(presentation_of(doc.field, dual, star_names(doc.generators)))},
          {"dims", dims_json(D, o.cap)}};
}

Json run_ncomplex(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  HomogeneousPresentation hp = homogeneous_part(doc);
  GradedAlgebra A(doc.field, hp);
  FreeComplex fc = contraction_left(A, o.cap);
  Json slots = Json::array();
  for (int i = 0; i < fc.positions(); ++i)
    slots.push_back({{"position", i},
                     {"tensor_degree", fc.tdeg[static_cast<size_t>(i)]},
                     {"dim", fc.slots[static_cast<size_t>(i)].dim()}});
  RealizedComplex rc = fc.realize(o.cap);
  return {{"name", doc.name},
          {"slots", slots},
          {"homology", homology_json(homology(doc.field, rc))}};
}

Json run_koszul(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  HomogeneousPresentation hp = homogeneous_part(doc);
  GradedAlgebra A(doc.field, hp);
  KoszulVerdict kv = is_koszul(A, o.cap);
  Json out{{"name", doc.name},
           {"koszul_up_to_cap", kv.koszul},
           {"cap", kv.cap},
           {"bimodule_cap", kv.bimodule_cap},
           {"crosscheck_agree", kv.crosscheck_agree},
           {"hilbert_dims", dims_json(A, o.cap)}};
  if (kv.witness && (o.witnesses || !kv.koszul))
    out["witness"] = {{"position", kv.witness->first}, {"internal_degree", kv.witness->second}};
  return out;
}

Json run_gorenstein(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  HomogeneousPresentation hp = homogeneous_part(doc);
  GradedAlgebra A(doc.field, hp);
  KoszulVerdict kv = is_koszul(A, o.cap);
  if (!kv.koszul)
    return {{"name", doc.name},
            {"kind", "inconclusive"},
            {"reason", "the algebra is not certified Koszul at this cap"}};
  Json out = gorenstein_json(gorenstein_check(A, o.cap), o.witnesses);
  out["name"] = doc.name;
  return out;
}

Json run_resolution(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  HomogeneousPresentation hp = homogeneous_part(doc);
  GradedAlgebra A(doc.field, hp);
  Json out = betti_json(minimal_resolution(A, o.cap));
  out["name"] = doc.name;
  return out;
}

Json run_yoneda(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  HomogeneousPresentation hp = homogeneous_part(doc);
  GradedAlgebra A(doc.field, hp);
  YonedaAlgebra Y = yoneda(A, o.cap);
  Json dims = Json::array();
  for (int i = 0; i <= Y.max_position(); ++i) dims.push_back(Y.dim(i));
  return {{"name", doc.name},
          {"N", Y.N()},
          {"max_position", Y.max_position()},
          {"dims", dims}};
}

Json run_pbw(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  NonhomogeneousPresentation pres = doc.to_nonhomogeneous();
  AbcReport abc = check_conditions_abc(doc.field, pres);
  FiltrationReport fr = pbw_check(doc.field, pres, o.cap);
  Json out{{"name", doc.name},
           {"cap", fr.cap},
           {"filtration_dims", fr.filtration_dims},
           {"homogeneous_cumulative", fr.homogeneous_cumulative},
           {"gr_dims", fr.gr_dims},
           {"pbw", fr.pbw},
           {"npbw_hypotheses", fr.npbw_hypotheses},
           {"route_inconsistency", fr.inconsistency},
           {"conditions", {{"a", abc.a}, {"b", abc.b}, {"c", abc.c}, {"failed", abc.failed}}}};
  if (fr.first_failure) out["first_failure"] = *fr.first_failure;
  if (o.witnesses && abc.witness)
    out["condition_witness"] = tensor_str(doc.field, doc.generators, *abc.witness);
  return out;
}

Json run_curved(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  NonhomogeneousPresentation pres = doc.to_nonhomogeneous();
  CurvedDGA cd = to_curved_dga(doc.field, pres);
  GradedAlgebra D(doc.field, cd.dual);
  std::vector<std::string> dual_gens = star_names(doc.generators);
  Json delta = Json::array();
  for (int mu = 0; mu < pres.d; ++mu) {
    AlgElem cl = D.reduce_tensor(cd.delta_rep[static_cast<size_t>(mu)]);
    delta.push_back({{"generator", dual_gens[static_cast<size_t>(mu)]},
                     {"image", tensor_str(doc.field, dual_gens, D.lift(cl))}});
  }
  return {{"name", doc.name},
          {"a", cd.a_ok},
          {"b", cd.b_ok},
          {"c", cd.c_ok},
          {"checkers_agree", cd.abc_agree},
          {"dual_presentation",
           print_presentation(presentation_of(doc.field, cd.dual, dual_gens))},
          {"delta", delta},
          {"curvature", tensor_str(doc.field, dual_gens, D.lift(cd.curv))},
          {"curvature_zero", cd.curv.is_zero()}};
}

Json run_certify_lie(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  NonhomogeneousPresentation pres = doc.to_nonhomogeneous();
  LiePrealgebra lp = lie_prealgebra_certify(doc.field, pres, o.cap);
  Json out{{"name", doc.name},
           {"certified", lp.certified},
           {"koszul", lp.koszul.koszul},
           {"gorenstein", gorenstein_kind(lp.gorenstein.kind)},
           {"pbw", lp.pbw.pbw},
           {"dual_frobenius", lp.dual_frobenius},
           {"cap", o.cap}};
  if (lp.gorenstein.D) out["D"] = *lp.gorenstein.D;
  if (!lp.dual_dims.empty()) out["dual_dims"] = lp.dual_dims;
  return out;
}

Json run_ce(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  NonhomogeneousPresentation pres = doc.to_nonhomogeneous();
  if (o.rep_file.empty()) throw PreconditionError("ce requires --rep <representation file>");
  RepresentationDocument rdoc = parse_representation(read_file(o.rep_file));
  if (auto F = field_override(o)) {
    rdoc.field = *F;
    for (auto& m : rdoc.rep.rho)
      for (auto& row : m.row) row = recanon(*F, row);
  }
  CEComplex ce = ce_complex(doc.field, pres, rdoc.rep, o.cap);
  return {{"name", doc.name},
          {"representation", rdoc.name},
          {"side", rdoc.rep.side == Representation::Side::left ? "left" : "right"},
          {"dims", ce.dims},
          {"cohomology", homology_json(ce.cohomology)}};
}

Json run_potential_check(Opts& o) {
  PotentialDocument doc = load_potential(o);
  Potential w = doc.to_potential();
  w.validate();
  PreregularityReport pr = preregularity(doc.field, w);
  Json out{{"name", doc.name},
           {"m", w.m},
           {"one_site", pr.one_site},
           {"twist_unique", pr.twist_unique},
           {"q_invariant", pr.q_invariant},
           {"preregular", pr.preregular()}};
  if (pr.twist) out["twist"] = matrix_json(doc.field, pr.twist->Q);
  return out;
}

Json run_potential_build(Opts& o) {
  PotentialDocument doc = load_potential(o);
  Potential w = doc.to_potential();
  w.validate();
  HomogeneousPresentation pres = potential_algebra(doc.field, w, o.N);
  GradedAlgebra A(doc.field, pres);
  EqRegVerdict v = eqreg_check(doc.field, w, o.N, o.cap);
  Json out{{"name", doc.name},
           {"N", o.N},
           {"presentation",
            print_presentation(presentation_of(doc.field, pres, doc.generators))},
           {"dims", dims_json(A, o.cap)},
           {"eqreg",
            {{"acyclic", v.acyclic},
             {"slots_match", v.slots_match},
             {"koszul", v.koszul},
             {"gorenstein", gorenstein_kind(v.gorenstein)},
             {"bimodule_acyclic", v.bimodule_acyclic},
             {"consistent", v.consistent}}}};
  if (v.witness && o.witnesses)
    out["eqreg"]["witness"] = {{"position", v.witness->first},
                               {"internal_degree", v.witness->second}};
  return out;
}

Json run_potential_extract(Opts& o) {
  PresentationDocument doc = load_presentation(o);
  HomogeneousPresentation hp = homogeneous_part(doc);
  GradedAlgebra A(doc.field, hp);
  KoszulVerdict kv = is_koszul(A, o.cap);
  if (!kv.koszul)
    return {{"name", doc.name},
            {"extracted", false},
            {"reason", "the algebra is not certified Koszul at this cap"}};
  GorensteinVerdict g = gorenstein_check(A, o.cap);
  if (g.kind != GorensteinVerdict::Kind::gorenstein || !g.D)
    return {{"name", doc.name},
            {"extracted", false},
            {"reason", "no AS-Gorenstein certificate: " + g.reason}};
  Potential w = extract_potential(A, *g.D);
  PotentialDocument out_doc{doc.field, doc.generators, w.m, doc.name, w.w};
  bool roundtrip = potential_algebra(doc.field, w, hp.N).R.same_space(doc.field, hp.R);
  return {{"name", doc.name},
          {"extracted", true},
          {"D", *g.D},
          {"m", w.m},
          {"potential", print_potential(out_doc)},
          {"relation_round_trip", roundtrip}};
}

Json run_frobenius(Opts& o) {
  PotentialDocument doc = load_potential(o);
  Potential w = doc.to_potential();
  w.validate();
  FrobeniusQuotient fq = frobenius_quotient(doc.field, w, o.N, o.cap);
  return {{"name", doc.name},
          {"m", fq.m},
          {"dual_dims", fq.dual_dims},
          {"quotient_dims", fq.quotient_dims},
          {"nondegenerate", fq.nondegenerate},
          {"modular_identity", fq.modular_identity},
          {"gf_criterion", fq.gf_criterion}};
}

Json run_hochschild(Opts& o) {
  PotentialDocument doc = load_potential(o);
  Potential w = doc.to_potential();
  w.validate();
  return {{"name", doc.name}, {"boundary_vanishes", hochschild_cycle_check(doc.field, w)}};
}

Json run_corpus(Opts& o) {
  Json entries = Json::array();
  std::string all_text;
  for (const auto& e : builtin_corpus()) {
    all_text += e.text;
    entries.push_back(
        {{"key", e.key},
         {"kind", e.kind == CorpusEntry::Kind::homogeneous
                      ? "homogeneous"
                      : e.kind == CorpusEntry::Kind::nonhomogeneous ? "nonhomogeneous"
                                                                    : "potential"}});
  }
  o.raw_text = all_text;
  std::vector<CorpusCheck> checks = run_corpus_suite(o.cap);
  Json results = Json::array();
  long failures = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++failures;
    Json r{{"entry", c.entry}, {"check", c.check}, {"passed", c.passed}};
    if (!c.detail.empty()) r["detail"] = c.detail;
    results.push_back(r);
  }
  return {{"entries", entries},
          {"checks", results},
          {"total_checks", static_cast<long>(checks.size())},
          {"failures", failures}};
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"exact homological certificates for finitely presented graded algebras"};
  app.require_subcommand(1);

  Opts o;
  using Handler = Json (*)(Opts&);
  std::map<std::string, Handler> handlers;

  auto add_sub = [&](const std::string& name, const std::string& desc, Handler h,
                     bool needs_input, bool has_N = false) {
    CLI::App* sub = app.add_subcommand(name, desc);
    if (needs_input) sub->add_option("input", o.input, "input document")->required();
    sub->add_option("--max-degree", o.cap, "degree cap for all computations")
        ->default_val(8);
    sub->add_option("--field", o.field, "override: rational or prime:<p>");
    sub->add_option("--output", o.output, "machine report path ('-' for stdout)");
    sub->add_flag("--witnesses", o.witnesses, "include failure witnesses");
    sub->add_flag("--quiet", o.quiet, "suppress the human rendering");
    if (has_N) sub->add_option("--N", o.N, "homogeneity degree")->default_val(2);
    if (name == "ce") sub->add_option("--rep", o.rep_file, "representation file")->required();
    handlers[name] = h;
    return sub;
  };

  add_sub("hilbert", "graded dimensions of the algebra", run_hilbert, true);
  add_sub("dual", "Koszul dual presentation and dimensions", run_dual, true);
  add_sub("ncomplex", "Koszul N-complex slots and homology", run_ncomplex, true);
  add_sub("koszul", "Koszulity certificate", run_koszul, true);
  add_sub("gorenstein", "AS-Gorenstein certificate", run_gorenstein, true);
  add_sub("resolution", "minimal resolution Betti data", run_resolution, true);
  add_sub("yoneda", "Yoneda algebra dimensions", run_yoneda, true);
  add_sub("potential-check", "preregularity of a potential", run_potential_check, true);
  add_sub("potential-build", "algebra generated by a potential", run_potential_build, true,
          true);
  add_sub("potential-extract", "potential of a Gorenstein algebra", run_potential_extract,
          true);
  add_sub("frobenius", "Frobenius quotient of the dual", run_frobenius, true, true);
  add_sub("hochschild-cycle", "Hochschild boundary of the potential", run_hochschild, true);
  add_sub("pbw", "filtration dimensions and PBW verdict", run_pbw, true);
  add_sub("curved", "curved differential quadratic dual", run_curved, true);
  add_sub("certify-lie", "Lie prealgebra certification", run_certify_lie, true);
  add_sub("ce", "generalized Chevalley-Eilenberg cohomology", run_ce, true);
  add_sub("corpus", "run the built-in corpus and invariant suite", run_corpus, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  Handler h = handlers.at(sub->get_name());

  Json result;
  try {
    result = h(o);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }

  if (o.field_used.empty()) o.field_used = Field::rationals().describe();
  Json report{{"tool", "koz"},
              {"subcommand", sub->get_name()},
              {"field", o.field_used},
              {"max_degree", o.cap},
              {"input_digest", fnv1a_digest(o.raw_text)},
              {"result", result}};

  if (!o.output.empty()) {
    if (o.output == "-") {
      std::cout << report.dump(2) << "\n";
    } else {
      std::ofstream out(o.output, std::ios::binary);
      if (!out) {
        std::cerr << "input error: cannot write '" << o.output << "'\n";
        return 2;
      }
      out << report.dump(2) << "\n";
    }
  }
  if (!o.quiet && o.output != "-") std::cout << render_human(report);
  return 0;
}

}  // namespace koz
