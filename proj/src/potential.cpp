#include "koz/potential.hpp"

#include <algorithm>

namespace koz {

TensorElement te_apply_slot(const Field& F, const TensorElement& t, int slot,
                            const SparseMatrix& M) {
  int d = t.d, n = t.degree;
  std::map<WordIndex, Scalar> acc;
  for (const auto& [w, c] : t.coords) {
    auto letters = word_letters(w, d, n);
    int r = letters[static_cast<size_t>(slot)];
    for (const auto& [alpha, val] : M.row[static_cast<size_t>(r)]) {
      letters[static_cast<size_t>(slot)] = static_cast<int>(alpha);
      acc[word_from_letters(letters, d)] += c * val;
    }
  }
  return {d, n, sv_normalized(F, std::move(acc))};
}

TensorElement te_rotate_left(const Field& F, const TensorElement& t, int k) {
  int d = t.d, n = t.degree;
  if (n == 0) return t;
  k = ((k % n) + n) % n;
  if (k == 0) return t;
  std::map<WordIndex, Scalar> acc;
  for (const auto& [w, c] : t.coords) {
    auto letters = word_letters(w, d, n);
    std::vector<int> rot(letters.begin() + k, letters.end());
    rot.insert(rot.end(), letters.begin(), letters.begin() + k);
    acc[word_from_letters(rot, d)] += c;
  }
  return {d, n, sv_normalized(F, std::move(acc))};
}

std::vector<bool> check_one_site(const Field& F, const Potential& w) {
  w.validate();
  int d = w.d, m = w.m;
  std::vector<bool> out;
  for (int slot = 0; slot < m; ++slot) {
    // flattening: row lambda, column = word formed by the other m-1 slots
    std::map<WordIndex, WordIndex> col_of;
    std::vector<SparseVec> rows;
    std::vector<std::map<WordIndex, Scalar>> acc(static_cast<size_t>(d));
    for (const auto& [v, c] : w.w.coords) {
      auto letters = word_letters(v, d, m);
      int lambda = letters[static_cast<size_t>(slot)];
      letters.erase(letters.begin() + slot);
      WordIndex rest = word_from_letters(letters, d);
      WordIndex col = col_of.emplace(rest, static_cast<WordIndex>(col_of.size())).first->second;
      acc[static_cast<size_t>(lambda)][col] += c;
    }
    Echelon ech(F);
    for (auto& a : acc) ech.insert(sv_normalized(F, std::move(a)));
    out.push_back(ech.rank() == d);
  }
  return out;
}

namespace {

struct TwistSolution {
  std::optional<Twist> twist;
  bool unique = false;
  bool invariant = false;
};

bool is_q_invariant(const Field& F, const Potential& w, const SparseMatrix& Q) {
  TensorElement t = w.w;
  for (int slot = 0; slot < w.m; ++slot) t = te_apply_slot(F, t, slot, sm_transpose(Q));
  return te_equal(F, t, w.w);
}

TwistSolution solve_twist_full(const Field& F, const Potential& w) {
  w.validate();
  int d = w.d, m = w.m;
  WordIndex tail_pow = word_count(d, m - 1);
  // unknowns q_{nu,lambda} at column nu*d+lambda; equation for the word u:
  // sum_nu w_{nu, u/d} q_{nu, u mod d} = w_u
  std::map<WordIndex, std::map<WordIndex, Scalar>> eq;
  for (const auto& [v, c] : w.w.coords) {
    WordIndex nu = v / tail_pow;
    WordIndex s = v % tail_pow;
    for (int lambda = 0; lambda < d; ++lambda) eq[s * d + lambda][nu * d + lambda] += c;
    eq.try_emplace(v);  // make sure the rhs row exists even with empty lhs
  }
  SparseMatrix M(static_cast<WordIndex>(eq.size()), static_cast<WordIndex>(d) * d);
  SparseVec b;
  WordIndex r = 0;
  for (auto& [u, row] : eq) {
    M.row[static_cast<size_t>(r)] = sv_normalized(F, std::move(row));
    Scalar rhs = F.canon(sv_get(w.w.coords, u));
    if (!F.is_zero(rhs)) b.emplace_back(r, rhs);
    ++r;
  }
  TwistSolution out;
  SparseVec x;
  if (!sm_solve(F, M, b, x)) return out;
  out.unique = (kernel(F, M).rows == 0);
  SparseMatrix Q(d, d);
  for (const auto& [idx, c] : x) Q.set(F, idx / d, idx % d, c);
  try {
    sm_inverse(F, Q);
  } catch (const PreconditionError&) {
    return out;  // only invertible twists count
  }
  out.invariant = is_q_invariant(F, w, Q);
  out.twist = Twist{std::move(Q)};
  return out;
}

}  // namespace

std::optional<Twist> solve_twist(const Field& F, const Potential& w) {
  return solve_twist_full(F, w).twist;
}

PreregularityReport preregularity(const Field& F, const Potential& w) {
  PreregularityReport rep;
  rep.one_site = check_one_site(F, w);
  TwistSolution s = solve_twist_full(F, w);
  rep.twist = std::move(s.twist);
  rep.twist_unique = s.unique;
  rep.q_invariant = s.invariant;
  if (rep.all_one_site() && rep.twist && !rep.twist_unique)
    throw PreconditionError("twist system degenerate despite 1-site nondegeneracy");
  return rep;
}

Potential pi_Q(const Field& F, const Potential& w, const Twist& t) {
  w.validate();
  if (F.char_divides(w.m))
    throw PreconditionError("cyclic average needs the degree invertible in the field");
  if (!is_q_invariant(F, w, t.Q))
    throw PreconditionError("cyclic average requires a Q-invariant form");
  int m = w.m;
  SparseMatrix Qt = sm_transpose(t.Q);
  TensorElement acc = TensorElement::zero(w.d, m);
  for (int k = 1; k <= m; ++k) {
    TensorElement term = w.w;
    for (int slot = 0; slot < m - k + 1; ++slot) term = te_apply_slot(F, term, slot, Qt);
    term = te_rotate_left(F, term, (m - k + 1) % m);
    acc = te_add(F, acc, term);
  }
  Potential out{w.d, m, te_scale(F, acc, F.inv(F.from_int(m)))};
  return out;
}

TensorSubspace potential_relations(const Field& F, const Potential& w, int N, int start) {
  w.validate();
  if (w.m < N) throw PreconditionError("potential degree below the homogeneity degree");
  TensorElement rot = te_rotate_left(F, w.w, start);
  WordIndex suf_pow = word_count(w.d, N);
  std::map<WordIndex, std::map<WordIndex, Scalar>> rows;
  for (const auto& [v, c] : rot.coords) rows[v / suf_pow][v % suf_pow] += c;
  std::vector<SparseVec> basis;
  for (auto& [prefix, row] : rows) basis.push_back(sv_normalized(F, std::move(row)));
  return TensorSubspace(F, w.d, N, basis);
}

HomogeneousPresentation potential_algebra(const Field& F, const Potential& w, int N) {
  if (N < 2) throw PreconditionError("homogeneity degree must be >= 2");
  if (w.m < N) throw PreconditionError("potential degree below the homogeneity degree");
  if (w.m < 2) throw PreconditionError("potential degree must be >= 2");
  PreregularityReport pr = preregularity(F, w);
  if (!pr.preregular()) throw PreconditionError("potential is not preregular");
  HomogeneousPresentation pres;
  pres.d = w.d;
  pres.N = N;
  pres.R = potential_relations(F, w, N, 0);
  pres.name = "potential";
  return pres;
}

WSpaces w_spaces(const Field& F, const Potential& w, int N) {
  w.validate();
  if (w.m < N) throw PreconditionError("potential degree below the homogeneity degree");
  WSpaces out;
  for (int n = 0; n <= w.m; ++n) {
    if (n <= N - 1) {
      out.spaces.push_back(TensorSubspace::full(F, w.d, n));
      continue;
    }
    WordIndex suf_pow = word_count(w.d, n);
    std::map<WordIndex, std::map<WordIndex, Scalar>> rows;
    for (const auto& [v, c] : w.w.coords) rows[v / suf_pow][v % suf_pow] += c;
    std::vector<SparseVec> basis;
    for (auto& [prefix, row] : rows) basis.push_back(sv_normalized(F, std::move(row)));
    out.spaces.push_back(TensorSubspace(F, w.d, n, basis));
  }
  return out;
}

namespace {

void verify_w_inclusions(const GradedAlgebra& A, const WSpaces& ws, int limit) {
  const Field& F = A.field();
  for (int n = 0; n <= limit && n < static_cast<int>(ws.spaces.size()); ++n) {
    const TensorSubspace& s = ws.spaces[static_cast<size_t>(n)];
    for (long i = 0; i < s.dim(); ++i) {
      if (!A.dual_component(n).contains(F, s.basis_element(i)))
        throw PreconditionError("contraction space escapes the dual coalgebra");
    }
  }
}

}  // namespace

FreeComplex w_n_complex(const GradedAlgebra& A, const Potential& w, int N, int cap) {
  const Field& F = A.field();
  WSpaces ws = w_spaces(F, w, N);
  int top = std::min(cap, w.m);
  verify_w_inclusions(A, ws, top);
  FreeComplex c;
  c.side = Side::left;
  c.A = &A;
  c.internal_cap = cap;
  for (int n = 0; n <= top; ++n) {
    c.tdeg.push_back(n);
    c.slots.push_back(ws.spaces[static_cast<size_t>(n)]);
    c.diff.push_back(n == 0 ? AMatrix()
                            : module_step(A, ws.spaces[static_cast<size_t>(n)],
                                          ws.spaces[static_cast<size_t>(n - 1)], Side::left));
  }
  return c;
}

std::pair<FreeComplex, FreeComplex> w_contractions(const GradedAlgebra& A, const Potential& w,
                                                   int N, int cap) {
  const Field& F = A.field();
  if (N >= 3 && (w.m - 1) % N != 0)
    throw PreconditionError("contraction subcomplex needs degree m = Np+1");
  WSpaces ws = w_spaces(F, w, N);
  verify_w_inclusions(A, ws, std::min(cap, w.m));
  int d = w.d, m = w.m;
  auto slot = [&](int t) -> TensorSubspace {
    if (t > m) return TensorSubspace::zero(F, d, t);
    return ws.spaces[static_cast<size_t>(t)];
  };
  return {contraction_left_custom(A, cap, m, slot),
          contraction_bimodule_custom(A, cap, m, slot)};
}

Potential extract_potential(const GradedAlgebra& A, int D) {
  int N = A.N();
  if (N >= 3 && D % 2 == 0)
    throw PreconditionError("cubic-or-higher potentials need odd global dimension");
  int m = nu_N(N, D);
  const TensorSubspace& top = A.dual_component(m);
  if (top.dim() != 1)
    throw PreconditionError("top dual slot is not one-dimensional: dimension " +
                            std::to_string(top.dim()));
  TensorElement w = top.basis_element(0);
  // echelon bases already lead with coefficient 1 at the deglex-least word,
  // but normalize explicitly so the convention does not depend on that detail
  const Field& F = A.field();
  w = te_scale(F, w, F.inv(w.coords.front().second));
  return {A.d(), m, std::move(w)};
}

namespace {

// image of a subspace under the generator substitution g(x_l) = sum_mu G(mu,l) x_mu
TensorSubspace transform_subspace(const Field& F, const TensorSubspace& s, const SparseMatrix& G) {
  SparseMatrix Gt = sm_transpose(G);
  std::vector<SparseVec> rows;
  for (long i = 0; i < s.dim(); ++i) {
    TensorElement t = s.basis_element(i);
    for (int slot = 0; slot < s.degree(); ++slot) t = te_apply_slot(F, t, slot, Gt);
    rows.push_back(t.coords);
  }
  return TensorSubspace(F, s.d(), s.degree(), rows);
}

// degree-n matrix of the algebra endomorphism determined by G on generators
SparseMatrix degree_matrix(const GradedAlgebra& A, const SparseMatrix& G, int n) {
  const Field& F = A.field();
  const GradedComponent& comp = A.component(n);
  SparseMatrix M(comp.dim, comp.dim);
  std::vector<std::map<WordIndex, Scalar>> rows(static_cast<size_t>(comp.dim));
  for (long col = 0; col < comp.dim; ++col) {
    auto letters = word_letters(comp.normal_words[static_cast<size_t>(col)], A.d(), n);
    AlgElem img = A.one();
    for (int l : letters) {
      AlgElem gen{1, {}};
      for (WordIndex mu = 0; mu < A.d(); ++mu) {
        Scalar c = G.get(mu, l);
        if (!F.is_zero(c)) gen.coords.emplace_back(mu, c);
      }
      img = A.multiply(img, gen);
    }
    for (const auto& [pos, c] : img.coords) rows[static_cast<size_t>(pos)][col] += c;
  }
  for (size_t rr = 0; rr < rows.size(); ++rr) M.row[rr] = sv_normalized(F, std::move(rows[rr]));
  return M;
}

}  // namespace

Automorphisms automorphisms(const Field& F, const Potential& w, int N, int cap) {
  PreregularityReport pr = preregularity(F, w);
  if (!pr.preregular()) throw PreconditionError("automorphisms need a preregular potential");
  Automorphisms out;
  out.Q = pr.twist->Q;
  SparseMatrix Qt = sm_transpose(out.Q);

  HomogeneousPresentation pres = potential_algebra(F, w, N);
  HomogeneousPresentation dual_pres = koszul_dual(F, pres);
  if (!transform_subspace(F, pres.R, Qt).same_space(F, pres.R))
    throw PreconditionError("twist does not preserve the relation space");
  if (!transform_subspace(F, dual_pres.R, out.Q).same_space(F, dual_pres.R))
    throw PreconditionError("twist does not preserve the dual relation space");

  GradedAlgebra alg(F, pres);
  GradedAlgebra dual(F, dual_pres);
  for (int n = 0; n <= cap; ++n) {
    out.sigma_dual.push_back(degree_matrix(dual, out.Q, n));
    out.sigma_alg.push_back(degree_matrix(alg, Qt, n));
  }
  return out;
}

FrobeniusQuotient frobenius_quotient(const Field& F, const Potential& w, int N, int cap) {
  PreregularityReport pr = preregularity(F, w);
  if (!pr.preregular()) throw PreconditionError("frobenius_quotient needs a preregular potential");
  int m = w.m;
  if (cap < m) throw CapacityError("cap below the potential degree");
  HomogeneousPresentation pres = potential_algebra(F, w, N);
  GradedAlgebra alg(F, pres);
  GradedAlgebra dual(F, koszul_dual(F, pres));
  if (!alg.dual_component(m).contains(F, w.w))
    throw PreconditionError("potential does not annihilate the dual ideal");

  Automorphisms sig = automorphisms(F, w, N, m);

  FrobeniusQuotient out;
  out.m = m;
  auto omega = [&](const AlgElem& x) -> Scalar {
    if (x.degree != m) return Scalar(0);
    return F.canon(sv_dot(F, dual.lift(x).coords, w.w.coords));
  };

  for (int k = 0; k <= m; ++k) out.dual_dims.push_back(dual.dim(k));
  for (int k = 0; k <= m; ++k) {
    long dk = dual.dim(k), dmk = dual.dim(m - k);
    SparseMatrix P(dk, dmk);
    for (long i = 0; i < dk; ++i) {
      for (long j = 0; j < dmk; ++j) {
        AlgElem x{k, {{i, F.from_int(1)}}};
        AlgElem y{m - k, {{j, F.from_int(1)}}};
        P.set(F, i, j, omega(dual.multiply(x, y)));
      }
    }
    out.pairing.push_back(std::move(P));
  }
  for (int k = 0; k <= m; ++k) out.quotient_dims.push_back(rank_of(F, out.pairing[static_cast<size_t>(m - k)]));
  out.nondegenerate = true;
  for (int k = 0; k <= m; ++k)
    if (out.quotient_dims[static_cast<size_t>(k)] != out.quotient_dims[static_cast<size_t>(m - k)])
      out.nondegenerate = false;

  out.modular_identity = true;
  for (int k = 0; k <= m && out.modular_identity; ++k) {
    long dk = dual.dim(k), dmk = dual.dim(m - k);
    const SparseMatrix& S = sig.sigma_dual[static_cast<size_t>(m - k)];
    for (long i = 0; i < dk && out.modular_identity; ++i) {
      for (long j = 0; j < dmk; ++j) {
        AlgElem x{k, {{i, F.from_int(1)}}};
        AlgElem sy{m - k, {}};
        for (WordIndex r = 0; r < dmk; ++r) {
          Scalar c = S.get(r, j);
          if (!F.is_zero(c)) sy.coords.emplace_back(r, c);
        }
        Scalar lhs = out.pairing[static_cast<size_t>(k)].get(i, j);
        Scalar rhs = omega(dual.multiply(sy, x));
        if (!F.eq(lhs, rhs)) {
          out.modular_identity = false;
          break;
        }
      }
    }
  }

  out.gf_criterion = (out.quotient_dims[static_cast<size_t>(m)] == 1) &&
                     (out.quotient_dims[0] == 1) && out.nondegenerate;
  return out;
}

bool hochschild_cycle_check(const Field& F, const Potential& w) {
  PreregularityReport pr = preregularity(F, w);
  if (!pr.preregular())
    throw PreconditionError("hochschild_cycle_check needs a preregular potential");
  int d = w.d, m = w.m;
  if (m < 2) throw PreconditionError("potential degree must be >= 2");
  HomogeneousPresentation pres = potential_algebra(F, w, 2);
  GradedAlgebra A(F, pres);
  SparseMatrix G = sm_transpose(pr.twist->Q);  // generator matrix of sigma^w
  SparseMatrix Ginv = sm_inverse(F, G);

  WordIndex tail_pow = word_count(d, m - 1);
  // terms with a degree-1 module part and m-1 degree-1 tensor factors
  std::map<std::pair<WordIndex, WordIndex>, Scalar> deg1;
  // terms with trivial module part and one degree-2 factor at a given slot
  std::map<std::tuple<int, WordIndex, WordIndex>, Scalar> deg2;

  for (const auto& [v, c] : w.w.coords) {
    auto letters = word_letters(v, d, m);
    // b term 0: right action of the first factor on the module element 1
    deg1[{letters[0], v % tail_pow}] += c;
    // interior terms: multiply adjacent factors inside the algebra
    for (int i = 1; i <= m - 1; ++i) {
      const AlgElem& prod =
          A.reduce_word(2, static_cast<WordIndex>(letters[static_cast<size_t>(i - 1)]) * d +
                               letters[static_cast<size_t>(i)]);
      std::vector<int> rest;
      for (int s = 0; s < m; ++s)
        if (s != i - 1 && s != i) rest.push_back(letters[static_cast<size_t>(s)]);
      WordIndex rw = word_from_letters(rest, d);
      Scalar sign = F.from_int(i % 2 == 0 ? 1 : -1);
      for (const auto& [pos, pc] : prod.coords) deg2[{i, pos, rw}] += sign * c * pc;
    }
    // last term: twisted left action of the final factor,
    // total sign (-1)^m * (-1)^{(m-1)*1} = -1
    int lam = letters[static_cast<size_t>(m - 1)];
    for (WordIndex mu = 0; mu < d; ++mu) {
      Scalar g = Ginv.get(mu, lam);
      if (!F.is_zero(g)) deg1[{mu, v / d}] += F.from_int(-1) * c * g;
    }
  }
  for (const auto& [key, c] : deg1)
    if (!F.is_zero(c)) return false;
  for (const auto& [key, c] : deg2)
    if (!F.is_zero(c)) return false;
  return true;
}

EqRegVerdict eqreg_check(const Field& F, const Potential& w, int N, int cap) {
  if (N >= 3 && (w.m - 1) % N != 0)
    throw PreconditionError("contraction subcomplex needs degree m = Np+1");
  PreregularityReport pr = preregularity(F, w);
  if (!pr.preregular()) throw PreconditionError("eqreg_check needs a preregular potential");
  HomogeneousPresentation pres = potential_algebra(F, w, N);
  GradedAlgebra A(F, pres);
  WSpaces ws = w_spaces(F, w, N);
  verify_w_inclusions(A, ws, std::min(cap, w.m));
  auto slot = [&](int t) -> TensorSubspace {
    if (t > w.m) return TensorSubspace::zero(F, w.d, t);
    return ws.spaces[static_cast<size_t>(t)];
  };

  EqRegVerdict v;
  FreeComplex wk = contraction_left_custom(A, cap, w.m, slot);
  HomologyReport H = homology(F, wk.realize(cap));
  v.witness = H.first_nonzero_positive();
  v.acyclic = !v.witness.has_value();

  if (v.acyclic) {
    v.slots_match = true;
    for (int i = 0; i < wk.positions(); ++i) {
      if (!wk.slots[static_cast<size_t>(i)].same_space(
              F, A.dual_component(wk.tdeg[static_cast<size_t>(i)])))
        v.slots_match = false;
    }
  }

  KoszulVerdict kv = is_koszul(A, cap);
  v.koszul = kv.koszul;
  if (kv.koszul) v.gorenstein = gorenstein_check(A, cap).kind;

  int bcap = std::min(cap, 6);
  FreeComplex wb = contraction_bimodule_custom(A, bcap, w.m, slot);
  HomologyReport HB = homology(F, wb.realize(bcap));
  v.bimodule_acyclic = HB.vanishes_in_positive_positions();

  bool cond_i = v.koszul && v.gorenstein == GorensteinVerdict::Kind::gorenstein;
  v.consistent = (v.acyclic == cond_i) && (v.acyclic == v.bimodule_acyclic);
  return v;
}

}  // namespace koz
