#include "koz/nonhom.hpp"

#include <algorithm>

namespace koz {

namespace {

// Coordinates of v (degree N+1, member of R (x) E) over the basis
// {r_i (x) e_lambda}: coefficient (i, lambda) read off at word p_i . lambda.
Scalar left_coef(const TensorSubspace& R, const TensorElement& v, long i, int lambda) {
  WordIndex p = R.pivots()[static_cast<size_t>(i)];
  return sv_get(v.coords, p * R.d() + lambda);
}

// Coefficient (lambda, i) of v over {e_lambda (x) r_i}.
Scalar right_coef(const TensorSubspace& R, const TensorElement& v, int lambda, long i) {
  WordIndex p = R.pivots()[static_cast<size_t>(i)];
  WordIndex amb = R.ambient_dim();
  return sv_get(v.coords, lambda * amb + p);
}

// (phi_n (x) I)(v) for v in R (x) E.
TensorElement phi_tensor_id(const Field& F, const NonhomogeneousPresentation& pres, int n,
                            const TensorElement& v) {
  TensorElement out = TensorElement::zero(pres.d, n + 1);
  for (long i = 0; i < pres.R.dim(); ++i) {
    for (int lam = 0; lam < pres.d; ++lam) {
      Scalar c = left_coef(pres.R, v, i, lam);
      if (F.is_zero(c)) continue;
      TensorElement term = te_tensor(F, pres.phi[static_cast<size_t>(n)][static_cast<size_t>(i)],
                                     TensorElement::word(F, pres.d, 1, lam));
      out = te_add(F, out, te_scale(F, term, c));
    }
  }
  return out;
}

// (I (x) phi_n)(v) for v in E (x) R.
TensorElement id_tensor_phi(const Field& F, const NonhomogeneousPresentation& pres, int n,
                            const TensorElement& v) {
  TensorElement out = TensorElement::zero(pres.d, n + 1);
  for (int lam = 0; lam < pres.d; ++lam) {
    for (long i = 0; i < pres.R.dim(); ++i) {
      Scalar c = right_coef(pres.R, v, lam, i);
      if (F.is_zero(c)) continue;
      TensorElement term = te_tensor(F, TensorElement::word(F, pres.d, 1, lam),
                                     pres.phi[static_cast<size_t>(n)][static_cast<size_t>(i)]);
      out = te_add(F, out, te_scale(F, term, c));
    }
  }
  return out;
}

// The bracket map (phi_n (x) I - I (x) phi_n) on V_{N+1}.
TensorElement bracket(const Field& F, const NonhomogeneousPresentation& pres, int n,
                      const TensorElement& v) {
  return te_add(F, phi_tensor_id(F, pres, n, v),
                te_scale(F, id_tensor_phi(F, pres, n, v), F.from_int(-1)));
}

// Antiderivation extension of delta_rep to a homogeneous tensor in the dual
// letters: delta(t) = sum_j +/- (letters before j) (x) delta_rep[l_j] (x) (after).
TensorElement dual_antiderivation(const Field& F, int d,
                                  const std::vector<TensorElement>& delta_rep,
                                  const TensorElement& t) {
  TensorElement out = TensorElement::zero(d, t.degree + 1);
  for (const auto& [w, c] : t.coords) {
    auto letters = word_letters(w, d, t.degree);
    for (int j = 0; j < t.degree; ++j) {
      std::vector<int> pre(letters.begin(), letters.begin() + j);
      std::vector<int> suf(letters.begin() + j + 1, letters.end());
      TensorElement piece =
          te_tensor(F, TensorElement{d, j, {{word_from_letters(pre, d), F.from_int(1)}}},
                    te_tensor(F, delta_rep[static_cast<size_t>(letters[static_cast<size_t>(j)])],
                              TensorElement{d, static_cast<int>(suf.size()),
                                            {{word_from_letters(suf, d), F.from_int(1)}}}));
      Scalar sign = F.from_int(j % 2 == 0 ? 1 : -1);
      out = te_add(F, out, te_scale(F, piece, F.mul(c, sign)));
    }
  }
  return out;
}

}  // namespace

void NonhomogeneousPresentation::validate() const {
  if (d < 1) throw PreconditionError("presentation needs at least one generator");
  if (N < 2) throw PreconditionError("homogeneity degree must be >= 2");
  if (R.degree() != N || R.d() != d)
    throw DimensionMismatchError("relation subspace degree must equal N");
  if (static_cast<int>(phi.size()) != N)
    throw DimensionMismatchError("phi must have components 0..N-1");
  for (int n = 0; n < N; ++n) {
    const auto& comp = phi[static_cast<size_t>(n)];
    if (static_cast<long>(comp.size()) != R.dim())
      throw DimensionMismatchError("phi components must match the relation basis");
    for (const auto& t : comp) {
      if (t.degree != n || (t.d != d && !t.coords.empty()))
        throw DimensionMismatchError("phi component has wrong tensor degree");
    }
  }
}

TensorElement NonhomogeneousPresentation::apply_phi(const Field& F, int n,
                                                    const TensorElement& r) const {
  SparseVec cs = R.coords(F, r);
  TensorElement out = TensorElement::zero(d, n);
  for (const auto& [i, c] : cs)
    out = te_add(F, out,
                 te_scale(F, phi[static_cast<size_t>(n)][static_cast<size_t>(i)], c));
  return out;
}

TensorSubspace v_space(const Field& F, const NonhomogeneousPresentation& pres) {
  return intersect(F, box_subspace(F, 0, pres.R, 1), box_subspace(F, 1, pres.R, 0));
}

AbcReport check_conditions_abc(const Field& F, const NonhomogeneousPresentation& pres) {
  pres.validate();
  AbcReport rep;
  TensorSubspace V = v_space(F, pres);

  rep.a = true;
  for (long j = 0; j < V.dim(); ++j) {
    TensorElement v = V.basis_element(j);
    TensorElement psi = bracket(F, pres, pres.N - 1, v);
    if (!pres.R.contains(F, psi)) {
      rep.a = false;
      if (rep.failed.empty()) {
        rep.failed = "a";
        rep.witness = v;
      }
      break;
    }
  }
  if (!rep.a) return rep;

  rep.b = true;
  for (int n = 1; n < pres.N && rep.b; ++n) {
    for (long j = 0; j < V.dim(); ++j) {
      TensorElement v = V.basis_element(j);
      TensorElement psi = bracket(F, pres, pres.N - 1, v);
      TensorElement lhs = pres.apply_phi(F, n, psi);
      lhs = te_add(F, lhs, bracket(F, pres, n - 1, v));
      if (!lhs.is_zero()) {
        rep.b = false;
        if (rep.failed.empty()) {
          rep.failed = "b:" + std::to_string(n);
          rep.witness = v;
        }
        break;
      }
    }
  }
  rep.c = true;
  for (long j = 0; j < V.dim(); ++j) {
    TensorElement v = V.basis_element(j);
    TensorElement psi = bracket(F, pres, pres.N - 1, v);
    if (!pres.apply_phi(F, 0, psi).is_zero()) {
      rep.c = false;
      if (rep.failed.empty()) {
        rep.failed = "c";
        rep.witness = v;
      }
      break;
    }
  }
  return rep;
}

FiltrationReport pbw_check(const Field& F, const NonhomogeneousPresentation& pres, int cap) {
  pres.validate();
  FiltrationReport out;
  out.cap = cap;

  // Truncated tensor algebra: block offsets for the degree-k word bases.
  std::vector<WordIndex> off(static_cast<size_t>(cap) + 2, 0);
  std::vector<WordIndex> wc(static_cast<size_t>(cap) + 1, 0);
  for (int k = 0; k <= cap; ++k) {
    wc[static_cast<size_t>(k)] = word_count(pres.d, k);
    off[static_cast<size_t>(k) + 1] = off[static_cast<size_t>(k)] + wc[static_cast<size_t>(k)];
  }

  // Incremental span of u (x) (r - phi(r)) (x) v by increasing top degree.
  Echelon ech(F);
  std::vector<long> rank_at(static_cast<size_t>(cap) + 1, 0);
  for (int t = pres.N; t <= cap; ++t) {
    for (int a = 0; a + pres.N <= t; ++a) {
      int b = t - pres.N - a;
      WordIndex ua = wc[static_cast<size_t>(a)];
      WordIndex vb = wc[static_cast<size_t>(b)];
      for (WordIndex u = 0; u < ua; ++u) {
        for (WordIndex v = 0; v < vb; ++v) {
          for (long i = 0; i < pres.R.dim(); ++i) {
            std::map<WordIndex, Scalar> acc;
            for (const auto& [w, c] : pres.R.basis()[static_cast<size_t>(i)]) {
              WordIndex idx = off[static_cast<size_t>(t)] +
                              (u * wc[static_cast<size_t>(pres.N)] + w) * vb + v;
              acc[idx] = c;
            }
            for (int n = 0; n < pres.N; ++n) {
              int deg = a + n + b;
              for (const auto& [w, c] :
                   pres.phi[static_cast<size_t>(n)][static_cast<size_t>(i)].coords) {
                WordIndex idx = off[static_cast<size_t>(deg)] +
                                (u * wc[static_cast<size_t>(n)] + w) * vb + v;
                auto it = acc.try_emplace(idx, F.from_int(0)).first;
                it->second = F.sub(it->second, c);
              }
            }
            ech.insert(sv_normalized(F, std::move(acc)));
          }
        }
      }
    }
    rank_at[static_cast<size_t>(t)] = ech.rank();
  }

  GradedAlgebra A(F, pres.homogeneous());
  long cum_words = 0;
  long cum_alg = 0;
  out.pbw = true;
  for (int n = 0; n <= cap; ++n) {
    cum_words += wc[static_cast<size_t>(n)];
    cum_alg += A.dim(n);
    long fdim = cum_words - (n >= pres.N ? rank_at[static_cast<size_t>(n)] : 0);
    out.filtration_dims.push_back(fdim);
    out.homogeneous_cumulative.push_back(cum_alg);
    out.gr_dims.push_back(n == 0 ? fdim : fdim - out.filtration_dims[static_cast<size_t>(n) - 1]);
    bool ok = (fdim == cum_alg);
    out.pbw_per_degree.push_back(ok);
    if (!ok) {
      out.pbw = false;
      if (!out.first_failure) out.first_failure = n;
    }
  }

  AbcReport abc = check_conditions_abc(F, pres);
  KoszulVerdict kv = is_koszul(A, cap);
  out.npbw_hypotheses = kv.koszul && abc.ok();
  out.inconsistency = out.npbw_hypotheses && !out.pbw;
  return out;
}

CurvedDGA to_curved_dga(const Field& F, const NonhomogeneousPresentation& pres) {
  pres.validate();
  if (pres.N != 2)
    throw PreconditionError("curved differential quadratic duals require N = 2");
  CurvedDGA out;
  out.dual = koszul_dual(F, pres.homogeneous());
  GradedAlgebra D(F, out.dual);
  int d = pres.d;
  long r = pres.R.dim();

  // Dual-basis representatives tau_i in (E*)^(x)2 with <tau_i, r_j> = delta_ij.
  SparseMatrix M(r, word_count(d, 2));
  for (long i = 0; i < r; ++i)
    M.row[static_cast<size_t>(i)] = pres.R.basis()[static_cast<size_t>(i)];
  std::vector<TensorElement> tau;
  for (long i = 0; i < r; ++i) {
    SparseVec x;
    if (!sm_solve(F, M, SparseVec{{i, F.from_int(1)}}, x))
      throw PreconditionError("relation basis is not linearly independent");
    tau.push_back({d, 2, x});
  }

  // delta(theta_mu) = -phi_1^t(theta_mu), curvature = -phi_0^t(1).
  out.delta_rep.assign(static_cast<size_t>(d), TensorElement::zero(d, 2));
  for (int mu = 0; mu < d; ++mu) {
    for (long i = 0; i < r; ++i) {
      Scalar c = sv_get(pres.phi[1][static_cast<size_t>(i)].coords, mu);
      if (F.is_zero(c)) continue;
      out.delta_rep[static_cast<size_t>(mu)] =
          te_add(F, out.delta_rep[static_cast<size_t>(mu)],
                 te_scale(F, tau[static_cast<size_t>(i)], F.neg(c)));
    }
  }
  out.curv_rep = TensorElement::zero(d, 2);
  for (long i = 0; i < r; ++i) {
    Scalar c = sv_get(pres.phi[0][static_cast<size_t>(i)].coords, 0);
    if (F.is_zero(c)) continue;
    out.curv_rep = te_add(F, out.curv_rep, te_scale(F, tau[static_cast<size_t>(i)], F.neg(c)));
  }
  out.curv = D.reduce_tensor(out.curv_rep);

  // (a'): the antiderivation preserves the relation ideal in degree 3.
  TensorSubspace ideal3 =
      subspace_sum(F, box_subspace(F, 0, out.dual.R, 1), box_subspace(F, 1, out.dual.R, 0));
  out.a_ok = true;
  for (long j = 0; j < out.dual.R.dim(); ++j) {
    TensorElement img = dual_antiderivation(F, d, out.delta_rep, out.dual.R.basis_element(j));
    if (!ideal3.contains(F, img)) {
      out.a_ok = false;
      break;
    }
  }

  // (b'): delta^2 x = [F, x] on generators; (c'): delta F = 0.
  out.b_ok = true;
  for (int mu = 0; mu < d; ++mu) {
    AlgElem lhs = D.reduce_tensor(
        dual_antiderivation(F, d, out.delta_rep, out.delta_rep[static_cast<size_t>(mu)]));
    AlgElem rhs = D.add(D.multiply(out.curv, D.generator(mu)),
                        D.scale(D.multiply(D.generator(mu), out.curv), F.from_int(-1)));
    if (!te_equal(F, {d, 3, lhs.coords}, {d, 3, rhs.coords})) {
      out.b_ok = false;
      break;
    }
  }
  out.c_ok = D.reduce_tensor(dual_antiderivation(F, d, out.delta_rep, out.curv_rep)).is_zero();

  AbcReport abc = check_conditions_abc(F, pres);
  out.abc_agree = (out.a_ok == abc.a);
  if (abc.a) out.abc_agree = out.abc_agree && (out.b_ok == abc.b) && (out.c_ok == abc.c);
  return out;
}

NonhomogeneousPresentation from_curved_dga(const Field& F, const CurvedDGA& c) {
  if (!c.ok())
    throw PreconditionError("curved data does not satisfy the differential conditions");
  NonhomogeneousPresentation out;
  out.d = c.dual.d;
  out.N = 2;
  out.R = annihilator(F, c.dual.R);
  out.name = c.dual.name;
  long r = out.R.dim();
  out.phi.assign(2, {});
  for (long i = 0; i < r; ++i) {
    const SparseVec& ri = out.R.basis()[static_cast<size_t>(i)];
    out.phi[0].push_back(
        {out.d, 0, sv_normalized(F, {{0, F.neg(sv_dot(F, c.curv_rep.coords, ri))}})});
    std::map<WordIndex, Scalar> lin;
    for (int mu = 0; mu < out.d; ++mu) {
      Scalar v = F.neg(sv_dot(F, c.delta_rep[static_cast<size_t>(mu)].coords, ri));
      if (!F.is_zero(v)) lin[mu] = v;
    }
    out.phi[1].push_back({out.d, 1, sv_normalized(F, std::move(lin))});
  }
  return out;
}

LiePrealgebra lie_prealgebra_certify(const Field& F, const NonhomogeneousPresentation& pres,
                                     int cap) {
  pres.validate();
  if (pres.N != 2) throw PreconditionError("Lie prealgebra certification requires N = 2");
  for (const auto& t : pres.phi[0])
    if (!t.is_zero())
      throw PreconditionError("Lie prealgebra certification requires vanishing constant part");

  LiePrealgebra out;
  out.base = pres;
  GradedAlgebra A(F, pres.homogeneous());
  out.koszul = is_koszul(A, cap);
  if (out.koszul.koszul) out.gorenstein = gorenstein_check(A, cap);
  out.pbw = pbw_check(F, pres, cap);
  out.certified = out.koszul.koszul &&
                  out.gorenstein.kind == GorensteinVerdict::Kind::gorenstein && out.pbw.pbw &&
                  out.pbw.npbw_hypotheses && !out.pbw.inconsistency;
  if (!out.certified || !out.gorenstein.D) return out;

  // Frobenius test on the dual algebra: one-dimensional top component and a
  // nondegenerate multiplication pairing into it in every degree.
  int D = *out.gorenstein.D;
  GradedAlgebra dual(F, koszul_dual(F, pres.homogeneous()));
  for (int n = 0; n <= D; ++n) out.dual_dims.push_back(dual.dim(n));
  out.dual_frobenius = (dual.dim(D) == 1);
  for (int k = 0; k <= D && out.dual_frobenius; ++k) {
    long dk = dual.dim(k);
    long dmk = dual.dim(D - k);
    SparseMatrix P(dk, dmk);
    for (long i = 0; i < dk; ++i) {
      for (long j = 0; j < dmk; ++j) {
        AlgElem prod = dual.multiply({k, {{i, F.from_int(1)}}}, {D - k, {{j, F.from_int(1)}}});
        P.set(F, i, j, sv_get(prod.coords, 0));
      }
    }
    long rk = rank_of(F, P);
    out.dual_frobenius = (rk == dk && rk == dmk);
  }
  return out;
}

void validate_representation(const Field& F, const NonhomogeneousPresentation& pres,
                             const Representation& rep) {
  pres.validate();
  if (static_cast<int>(rep.rho.size()) != pres.d)
    throw DimensionMismatchError("representation needs one matrix per generator");
  for (const auto& m : rep.rho)
    if (m.rows != rep.dimV || m.cols != rep.dimV)
      throw DimensionMismatchError("representation matrices must be square of size dimV");

  auto act_word = [&](WordIndex w, int n) {
    SparseMatrix m = SparseMatrix::identity(F, rep.dimV);
    auto letters = word_letters(w, pres.d, n);
    if (rep.side == Representation::Side::right) std::reverse(letters.begin(), letters.end());
    for (int l : letters) m = sm_mul(F, m, rep.rho[static_cast<size_t>(l)]);
    return m;
  };
  auto act_tensor = [&](const TensorElement& t) {
    SparseMatrix m(rep.dimV, rep.dimV);
    for (const auto& [w, c] : t.coords)
      m = sm_add(F, m, sm_scale(F, act_word(w, t.degree), c));
    return m;
  };

  for (long i = 0; i < pres.R.dim(); ++i) {
    SparseMatrix m = act_tensor(pres.R.basis_element(i));
    for (int n = 0; n < pres.N; ++n) {
      m = sm_add(F, m,
                 sm_scale(F, act_tensor(pres.phi[static_cast<size_t>(n)][static_cast<size_t>(i)]),
                          F.from_int(-1)));
    }
    if (!m.is_zero())
      throw PreconditionError("representation violates relation " + std::to_string(i));
  }
}

CEComplex ce_complex(const Field& F, const NonhomogeneousPresentation& pres,
                     const Representation& rep, int cap) {
  validate_representation(F, pres, rep);
  CurvedDGA curved = to_curved_dga(F, pres);
  if (!curved.ok() || !curved.curv.is_zero())
    throw PreconditionError("the dual differential does not square to zero");

  GradedAlgebra D(F, curved.dual);
  int d = pres.d;
  long dv = rep.dimV;

  // Matrices of delta on the dual algebra components, degree n -> n+1.
  std::vector<SparseMatrix> delta_alg;
  for (int n = 0; n <= cap; ++n) {
    SparseMatrix m(D.dim(n + 1), D.dim(n));
    for (long p = 0; p < D.dim(n); ++p) {
      TensorElement wn{d, n, {{D.component(n).normal_words[static_cast<size_t>(p)],
                               F.from_int(1)}}};
      AlgElem img = D.reduce_tensor(dual_antiderivation(F, d, curved.delta_rep, wn));
      for (const auto& [q, c] : img.coords) m.set(F, q, p, c);
    }
    delta_alg.push_back(std::move(m));
  }

  // Cochain maps on V (x) A^! for the left representation rho' (for right
  // representations rho' is the transposed action); index (a, p) -> a*dim+p.
  std::vector<SparseMatrix> rho_l;
  for (const auto& m : rep.rho)
    rho_l.push_back(rep.side == Representation::Side::left ? m : sm_transpose(m));
  std::vector<SparseMatrix> cmaps;
  for (int n = 0; n <= cap; ++n) {
    long dn = D.dim(n);
    long dn1 = D.dim(n + 1);
    SparseMatrix m(dv * dn1, dv * dn);
    for (long p = 0; p < dn; ++p) {
      AlgElem base{n, {{p, F.from_int(1)}}};
      for (int lam = 0; lam < d; ++lam) {
        AlgElem prod = D.multiply(D.generator(lam), base);
        for (long b = 0; b < dv; ++b) {
          for (const auto& [a, ca] : rho_l[static_cast<size_t>(lam)].row[static_cast<size_t>(b)]) {
            // (rho_lam)_{b a}: column a feeds row b
            for (const auto& [q, cq] : prod.coords)
              m.set(F, b * dn1 + q, a * dn + p,
                    F.add(m.get(b * dn1 + q, a * dn + p), F.mul(ca, cq)));
          }
        }
      }
      for (long q = 0; q < dn1; ++q) {
        Scalar c = delta_alg[static_cast<size_t>(n)].get(q, p);
        if (F.is_zero(c)) continue;
        for (long a = 0; a < dv; ++a)
          m.set(F, a * dn1 + q, a * dn + p, F.add(m.get(a * dn1 + q, a * dn + p), c));
      }
    }
    cmaps.push_back(std::move(m));
  }

  CEComplex out;
  RealizedComplex rc;
  rc.positions = cap + 1;
  rc.kmin = rc.kmax = 0;
  rc.dims.assign(static_cast<size_t>(cap) + 1, {0});
  rc.maps.assign(static_cast<size_t>(cap) + 1, {SparseMatrix()});
  rc.closed_top = (dv == 0) || (D.dim(cap) == 0);

  if (rep.side == Representation::Side::left) {
    rc.cochain = true;
    for (int n = 0; n <= cap; ++n) {
      rc.dims[static_cast<size_t>(n)][0] = dv * D.dim(n);
      if (n < cap) rc.maps[static_cast<size_t>(n)][0] = cmaps[static_cast<size_t>(n)];
    }
  } else {
    // Chain variant on W (x) A^{!*}: conjugate the transposed cochain maps by
    // the perfect pairing between A^!_n and the dual coalgebra component.
    GradedAlgebra A(F, pres.homogeneous());
    std::vector<SparseMatrix> pairing;  // P_n(p, j) = <normal word p, basis j>
    std::vector<SparseMatrix> pairing_inv;
    for (int n = 0; n <= cap; ++n) {
      const TensorSubspace& W = A.dual_component(n);
      long dn = D.dim(n);
      if (W.dim() != dn) throw PreconditionError("dual component dimension mismatch");
      SparseMatrix P(dn, dn);
      for (long j = 0; j < dn; ++j)
        for (long p = 0; p < dn; ++p)
          P.set(F, p, j,
                sv_get(W.basis()[static_cast<size_t>(j)],
                       D.component(n).normal_words[static_cast<size_t>(p)]));
      pairing.push_back(P);
      pairing_inv.push_back(dn > 0 ? sm_inverse(F, P) : SparseMatrix(0, 0));
    }
    auto kron = [&](const SparseMatrix& P) {
      SparseMatrix K(dv * P.rows, dv * P.cols);
      for (long a = 0; a < dv; ++a)
        for (WordIndex p = 0; p < P.rows; ++p)
          for (const auto& [q, c] : P.row[static_cast<size_t>(p)])
            K.set(F, a * P.rows + p, a * P.cols + q, c);
      return K;
    };
    rc.cochain = false;
    for (int n = 0; n <= cap; ++n) {
      rc.dims[static_cast<size_t>(n)][0] = dv * D.dim(n);
      if (n >= 1) {
        SparseMatrix t = sm_transpose(cmaps[static_cast<size_t>(n) - 1]);
        rc.maps[static_cast<size_t>(n)][0] = sm_mul(
            F, kron(pairing_inv[static_cast<size_t>(n) - 1]),
            sm_mul(F, t, kron(pairing[static_cast<size_t>(n)])));
      }
    }
  }

  for (int n = 0; n <= cap; ++n) out.dims.push_back(rc.dims[static_cast<size_t>(n)][0]);
  out.rc = rc;
  out.cohomology = homology(F, rc);
  return out;
}

}  // namespace koz
