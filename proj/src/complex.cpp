#include "koz/complex.hpp"

namespace koz {

AMatrix am_compose(const GradedAlgebra& A, const AMatrix& f, const AMatrix& g) {
  if (f.dst_dim != g.src_dim) throw DimensionMismatchError("composition shape mismatch");
  AMatrix out(f.src_dim, g.dst_dim, f.entry_degree + g.entry_degree);
  for (long j = 0; j < f.src_dim; ++j) {
    for (long k = 0; k < g.dst_dim; ++k) {
      AlgElem acc{out.entry_degree, {}};
      for (long i = 0; i < f.dst_dim; ++i) {
        const AlgElem& fe = f.entry[static_cast<size_t>(j)][static_cast<size_t>(i)];
        const AlgElem& ge = g.entry[static_cast<size_t>(i)][static_cast<size_t>(k)];
        if (fe.is_zero() || ge.is_zero()) continue;
        acc = A.add(acc, A.multiply(fe, ge));
      }
      out.entry[static_cast<size_t>(j)][static_cast<size_t>(k)] = std::move(acc);
    }
  }
  return out;
}

AMatrix am_dual(const AMatrix& f) {
  AMatrix out(f.dst_dim, f.src_dim, f.entry_degree);
  for (long j = 0; j < f.src_dim; ++j)
    for (long i = 0; i < f.dst_dim; ++i)
      out.entry[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          f.entry[static_cast<size_t>(j)][static_cast<size_t>(i)];
  return out;
}

std::vector<std::map<int, SparseVec>> split_left(const Field& F, const TensorSubspace& vt,
                                                 const TensorSubspace& vprev) {
  int d = vt.d();
  int t = vt.degree();
  if (t < 1 || vprev.degree() != t - 1)
    throw PreconditionError("split_left: degree mismatch");
  WordIndex rest_pow = word_count(d, t - 1);
  std::vector<std::map<int, SparseVec>> out(vt.basis().size());
  for (size_t j = 0; j < vt.basis().size(); ++j) {
    std::map<int, std::map<WordIndex, Scalar>> per_lambda;
    for (const auto& [w, c] : vt.basis()[j])
      per_lambda[static_cast<int>(w / rest_pow)][w % rest_pow] += c;
    for (auto& [lambda, acc] : per_lambda) {
      TensorElement comp{d, t - 1, sv_normalized(F, std::move(acc))};
      if (comp.is_zero()) continue;
      out[j][lambda] = vprev.coords(F, comp);
    }
  }
  return out;
}

std::vector<std::map<int, SparseVec>> split_right(const Field& F, const TensorSubspace& vt,
                                                  const TensorSubspace& vprev) {
  int d = vt.d();
  int t = vt.degree();
  if (t < 1 || vprev.degree() != t - 1)
    throw PreconditionError("split_right: degree mismatch");
  std::vector<std::map<int, SparseVec>> out(vt.basis().size());
  for (size_t j = 0; j < vt.basis().size(); ++j) {
    std::map<int, std::map<WordIndex, Scalar>> per_lambda;
    for (const auto& [w, c] : vt.basis()[j]) per_lambda[static_cast<int>(w % d)][w / d] += c;
    for (auto& [lambda, acc] : per_lambda) {
      TensorElement comp{d, t - 1, sv_normalized(F, std::move(acc))};
      if (comp.is_zero()) continue;
      out[j][lambda] = vprev.coords(F, comp);
    }
  }
  return out;
}

namespace {

AMatrix step_from_split(const GradedAlgebra& A,
                        const std::vector<std::map<int, SparseVec>>& split, long dst_dim) {
  AMatrix m(static_cast<long>(split.size()), dst_dim, 1);
  for (size_t j = 0; j < split.size(); ++j) {
    std::map<long, std::map<WordIndex, Scalar>> acc;  // dst index -> A_1 coords
    for (const auto& [lambda, gamma] : split[j])
      for (const auto& [i, c] : gamma) acc[i][lambda] += c;
    for (auto& [i, coords] : acc)
      m.entry[j][static_cast<size_t>(i)] = {1, sv_normalized(A.field(), std::move(coords))};
  }
  return m;
}

}  // namespace

AMatrix module_step(const GradedAlgebra& A, const TensorSubspace& vt, const TensorSubspace& vp,
                    Side side) {
  auto split = (side == Side::right) ? split_right(A.field(), vt, vp)
                                     : split_left(A.field(), vt, vp);
  return step_from_split(A, split, vp.dim());
}

AMatrix koszul_step_left(const GradedAlgebra& A, int t) {
  return module_step(A, A.dual_component(t), A.dual_component(t - 1), Side::left);
}

AMatrix koszul_step_right(const GradedAlgebra& A, int t) {
  return module_step(A, A.dual_component(t), A.dual_component(t - 1), Side::right);
}

FreeComplex koszul_n_complex(const GradedAlgebra& A, int cap) {
  FreeComplex c;
  c.side = Side::left;
  c.A = &A;
  c.internal_cap = cap;
  for (int t = 0; t <= cap; ++t) {
    c.tdeg.push_back(t);
    c.slots.push_back(A.dual_component(t));
    c.diff.push_back(t == 0 ? AMatrix() : koszul_step_left(A, t));
  }
  return c;
}

FreeComplex right_n_complex(const GradedAlgebra& A, int cap) {
  FreeComplex c;
  c.side = Side::right;
  c.A = &A;
  c.internal_cap = cap;
  for (int t = 0; t <= cap; ++t) {
    c.tdeg.push_back(t);
    c.slots.push_back(A.dual_component(t));
    c.diff.push_back(t == 0 ? AMatrix() : koszul_step_right(A, t));
  }
  return c;
}

FreeComplex contraction_left_custom(const GradedAlgebra& A, int cap, int tdeg_limit,
                                    const SlotFn& slot) {
  int N = A.N();
  FreeComplex c;
  c.side = Side::left;
  c.A = &A;
  c.internal_cap = cap;
  int limit = std::min(cap, tdeg_limit);
  for (int i = 0; nu_N(N, i) <= limit; ++i) {
    int t = nu_N(N, i);
    c.tdeg.push_back(t);
    c.slots.push_back(slot(t));
    if (i == 0) {
      c.diff.push_back(AMatrix());
    } else if (i % 2 == 1) {
      c.diff.push_back(module_step(A, slot(t), slot(t - 1), Side::left));
    } else {
      // delta = d^{N-1}: compose one-step maps through the intermediate slots
      AMatrix m = module_step(A, slot(t), slot(t - 1), Side::left);
      for (int s = 1; s < N - 1; ++s)
        m = am_compose(A, m, module_step(A, slot(t - s), slot(t - s - 1), Side::left));
      c.diff.push_back(std::move(m));
    }
  }
  return c;
}

FreeComplex contraction_left(const GradedAlgebra& A, int cap) {
  return contraction_left_custom(A, cap, cap,
                                 [&A](int t) { return A.dual_component(t); });
}

FreeComplex dualize(const FreeComplex& c) {
  if (c.side != Side::left || c.cochain)
    throw PreconditionError("dualize expects a chain complex of left modules");
  FreeComplex out;
  out.side = Side::right;
  out.cochain = true;
  out.A = c.A;
  out.tdeg = c.tdeg;
  out.slots = c.slots;
  out.internal_cap = c.internal_cap;
  out.diff.resize(c.slots.size());
  for (size_t i = 0; i + 1 < c.slots.size(); ++i) out.diff[i] = am_dual(c.diff[i + 1]);
  return out;
}

namespace {

struct BimodLayout {
  std::vector<long> offset;  // offset of block p (p = 0..n-t), plus total at the end
  long total = 0;
};

BimodLayout bimod_layout(const GradedAlgebra& A, long vdim, int t, int n) {
  BimodLayout l;
  if (n < t || vdim == 0) {
    l.total = 0;
    return l;
  }
  long off = 0;
  for (int p = 0; p <= n - t; ++p) {
    l.offset.push_back(off);
    off += A.dim(p) * vdim * A.dim(n - t - p);
  }
  l.total = off;
  return l;
}

// One-step bimodule maps A (x) V_t (x) A -> A (x) V_{t-1} (x) A at total degree n.
// kind 0: d (split first letter to the left factor); kind 1: d' (last letter right).
SparseMatrix bimod_step(const GradedAlgebra& A, const TensorSubspace& vt,
                        const TensorSubspace& vp, int t, int n, int kind) {
  const Field& F = A.field();
  long vdim = vt.dim(), pdim = vp.dim();
  BimodLayout src = bimod_layout(A, vdim, t, n);
  BimodLayout dst = bimod_layout(A, pdim, t - 1, n);
  SparseMatrix m(dst.total, src.total);
  if (src.total == 0 || dst.total == 0) return m;
  auto split = (kind == 0) ? split_left(F, vt, vp) : split_right(F, vt, vp);
  std::vector<std::map<WordIndex, Scalar>> rows(static_cast<size_t>(dst.total));
  for (int p = 0; p <= n - t; ++p) {
    int q = n - t - p;
    long ap = A.dim(p), aq = A.dim(q);
    for (long ppos = 0; ppos < ap; ++ppos) {
      for (long j = 0; j < vdim; ++j) {
        for (long qpos = 0; qpos < aq; ++qpos) {
          WordIndex col = src.offset[static_cast<size_t>(p)] + (ppos * vdim + j) * aq + qpos;
          for (const auto& [lambda, gamma] : split[static_cast<size_t>(j)]) {
            if (kind == 0) {
              // a x_lambda (x) gamma (x) b, lands in block (p+1, q)
              AlgElem prod = A.multiply({p, {{ppos, F.from_int(1)}}}, A.generator(lambda));
              long aq2 = aq;
              for (const auto& [pp, pc] : prod.coords) {
                for (const auto& [i, c] : gamma) {
                  WordIndex row = dst.offset[static_cast<size_t>(p + 1)] +
                                  (pp * pdim + i) * aq2 + qpos;
                  rows[static_cast<size_t>(row)][col] += pc * c;
                }
              }
            } else {
              // a (x) gamma (x) x_lambda b, lands in block (p, q+1)
              AlgElem prod = A.multiply(A.generator(lambda), {q, {{qpos, F.from_int(1)}}});
              long aq2 = A.dim(q + 1);
              for (const auto& [qq, qc] : prod.coords) {
                for (const auto& [i, c] : gamma) {
                  WordIndex row = dst.offset[static_cast<size_t>(p)] +
                                  (ppos * pdim + i) * aq2 + qq;
                  rows[static_cast<size_t>(row)][col] += qc * c;
                }
              }
            }
          }
        }
      }
    }
  }
  for (size_t r = 0; r < rows.size(); ++r) m.row[r] = sv_normalized(F, std::move(rows[r]));
  return m;
}

}  // namespace

FreeComplex contraction_bimodule_custom(const GradedAlgebra& A, int cap, int tdeg_limit,
                                        const SlotFn& slot) {
  const Field& F = A.field();
  int N = A.N();
  FreeComplex c;
  c.side = Side::bimodule;
  c.A = &A;
  c.internal_cap = cap;
  int limit = std::min(cap, tdeg_limit);
  for (int i = 0; nu_N(N, i) <= limit; ++i) {
    c.tdeg.push_back(nu_N(N, i));
    c.slots.push_back(slot(nu_N(N, i)));
    c.diff.push_back(AMatrix());
  }
  int P = c.positions();
  std::map<int, TensorSubspace> slot_cache;
  auto slot_at = [&](int t) -> const TensorSubspace& {
    auto it = slot_cache.find(t);
    if (it == slot_cache.end()) it = slot_cache.emplace(t, slot(t)).first;
    return it->second;
  };

  RealizedComplex rc;
  rc.cochain = false;
  rc.positions = P;
  rc.kmin = 0;
  rc.kmax = cap;
  rc.dims.resize(static_cast<size_t>(P));
  rc.maps.resize(static_cast<size_t>(P));

  std::map<std::pair<int, int>, SparseMatrix> dstep, dpstep;
  auto get_step = [&](int t, int n, int kind) -> const SparseMatrix& {
    auto& cache = (kind == 0) ? dstep : dpstep;
    auto it = cache.find({t, n});
    if (it == cache.end())
      it = cache.emplace(std::make_pair(t, n),
                         bimod_step(A, slot_at(t), slot_at(t - 1), t, n, kind)).first;
    return it->second;
  };

  for (int i = 0; i < P; ++i) {
    int t = c.tdeg[static_cast<size_t>(i)];
    long vdim = c.slots[static_cast<size_t>(i)].dim();
    for (int n = 0; n <= cap; ++n)
      rc.dims[static_cast<size_t>(i)].push_back(bimod_layout(A, vdim, t, n).total);
    if (i == 0) continue;
    for (int n = 0; n <= cap; ++n) {
      SparseMatrix m;
      if (i % 2 == 1) {
        // delta' = d - d', one step
        m = sm_add(F, get_step(t, n, 0), sm_scale(F, get_step(t, n, 1), F.from_int(-1)));
      } else {
        // delta' = sum_{r=0}^{N-1} d^r (d')^{N-1-r}, N-1 steps each
        bool first_term = true;
        for (int r = 0; r < N; ++r) {
          SparseMatrix term;
          int tc = t;
          bool started = false;
          for (int s = 0; s < N - 1 - r; ++s) {
            const SparseMatrix& st = get_step(tc, n, 1);
            term = started ? sm_mul(F, st, term) : st;
            started = true;
            --tc;
          }
          for (int s = 0; s < r; ++s) {
            const SparseMatrix& st = get_step(tc, n, 0);
            term = started ? sm_mul(F, st, term) : st;
            started = true;
            --tc;
          }
          m = first_term ? term : sm_add(F, m, term);
          first_term = false;
        }
      }
      rc.maps[static_cast<size_t>(i)].push_back(std::move(m));
    }
  }
  c.prerealized = std::move(rc);
  return c;
}

FreeComplex contraction_bimodule(const GradedAlgebra& A, int cap) {
  return contraction_bimodule_custom(A, cap, cap,
                                     [&A](int t) { return A.dual_component(t); });
}

RealizedComplex FreeComplex::realize(int cap) const {
  if (prerealized) {
    if (cap > internal_cap) throw PreconditionError("realize beyond computed cap");
    return *prerealized;
  }
  if (cap > internal_cap) throw PreconditionError("realize beyond computed cap");
  const GradedAlgebra& alg = *A;
  const Field& F = alg.field();
  int P = positions();
  RealizedComplex rc;
  rc.cochain = cochain;
  rc.positions = P;
  if (!cochain) {
    rc.kmin = 0;
    rc.kmax = cap;
  } else {
    int ttop = tdeg.empty() ? 0 : tdeg.back();
    rc.kmin = -ttop;
    rc.kmax = cap - ttop;
    rc.closed_top = false;
  }
  rc.dims.resize(static_cast<size_t>(P));
  rc.maps.resize(static_cast<size_t>(P));

  auto comp_adeg = [&](int i, int k) {
    return cochain ? k + tdeg[static_cast<size_t>(i)] : k - tdeg[static_cast<size_t>(i)];
  };
  auto comp_dim = [&](int i, int k) -> long {
    int a = comp_adeg(i, k);
    if (a < 0) return 0;
    return alg.dim(a) * slots[static_cast<size_t>(i)].dim();
  };

  for (int i = 0; i < P; ++i)
    for (int k = rc.kmin; k <= rc.kmax; ++k)
      rc.dims[static_cast<size_t>(i)].push_back(comp_dim(i, k));

  for (int i = 0; i < P; ++i) {
    bool has_map = cochain ? (i + 1 < P) : (i >= 1);
    if (!has_map) continue;
    int src = i, dst = cochain ? i + 1 : i - 1;
    const AMatrix& M = diff[static_cast<size_t>(src)];
    for (int k = rc.kmin; k <= rc.kmax; ++k) {
      int sa = comp_adeg(src, k), da = comp_adeg(dst, k);
      long sdim = comp_dim(src, k), ddim = comp_dim(dst, k);
      SparseMatrix m(ddim, sdim);
      if (sdim > 0 && ddim > 0) {
        long vs = slots[static_cast<size_t>(src)].dim();
        long vd = slots[static_cast<size_t>(dst)].dim();
        long as = alg.dim(sa), ad = alg.dim(da);
        std::vector<std::map<WordIndex, Scalar>> rows(static_cast<size_t>(ddim));
        for (long p = 0; p < as; ++p) {
          AlgElem word_elem{sa, {{p, F.from_int(1)}}};
          for (long j = 0; j < vs; ++j) {
            WordIndex col = (side == Side::left) ? p * vs + j : j * as + p;
            for (long t = 0; t < vd; ++t) {
              const AlgElem& e = M.entry[static_cast<size_t>(j)][static_cast<size_t>(t)];
              if (e.is_zero()) continue;
              AlgElem prod = (side == Side::left) ? alg.multiply(word_elem, e)
                                                  : alg.multiply(e, word_elem);
              for (const auto& [q, cv] : prod.coords) {
                WordIndex row = (side == Side::left) ? q * vd + t : t * ad + q;
                rows[static_cast<size_t>(row)][col] += cv;
              }
            }
          }
        }
        for (size_t r = 0; r < rows.size(); ++r) m.row[r] = sv_normalized(F, std::move(rows[r]));
      }
      rc.maps[static_cast<size_t>(src)].push_back(std::move(m));
    }
  }
  return rc;
}

HomologyReport homology(const Field& F, const RealizedComplex& c) {
  HomologyReport rep;
  int width = c.kmax - c.kmin + 1;
  std::vector<std::vector<long>> rank_memo(static_cast<size_t>(c.positions),
                                           std::vector<long>(static_cast<size_t>(width), -1));
  auto map_rank = [&](int i, int k) -> long {
    long& memo = rank_memo[static_cast<size_t>(i)][static_cast<size_t>(k - c.kmin)];
    if (memo < 0) memo = rank_of(F, c.maps[static_cast<size_t>(i)][static_cast<size_t>(k - c.kmin)]);
    return memo;
  };
  for (int i = 0; i < c.positions; ++i) {
    for (int k = c.kmin; k <= c.kmax; ++k) {
      long dim = c.dims[static_cast<size_t>(i)][static_cast<size_t>(k - c.kmin)];
      if (dim == 0) {
        rep.table[{i, k}] = 0;
        continue;
      }
      long out_rank, in_rank;
      if (!c.cochain) {
        out_rank = (i >= 1) ? map_rank(i, k) : 0;
        if (i + 1 < c.positions) in_rank = map_rank(i + 1, k);
        else if (c.closed_top) in_rank = 0;
        else continue;  // boundary differential unknown: omit
      } else {
        in_rank = (i >= 1) ? map_rank(i - 1, k) : 0;
        if (i + 1 < c.positions) out_rank = map_rank(i, k);
        else if (c.closed_top) out_rank = 0;
        else continue;
      }
      rep.table[{i, k}] = dim - out_rank - in_rank;
    }
  }
  return rep;
}

}  // namespace koz
