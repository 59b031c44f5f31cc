#include "koz/certify.hpp"

#include <set>

namespace koz {

KoszulVerdict is_koszul(const GradedAlgebra& A, int cap, int bimodule_cap) {
  const Field& F = A.field();
  if (bimodule_cap < 0) bimodule_cap = std::min(cap, 6);
  KoszulVerdict v;
  v.cap = cap;
  v.bimodule_cap = bimodule_cap;

  HomologyReport left = homology(F, contraction_left(A, cap).realize(cap));
  v.witness = left.first_nonzero_positive();
  v.koszul = !v.witness.has_value();

  HomologyReport bi = homology(F, contraction_bimodule(A, bimodule_cap).realize(bimodule_cap));
  bool bi_ok = bi.vanishes_in_positive_positions();
  bool left_restricted_ok = true;
  for (const auto& [key, dim] : left.table)
    if (key.first >= 1 && key.second <= bimodule_cap && dim != 0) left_restricted_ok = false;
  v.crosscheck_agree = (left_restricted_ok == bi_ok);
  return v;
}

namespace {

// Free graded left module with generators in prescribed degrees; degree-k
// component is the direct sum of A_{k - gdeg[g]} blocks in generator order.
class FreeModule {
 public:
  FreeModule(const GradedAlgebra& A, std::vector<int> gdeg) : A_(&A), gdeg_(std::move(gdeg)) {}

  size_t gens() const { return gdeg_.size(); }
  int gdeg(size_t g) const { return gdeg_[g]; }

  long block_dim(size_t g, int k) const {
    int a = k - gdeg_[g];
    return a < 0 ? 0 : A_->dim(a);
  }
  long offset(size_t g, int k) const {
    long off = 0;
    for (size_t h = 0; h < g; ++h) off += block_dim(h, k);
    return off;
  }
  long dim(int k) const { return offset(gdeg_.size(), k); }

  std::pair<size_t, long> decode(WordIndex idx, int k) const {
    long off = 0;
    for (size_t g = 0; g < gdeg_.size(); ++g) {
      long b = block_dim(g, k);
      if (idx < off + b) return {g, idx - off};
      off += b;
    }
    throw PreconditionError("module index out of range");
  }

  /// Left multiplication of a degree-k component vector by a degree-da element.
  SparseVec mult(const AlgElem& a, const SparseVec& v, int k) const {
    const Field& F = A_->field();
    std::map<WordIndex, Scalar> acc;
    for (const auto& [idx, c] : v) {
      auto [g, p] = decode(idx, k);
      AlgElem prod = A_->multiply(a, {k - gdeg_[g], {{p, F.from_int(1)}}});
      long off = offset(g, k + a.degree);
      for (const auto& [q, pc] : prod.coords) acc[off + q] += c * pc;
    }
    return sv_normalized(F, std::move(acc));
  }

 private:
  const GradedAlgebra* A_;
  std::vector<int> gdeg_;
};

struct Gen {
  int degree;
  SparseVec vec;  // coordinates in the previous module's component at `degree`
};

}  // namespace

BettiData minimal_resolution(const GradedAlgebra& A, int cap) {
  const Field& F = A.field();
  int N = A.N();
  BettiData out;
  out.cap = cap;
  out.stages.push_back({{0, 1}});

  FreeModule prev(A, {0});
  // kernel bases of the current map, per internal degree; stage 1 starts from
  // the augmentation A -> K, whose kernel is everything in degree >= 1
  std::vector<std::vector<SparseVec>> ker(static_cast<size_t>(cap + 1));
  for (int k = 1; k <= cap; ++k)
    for (long p = 0; p < A.dim(k); ++p) ker[static_cast<size_t>(k)].push_back({{p, F.from_int(1)}});

  for (int s = 1; nu_N(N, s) <= cap; ++s) {
    // minimal generators: complement of A_1 * (kernel one degree down)
    std::vector<Gen> gens;
    std::map<int, long> counts;
    for (int k = 1; k <= cap; ++k) {
      Echelon ech(F);
      if (k >= 2) {
        for (const auto& v : ker[static_cast<size_t>(k - 1)])
          for (int lambda = 0; lambda < A.d(); ++lambda)
            ech.insert(prev.mult(A.generator(lambda), v, k - 1));
      }
      for (const auto& v : ker[static_cast<size_t>(k)]) {
        if (ech.insert(v)) {
          gens.push_back({k, v});
          ++counts[k];
        }
      }
    }
    out.stages.push_back(counts);
    if (gens.empty()) {
      // all further stages vanish too
      while (nu_N(N, static_cast<int>(out.stages.size())) <= cap) out.stages.push_back({});
      break;
    }

    // realize the next differential and take kernels per degree
    std::vector<int> gdeg;
    for (const auto& g : gens) gdeg.push_back(g.degree);
    FreeModule cur(A, gdeg);
    std::vector<std::vector<SparseVec>> next_ker(static_cast<size_t>(cap + 1));
    for (int k = 1; k <= cap; ++k) {
      long cols = cur.dim(k);
      if (cols == 0) continue;
      SparseMatrix m(prev.dim(k), cols);
      std::vector<std::map<WordIndex, Scalar>> rows(static_cast<size_t>(prev.dim(k)));
      for (size_t g = 0; g < gens.size(); ++g) {
        long boff = cur.offset(g, k);
        long bdim = cur.block_dim(g, k);
        for (long p = 0; p < bdim; ++p) {
          AlgElem a{k - gens[g].degree, {{p, F.from_int(1)}}};
          SparseVec img = prev.mult(a, gens[g].vec, gens[g].degree);
          for (const auto& [r, c] : img) rows[static_cast<size_t>(r)][boff + p] += c;
        }
      }
      for (size_t r = 0; r < rows.size(); ++r) m.row[r] = sv_normalized(F, std::move(rows[r]));
      SparseMatrix kr = kernel(F, m);
      for (WordIndex r = 0; r < kr.rows; ++r)
        next_ker[static_cast<size_t>(k)].push_back(kr.row[static_cast<size_t>(r)]);
    }
    prev = cur;
    ker = std::move(next_ker);
  }

  int last_nonzero = -1;
  for (int s = 0; s < static_cast<int>(out.stages.size()); ++s)
    if (out.total(s) > 0) last_nonzero = s;
  if (last_nonzero >= 0) {
    out.global_dimension = last_nonzero;
    // the window is only trustworthy when stage D+1 was actually computed
    int S = static_cast<int>(out.stages.size()) - 1;
    out.conclusive = (last_nonzero + 1 <= S) && (nu_N(N, last_nonzero + 1) <= cap);
  }
  return out;
}

GorensteinVerdict gorenstein_check(const GradedAlgebra& A, int cap) {
  const Field& F = A.field();
  KoszulVerdict kv = is_koszul(A, cap);
  if (!kv.koszul)
    throw PreconditionError("gorenstein_check requires an algebra certified Koszul up to the cap");

  GorensteinVerdict v;
  v.betti = minimal_resolution(A, cap);

  HomologyReport H = homology(F, dualize(contraction_left(A, cap)).realize(cap));
  std::set<int> positions;
  for (const auto& [key, dim] : H.table) {
    if (dim != 0) {
      v.cohomology[key] = dim;
      positions.insert(key.first);
    }
  }

  if (positions.size() >= 2) {
    v.kind = GorensteinVerdict::Kind::fails;
    v.reason = "cohomology of the dualized resolution is nonzero in " +
               std::to_string(positions.size()) + " homological degrees";
    return v;
  }
  if (!v.betti.conclusive) {
    v.kind = GorensteinVerdict::Kind::inconclusive;
    v.reason = "cap too small to bound the global dimension";
    return v;
  }
  int D = *v.betti.global_dimension;
  v.D = D;
  if (positions.empty()) {
    v.kind = GorensteinVerdict::Kind::fails;
    v.reason = "cohomology of the dualized resolution vanishes everywhere in the window";
    return v;
  }
  int pos = *positions.begin();
  if (pos != D) {
    v.kind = GorensteinVerdict::Kind::fails;
    v.reason = "cohomology concentrated at homological degree " + std::to_string(pos) +
               ", expected the global dimension " + std::to_string(D);
    return v;
  }
  long total = 0;
  int nonzero_degrees = 0;
  for (const auto& [key, dim] : v.cohomology) {
    total += dim;
    ++nonzero_degrees;
  }
  if (total != 1 || nonzero_degrees != 1) {
    v.kind = GorensteinVerdict::Kind::fails;
    v.reason = "top cohomology is not one-dimensional";
    return v;
  }
  for (int n = 0; n <= D; ++n) {
    if (v.betti.total(n) != v.betti.total(D - n)) {
      v.kind = GorensteinVerdict::Kind::fails;
      v.reason = "Betti dimension symmetry fails at stage " + std::to_string(n);
      return v;
    }
  }
  v.kind = GorensteinVerdict::Kind::gorenstein;
  return v;
}

YonedaAlgebra::YonedaAlgebra(const Field& F, const GradedAlgebra& A, int cap)
    : dual_(std::make_shared<GradedAlgebra>(F, koszul_dual(F, A.presentation()))),
      N_(A.N()),
      cap_(cap) {
  int i = 0;
  while (nu_N(N_, i + 1) <= cap) ++i;
  max_position_ = i;
}

long YonedaAlgebra::dim(int position) const {
  int t = nu_N(N_, position);
  if (t > cap_) throw CapacityError("Yoneda component beyond cap");
  return dual_->dim(t);
}

YonedaElem YonedaAlgebra::basis_element(int position, long idx) const {
  int t = nu_N(N_, position);
  if (t > cap_) throw CapacityError("Yoneda component beyond cap");
  return {position, {t, {{idx, dual_->field().from_int(1)}}}};
}

YonedaElem YonedaAlgebra::m2(const YonedaElem& x, const YonedaElem& y) const {
  int i = x.position, j = y.position;
  int pos = i + j;
  int t = nu_N(N_, pos);
  if (t > cap_) throw CapacityError("Yoneda product beyond cap");
  if (N_ > 2 && i % 2 == 1 && j % 2 == 1) return {pos, {t, {}}};
  return {pos, dual_->multiply(x.value, y.value)};
}

YonedaElem YonedaAlgebra::mN(const std::vector<YonedaElem>& xs) const {
  if (static_cast<int>(xs.size()) != N_)
    throw PreconditionError("the higher product takes exactly N arguments");
  int pos = 2;
  bool all_odd = true;
  for (const auto& x : xs) {
    pos += x.position;
    if (x.position % 2 == 0) all_odd = false;
  }
  pos -= N_;
  int t = nu_N(N_, pos);
  if (t > cap_) throw CapacityError("Yoneda product beyond cap");
  if (N_ == 2) throw PreconditionError("quadratic algebras have no higher products");
  if (!all_odd) return {pos, {t, {}}};
  AlgElem acc = xs[0].value;
  for (size_t s = 1; s < xs.size(); ++s) acc = dual_->multiply(acc, xs[s].value);
  return {pos, acc};
}

YonedaAlgebra yoneda(const GradedAlgebra& A, int cap) {
  KoszulVerdict kv = is_koszul(A, cap);
  if (!kv.koszul) throw PreconditionError("yoneda requires an algebra certified Koszul up to the cap");
  return YonedaAlgebra(A.field(), A, cap);
}

}  // namespace koz
