#include "koz/presentation.hpp"

#include <algorithm>

namespace koz {

GradedAlgebra::GradedAlgebra(const Field& F, HomogeneousPresentation pres, WordIndex word_cap)
    : F_(F), pres_(std::move(pres)), word_cap_(word_cap) {
  pres_.validate();
}

namespace {

// Reduce a bindex-coordinate vector against echelonized rows whose pivots
// (sorted ascending) are each the smallest index of their row.
SparseVec reduce_against(const Field& F, SparseVec v, const std::vector<SparseVec>& rows,
                         const std::vector<WordIndex>& pivots) {
  size_t pos = 0;
  while (pos < v.size()) {
    auto it = std::lower_bound(pivots.begin(), pivots.end(), v[pos].first);
    if (it == pivots.end() || *it != v[pos].first) {
      ++pos;
      continue;
    }
    size_t ri = static_cast<size_t>(it - pivots.begin());
    v = sv_axpy(F, v, F.neg(v[pos].second), rows[ri]);
  }
  return v;
}

}  // namespace

const GradedAlgebra::DegreeData& GradedAlgebra::degree_data(int n) const {
  if (n < 0) throw PreconditionError("negative degree");
  auto it = degrees_.find(n);
  if (it != degrees_.end()) return it->second;

  DegreeData data;
  data.comp.n = n;
  if (n == 0) {
    data.comp.dim = 1;
    data.comp.normal_words = {0};
    data.normal_pos_by_bindex[0] = 0;
    data.normal_pos_by_word[0] = 0;
    return degrees_.emplace(n, std::move(data)).first->second;
  }

  word_count(pres_.d, n, word_cap_);
  const GradedComponent& prev = component(n - 1);
  long prev_dim = prev.dim;

  if (n >= pres_.N) {
    // image of R (x) E^(x)(n-N) inside E (x) A_{n-1}
    WordIndex tail_count = word_count(pres_.d, n - pres_.N, word_cap_);
    WordIndex tail_pow = 1;
    for (int i = 0; i < n - pres_.N; ++i) tail_pow *= pres_.d;
    WordIndex prefix_pow = 1;
    for (int i = 0; i < pres_.N - 1; ++i) prefix_pow *= pres_.d;
    Echelon ech(F_);
    for (const auto& r : pres_.R.basis()) {
      for (WordIndex v = 0; v < tail_count; ++v) {
        std::map<WordIndex, Scalar> acc;
        for (const auto& [w, c] : r) {
          WordIndex lambda = w / prefix_pow;
          WordIndex rest = (w % prefix_pow) * tail_pow + v;
          const AlgElem& red = reduce_word(n - 1, rest);
          for (const auto& [pos, rc] : red.coords) acc[lambda * prev_dim + pos] += c * rc;
        }
        ech.insert(sv_normalized(F_, std::move(acc)));
      }
    }
    data.rel_rows = ech.basis();
    data.rel_pivots = ech.pivots();
  }

  long next_pos = 0;
  size_t pi = 0;
  for (WordIndex b = 0; b < static_cast<WordIndex>(pres_.d) * prev_dim; ++b) {
    if (pi < data.rel_pivots.size() && data.rel_pivots[pi] == b) {
      ++pi;
      continue;
    }
    WordIndex lambda = b / prev_dim;
    WordIndex upos = b % prev_dim;
    WordIndex prev_pow = 1;
    for (int i = 0; i < n - 1; ++i) prev_pow *= pres_.d;
    WordIndex word = lambda * prev_pow + prev.normal_words[static_cast<size_t>(upos)];
    data.comp.normal_words.push_back(word);
    data.normal_pos_by_bindex[b] = next_pos;
    data.normal_pos_by_word[word] = next_pos;
    ++next_pos;
  }
  data.comp.dim = next_pos;
  return degrees_.emplace(n, std::move(data)).first->second;
}

const GradedComponent& GradedAlgebra::component(int n) const { return degree_data(n).comp; }

std::optional<long> GradedAlgebra::normal_position(int n, WordIndex w) const {
  const DegreeData& data = degree_data(n);
  auto it = data.normal_pos_by_word.find(w);
  if (it == data.normal_pos_by_word.end()) return std::nullopt;
  return it->second;
}

const AlgElem& GradedAlgebra::reduce_word(int n, WordIndex w) const {
  auto& cache = reduce_cache_[n];
  auto hit = cache.find(w);
  if (hit != cache.end()) return hit->second;

  AlgElem out;
  out.degree = n;
  if (n == 0) {
    out.coords = {{0, F_.from_int(1)}};
  } else {
    const DegreeData& data = degree_data(n);
    WordIndex prev_pow = 1;
    for (int i = 0; i < n - 1; ++i) prev_pow *= pres_.d;
    WordIndex lambda = w / prev_pow;
    WordIndex rest = w % prev_pow;
    const AlgElem& red = reduce_word(n - 1, rest);
    long prev_dim = component(n - 1).dim;
    SparseVec bvec;
    bvec.reserve(red.coords.size());
    for (const auto& [pos, c] : red.coords) bvec.emplace_back(lambda * prev_dim + pos, c);
    bvec = reduce_against(F_, std::move(bvec), data.rel_rows, data.rel_pivots);
    for (const auto& [b, c] : bvec) out.coords.emplace_back(data.normal_pos_by_bindex.at(b), c);
    std::sort(out.coords.begin(), out.coords.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  return reduce_cache_[n].emplace(w, std::move(out)).first->second;
}

AlgElem GradedAlgebra::reduce_tensor(const TensorElement& t) const {
  if (t.d != pres_.d) throw DimensionMismatchError("tensor over a different generator space");
  AlgElem out;
  out.degree = t.degree;
  std::map<WordIndex, Scalar> acc;
  for (const auto& [w, c] : t.coords)
    for (const auto& [pos, rc] : reduce_word(t.degree, w).coords) acc[pos] += c * rc;
  out.coords = sv_normalized(F_, std::move(acc));
  return out;
}

TensorElement GradedAlgebra::lift(const AlgElem& a) const {
  const GradedComponent& comp = component(a.degree);
  TensorElement t = TensorElement::zero(pres_.d, a.degree);
  for (const auto& [pos, c] : a.coords)
    t.coords.emplace_back(comp.normal_words[static_cast<size_t>(pos)], c);
  std::sort(t.coords.begin(), t.coords.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return t;
}

AlgElem GradedAlgebra::multiply(const AlgElem& a, const AlgElem& b) const {
  int n = a.degree + b.degree;
  const GradedComponent& ca = component(a.degree);
  const GradedComponent& cb = component(b.degree);
  std::map<WordIndex, Scalar> acc;
  for (const auto& [pa, va] : a.coords) {
    WordIndex wa = ca.normal_words[static_cast<size_t>(pa)];
    for (const auto& [pb, vb] : b.coords) {
      WordIndex wb = cb.normal_words[static_cast<size_t>(pb)];
      WordIndex w = word_concat(wa, wb, pres_.d, b.degree);
      Scalar c = F_.mul(va, vb);
      for (const auto& [pos, rc] : reduce_word(n, w).coords) acc[pos] += c * rc;
    }
  }
  return {n, sv_normalized(F_, std::move(acc))};
}

AlgElem GradedAlgebra::scale(const AlgElem& a, const Scalar& c) const {
  return {a.degree, sv_scale(F_, a.coords, c)};
}

AlgElem GradedAlgebra::add(const AlgElem& a, const AlgElem& b) const {
  if (a.degree != b.degree) throw DimensionMismatchError("sum of different degrees");
  return {a.degree, sv_axpy(F_, a.coords, F_.from_int(1), b.coords)};
}

AlgElem GradedAlgebra::one() const { return {0, {{0, F_.from_int(1)}}}; }

AlgElem GradedAlgebra::generator(int lambda) const {
  if (lambda < 0 || lambda >= pres_.d) throw PreconditionError("generator index out of range");
  auto pos = normal_position(1, lambda);
  if (!pos) return {1, {}};
  return {1, {{*pos, F_.from_int(1)}}};
}

const TensorSubspace& GradedAlgebra::dual_component(int n) const {
  if (n < 0) throw PreconditionError("negative degree");
  auto it = dual_components_.find(n);
  if (it != dual_components_.end()) return it->second;
  TensorSubspace s;
  if (n < pres_.N) {
    s = TensorSubspace::full(F_, pres_.d, n);
  } else if (n == pres_.N) {
    s = pres_.R;
  } else {
    const TensorSubspace& prev = dual_component(n - 1);
    s = intersect(F_, box_subspace(F_, 1, prev, 0), box_subspace(F_, 0, prev, 1));
  }
  return dual_components_.emplace(n, std::move(s)).first->second;
}

const TensorSubspace& GradedAlgebra::ideal_component(int n) const {
  if (n < 0) throw PreconditionError("negative degree");
  auto it = ideal_components_.find(n);
  if (it != ideal_components_.end()) return it->second;
  TensorSubspace s;
  if (n < pres_.N) {
    s = TensorSubspace::zero(F_, pres_.d, n);
  } else {
    s = subspace_sum(F_, box_subspace(F_, 1, ideal_component(n - 1), 0),
                     box_subspace(F_, 0, pres_.R, n - pres_.N));
  }
  return ideal_components_.emplace(n, std::move(s)).first->second;
}

HomogeneousPresentation koszul_dual(const Field& F, const HomogeneousPresentation& pres) {
  pres.validate();
  HomogeneousPresentation dual;
  dual.d = pres.d;
  dual.N = pres.N;
  dual.R = annihilator(F, pres.R);
  dual.name = pres.name.empty() ? std::string("dual") : pres.name + "!";
  for (const auto& g : pres.generator_names) dual.generator_names.push_back(g + "*");
  return dual;
}

}  // namespace koz
