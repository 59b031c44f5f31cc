#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"

#include "koz/tensor.hpp"

#include <random>

using namespace koz;
using namespace koz_test;

namespace {

SparseVec mat_vec(const Field& F, const SparseMatrix& m, const SparseVec& x) {
  return sm_apply(F, m, x);
}

bool vec_zero(const SparseVec& v) { return v.empty(); }

TensorSubspace random_subspace(const Field& F, std::mt19937_64& rng, int d, int degree,
                               int spanning) {
  WordIndex dim = word_count(d, degree);
  std::vector<SparseVec> rows;
  for (int i = 0; i < spanning; ++i) rows.push_back(random_vector(F, rng, dim));
  return TensorSubspace(F, d, degree, rows);
}

}  // namespace

TEST_CASE("rank agrees with the dense elimination oracle on random 5x8 matrices") {
  Field F = Field::rationals();
  std::mt19937_64 rng(20260824);
  for (int trial = 0; trial < 40; ++trial) {
    SparseMatrix m = random_matrix(F, rng, 5, 8);
    CHECK(rank_of(F, m) == oracle_rank(F, m));
  }
}

TEST_CASE("rref is an idempotent basis of the original row space") {
  Field F = Field::rationals();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    SparseMatrix m = random_matrix(F, rng, 6, 7);
    RrefResult r = rref(F, m);
    CHECK(r.rank == oracle_rank(F, m));
    CHECK(static_cast<long>(r.pivots.size()) == r.rank);
    // same row space
    CHECK(oracle_same_rowspace(F, r.m, m));
    // idempotence
    RrefResult rr = rref(F, r.m);
    CHECK(sm_equal(F, rr.m, r.m));
  }
}

TEST_CASE("kernel rows solve the system and span the full null space") {
  Field F = Field::rationals();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    SparseMatrix m = random_matrix(F, rng, 5, 7);
    SparseMatrix k = kernel(F, m);
    for (const auto& row : k.row) CHECK(vec_zero(mat_vec(F, m, row)));
    CHECK(k.rows + rank_of(F, m) == m.cols);
    CHECK(oracle_rank(F, k) == k.rows);  // rows independent
  }
}

TEST_CASE("kernel of (a,b,c) -> (a+b, b+c) is spanned by (1,-1,1)") {
  Field F = Field::rationals();
  SparseMatrix m(2, 3);
  m.set(F, 0, 0, F.from_int(1));
  m.set(F, 0, 1, F.from_int(1));
  m.set(F, 1, 1, F.from_int(1));
  m.set(F, 1, 2, F.from_int(1));
  SparseMatrix k = kernel(F, m);
  REQUIRE(k.rows == 1);
  SparseVec expected{{0, F.from_int(1)}, {1, F.from_int(-1)}, {2, F.from_int(1)}};
  // normalize: pivot entry of the computed row is 1 at index 0
  CHECK(k.row[0] == expected);
}

TEST_CASE("solve and inverse are exact") {
  Field F = Field::rationals();
  std::mt19937_64 rng(123);
  int invertible_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    SparseMatrix m = random_matrix(F, rng, 4, 4, 0.8);
    SparseVec x = random_vector(F, rng, 4);
    SparseVec b = mat_vec(F, m, x);
    SparseVec sol;
    bool ok = sm_solve(F, m, b, sol);
    CHECK(ok);  // b is in the image by construction
    if (ok) {
      SparseVec back = mat_vec(F, m, sol);
      CHECK(back == b);
    }
    if (rank_of(F, m) == 4) {
      ++invertible_seen;
      SparseMatrix inv = sm_inverse(F, m);
      CHECK(sm_equal(F, sm_mul(F, m, inv), SparseMatrix::identity(F, 4)));
      CHECK(sm_equal(F, sm_mul(F, inv, m), SparseMatrix::identity(F, 4)));
    }
  }
  CHECK(invertible_seen > 5);
}

TEST_CASE("incremental echelon tracks rank and rejects dependent vectors") {
  Field F = Field::rationals();
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SparseVec> rows;
    Echelon e(F);
    for (int i = 0; i < 8; ++i) {
      SparseVec v = random_vector(F, rng, 6);
      rows.push_back(v);
      e.insert(v);
      CHECK(e.rank() == oracle_rank_rows(F, rows, 6));
    }
    // re-inserting any original row must not grow the rank
    long r = e.rank();
    for (const auto& v : rows) CHECK_FALSE(e.insert(v));
    CHECK(e.rank() == r);
    // reduce of a member is zero
    for (const auto& v : rows) CHECK(e.reduce(v).empty());
  }
}

TEST_CASE("subspace lattice invariants on random subspaces") {
  Field F = Field::rationals();
  std::mt19937_64 rng(31337);
  int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    int d = 2 + (trial % 2);       // 2 or 3
    int degree = 2 + (trial % 2);  // matching degree keeps ambient <= 27
    TensorSubspace u = random_subspace(F, rng, d, degree, 3);
    TensorSubspace v = random_subspace(F, rng, d, degree, 3);

    TensorSubspace s = subspace_sum(F, u, v);
    TensorSubspace i = intersect(F, u, v);
    CHECK(s.dim() + i.dim() == u.dim() + v.dim());

    for (long k = 0; k < i.dim(); ++k) {
      CHECK(u.contains(F, i.basis_element(k)));
      CHECK(v.contains(F, i.basis_element(k)));
    }
    for (long k = 0; k < u.dim(); ++k) CHECK(s.contains(F, u.basis_element(k)));

    TensorSubspace a = annihilator(F, u);
    CHECK(a.dim() + u.dim() == static_cast<long>(u.ambient_dim()));
    for (long p = 0; p < a.dim(); ++p)
      for (long q = 0; q < u.dim(); ++q)
        CHECK(F.is_zero(sv_dot(F, a.basis()[static_cast<size_t>(p)],
                               u.basis()[static_cast<size_t>(q)])));
    CHECK(annihilator(F, a).same_space(F, u));
  }
}

TEST_CASE("rational and F_10007 ranks agree on small integer matrices") {
  // With entries in [-3, 3] and size at most 4, every minor is bounded by
  // 4! * 3^4 = 1944 in absolute value, so a nonzero rational minor stays
  // nonzero modulo 10007 and the ranks must agree exactly.
  Field Q = Field::rationals();
  Field P = Field::prime(10007);
  std::mt19937_64 rng(555);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    SparseMatrix mq(4, 4), mp(4, 4);
    for (WordIndex r = 0; r < 4; ++r)
      for (WordIndex c = 0; c < 4; ++c) {
        int x = dist(rng);
        mq.set(Q, r, c, Q.from_int(x));
        mp.set(P, r, c, P.from_int(x));
      }
    long rq = rank_of(Q, mq);
    long rp = rank_of(P, mp);
    CHECK(rq == rp);
    CHECK(rq == oracle_rank(Q, mq));
    CHECK(rp == oracle_rank(P, mp));
  }
}

TEST_CASE("prime field arithmetic is consistent") {
  Field P = Field::prime(10007);
  Scalar a = P.from_int(-12345);
  CHECK(P.eq(P.mul(a, P.inv(a)), P.from_int(1)));
  CHECK(P.is_zero(P.from_int(10007)));
  CHECK(P.char_divides(2 * 10007));
  CHECK_FALSE(P.char_divides(3));
  CHECK_THROWS_AS(Field::prime(10), PreconditionError);
}
