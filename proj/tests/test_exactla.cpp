#include "tricat/exactla.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace tricat::la;

namespace {

using M2 = Matrix<PrimeField>;
using V = std::vector<std::uint32_t>;

M2 random_matrix(const PrimeField& k, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  M2 m(k, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<std::uint32_t>(rng() % k.characteristic());
  return m;
}

V random_vec(const PrimeField& k, std::size_t n, std::mt19937_64& rng) {
  V v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng() % k.characteristic());
  return v;
}

}  // namespace

TEST(PrimeField, RejectsComposite) { EXPECT_THROW(PrimeField(4), std::invalid_argument); }

TEST(PrimeField, InverseOfEveryUnit) {
  for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
    PrimeField k(p);
    for (std::uint32_t a = 1; a < p; ++a) EXPECT_EQ(k.mul(a, k.inv(a)), 1U);
  }
}

TEST(RationalField, NormalizedFractions) {
  RationalField q;
  auto a = q.mul(RationalField::value_type(2, -4), q.from_int(3));
  EXPECT_EQ(a.numerator(), -3);
  EXPECT_EQ(a.denominator(), 2);
}

TEST(Echelon, Identity) {
  PrimeField k(2);
  auto e = rank_and_echelon(M2::identity(k, 2));
  EXPECT_EQ(e.rank, 2U);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Echelon, ZeroMatrix) {
  PrimeField k(2);
  auto e = rank_and_echelon(M2(k, 3, 3));
  EXPECT_EQ(e.rank, 0U);
  EXPECT_TRUE(e.pivots.empty());
}

TEST(Echelon, AllOnesTwoByTwo) {
  PrimeField k(2);
  EXPECT_EQ(rank(M2(k, 2, 2, {1, 1, 1, 1})), 1U);
}

TEST(Echelon, RationalRank) {
  RationalField q;
  using MQ = Matrix<RationalField>;
  MQ m(q, 2, 2, {q.from_int(1), q.from_int(2), q.from_int(2), q.from_int(4)});
  EXPECT_EQ(rank(m), 1U);
  MQ n(q, 2, 2, {q.from_int(1), q.from_int(2), q.from_int(3), q.from_int(4)});
  auto inv = inverse(n);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(n * *inv, MQ::identity(q, 2));
}

TEST(Solve, IdentitySystem) {
  PrimeField k(3);
  V b{2, 1, 0};
  auto s = solve(M2::identity(k, 3), b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, b);
  EXPECT_EQ(s->nullspace.dim(), 0U);
}

TEST(Solve, ZeroSystem) {
  PrimeField k(2);
  auto s = solve(M2(k, 2, 2), V{0, 0});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, (V{0, 0}));
  EXPECT_EQ(s->nullspace.dim(), 2U);
}

TEST(Solve, SingleEquationOverF2) {
  // Oracle: enumerate all four vectors of F_2^2.
  PrimeField k(2);
  M2 a(k, 1, 2, {1, 1});
  std::vector<V> sols, kernel;
  for (std::uint32_t x = 0; x < 2; ++x)
    for (std::uint32_t y = 0; y < 2; ++y) {
      if ((x + y) % 2 == 1) sols.push_back({x, y});
      if ((x + y) % 2 == 0 && (x || y)) kernel.push_back({x, y});
    }
  ASSERT_EQ(kernel.size(), 1U);
  EXPECT_EQ(kernel[0], (V{1, 1}));
  auto s = solve(a, V{1});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, (V{1, 0}));
  EXPECT_NE(std::find(sols.begin(), sols.end(), s->particular), sols.end());
  EXPECT_EQ(s->nullspace.basis(), std::vector<V>{(V{1, 1})});
}

TEST(Solve, InconsistentSystem) {
  PrimeField k(2);
  EXPECT_FALSE(solve(M2(k, 2, 1, {1, 1}), V{1, 0}).has_value());
}

TEST(Subspace, SumWithItself) {
  PrimeField k(3);
  auto u = Subspace<PrimeField>::span(k, 3, {{1, 2, 0}, {0, 1, 1}});
  EXPECT_EQ(subspace_sum(u, u), u);
  EXPECT_EQ(subspace_sum(u, u).basis(), u.basis());
}

TEST(Subspace, CosetRepresentativeInFullSpace) {
  PrimeField k(5);
  auto f = Subspace<PrimeField>::full(k, 3);
  EXPECT_EQ(f.coset_representative({4, 1, 3}), (V{0, 0, 0}));
}

TEST(Subspace, CosetRepresentativeOverF2) {
  // Oracle: the coset (1,0) + span{(1,1)} is {(1,0),(0,1)}; the member with
  // a zero first coordinate (the pivot of (1,1)) is (0,1).
  PrimeField k(2);
  auto u = Subspace<PrimeField>::span(k, 2, {{1, 1}});
  EXPECT_EQ(u.coset_representative({1, 0}), (V{0, 1}));
  EXPECT_EQ(u.coset_representative({0, 1}), (V{0, 1}));
}

TEST(Subspace, DimensionMismatchThrows) {
  PrimeField k(2);
  auto u = Subspace<PrimeField>::full(k, 2);
  EXPECT_THROW(u.contains(V{1, 0, 1}), std::invalid_argument);
}

TEST(ExactlaProperty, EchelonInvariantUnderRowPermutation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    PrimeField k(std::vector<std::uint32_t>{2, 3, 5}[trial % 3]);
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    M2 m = random_matrix(k, r, c, rng);
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    M2 pm(k, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) pm(i, j) = m(perm[i], j);
    auto e1 = rank_and_echelon(m), e2 = rank_and_echelon(pm);
    EXPECT_EQ(e1.rank, e2.rank);
    EXPECT_EQ(e1.rref, e2.rref);
  }
}

TEST(ExactlaProperty, SolveSoundness) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    PrimeField k(std::vector<std::uint32_t>{2, 3, 5}[trial % 3]);
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    M2 a = random_matrix(k, r, c, rng);
    V b = random_vec(k, r, rng);
    auto s = solve(a, b);
    if (s) {
      EXPECT_EQ(a.apply(s->particular), b);
      for (const auto& v : s->nullspace.basis()) EXPECT_EQ(a.apply(v), V(r, 0));
      EXPECT_EQ(s->nullspace.dim() + rank(a), c);
    } else {
      M2 col(k, r, 1, b);
      EXPECT_GT(rank(a.hstack(col)), rank(a));
    }
  }
}

TEST(ExactlaProperty, CosetRepresentativeConstantOnCosets) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    PrimeField k(std::vector<std::uint32_t>{2, 3, 5}[trial % 3]);
    const std::size_t n = 1 + rng() % 5;
    std::vector<V> gens;
    for (std::size_t g = 0, m = rng() % (n + 1); g < m; ++g) gens.push_back(random_vec(k, n, rng));
    auto u = Subspace<PrimeField>::span(k, n, gens);
    V v = random_vec(k, n, rng);
    V w(n, 0);
    for (const auto& b : u.basis()) {
      const auto a = static_cast<std::uint32_t>(rng() % k.characteristic());
      for (std::size_t i = 0; i < n; ++i) w[i] = k.add(w[i], k.mul(a, b[i]));
    }
    V vw(n);
    for (std::size_t i = 0; i < n; ++i) vw[i] = k.add(v[i], w[i]);
    EXPECT_EQ(u.coset_representative(v), u.coset_representative(vw));
    EXPECT_TRUE(u.contains(w));
  }
}

TEST(ExactlaProperty, SpanCanonicalForm) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    PrimeField k(3);
    std::vector<V> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(random_vec(k, 4, rng));
    auto u = Subspace<PrimeField>::span(k, 4, gens);
    std::shuffle(gens.begin(), gens.end(), rng);
    gens.push_back(gens[0]);
    auto v = Subspace<PrimeField>::span(k, 4, gens);
    EXPECT_EQ(u.basis(), v.basis());
  }
}
