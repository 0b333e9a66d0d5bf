#include "support.hpp"
#include "tricat/approx.hpp"
#include "tricat/validate.hpp"

#include <gtest/gtest.h>

using namespace tricat;
using namespace tricat::testing;

namespace {

QuotientPtr make(const catalog::Fixture& fx, Subcat z, Subcat d, SigmaChoice choice = SigmaChoice::canonical,
                 std::uint64_t seed = 1) {
  return std::make_shared<const Quotient>(fx.triangulation, std::move(z), std::move(d), choice, seed);
}

struct N4Quotient : ::testing::Test {
  catalog::Fixture fx = catalog::nakayama_stable(4, 2);
  const Category& c = *fx.category;
  Subcat d2 = Subcat({1});
  QuotientPtr q = make(fx, Subcat::all(c), d2);
  const Category& qc = *q->category();
  Obj m1 = c.indecomposable(0), m2 = c.indecomposable(1), m3 = c.indecomposable(2);
  Rng rng{17};
};

// Base triangles between objects of Z whose first morphism is D-monic.
std::vector<Triangle> monic_representatives(const Quotient& q, Rng& rng) {
  std::vector<Triangle> out;
  for (const auto& t : q.base_triangulation().representatives(rng))
    if (q.z().contains(t.A) && q.z().contains(t.B) && q.z().contains(t.C) && is_d_monic(q.base(), t.f, q.d()))
      out.push_back(t);
  return out;
}

}  // namespace

TEST(Quotient, EmptyDKeepsTheBase) {
  auto fx = catalog::nakayama_stable(4, 2);
  const auto& c = *fx.category;
  auto q = make(fx, Subcat::all(c), Subcat());
  const auto& qc = *q->category();
  ASSERT_EQ(qc.size(), c.size());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(qc.hom_dim(i, j), c.hom_dim(i, j));
    EXPECT_EQ(q->sigma_triangle(c.indecomposable(i)).C, c.shift(c.indecomposable(i)));
    EXPECT_EQ(qc.shift(qc.indecomposable(i)), c.shift(c.indecomposable(i)));
  }
}

TEST(Quotient, ZEqualsDIsZeroCategory) {
  auto fx = catalog::nakayama_stable(4, 2);
  auto q = make(fx, Subcat({1}), Subcat({1}));
  EXPECT_EQ(q->category()->size(), 0U);
  Rng rng(1);
  const auto eq = check_sigma_equivalence(*q, rng);
  EXPECT_EQ(eq.decision, Decision::yes) << eq.reason;
}

TEST_F(N4Quotient, IndecomposablesAndHoms) {
  EXPECT_EQ(q->kept(), (std::vector<int>{0, 2}));
  EXPECT_EQ(qc.hom_dim(0, 0), 1U);
  EXPECT_EQ(qc.hom_dim(0, 1), factor_dim(4, 2, 1, 3, {2, 4}));
  EXPECT_EQ(qc.hom_dim(0, 1), 0U);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_EQ(qc.hom_dim(i, j),
                factor_dim(4, 2, q->kept()[static_cast<std::size_t>(i)] + 1, q->kept()[static_cast<std::size_t>(j)] + 1, {2, 4}));
  EXPECT_EQ(validate_presentation(qc).verdict(), Verdict::pass);
  EXPECT_TRUE(q->project(m2).is_zero());
}

TEST_F(N4Quotient, ProjectionInvertsLift) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& mu : qc.hom_basis(qc.indecomposable(i), qc.indecomposable(j)))
        EXPECT_TRUE(qc.equal(q->project(q->lift(mu)), mu));
}

TEST_F(N4Quotient, SigmaTableEntries) {
  const auto member = q->sigma_triangle(m2);
  EXPECT_EQ(member.B, m2);
  EXPECT_TRUE(member.C.is_zero());
  EXPECT_TRUE(c.is_invertible(member.f));
  const auto t1 = q->sigma_triangle(m1);
  EXPECT_EQ(t1.C, m1);
  EXPECT_TRUE(d2.contains(t1.B));
  EXPECT_TRUE(is_d_monic(c, t1.f, d2));
  EXPECT_TRUE(is_d_epic(c, t1.g, d2));
  EXPECT_EQ(fx.triangulation->is_distinguished(t1, rng), Decision::yes);
}

TEST(Quotient, SigmaWithoutDIsShift) {
  auto fx = catalog::nakayama_stable(5, 2);
  const auto& c = *fx.category;
  auto q = make(fx, Subcat::all(c), Subcat());
  for (int i = 0; i < 4; ++i) EXPECT_EQ(q->sigma_triangle(c.indecomposable(i)).C, c.shift(c.indecomposable(i)));
}

TEST_F(N4Quotient, SigmaOnIdentityZeroAndEndM1) {
  const Obj x = qc.indecomposable(0), y = qc.indecomposable(1);
  EXPECT_TRUE(qc.equal(q->sigma(qc.identity(x)), qc.identity(qc.shift(x))));
  EXPECT_TRUE(qc.is_zero(q->sigma(qc.zero(x, y))));
  const auto end = qc.hom_basis(x, x);
  ASSERT_EQ(end.size(), 1U);
  EXPECT_FALSE(qc.is_zero(q->sigma(end[0])));
}

TEST_F(N4Quotient, CompositionIsWellDefined) {
  Rng r(3);
  for (int trial = 0; trial < 40; ++trial) {
    const Obj a = random_object(c, 2, r), b = random_object(c, 2, r), e = random_object(c, 2, r);
    const Mor r1 = c.random_mor(a, b, r), r2 = c.random_mor(b, e, r);
    Mor w = c.zero(a, b);
    const auto ideal = ideal_subspace(c, d2, a, b);
    for (const auto& v : ideal.basis())
      if (r() % 2) w = c.add(w, c.from_coords(a, b, v));
    EXPECT_TRUE(qc.equal(q->project(c.compose(r2, r1)), q->project(c.compose(r2, c.add(r1, w)))));
  }
}

TEST_F(N4Quotient, SigmaIgnoresChoiceOfLift) {
  Rng r(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Obj a = random_object(c, 2, r), b = random_object(c, 2, r);
    const Mor f = c.random_mor(a, b, r);
    Mor w = c.zero(a, b);
    const Space ideal = ideal_subspace(c, d2, a, b);
    for (const auto& v : ideal.basis())
      if (r() % 2) w = c.add(w, c.from_coords(a, b, v));
    EXPECT_TRUE(qc.equal(q->project(q->sigma_lift(f)), q->project(q->sigma_lift(c.add(f, w)))));
  }
}

TEST_F(N4Quotient, SigmaIsAFunctor) {
  EXPECT_TRUE(check_functor_laws(qc, qc.presentation().shift, "sigma").passed());
}

TEST_F(N4Quotient, QuotientOfSplitTriangle) {
  const Obj z;
  Triangle t{m1, m1, z, c.identity(m1), c.zero(m1, z), c.zero(z, c.shift(m1))};
  auto qt = q->quotient_triangle(t);
  ASSERT_TRUE(qt);
  EXPECT_EQ(qt->B, q->project(m1));
  EXPECT_TRUE(qt->C.is_zero());
  EXPECT_TRUE(qc.is_zero(qt->h));
}

TEST_F(N4Quotient, QuotientOfSigmaTriangle) {
  auto qt = q->quotient_triangle(q->sigma_triangle(m1));
  ASSERT_TRUE(qt);
  EXPECT_TRUE(qt->B.is_zero());
  EXPECT_EQ(qt->C, qc.shift(q->project(m1)));
  EXPECT_TRUE(qc.is_invertible(qt->h));
}

TEST_F(N4Quotient, QuotientOfM1M2M1) {
  auto e = fx.triangulation->extend_morphism(c.hom_basis(m1, m2)[0], rng);
  ASSERT_EQ(e.decision, Decision::yes);
  auto qt = q->quotient_triangle(e.triangle);
  ASSERT_TRUE(qt);
  EXPECT_EQ(qt->A, q->project(m1));
  EXPECT_TRUE(qt->B.is_zero());
  EXPECT_EQ(qt->C, q->project(m1));
}

TEST_F(N4Quotient, QuotientTriangleRejectsNonMonic) {
  auto e = fx.triangulation->extend_morphism(c.zero(m1, m3), rng);
  ASSERT_EQ(e.decision, Decision::yes);
  std::string why;
  EXPECT_FALSE(q->quotient_triangle(e.triangle, &why));
  EXPECT_FALSE(why.empty());
}

TEST_F(N4Quotient, ConesStayInZ) {
  EXPECT_TRUE(cone_stays_in_z(*q, c.identity(m1), rng));
  const Mor split = c.column(m1, {c.identity(m1), c.hom_basis(m1, m2)[0]});
  EXPECT_TRUE(cone_stays_in_z(*q, split, rng));
  EXPECT_TRUE(cone_stays_in_z(*q, c.hom_basis(m1, m2)[0], rng));
}

// Rows are the fixed triangles of M and N, g = beta_N is D-epic.
TEST_F(N4Quotient, SigmaLiftKillsOnlyIdealMaps) {
  Rng r(8);
  for (int trial = 0; trial < 40; ++trial) {
    const Obj a = random_object(c, 2, r), b = random_object(c, 2, r);
    Mor x = c.random_mor(a, b, r);
    const Space ideal = ideal_subspace(c, d2, a, b);
    if (r() % 2)
      for (const auto& v : ideal.basis()) x = c.add(x, c.from_coords(a, b, v));
    const Mor z = q->sigma_lift(x);
    if (qc.is_zero(q->project(z))) EXPECT_TRUE(qc.is_zero(q->project(x)));
  }
}

// h' c = 0 against a triangle A' -> D -> C' -> TA' with D in D forces c
// to factor through D.
TEST_F(N4Quotient, KernelOfConnectingMapFactorsThroughD) {
  Rng r(9);
  for (const Obj& m : {m1, m3, m1 + m3}) {
    const Triangle t = q->sigma_triangle(m);
    for (const Obj& src : {m1, m2, m3, m1 + m3}) {
      const Space kernel = la::nullspace(c.postcompose_matrix(t.h, src));
      for (const auto& v : kernel.basis()) {
        const Mor cc = c.from_coords(src, t.C, v);
        LinearSystem sys(c, {{src, t.B}});
        sys.add_equation(src, t.C, {{0, [&](const Mor& d) { return c.compose(t.g, d); }}}, cc);
        EXPECT_TRUE(sys.solve()) << c.describe(src) << " -> " << c.describe(t.C);
      }
    }
  }
}

// A base morphism of triangles with D-monic rows projects to a morphism
// of quotient triangles.
TEST_F(N4Quotient, ProjectedMorphismOfTrianglesCommutes) {
  Rng r(10);
  const auto reps = monic_representatives(*q, r);
  ASSERT_FALSE(reps.empty());
  std::size_t checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Triangle& t1 = reps[r() % reps.size()];
    const Triangle& t2 = reps[r() % reps.size()];
    const Mor a = c.random_mor(t1.A, t2.A, r);
    LinearSystem sys(c, {{t1.B, t2.B}});
    sys.add_equation(t1.A, t2.B, {{0, [&](const Mor& b) { return c.compose(b, t1.f); }}}, c.compose(t2.f, a));
    auto sol = sys.solve();
    if (!sol) continue;
    const Mor b = sys.split(sol->particular)[0];
    auto cc = complete_morphism(c, t1, t2, a, b);
    ASSERT_TRUE(cc);
    auto q1 = q->quotient_triangle(t1), q2 = q->quotient_triangle(t2);
    ASSERT_TRUE(q1 && q2);
    const Mor abar = q->project(a), bbar = q->project(b), cbar = q->project(*cc);
    EXPECT_TRUE(qc.equal(qc.compose(bbar, q1->f), qc.compose(q2->f, abar)));
    EXPECT_TRUE(qc.equal(qc.compose(cbar, q1->g), qc.compose(q2->g, bbar)));
    EXPECT_TRUE(qc.equal(qc.compose(q->sigma(abar), q1->h), qc.compose(q2->h, cbar)));
    ++checked;
  }
  EXPECT_GT(checked, 0U);
}

TEST_F(N4Quotient, InducedTriangulationSatisfiesAxioms) {
  auto s = induced_triangulation(q, rng);
  auto r = check_axioms(*s);
  EXPECT_EQ(r.verdict(), Verdict::pass) << render_text(r);
}

TEST_F(N4Quotient, SigmaIsAnEquivalence) {
  const auto eq = check_sigma_equivalence(*q, rng);
  EXPECT_EQ(eq.decision, Decision::yes) << eq.reason;
  EXPECT_TRUE(eq.direct);
  EXPECT_TRUE(eq.via_omega);
  EXPECT_EQ(eq.sigma_on_objects, (std::vector<int>{0, 1}));
}

TEST(Quotient, SigmaSwapsInN5) {
  auto fx = catalog::nakayama_stable(5, 2);
  auto q = make(fx, Subcat::all(*fx.category), Subcat({1}));
  Rng rng(1);
  const auto eq = check_sigma_equivalence(*q, rng);
  EXPECT_EQ(eq.decision, Decision::yes) << eq.reason;
  EXPECT_TRUE(eq.direct && eq.via_omega);
  ASSERT_EQ(q->kept(), (std::vector<int>{0, 2, 3}));
  std::vector<int> sorted = eq.sigma_on_objects;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2}));
  EXPECT_NE(eq.sigma_on_objects, (std::vector<int>{0, 1, 2}));
}

TEST(Quotient, EquivalenceWithoutDIsShift) {
  auto fx = catalog::nakayama_stable(4, 3);
  auto q = make(fx, Subcat::all(*fx.category), Subcat());
  Rng rng(1);
  const auto eq = check_sigma_equivalence(*q, rng);
  EXPECT_EQ(eq.decision, Decision::yes) << eq.reason;
  EXPECT_EQ(eq.sigma_on_objects, (std::vector<int>{2, 1, 0}));
}

TEST(Quotient, PreconditionsNameTheFailure) {
  auto fx = catalog::nakayama_stable(4, 2);
  auto b = build_quotient(fx.triangulation, Subcat({0, 1}), Subcat({1}));
  EXPECT_FALSE(b.quotient);
  EXPECT_EQ(b.preconditions.verdict(), Verdict::fail);
  bool named = false;
  for (const auto& ch : b.preconditions.checks) named = named || (ch.name == "extension-closed" && !ch.passed());
  EXPECT_TRUE(named);
}

TEST(Quotient, BuildSucceedsOnCatalog) {
  auto fx = catalog::nakayama_stable(4, 2);
  auto b = build_quotient(fx.triangulation, Subcat::all(*fx.category), Subcat({1}));
  ASSERT_TRUE(b.quotient);
  EXPECT_EQ(b.preconditions.verdict(), Verdict::pass) << render_text(b.preconditions);
}

TEST(ChoiceIndependence, RandomizedSigmaTrianglesAgree) {
  for (int n : {4, 5}) {
    auto fx = catalog::nakayama_stable(n, 2);
    const auto z = Subcat::all(*fx.category);
    auto q1 = make(fx, z, Subcat({1}));
    for (std::uint64_t seed : {11U, 12U, 13U}) {
      auto q2 = make(fx, z, Subcat({1}), SigmaChoice::randomized, seed);
      EXPECT_EQ(sigma_mismatches(*q1, *q2), 0U) << "n=" << n << " seed=" << seed;
    }
  }
}
