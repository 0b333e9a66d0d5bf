#include "support.hpp"

#include <gtest/gtest.h>

using namespace tricat;
using namespace tricat::testing;

namespace {

std::vector<Triangle> sample_triangles(const catalog::Fixture& fx, Rng& rng, int count) {
  const auto& c = *fx.category;
  std::vector<Triangle> out;
  for (int k = 0; k < count; ++k) {
    const Obj a = random_object(c, 2, rng), b = random_object(c, 2, rng);
    auto e = fx.triangulation->extend_morphism(c.random_mor(a, b, rng), rng);
    if (e.decision == Decision::yes) out.push_back(e.triangle);
  }
  return out;
}

}  // namespace

TEST(Triangles, ConjugatesStayDistinguished) {
  auto fx = catalog::nakayama_stable(4, 3);
  const auto& c = *fx.category;
  Rng rng(21);
  for (const auto& t : sample_triangles(fx, rng, 15)) {
    auto a = c.random_automorphism(t.A, rng), b = c.random_automorphism(t.B, rng), cc = c.random_automorphism(t.C, rng);
    ASSERT_TRUE(a && b && cc);
    const Triangle u = conjugate(c, t, *a, *b, *cc);
    EXPECT_EQ(sextuple_isomorphic(c, t, u, rng).decision, Decision::yes) << describe(c, t);
    EXPECT_EQ(fx.triangulation->is_distinguished(u, rng), Decision::yes);
  }
}

TEST(Triangles, RotationStaysDistinguished) {
  auto fx = catalog::nakayama_stable(5, 2);
  Rng rng(22);
  for (const auto& t : sample_triangles(fx, rng, 15))
    EXPECT_EQ(fx.triangulation->is_distinguished(rotate(*fx.category, t), rng), Decision::yes) << describe(*fx.category, t);
}

TEST(Triangles, WrongConnectingMapIsRejected) {
  auto fx = catalog::nakayama_stable(4, 2);
  const auto& c = *fx.category;
  Rng rng(23);
  const Obj m1 = c.indecomposable(0), m2 = c.indecomposable(1);
  auto e = fx.triangulation->extend_morphism(c.hom_basis(m1, m2)[0], rng);
  ASSERT_EQ(e.decision, Decision::yes);
  Triangle t = e.triangle;
  ASSERT_FALSE(c.is_zero(t.h));
  t.h = c.zero(t.C, c.shift(t.A));
  EXPECT_EQ(fx.triangulation->is_distinguished(t, rng), Decision::no);
}

TEST(Triangles, SumsOfDistinguishedAreDistinguished) {
  auto fx = catalog::nakayama_stable(4, 2);
  const auto& c = *fx.category;
  Rng rng(24);
  auto ts = sample_triangles(fx, rng, 6);
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const auto s = triangle_sum(c, ts[k], ts[k + 1]);
    if (s.A.rank() > 2 || s.B.rank() > 2) continue;
    EXPECT_EQ(fx.triangulation->is_distinguished(s, rng), Decision::yes);
  }
}

TEST(Triangles, AtomModeAgreesWithCone) {
  auto fx = catalog::nakayama_stable(3, 2);
  const auto& c = *fx.category;
  Triangulation atoms(fx.category, fx.triangulation->generators(), fx.triangulation->rank_bound());
  ASSERT_FALSE(atoms.has_cone_function());
  Rng rng(25);
  for (int k = 0; k < 30; ++k) {
    const Obj a = random_object(c, 2, rng), b = random_object(c, 2, rng);
    auto e = fx.triangulation->extend_morphism(c.random_mor(a, b, rng), rng);
    ASSERT_EQ(e.decision, Decision::yes);
    Triangle t = e.triangle;
    if (rng() % 2) t.h = c.random_mor(t.C, c.shift(t.A), rng);
    EXPECT_EQ(atoms.is_distinguished(t, rng), fx.triangulation->is_distinguished(t, rng)) << describe(c, t);
  }
}

TEST(Triangles, CompleteMorphismFillsTheSquare) {
  auto fx = catalog::nakayama_stable(4, 3);
  const auto& c = *fx.category;
  Rng rng(26);
  const auto ts = sample_triangles(fx, rng, 6);
  for (const auto& t : ts) {
    // identity on t extends to an endomorphism of t
    auto cc = complete_morphism(c, t, t, c.identity(t.A), c.identity(t.B));
    ASSERT_TRUE(cc);
    EXPECT_TRUE(c.equal(c.compose(*cc, t.g), t.g));
    EXPECT_TRUE(c.equal(c.compose(t.h, *cc), t.h));
  }
}

TEST(Axioms, LevelNamesRoundTrip) {
  for (Level l : all_levels()) EXPECT_EQ(parse_level(to_string(l)), l);
  EXPECT_FALSE(parse_level("tr9"));
}

TEST(Axioms, A2FailsDerotationOnly) {
  auto fx = catalog::a2_costable(3);
  auto r = check_axioms(*fx.triangulation);
  EXPECT_EQ(r.verdict(), Verdict::fail);
  for (const auto& ch : r.checks)
    if (ch.verdict == Verdict::fail) EXPECT_NE(ch.name.find("derotation"), std::string::npos) << ch.name;
}
