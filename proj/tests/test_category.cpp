#include "tricat/category.hpp"
#include "tricat/validate.hpp"

#include <gtest/gtest.h>

using namespace tricat;

namespace {

// One object X with End(X) = k, identity shift.
Presentation field_presentation(std::uint32_t p) {
  Presentation pr;
  pr.field = Field(p);
  pr.names = {"X"};
  pr.hom_dim = {{1}};
  pr.comp = {Vec{1}};
  pr.identity = {Vec{1}};
  pr.shift.on_objects = {Obj({0})};
  pr.shift.on_homs = {{Mat(pr.field, 1, 1, {1})}};
  return pr;
}

}  // namespace

TEST(Category, FieldCategoryIsValid) {
  Category c(field_presentation(2));
  EXPECT_EQ(validate_presentation(c).verdict(), Verdict::pass);
}

TEST(Category, ZeroIdentityIsReported) {
  auto p = field_presentation(2);
  p.identity = {Vec{0}};
  Category c(p);
  auto rep = validate_presentation(c);
  ASSERT_EQ(rep.verdict(), Verdict::fail);
  bool identity_flagged = false;
  for (const auto& ch : rep.checks)
    if (ch.name == "identity" && !ch.violations.empty()) identity_flagged = true;
  EXPECT_TRUE(identity_flagged);
}

TEST(Category, MalformedShapesThrow) {
  auto p = field_presentation(2);
  p.comp.clear();
  EXPECT_THROW(Category c(p), std::invalid_argument);
}

TEST(Category, AutomorphismsOfDoubleFieldObject) {
  // Oracle: count invertible 2x2 matrices over F_2 by brute force.
  int gl2 = 0;
  for (int m = 0; m < 16; ++m) {
    int a = m & 1, b = (m >> 1) & 1, c = (m >> 2) & 1, d = (m >> 3) & 1;
    if ((a * d + b * c) % 2 == 1) ++gl2;
  }
  ASSERT_EQ(gl2, 6);
  Category c(field_presentation(2));
  auto aut = automorphism_group(c, Obj({0, 0}), 1 << 16);
  ASSERT_TRUE(aut);
  EXPECT_EQ(static_cast<int>(aut->size()), gl2);
}

TEST(Category, ZeroObjectOperations) {
  Category c(field_presentation(3));
  Obj zero;
  Obj x({0});
  EXPECT_TRUE(c.hom_basis(zero, x).empty());
  EXPECT_TRUE(c.is_invertible(c.identity(zero)));
  EXPECT_TRUE(c.is_zero(c.compose(c.zero(x, zero), c.identity(x))));
  auto b = direct_sum(c, x, zero);
  EXPECT_TRUE(c.equal(b.inject_x, c.identity(x)));
  EXPECT_TRUE(c.equal(b.project_x, c.identity(x)));
}

TEST(Category, BiproductIdentities) {
  Category c(field_presentation(3));
  Obj x({0}), y({0, 0});
  auto b = direct_sum(c, x, y);
  EXPECT_EQ(b.sum.rank(), 3U);
  EXPECT_TRUE(c.equal(c.compose(b.project_x, b.inject_x), c.identity(x)));
  EXPECT_TRUE(c.equal(c.compose(b.project_y, b.inject_y), c.identity(y)));
  EXPECT_TRUE(c.is_zero(c.compose(b.project_x, b.inject_y)));
  EXPECT_TRUE(c.equal(c.add(c.compose(b.inject_x, b.project_x), c.compose(b.inject_y, b.project_y)),
                      c.identity(b.sum)));
}

TEST(Category, IdentityInverseAndZeroNotIso) {
  Category c(field_presentation(2));
  Obj x({0, 0});
  auto inv = c.inverse(c.identity(x));
  ASSERT_TRUE(inv);
  EXPECT_TRUE(c.equal(*inv, c.identity(x)));
  EXPECT_FALSE(c.is_invertible(c.zero(x, x)));
  EXPECT_FALSE(is_isomorphism(c, c.zero(x, x)));
}

TEST(Category, NoIsomorphismsBetweenDifferentMultisets) {
  Category c(field_presentation(2));
  Rng rng(1);
  auto r = find_isomorphisms(c, Obj({0}), Obj({0, 0}), Mat(c.field(), 0, 2), {}, rng);
  EXPECT_TRUE(r.isomorphisms.empty());
}

TEST(Category, IdentityAndZeroFunctors) {
  Category c(field_presentation(2));
  std::vector<std::pair<Obj, Obj>> pairs{{Obj({0}), Obj({0, 0})}};
  EXPECT_TRUE(functor_full_on(c, c.presentation().shift, pairs));
  EXPECT_TRUE(functor_faithful_on(c, c.presentation().shift, pairs));
  FunctorData zero;
  zero.on_objects = {Obj{}};
  zero.on_homs = {{Mat(c.field(), 0, 1)}};
  EXPECT_FALSE(functor_faithful_on(c, zero, pairs));
  EXPECT_TRUE(functor_full_on(c, zero, pairs));
}
