#pragma once

// Right triangulated structure: triangles, the distinguished class, and the
// axiom verifier.

#include "tricat/category.hpp"
#include "tricat/report.hpp"

#include <functional>
#include <set>

namespace tricat {

// A -f-> B -g-> C -h-> TA.
struct Triangle {
  Obj A, B, C;
  Mor f, g, h;
};

bool well_formed(const Category& c, const Triangle& t);
nlohmann::json to_json(const Category& c, const Triangle& t);
std::string describe(const Category& c, const Triangle& t);

// (B, C, TA, g, h, -Tf).
Triangle rotate(const Category& c, const Triangle& t);
// 0 -> A -1-> A -> 0.
Triangle trivial_triangle(const Category& c, const Obj& a);
// A -> A+B -> B -0-> TA.
Triangle direct_sum_triangle(const Category& c, const Obj& a, const Obj& b);
Triangle triangle_sum(const Category& c, const Triangle& s, const Triangle& t);
// Image of t under the sextuple isomorphism (a, b, c): the target has first
// morphism b f a^-1.
Triangle conjugate(const Category& c, const Triangle& t, const Mor& a, const Mor& b, const Mor& cc);

// A linear system in several unknown morphisms. Each equation is a sum of
// linear terms, each term a linear function of one unknown, equal to a
// fixed right-hand side.
class LinearSystem {
 public:
  using Term = std::pair<std::size_t, std::function<Mor(const Mor&)>>;

  LinearSystem(const Category& c, std::vector<HomSlot> unknowns);

  void add_equation(const Obj& src, const Obj& tgt, const std::vector<Term>& terms);
  void add_equation(const Obj& src, const Obj& tgt, const std::vector<Term>& terms, const Mor& rhs);

  const std::vector<HomSlot>& unknowns() const { return slots_; }
  std::optional<la::Solution<Field>> solve() const;
  std::vector<Mor> split(const Vec& point) const { return split_point(c_, slots_, point); }

 private:
  const Category& c_;
  std::vector<HomSlot> slots_;
  std::vector<std::size_t> offsets_;
  std::size_t width_ = 0;
  std::vector<Vec> rows_;
  Vec rhs_;
};

enum class Decision { yes, no, undecided };
std::string to_string(Decision d);

struct SextupleIso {
  Decision decision = Decision::no;
  Mor a, b, c;
};

// Invertible (a, b, c) with b f1 = f2 a, c g1 = g2 b and T(a) h1 = h2 c.
SextupleIso sextuple_isomorphic(const Category& c, const Triangle& t1, const Triangle& t2, Rng& rng,
                                const SearchBudget& budget = {});

// Invertible (a, b) with b f1 = f2 a.
struct ArrowIso {
  Decision decision = Decision::no;
  Mor a, b;
};
ArrowIso arrow_isomorphic(const Category& c, const Mor& f1, const Mor& f2, Rng& rng, const SearchBudget& budget = {});

// Returns a distinguished triangle whose first morphism is exactly f, or
// nothing when none is known.
using ConeFunction = std::function<std::optional<Triangle>(const Mor&)>;

struct Extension {
  Decision decision = Decision::no;
  Triangle triangle;
};

class Triangulation {
 public:
  // Without a cone function, the distinguished class is the closure of
  // the generators under rotation, finite direct sums and isomorphism.
  // With one, a triangle is distinguished iff it is isomorphic to the
  // cone triangle of its first morphism.
  Triangulation(CategoryPtr c, std::vector<Triangle> generators, std::size_t rank_bound = 2, ConeFunction cone = {});

  const Category& category() const { return *c_; }
  CategoryPtr category_ptr() const { return c_; }
  const std::vector<Triangle>& generators() const { return generators_; }
  const std::vector<Triangle>& atoms() const { return atoms_; }
  std::size_t rank_bound() const { return rank_bound_; }
  bool has_cone_function() const { return static_cast<bool>(cone_); }

  Decision is_distinguished(const Triangle& t, Rng& rng) const;
  SextupleIso distinguished_witness(const Triangle& t, Rng& rng) const;
  Extension extend_morphism(const Mor& f, Rng& rng) const;

  // One distinguished triangle per isomorphism class of first morphisms
  // between objects of rank at most rank_bound.
  const std::vector<Triangle>& representatives(Rng& rng) const;

 private:
  std::vector<std::vector<std::size_t>> atom_combinations(const Obj& a, const Obj& b, const Obj* cc) const;
  Triangle combine(const std::vector<std::size_t>& combo) const;

  CategoryPtr c_;
  std::vector<Triangle> generators_;
  std::size_t rank_bound_;
  ConeFunction cone_;
  std::vector<Triangle> atoms_;
  mutable std::optional<std::vector<Triangle>> representatives_;
};

// Representatives of Hom(x, y) modulo Aut(x) x Aut(y), or nothing when the
// hom space or automorphism groups are too large to enumerate.
std::optional<std::vector<Mor>> arrow_orbits(const Category& c, const Obj& x, const Obj& y,
                                             std::uint64_t limit = 1U << 12U);

// c with c g1 = g2 b and h2 c = T(a) h1; requires b f1 = f2 a.
std::optional<Mor> complete_morphism(const Category& c, const Triangle& t1, const Triangle& t2, const Mor& a,
                                     const Mor& b);

struct Octahedron {
  Decision decision = Decision::no;
  Mor l, i;
  Triangle column;
};
// Given triangles over a, d and d a, finds (l, i) making the diagrams
// commute with Z -l-> W -i-> V -(Tb)f-> TZ distinguished.
Octahedron octahedron(const Triangulation& s, const Triangle& txy, const Triangle& tyu, const Triangle& txu, Rng& rng,
                      const SearchBudget& budget = {});

enum class Level { tr0, tr1, tr2, tr3, tr4, tr5, exactness, derotation, third_iso };
std::string to_string(Level l);
std::optional<Level> parse_level(const std::string& s);
std::vector<Level> all_levels();

struct AxiomOptions {
  std::vector<Level> levels = all_levels();
  std::uint64_t seed = 1;
  std::size_t third_iso_samples = 100;
  std::size_t tr0_samples = 2;
};

Report check_axioms(const Triangulation& s, const AxiomOptions& opt = {});

CheckResult check_exactness(const Triangulation& s, Rng& rng);
CheckResult check_derotation(const Triangulation& s, Rng& rng);
// Reports an inconsistency if derotation holds but T is not faithful on
// pairs within the rank bound.
CheckResult check_derotation_consistency(const Triangulation& s, const CheckResult& derotation);

}  // namespace tricat
