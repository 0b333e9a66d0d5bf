#pragma once

// Factor-through ideals, D-monic/D-epic morphisms, approximations,
// mutation of subcategories and the factor-through-epic condition.

#include "tricat/rtstruct.hpp"

namespace tricat {

// An additive subcategory given by its indecomposables.
struct Subcat {
  std::vector<int> members;  // sorted, distinct

  Subcat() = default;
  explicit Subcat(std::vector<int> m);
  static Subcat from_names(const Category& c, const std::vector<std::string>& names);
  static Subcat all(const Category& c);

  bool contains(int x) const;
  bool contains(const Obj& x) const;  // every summand is a member
  bool includes(const Subcat& other) const;
  std::vector<std::string> names(const Category& c) const;
  friend bool operator==(const Subcat& a, const Subcat& b) { return a.members == b.members; }
};

// Indecomposable summands of T^n applied to the members.
Subcat shifted(const Category& c, const Subcat& d, int n);

Space ideal_subspace(const Category& c, const Subcat& d, const Obj& x, const Obj& y);

bool is_d_monic(const Category& c, const Mor& f, const Subcat& d);
bool is_d_epic(const Category& c, const Mor& f, const Subcat& d);

// A -> sum of D_i^(dim Hom(A, D_i)) whose components are the basis maps,
// and dually.
Mor left_approximation(const Category& c, const Obj& a, const Subcat& d);
Mor right_approximation(const Category& c, const Obj& b, const Subcat& d);

enum class Side { left, right };
// Drops summands of the D-side object, in summand order, while the
// approximation property survives.
Mor minimize(const Category& c, const Mor& f, const Subcat& d, Side side);

CheckResult is_extension_closed(const Triangulation& s, const Subcat& z, Rng& rng);

struct MutationWitness {
  int object = -1;
  Triangle triangle;  // X -f-> D' -g-> Y -h-> TX
  bool left_approximation = false;
  bool right_approximation = false;
};

struct Mutation {
  Subcat result;
  std::vector<MutationWitness> witnesses;  // one per member outside D
  std::vector<std::string> notes;
};

// Objects Y in D, or with a triangle X -> D' -> Y -> TX as in the
// definition, X in add(x) of rank at most the rank bound.
Mutation mu_inverse(const Triangulation& s, const Subcat& x, const Subcat& d, Rng& rng);
// Objects X in D, or with such a triangle with Y in add(y).
Mutation mu(const Triangulation& s, const Subcat& y, const Subcat& d, Rng& rng);

struct MutationPairCheck {
  bool holds = false;
  std::string reason;
  std::vector<MutationWitness> left;   // triangles ending in each Z outside D
  std::vector<MutationWitness> right;  // triangles starting at each Z outside D
  std::vector<std::string> notes;
};

// (Z, Z) is a D-mutation pair.
MutationPairCheck verify_mutation_pair(const Triangulation& s, const Subcat& z, const Subcat& d, Rng& rng);
// Only Z = mu(Z; D), the weaker hypothesis for right triangulated quotients.
MutationPairCheck verify_right_mutation(const Triangulation& s, const Subcat& z, const Subcat& d, Rng& rng);

// First n at which T^n D repeats an earlier T^m D, capped at 8.
int default_n_max(const Category& c, const Subcat& d, bool* capped = nullptr);

CheckResult is_factor_through_epic(const Category& c, const Subcat& d, int n_max, std::size_t rank_bound);

}  // namespace tricat
