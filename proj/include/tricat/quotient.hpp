#pragma once

// The quotient Z/D of a subcategory by a factor-through-epic ideal, its
// shift sigma, the induced right triangulation and the equivalence test
// for sigma through the inverse candidate omega.

#include "tricat/approx.hpp"

#include <memory>
#include <stdexcept>

namespace tricat {

struct QuotientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// M -alpha-> D_M -beta-> sigma M -gamma-> TM in the base.
struct SigmaEntry {
  int object = -1;
  Triangle triangle;
};

enum class SigmaChoice { canonical, randomized };

class Quotient {
 public:
  // Throws QuotientError when some M in Z has no triangle on its left
  // D-approximation with the required properties.
  Quotient(std::shared_ptr<const Triangulation> base, Subcat z, Subcat d, SigmaChoice choice = SigmaChoice::canonical,
           std::uint64_t seed = 1);

  const Category& base() const { return s_->category(); }
  const Triangulation& base_triangulation() const { return *s_; }
  std::shared_ptr<const Triangulation> base_triangulation_ptr() const { return s_; }
  const Subcat& z() const { return z_; }
  const Subcat& d() const { return d_; }
  CategoryPtr category() const { return q_; }

  // Base index of each quotient indecomposable.
  const std::vector<int>& kept() const { return kept_; }
  int quotient_index(int base_index) const { return index_[static_cast<std::size_t>(base_index)]; }

  const Space& ideal(int i, int j) const { return ideal_[pair(i, j)]; }
  // Rows: quotient coordinates; columns: base coordinates of Hom(M_i, M_j).
  Mat projection_matrix(int i, int j) const;

  Obj project(const Obj& x) const;
  Obj lift(const Obj& x) const;
  Mor project(const Mor& f) const;
  Mor lift(const Mor& f) const;

  const std::vector<SigmaEntry>& sigma_table() const { return sigma_; }
  // Sum of the fixed triangles of the summands of m, m in add Z.
  Triangle sigma_triangle(const Obj& m) const;
  // Some mu': sigma M -> sigma N completing (mu, g) against the fixed
  // triangles, in the base.
  Mor sigma_lift(const Mor& mu) const;
  // sigma on a quotient morphism, computed through a lift.
  Mor sigma(const Mor& mu) const;

  // The image sextuple M -> N -> P -> sigma M of a base triangle whose
  // first morphism is D-monic; nothing, with the reason, otherwise.
  std::optional<Triangle> quotient_triangle(const Triangle& t, std::string* why = nullptr) const;
  // The quotient triangle over (mu, alpha_M): M -> N + D_M.
  std::optional<Triangle> cone(const Mor& mu) const;

 private:
  std::size_t pair(int i, int j) const { return static_cast<std::size_t>(i) * kept_.size() + static_cast<std::size_t>(j); }
  Vec project_block(int i, int j, const Vec& v) const;
  Vec lift_block(int i, int j, const Vec& v) const;
  Mor project_unchecked(const Mor& f) const;

  std::shared_ptr<const Triangulation> s_;
  Subcat z_, d_;
  std::vector<int> kept_, index_;
  std::vector<Space> ideal_;
  std::vector<std::vector<std::size_t>> free_;
  std::vector<SigmaEntry> sigma_;  // indexed by base index, set for members of Z
  CategoryPtr q_;
};

using QuotientPtr = std::shared_ptr<const Quotient>;

// D in Z, Z extension-closed, Z = mu(Z; D) and D factor-through-epic.
Report quotient_preconditions(const Triangulation& s, const Subcat& z, const Subcat& d, Rng& rng);
// The above with (Z, Z) a D-mutation pair and T full on Z.
Report equivalence_preconditions(const Triangulation& s, const Subcat& z, const Subcat& d, Rng& rng);

struct QuotientBuild {
  Report preconditions;
  QuotientPtr quotient;  // null when a precondition failed
};
QuotientBuild build_quotient(std::shared_ptr<const Triangulation> s, const Subcat& z, const Subcat& d,
                             SigmaChoice choice = SigmaChoice::canonical, std::uint64_t seed = 1);

// Generators are the quotient triangles of the base representatives with
// D-monic first morphism; distinguishedness is decided by the cone.
std::shared_ptr<const Triangulation> induced_triangulation(const QuotientPtr& q, Rng& rng);

// Every summand of the cone of a D-monic mu lies in Z.
bool cone_stays_in_z(const Quotient& q, const Mor& mu, Rng& rng);

// omega X -alpha-> D^X -beta-> X -gamma-> T omega X for each quotient
// indecomposable, and omega as a functor on the quotient.
struct Omega {
  std::vector<Triangle> triangles;  // per quotient indecomposable, in the base
  FunctorData functor;
};
// Throws QuotientError when a triangle or a preimage under T is missing.
Omega build_omega(const Quotient& q, Rng& rng);

struct EquivalenceCheck {
  Decision decision = Decision::no;
  std::string reason;
  bool direct = false;     // sigma fully faithful and essentially surjective
  bool via_omega = false;  // g_X isomorphisms and natural on basis morphisms
  std::vector<int> sigma_on_objects;  // quotient index of sigma M_i, or -1
  std::vector<std::string> notes;
};
EquivalenceCheck check_sigma_equivalence(const Quotient& q, Rng& rng);

}  // namespace tricat
