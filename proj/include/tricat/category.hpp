#pragma once

// Finite additive Krull-Schmidt categories over F_p, presented by their
// indecomposables, hom-space dimensions and composition structure
// constants. Objects are formal direct sums; morphisms are flattened
// block matrices of coordinate vectors.

#include "tricat/exactla.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tricat {

using Field = la::PrimeField;
using Scalar = Field::value_type;
using Vec = std::vector<Scalar>;
using Mat = la::Matrix<Field>;
using Space = la::Subspace<Field>;
using Rng = std::mt19937_64;

struct FieldSpec {
  enum class Kind { prime, rationals };
  Kind kind = Kind::prime;
  std::uint32_t p = 2;
};

// A formal direct sum of indecomposables, kept in a fixed summand order.
// Equality is multiset equality; use `summands ==` when order matters.
struct Obj {
  std::vector<int> summands;

  Obj() = default;
  explicit Obj(std::vector<int> s) : summands(std::move(s)) {}

  std::size_t rank() const { return summands.size(); }
  bool is_zero() const { return summands.empty(); }
  std::vector<int> sorted() const;

  friend bool operator==(const Obj& a, const Obj& b) { return a.sorted() == b.sorted(); }
  friend Obj operator+(const Obj& a, const Obj& b);
};

// Morphism src -> tgt. Coordinates are laid out block by block in
// lexicographic order of (target summand, source summand), each block
// holding coordinates in the stored basis of Hom(src_i, tgt_j).
struct Mor {
  Obj src;
  Obj tgt;
  Vec coords;
};

// An additive functor given on indecomposables. on_homs[x][y] has
// dim Hom(F x, F y) rows and dim Hom(x, y) columns.
struct FunctorData {
  std::vector<Obj> on_objects;
  std::vector<std::vector<Mat>> on_homs;
};

struct Presentation {
  Field field{2};
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> hom_dim;                  // [x][y]
  std::vector<std::vector<std::vector<std::string>>> basis_names;  // optional labels, [x][y]
  // Structure constants for Z <- Y <- X, indexed [(x*n + y)*n + z]; entry
  // ((g*dim(X,Y) + f)*dim(X,Z) + k) is the k-th coordinate of g o f.
  std::vector<Vec> comp;
  std::vector<Vec> identity;
  FunctorData shift;

  std::size_t size() const { return names.size(); }
  int index_of(const std::string& name) const;
  Vec& structure(std::size_t x, std::size_t y, std::size_t z) { return comp[(x * size() + y) * size() + z]; }
  const Vec& structure(std::size_t x, std::size_t y, std::size_t z) const {
    return comp[(x * size() + y) * size() + z];
  }
};

enum class Locality { local, not_local, undecided };

class Category {
 public:
  // Throws std::invalid_argument when array shapes are inconsistent.
  // Algebraic laws are not checked here; see validate_presentation.
  explicit Category(Presentation p);

  const Presentation& presentation() const { return p_; }
  const Field& field() const { return p_.field; }
  std::size_t size() const { return p_.size(); }
  const std::string& name(int x) const { return p_.names[static_cast<std::size_t>(x)]; }
  std::string describe(const Obj& x) const;
  Obj object(const std::vector<std::string>& names) const;
  Obj indecomposable(int x) const { return Obj({x}); }
  std::vector<Obj> objects_up_to_rank(std::size_t max_rank) const;

  // Hom-space layout.
  std::size_t hom_dim(int x, int y) const { return p_.hom_dim[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
  std::size_t hom_dim(const Obj& x, const Obj& y) const;
  std::size_t block_offset(const Obj& x, const Obj& y, std::size_t j, std::size_t i) const;
  Vec block(const Mor& f, std::size_t j, std::size_t i) const;
  void set_block(Mor& f, std::size_t j, std::size_t i, const Vec& v) const;

  // Linear structure.
  Mor zero(const Obj& x, const Obj& y) const;
  Mor identity(const Obj& x) const;
  Mor from_coords(const Obj& x, const Obj& y, Vec coords) const;
  std::vector<Mor> hom_basis(const Obj& x, const Obj& y) const;
  Mor add(const Mor& f, const Mor& g) const;
  Mor sub(const Mor& f, const Mor& g) const;
  Mor scale(Scalar a, const Mor& f) const;
  Mor neg(const Mor& f) const;
  bool is_zero(const Mor& f) const;
  bool equal(const Mor& f, const Mor& g) const;

  Mor compose(const Mor& g, const Mor& f) const;
  Mor compose(const Mor& h, const Mor& g, const Mor& f) const { return compose(h, compose(g, f)); }

  // Block assembly: a morphism into (out of) a direct sum from its components.
  Mor column(const Obj& src, const std::vector<Mor>& parts) const;
  Mor row(const Obj& tgt, const std::vector<Mor>& parts) const;
  Mor diagonal(const std::vector<Mor>& parts) const;
  // Morphism between re-orderings of the same multiset matching summands in order.
  std::optional<Mor> permutation(const Obj& x, const Obj& y) const;
  // Injection of summand range [first, first+count) of x, and its projection.
  Mor summand_injection(const Obj& x, std::size_t first, std::size_t count) const;
  Mor summand_projection(const Obj& x, std::size_t first, std::size_t count) const;

  // Functors.
  Obj apply(const FunctorData& F, const Obj& x) const;
  Mor apply(const FunctorData& F, const Mor& f) const;
  Mat functor_matrix(const FunctorData& F, const Obj& x, const Obj& y) const;
  Obj shift(const Obj& x) const { return apply(p_.shift, x); }
  Mor shift(const Mor& f) const { return apply(p_.shift, f); }

  // Linear maps induced by composition.
  Mat precompose_matrix(const Mor& f, const Obj& e) const;   // Hom(B,E) -> Hom(A,E), h |-> h o f
  Mat postcompose_matrix(const Mor& f, const Obj& e) const;  // Hom(E,A) -> Hom(E,B), h |-> f o h

  // Invertibility.
  Locality locality(int x) const { return locality_[static_cast<std::size_t>(x)]; }
  bool residues_available() const { return residues_ok_; }
  // Residue of an endomorphism of an indecomposable modulo its radical.
  Scalar residue(int x, const Vec& endo) const;
  bool is_invertible(const Mor& f) const;
  std::optional<Mor> inverse(const Mor& f) const;

  Mor random_mor(const Obj& x, const Obj& y, Rng& rng) const;
  std::optional<Mor> random_automorphism(const Obj& x, Rng& rng, int attempts = 256) const;

 private:
  void check_shapes() const;
  void compute_locality();
  bool nilpotent(int x, const Vec& e) const;

  Presentation p_;
  std::vector<Locality> locality_;
  std::vector<Vec> residue_functional_;
  bool residues_ok_ = false;
};

using CategoryPtr = std::shared_ptr<const Category>;

struct Biproduct {
  Obj sum;
  Mor inject_x, inject_y, project_x, project_y;
};
Biproduct direct_sum(const Category& c, const Obj& x, const Obj& y);

bool is_isomorphism(const Category& c, const Mor& f);

// Searching an affine family of tuples of morphisms for one whose
// components are all invertible.
struct HomSlot {
  Obj src;
  Obj tgt;
};

enum class SearchStatus { found, none, undecided };

struct IsoSearch {
  SearchStatus status = SearchStatus::none;
  Vec point;  // concatenated coordinates of all slots
  bool exhaustive = true;
};

struct SearchBudget {
  std::uint64_t enumerate_limit = 1U << 16U;
  std::size_t samples = 1024;
};

std::size_t slots_dim(const Category& c, const std::vector<HomSlot>& slots);
std::vector<Mor> split_point(const Category& c, const std::vector<HomSlot>& slots, const Vec& point);

IsoSearch find_invertible(const Category& c, const std::vector<HomSlot>& slots, const Vec& particular,
                          const std::vector<Vec>& directions, Rng& rng, const SearchBudget& budget = {});

// All isomorphisms x -> y satisfying A * coords = b; `exhaustive` is false when
// the family was too large and only a sample was examined.
struct IsoEnumeration {
  std::vector<Mor> isomorphisms;
  bool exhaustive = true;
};
IsoEnumeration find_isomorphisms(const Category& c, const Obj& x, const Obj& y, const Mat& constraints,
                                 const Vec& rhs, Rng& rng, const SearchBudget& budget = {});

// All automorphisms of x if there are at most `limit` endomorphisms.
std::optional<std::vector<Mor>> automorphism_group(const Category& c, const Obj& x, std::uint64_t limit);

bool functor_full_on(const Category& c, const FunctorData& F, const std::vector<std::pair<Obj, Obj>>& pairs);
bool functor_faithful_on(const Category& c, const FunctorData& F, const std::vector<std::pair<Obj, Obj>>& pairs);

// Enumerates every vector of an affine family base + span(directions)
// when it has at most `limit` elements.
std::optional<std::vector<Vec>> enumerate_affine(const Field& k, const Vec& base, const std::vector<Vec>& directions,
                                                 std::uint64_t limit);
std::uint64_t family_size(const Field& k, std::size_t dim, std::uint64_t cap);

nlohmann::json to_json(const Category& c, const Obj& x);
nlohmann::json to_json(const Category& c, const Mor& f);

}  // namespace tricat
